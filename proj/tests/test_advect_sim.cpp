#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "frlab/advect_sim.hpp"
#include "frlab/error_analysis.hpp"
#include "frlab/filtering.hpp"
#include "frlab/von_neumann.hpp"
#include "oracles.hpp"

using namespace frlab;
using Cplx = std::complex<double>;
static const double PI = std::acos(-1.0);

namespace {

SimConfig base_config(int n_elements, double alpha = 1.0, double sigma = 0.0,
                      FilterMode mode = FilterMode::None) {
    SimConfig cfg;
    cfg.n_elements = n_elements;
    cfg.ops = assemble_filtered_operators(gauss_points(4), huynh_scheme(4),
                                          alpha, sigma, mode);
    return cfg;
}

// complex harmonic field e^{ikx} at the solution points; admissible on the
// periodic mesh when k * (x1 - x0) is a multiple of 2 pi
Eigen::MatrixXcd harmonic_field(const SimConfig& cfg, double k) {
    Eigen::MatrixXcd u(cfg.n_elements, cfg.ops.p + 1);
    for (int j = 0; j < cfg.n_elements; ++j)
        for (int q = 0; q <= cfg.ops.p; ++q)
            u(j, q) = std::exp(Cplx(0.0, k * node_x(cfg, j, q)));
    return u;
}

// evolve real and imaginary parts separately (the rhs has real coefficients)
Eigen::MatrixXcd step_complex(const Eigen::MatrixXcd& u0, int n_steps,
                              double tau, const SimConfig& cfg) {
    SimState re = initial_state(cfg), im = initial_state(cfg);
    re.u = u0.real();
    im.u = u0.imag();
    for (int s = 0; s < n_steps; ++s) {
        step(re, tau, cfg);
        step(im, tau, cfg);
    }
    return re.u + Cplx(0.0, 1.0) * im.u;
}

}  // namespace

TEST_CASE("config plumbing: step size, nodes, validation") {
    SimConfig cfg = base_config(8);
    CHECK(element_width(cfg) == doctest::Approx(0.125));
    cfg.cfl = 0.16;
    CHECK(resolve_tau(cfg) == doctest::Approx(0.16 * 0.125));
    cfg.tau = 0.01;  // explicit tau wins
    CHECK(resolve_tau(cfg) == 0.01);
    cfg.tau = 0.0;
    cfg.cfl = 0.0;
    CHECK_THROWS_AS(resolve_tau(cfg), std::invalid_argument);

    for (int j = 0; j < 8; ++j)
        for (int q = 0; q <= 4; ++q) {
            double x = node_x(cfg, j, q);
            CHECK(x > 0.125 * j);
            CHECK(x < 0.125 * (j + 1));
        }

    SimConfig bad = base_config(8, 0.5);
    bad.bc = BcKind::InflowOutflow;
    bad.tau = 0.001;
    CHECK_THROWS_AS(initial_state(bad), std::invalid_argument);

    SimConfig one = base_config(8);
    one.n_elements = 1;
    CHECK_THROWS_AS(initial_state(one), std::invalid_argument);
}

TEST_CASE("constants are steady states, filtered or not") {
    for (double sigma : {0.0, 0.6}) {
        SimConfig cfg = base_config(8, 1.0, sigma, FilterMode::FullScheme);
        cfg.ic = IcKind::Constant;
        cfg.constant_value = 2.5;
        SimState st = initial_state(cfg);
        CHECK(rhs(st.u, 0.0, cfg).cwiseAbs().maxCoeff() <= 1e-13);
        for (int s = 0; s < 10000; ++s) step(st, 0.01, cfg);
        CHECK((st.u.array() - 2.5).abs().maxCoeff() <= 1e-12);
        CHECK(!st.diverged);
        CHECK(st.step_count == 10000);
    }
}

TEST_CASE("harmonic fields reduce to the per-wavenumber symbol") {
    SimConfig cfg = base_config(12);
    const double delta = element_width(cfg);
    const double khat = PI / 6;  // five full waves across the domain
    const double k = khat * 5.0 / delta;
    MeshSpec cell = uniform_mesh(1, delta);
    Eigen::MatrixXcd q = assemble_q(cfg.ops, cell, khat);

    Eigen::MatrixXcd u0 = harmonic_field(cfg, k);
    SimState re = initial_state(cfg), im = initial_state(cfg);
    re.u = u0.real();
    im.u = u0.imag();
    Eigen::MatrixXcd du =
        rhs(re.u, 0.0, cfg) + Cplx(0.0, 1.0) * rhs(im.u, 0.0, cfg);
    for (int j = 0; j < cfg.n_elements; ++j) {
        Eigen::VectorXcd expected = q * u0.row(j).transpose();
        CHECK((du.row(j).transpose() - expected).norm() <= 1e-10);
    }
}

TEST_CASE("full upwinding never looks downstream") {
    SimConfig cfg = base_config(6);
    oracle::Rng rng(0xad5ec7ULL);
    Eigen::MatrixXd u(6, 5);
    for (int j = 0; j < 6; ++j)
        for (int q = 0; q < 5; ++q) u(j, q) = rng.uniform(-1.0, 1.0);
    Eigen::MatrixXd base = rhs(u, 0.0, cfg);
    Eigen::MatrixXd bumped = u;
    bumped.row(3).array() += 7.0;  // perturb element 3
    Eigen::MatrixXd pert = rhs(bumped, 0.0, cfg);
    CHECK(pert.row(2) == base.row(2));  // upstream row is bit-identical
    CHECK(pert.row(3) != base.row(3));
    CHECK(pert.row(4) != base.row(4));
}

TEST_CASE("one step applies the truncated-exponential update") {
    SimConfig cfg = base_config(12);
    const double delta = element_width(cfg);
    const double khat = PI / 6;
    const double k = khat * 5.0 / delta;
    const double tau = 0.01;
    MeshSpec cell = uniform_mesh(1, delta);
    Eigen::MatrixXcd q = assemble_q(cfg.ops, cell, khat);
    Eigen::MatrixXcd u0 = harmonic_field(cfg, k);

    for (int rk : {3, 4}) {
        cfg.rk_order = rk;
        Eigen::MatrixXcd r = update_matrix(q, tau, rk);
        Eigen::MatrixXcd u1 = step_complex(u0, 1, tau, cfg);
        for (int j = 0; j < cfg.n_elements; ++j) {
            Eigen::VectorXcd expected = r * u0.row(j).transpose();
            CHECK((u1.row(j).transpose() - expected).norm() <= 1e-12);
        }
    }
}

TEST_CASE("a vanishing step leaves the field in place") {
    SimConfig cfg = base_config(8);
    SimState st = initial_state(cfg);
    Eigen::MatrixXd before = st.u;
    step(st, 1e-14, cfg);
    CHECK((st.u - before).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(st.t == doctest::Approx(1e-14));
    CHECK(st.step_count == 1);
}

TEST_CASE("the marched error matches the analytic prediction") {
    SimConfig cfg = base_config(12);
    const double delta = element_width(cfg);
    const double khat = PI / 6;
    const double k = khat * 5.0 / delta;
    const double tau = 0.005;
    const int n = 10;
    MeshSpec cell = uniform_mesh(1, delta);

    Eigen::MatrixXcd u0 = harmonic_field(cfg, k);
    Eigen::MatrixXcd un = step_complex(u0, n, tau, cfg);
    Cplx shift = std::exp(Cplx(0.0, -k * n * tau));  // exact transport
    double marched =
        (un.row(0).transpose() - shift * u0.row(0).transpose()).norm();

    ModalDecomposition d = modal_decomposition(cfg.ops, cell, khat);
    Eigen::VectorXcd beta = beta_weights(d, gauss_points(4), cell, k);
    Eigen::VectorXi steps(1);
    steps << n;
    FullyDiscreteError fd = fully_discrete_error(d, beta, k, tau, 3, steps);
    CHECK(std::abs(fd.err[0] - marched) <= 1e-8 * std::max(1.0, marched));
}

TEST_CASE("bump run past the stability edge raises the divergence flag") {
    SimConfig cfg = base_config(32);
    cfg.cfl = 0.17;
    cfg.t_end = 10.0;
    BumpResult res = run_bump_case(cfg);
    CHECK(res.diverged);
    CHECK(res.state.diverged);
    CHECK(std::isnan(res.l2_error));
    CHECK(std::isnan(res.peak_value));
}

TEST_CASE("periodic upwind runs conserve the total integral") {
    for (bool dg : {false, true}) {
        SimConfig cfg = base_config(16);
        if (dg)
            cfg.ops = assemble_operators(gauss_points(4), dg_scheme(), 1.0);
        cfg.cfl = dg ? 0.08 : 0.16;
        double tau = resolve_tau(cfg);
        SimState st = initial_state(cfg);
        double before = total_integral(st, cfg);
        for (int s = 0; s < 1000; ++s) step(st, tau, cfg);
        CHECK(!st.diverged);
        CHECK(std::abs(total_integral(st, cfg) - before) <= 1e-10);
    }
}

TEST_CASE("bump case tracks the exact convected profile") {
    SimConfig cfg = base_config(24);
    cfg.cfl = 0.16;
    cfg.t_end = 1.0;  // one full circuit of the periodic domain
    BumpResult res = run_bump_case(cfg);
    CHECK(!res.diverged);
    CHECK(res.l2_error < 1e-3);
    CHECK(res.linf_error < 5e-3);
    CHECK(res.peak_value == doctest::Approx(1.0).epsilon(0.01));
    // after a whole period the peak sits back at the center
    CHECK(res.analytic_peak_location == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(res.peak_location - 0.5) < element_width(cfg));
}

TEST_CASE("inflow boundary: silence in, silence out; growth is flagged") {
    SimConfig cfg = base_config(20);
    cfg.bc = BcKind::InflowOutflow;
    cfg.cfl = 0.16;
    cfg.t_end = 5.0;
    cfg.inflow_amplitude = 0.0;
    WaveResult quiet = run_wave_case(cfg);
    CHECK(!quiet.growth);
    CHECK(!quiet.diverged);
    double peak = 0.0;
    for (double v : quiet.probe) peak = std::max(peak, std::abs(v));
    CHECK(peak == 0.0);

    cfg.inflow_amplitude = 1.0;
    cfg.inflow_k = 1.0;
    cfg.cfl = 0.21;  // past the unfiltered limit
    cfg.t_end = 20.0;
    WaveResult rough = run_wave_case(cfg);
    CHECK(rough.growth);

    SimConfig calm = base_config(20, 1.0, 0.6, FilterMode::FullScheme);
    calm.bc = BcKind::InflowOutflow;
    calm.cfl = 0.21;  // inside the filtered stability window
    calm.t_end = 20.0;
    calm.inflow_amplitude = 1.0;
    calm.inflow_k = 1.0;
    WaveResult smooth = run_wave_case(calm);
    CHECK(!smooth.growth);
    CHECK(!smooth.diverged);
    double top = 0.0;
    for (double v : smooth.probe) top = std::max(top, std::abs(v));
    CHECK(top < 2.0);
}

TEST_CASE("order study recovers the design order") {
    SimConfig cfg = base_config(8);
    cfg.rk_order = 4;
    cfg.cfl = 0.189;
    OrderResult res = order_study(cfg, {8, 12, 16});
    CHECK(!res.diverged);
    REQUIRE(res.l2_error.size() == 3);
    CHECK(res.l2_error[0] > res.l2_error[1]);
    CHECK(res.l2_error[1] > res.l2_error[2]);
    CHECK(res.dx[0] == doctest::Approx(0.125));
    CHECK(res.slope > 4.5);
    CHECK(res.slope < 5.6);

    CHECK_THROWS_AS(order_study(cfg, {}), std::invalid_argument);
    cfg.cfl = 0.0;
    CHECK_THROWS_AS(order_study(cfg, {8, 12}), std::invalid_argument);
}
