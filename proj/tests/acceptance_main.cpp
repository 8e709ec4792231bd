// Gate suite for the whole laboratory: ten independent checks covering the
// CFL limits, the filter stabilization story, convergence orders, analytic
// error maps against marched solutions, and the stability concordance between
// the per-wavenumber analysis and the actual solver. Each check prints one
// PASS/FAIL line; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <complex>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "frlab/advect_sim.hpp"
#include "frlab/error_analysis.hpp"
#include "frlab/filtering.hpp"
#include "frlab/von_neumann.hpp"
#include "oracles.hpp"

using namespace frlab;
using Cplx = std::complex<double>;
static const double PI = std::acos(-1.0);

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 4) {
    std::ostringstream ss;
    ss << std::setprecision(digits) << v;
    return ss.str();
}

FrOperators ops_p4(const CorrectionScheme& scheme, double sigma = 0.0,
                   FilterMode mode = FilterMode::None, double alpha = 1.0) {
    return assemble_filtered_operators(gauss_points(4), scheme, alpha, sigma,
                                       mode);
}

Eigen::VectorXd iota_axis() {
    const double top = 4.0 * huynh_scheme(4).iota;
    Eigen::VectorXd v(41);
    for (int i = 0; i < 41; ++i) v[i] = top * i / 40.0;
    return v;
}

Eigen::VectorXd sigma_axis() {
    Eigen::VectorXd v(41);
    for (int i = 0; i < 41; ++i) v[i] = i / 40.0;
    return v;
}

// ============================================================================
// 1-3: CFL limits of the unfiltered family
// ============================================================================

Verdict cfl_limit_three_stage() {
    double cfl = cfl_limit(ops_p4(huynh_scheme(4)), 3);
    Verdict v;
    v.pass = cfl >= 0.164 && cfl <= 0.170;
    v.detail = "three-stage limit " + fmt(cfl, 5) + ", band [0.164, 0.170]";
    return v;
}

Verdict cfl_limit_four_stage() {
    double cfl = cfl_limit(ops_p4(huynh_scheme(4)), 4);
    Verdict v;
    v.pass = std::abs(cfl - 0.189) <= 0.003;
    v.detail = "four-stage limit " + fmt(cfl, 5) + ", band 0.189 +/- 0.003";
    return v;
}

// located correction parameter maximizing the unfiltered limit; the located
// value is reused by the concordance check below
double g_iota_best = 0.0;

Verdict cfl_limit_best_iota() {
    Eigen::VectorXd sg = Eigen::VectorXd::Zero(1);
    CflMap map = cfl_scan(4, 3, 1.0, iota_axis(), sg, FilterMode::None);
    g_iota_best = map.iota_grid[map.argmax_iota];
    Verdict v;
    v.pass = std::abs(map.max_cfl - 0.2118) <= 0.004;
    v.detail = "peak limit " + fmt(map.max_cfl, 5) + " at iota = " +
               fmt(g_iota_best, 5) + " (" +
               fmt(g_iota_best / huynh_scheme(4).iota, 4) +
               "x the lumped value), band 0.2118 +/- 0.004";
    return v;
}

// ============================================================================
// 4-5: what filtering buys
// ============================================================================

Verdict filter_stabilizes_017() {
    SpectralConfig cfg;
    cfg.tau = 0.17;
    cfg.ops = ops_p4(huynh_scheme(4));
    StabilityReport plain = is_stable(cfg);
    cfg.ops = ops_p4(huynh_scheme(4), 0.6, FilterMode::FullScheme);
    StabilityReport smoothed = is_stable(cfg);
    Verdict v;
    v.pass = !plain.stable && smoothed.stable;
    v.detail = "tau 0.17: unfiltered max|mu| " + fmt(plain.worst_mu, 6) +
               " (unstable), sigma 0.6 max|mu| " + fmt(smoothed.worst_mu, 6) +
               " (stable)";
    return v;
}

Verdict filter_cfl_boost() {
    CflMap full =
        cfl_scan(4, 3, 1.0, iota_axis(), sigma_axis(), FilterMode::FullScheme);
    CflMap diff =
        cfl_scan(4, 3, 1.0, iota_axis(), sigma_axis(), FilterMode::DiffOnly);
    double boost_full = full.max_cfl / full.baseline_cfl - 1.0;
    double boost_diff = diff.max_cfl / diff.baseline_cfl - 1.0;
    Verdict v;
    v.pass = boost_full >= 0.20 && boost_diff < boost_full;
    v.detail = "peak limit boost: whole-stencil smoothing " +
               fmt(100 * boost_full, 3) + "%, derivative-only " +
               fmt(100 * boost_diff, 3) + "% (need >= 20% and ordering)";
    return v;
}

// ============================================================================
// 6: grid convergence with and without the filter
// ============================================================================

Verdict convergence_orders() {
    SimConfig tmpl;
    tmpl.rk_order = 4;
    tmpl.cfl = 0.189;
    const std::vector<int> grids = {8, 12, 16, 24, 32};

    tmpl.ops = ops_p4(huynh_scheme(4));
    OrderResult plain = order_study(tmpl, grids);
    tmpl.ops = ops_p4(huynh_scheme(4), 0.6, FilterMode::FullScheme);
    OrderResult smoothed = order_study(tmpl, grids);

    bool plain_order = !plain.diverged && plain.slope >= 4.5;
    bool reduced = smoothed.slope < plain.slope;
    bool above = !smoothed.diverged;
    for (size_t i = 0; i < grids.size(); ++i)
        above = above && smoothed.l2_error[i] > plain.l2_error[i];
    bool filtered_order = smoothed.slope >= 3.5;

    Verdict v;
    v.pass = plain_order && reduced && above && filtered_order;
    v.detail = "unfiltered slope " + fmt(plain.slope, 4) +
               (plain_order ? " (>= 4.5 ok)" : " (< 4.5!)") +
               "; filtered slope " + fmt(smoothed.slope, 4) +
               (reduced ? " (reduced ok" : " (not reduced!") +
               (above ? ", curve uniformly above ok" : ", curve not above!") +
               (filtered_order ? ", >= 3.5 ok)" : ", < 3.5 short of the band)");
    return v;
}

// ============================================================================
// 7: analytic error maps against independent evolution
// ============================================================================

Verdict analytic_error_oracles() {
    const FrOperators ops = ops_p4(huynh_scheme(4));
    const SolutionBasis basis = gauss_points(4);
    const MeshSpec cell = uniform_mesh(1, 1.0);
    oracle::Rng rng(0x0ddba11ULL);

    double worst_semi = 0.0;
    for (int s = 0; s < 20; ++s) {
        double khat = rng.uniform(0.2, PI);
        double t = rng.uniform(0.5, 30.0);
        double k = khat * 5.0;
        Eigen::MatrixXcd q = assemble_q(ops, cell, khat);
        ModalDecomposition d = diagonalize(q, k);
        Eigen::VectorXcd beta = beta_weights(d, basis, cell, k);
        Eigen::VectorXcd b = d.W * beta;
        double ref =
            (oracle::expm(t * q) * b - std::exp(Cplx(0.0, -k * t)) * b).norm();
        Eigen::VectorXd tg(1);
        tg << t;
        double got = semi_discrete_error(d, beta, k, tg)[0];
        worst_semi = std::max(worst_semi, std::abs(got - ref) /
                                              std::max(1.0, ref));
    }

    // marched counterpart: real solver runs on an 8-element periodic mesh,
    // real/imaginary harmonic parts stepped separately
    SimConfig sim;
    sim.n_elements = 8;
    sim.ops = ops;
    const double delta = 1.0 / 8;
    const MeshSpec mesh_cell = uniform_mesh(1, delta);
    double worst_fully = 0.0;
    for (int s = 0; s < 20; ++s) {
        int m = 5 + static_cast<int>(rng.uniform(0.0, 16.0));  // admissible
        if (m > 20) m = 20;
        double khat = PI * m / 20.0;
        double k = khat * 5.0 / delta;
        double tau = rng.uniform(0.005, 0.02);
        int n = 20 + static_cast<int>(rng.uniform(0.0, 31.0));
        int rk = rng.uniform(0.0, 1.0) < 0.5 ? 3 : 4;

        sim.rk_order = rk;
        SimState re = initial_state(sim), im = initial_state(sim);
        for (int j = 0; j < 8; ++j)
            for (int q = 0; q < 5; ++q) {
                double x = node_x(sim, j, q);
                re.u(j, q) = std::cos(k * x);
                im.u(j, q) = std::sin(k * x);
            }
        Eigen::VectorXcd u0(5);
        for (int q = 0; q < 5; ++q) u0[q] = Cplx(re.u(0, q), im.u(0, q));
        for (int i = 0; i < n; ++i) {
            step(re, tau, sim);
            step(im, tau, sim);
        }
        Eigen::VectorXcd un(5);
        for (int q = 0; q < 5; ++q) un[q] = Cplx(re.u(0, q), im.u(0, q));
        double marched =
            (un - std::exp(Cplx(0.0, -k * n * tau)) * u0).norm();

        ModalDecomposition d =
            diagonalize(assemble_q(ops, mesh_cell, khat), k);
        Eigen::VectorXcd beta = beta_weights(d, basis, mesh_cell, k);
        Eigen::VectorXi steps(1);
        steps << n;
        double got = fully_discrete_error(d, beta, k, tau, rk, steps).err[0];
        worst_fully = std::max(worst_fully, std::abs(got - marched) /
                                                std::max(1.0, marched));
    }

    Verdict v;
    v.pass = worst_semi <= 1e-8 && worst_fully <= 1e-8;
    v.detail = "20 + 20 samples; worst relative deviation: continuous-time " +
               fmt(worst_semi, 3) + ", stepped " + fmt(worst_fully, 3) +
               " (need <= 1e-8)";
    return v;
}

// ============================================================================
// 8: per-wavenumber verdicts agree with marched solutions
// ============================================================================

Verdict stability_concordance() {
    struct Case {
        const char* label;
        CorrectionScheme scheme;
        double sigma;
        FilterMode mode;
        int rk;
        double cfl;
        double t_end;
    };
    const CorrectionScheme hu = huynh_scheme(4);
    const CorrectionScheme best = custom_scheme(g_iota_best);
    const FilterMode full = FilterMode::FullScheme;
    const FilterMode none = FilterMode::None;
    const std::vector<Case> cases = {
        {"lumped rk33 cfl 0.166", hu, 0.0, none, 3, 0.166, 50.0},
        {"lumped rk33 cfl 0.180", hu, 0.0, none, 3, 0.180, 50.0},
        {"lumped rk44 cfl 0.188", hu, 0.0, none, 4, 0.188, 50.0},
        {"lumped rk44 cfl 0.200", hu, 0.0, none, 4, 0.200, 50.0},
        {"smoothed rk33 cfl 0.170", hu, 0.6, full, 3, 0.170, 50.0},
        {"smoothed rk33 cfl 0.230", hu, 0.6, full, 3, 0.230, 50.0},
        {"smoothed rk33 cfl 0.020", hu, 0.6, full, 3, 0.020, 150.0},
        {"nodal-dg rk33 cfl 0.085", dg_scheme(), 0.0, none, 3, 0.085, 50.0},
        {"nodal-dg rk33 cfl 0.095", dg_scheme(), 0.0, none, 3, 0.095, 50.0},
        {"best-iota rk33 cfl 0.205", best, 0.0, none, 3, 0.205, 50.0},
        {"best-iota rk33 cfl 0.220", best, 0.0, none, 3, 0.220, 50.0},
        {"smoothed rk44 cfl 0.225", hu, 0.6, full, 4, 0.225, 50.0},
    };

    // A 12-element periodic mesh realizes only Bloch phases theta = pi m / 6,
    // and theta = 5 khat wraps mod 2 pi, so analysis and march must meet on
    // that admissible set: khat = pi m / 30, m = 1..6 (conjugates cover the
    // rest, and the always-checked khat = pi aliases onto m = 6).
    Eigen::VectorXd admissible(6);
    for (int m = 1; m <= 6; ++m) admissible[m - 1] = PI * m / 30.0;

    int agree = 0;
    std::string mismatches;
    for (const Case& c : cases) {
        FrOperators ops = ops_p4(c.scheme, c.sigma, c.mode);
        SpectralConfig sc;
        sc.ops = ops;
        sc.tau = c.cfl;  // delta = 1 in the spectral normalization
        sc.rk_order = c.rk;
        sc.khat_grid = admissible;
        StabilityReport rep = is_stable(sc);

        // march the most dangerous admissible harmonic; weak growth rates
        // need enough steps for a factor-1e4 rise to clear the threshold
        SimConfig sim;
        sim.n_elements = 12;
        sim.ops = ops;
        sim.rk_order = c.rk;
        sim.cfl = c.cfl;
        sim.ic = IcKind::Harmonic;
        sim.harmonic_khat = rep.worst_khat;
        SimState st = initial_state(sim);
        double tau = resolve_tau(sim);
        double e0 = l2_norm(st, sim);
        long steps = std::lround(c.t_end / tau);
        if (!rep.stable && rep.worst_mu > 1.0 + 1e-9) {
            long needed = static_cast<long>(
                std::ceil(std::log(1e4) / std::log(rep.worst_mu)));
            steps = std::min(std::max(steps, needed), 5000000L);
        }
        for (long i = 0; i < steps && !st.diverged; ++i) step(st, tau, sim);
        bool bounded = !st.diverged && l2_norm(st, sim) < 10.0 * e0;

        if (bounded == rep.stable) {
            ++agree;
        } else {
            mismatches += std::string(" [") + c.label + ": analysis says " +
                          (rep.stable ? "stable" : "unstable") +
                          ", march says " + (bounded ? "bounded" : "growing") +
                          "]";
        }
    }
    Verdict v;
    v.pass = agree == 12;
    v.detail = std::to_string(agree) + "/12 configurations concordant" +
               (mismatches.empty() ? "" : ";" + mismatches);
    return v;
}

// ============================================================================
// 9: smoother matrix properties
// ============================================================================

Verdict filter_matrix_properties() {
    double worst_row = 0.0;
    for (int p = 2; p <= 6; ++p) {
        SolutionBasis basis = gauss_points(p);
        for (int i = 1; i <= 10; ++i) {
            Eigen::MatrixXd s = gaussian_filter_matrix(basis, 0.1 * i);
            worst_row = std::max(
                worst_row,
                (s.rowwise().sum().array() - 1.0).abs().maxCoeff());
        }
    }

    SolutionBasis b4 = gauss_points(4);
    bool ident =
        (gaussian_filter_matrix(b4, 0.0) - Eigen::MatrixXd::Identity(5, 5))
            .cwiseAbs()
            .maxCoeff() == 0.0;

    // the node-alternating profile is the roughest representable signal
    Eigen::VectorXd saw(5);
    saw << 1, -1, 1, -1, 1;
    double rough_narrow =
        (gaussian_filter_matrix(b4, 0.3) * saw).cwiseAbs().maxCoeff();
    double rough_wide =
        (gaussian_filter_matrix(b4, 0.8) * saw).cwiseAbs().maxCoeff();
    bool damped = rough_narrow < 1.0 && rough_wide < rough_narrow;

    Verdict v;
    v.pass = worst_row <= 1e-12 && ident && damped;
    v.detail = "row-sum defect " + fmt(worst_row, 3) +
               " (need <= 1e-12); zero width is identity: " +
               (ident ? "yes" : "NO") + "; alternating profile damped " +
               fmt(1.0 - rough_narrow, 3) + " -> " + fmt(1.0 - rough_wide, 3) +
               " as the width grows: " + (damped ? "yes" : "NO");
    return v;
}

// ============================================================================
// 10: qualitative bump signatures under filtering
// ============================================================================

Verdict bump_signatures() {
    SimConfig cfg;
    cfg.n_elements = 32;
    cfg.cfl = 0.166;
    cfg.t_end = 50.0;
    cfg.rk_order = 3;

    cfg.ops = ops_p4(huynh_scheme(4));
    BumpResult plain = run_bump_case(cfg);
    cfg.ops = ops_p4(huynh_scheme(4), 0.6, FilterMode::FullScheme);
    BumpResult smoothed = run_bump_case(cfg);
    // a width past the scanned stability edge grows from roundoff at ~54x
    // per time unit: by t=10 the oscillation dominates the bump tails, while
    // the divergence cap is not reached until t ~ 17
    cfg.ops = ops_p4(huynh_scheme(4), 1.08, FilterMode::FullScheme);
    cfg.t_end = 10.0;
    BumpResult wide = run_bump_case(cfg);

    bool ran = !plain.diverged && !smoothed.diverged && !wide.diverged;
    bool peak_down = smoothed.peak_value < plain.peak_value;
    bool lagged = smoothed.peak_location < smoothed.analytic_peak_location &&
                  smoothed.peak_location < plain.peak_location;
    double spacing = element_width(cfg) / 5.0;
    bool plain_on_time =
        std::abs(plain.peak_location - plain.analytic_peak_location) < spacing;
    bool undershoot = wide.min_value < 0.0;

    Verdict v;
    v.pass = ran && peak_down && lagged && plain_on_time && undershoot;
    v.detail = "peak " + fmt(plain.peak_value, 4) + " -> " +
               fmt(smoothed.peak_value, 4) +
               (peak_down ? " (reduced)" : " (NOT reduced)") + "; location " +
               fmt(smoothed.peak_location, 4) + " vs exact " +
               fmt(smoothed.analytic_peak_location, 4) +
               (lagged ? " (lagged)" : " (NOT lagged)") +
               (plain_on_time ? "; unfiltered on time" : "; unfiltered late") +
               "; widest filter min " + fmt(wide.min_value, 3) + " at t=10" +
               (undershoot ? " (undershoots)" : " (no undershoot)");
    return v;
}

}  // namespace

int main() {
    using Clock = std::chrono::steady_clock;
    struct Entry {
        int number;
        const char* name;
        Verdict (*fn)();
    };
    const Entry entries[] = {
        {1, "cfl limit, three-stage", cfl_limit_three_stage},
        {2, "cfl limit, four-stage", cfl_limit_four_stage},
        {3, "cfl limit at the located best iota", cfl_limit_best_iota},
        {4, "filter stabilization at tau 0.17", filter_stabilizes_017},
        {5, "filtered cfl boost and placement ordering", filter_cfl_boost},
        {6, "convergence orders", convergence_orders},
        {7, "analytic error oracles", analytic_error_oracles},
        {8, "stability concordance", stability_concordance},
        {9, "filter matrix properties", filter_matrix_properties},
        {10, "bump signatures", bump_signatures},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        auto t0 = Clock::now();
        Verdict v;
        try {
            v = e.fn();
        } catch (const std::exception& ex) {
            v.pass = false;
            v.detail = std::string("exception: ") + ex.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (!v.pass) ++failures;
        std::cout << "criterion " << std::setw(2) << e.number << ": "
                  << (v.pass ? "PASS" : "FAIL") << "  " << e.name << " - "
                  << v.detail << "  [" << fmt(secs, 3) << " s]\n";
        std::cout.flush();
    }
    if (failures > 0)
        std::cout << failures << " of 10 criteria failed\n";
    else
        std::cout << "all 10 criteria passed\n";
    return failures;
}
