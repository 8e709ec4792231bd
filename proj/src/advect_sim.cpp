#include "frlab/advect_sim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "frlab/basis.hpp"
#include "frlab/parallel.hpp"

namespace frlab {

namespace {

constexpr double kDivergenceCap = 1e12;
const double kPi = std::acos(-1.0);

void validate(const SimConfig& cfg) {
    if (cfg.n_elements < 2)
        throw std::invalid_argument("sim: need at least 2 elements");
    if (!(cfg.x1 > cfg.x0))
        throw std::invalid_argument("sim: domain must have positive length");
    if (cfg.ic == IcKind::GaussianBump && !(cfg.bump_width > 0.0))
        throw std::invalid_argument("sim: bump width must be > 0");
    if (cfg.bc == BcKind::InflowOutflow && cfg.ops.alpha != 1.0)
        throw std::invalid_argument(
            "sim: inflow/outflow needs full upwinding (alpha = 1) so the "
            "outlet carries no incoming characteristic");
    if (cfg.rk_order != 3 && cfg.rk_order != 4)
        throw std::invalid_argument("sim: only rk orders 3 and 4 are supported");
}

double inflow_value(const SimConfig& cfg, double t) {
    return cfg.inflow_amplitude *
           std::sin(2.0 * kPi * cfg.inflow_k * (cfg.x0 - t));
}

// effective inlet lift: Cm = (filtered) hl * lr^T, so Cm lr / (lr.lr)
// recovers the lift vector including whatever smoothing touched it
Eigen::VectorXd inlet_lift(const FrOperators& ops) {
    Eigen::VectorXd lr = interface_interp(gauss_points(ops.p)).lr;
    return ops.Cm * lr / lr.squaredNorm();
}

double sample_poly(const SolutionBasis& basis, const Eigen::VectorXd& coeffs,
                   double xi) {
    return interp_vector(basis, xi).dot(coeffs);
}

}  // namespace

// ============================================================================
// configuration and state
// ============================================================================

double element_width(const SimConfig& cfg) {
    return (cfg.x1 - cfg.x0) / cfg.n_elements;
}

double resolve_tau(const SimConfig& cfg) {
    if (cfg.tau > 0.0) return cfg.tau;
    if (cfg.cfl > 0.0) return cfg.cfl * element_width(cfg);
    throw std::invalid_argument("sim: set tau > 0 or cfl > 0");
}

double node_x(const SimConfig& cfg, int element, int node) {
    const SolutionBasis basis = gauss_points(cfg.ops.p);
    const double d = element_width(cfg);
    return cfg.x0 + d * (element + 0.5 * (basis.xi[node] + 1.0));
}

double bump_exact(const SimConfig& cfg, double x, double t) {
    const double length = cfg.x1 - cfg.x0;
    double d = x - cfg.bump_center - t;
    d -= length * std::round(d / length);  // principal periodic image
    double v = 0.0;
    for (int m = -3; m <= 3; ++m) {
        double z = (d + m * length) / cfg.bump_width;
        v += std::exp(-z * z);
    }
    return v;
}

SimState initial_state(const SimConfig& cfg) {
    validate(cfg);
    const int n = cfg.ops.p + 1;
    const SolutionBasis basis = gauss_points(cfg.ops.p);
    const double d = element_width(cfg);
    SimState s;
    s.u.resize(cfg.n_elements, n);
    for (int j = 0; j < cfg.n_elements; ++j) {
        for (int q = 0; q < n; ++q) {
            double x = cfg.x0 + d * (j + 0.5 * (basis.xi[q] + 1.0));
            switch (cfg.ic) {
                case IcKind::GaussianBump:
                    s.u(j, q) = bump_exact(cfg, x, 0.0);
                    break;
                case IcKind::Harmonic: {
                    double kappa = cfg.harmonic_khat * n / d;
                    s.u(j, q) = std::sin(kappa * (x - cfg.x0));
                    break;
                }
                case IcKind::Constant:
                    s.u(j, q) = cfg.constant_value;
                    break;
            }
        }
    }
    return s;
}

// ============================================================================
// stepping
// ============================================================================

Eigen::MatrixXd rhs(const Eigen::MatrixXd& u, double t, const SimConfig& cfg) {
    const int ne = static_cast<int>(u.rows());
    const double jac_inv = 2.0 / element_width(cfg);
    Eigen::MatrixXd du(ne, u.cols());

    // u rows are elements; the stencil acts on column vectors, so apply the
    // transposed blocks to rows
    Eigen::MatrixXd from_self = -(u * cfg.ops.C0.transpose());
    Eigen::MatrixXd from_left(ne, u.cols());
    Eigen::MatrixXd from_right = Eigen::MatrixXd::Zero(ne, u.cols());

    if (cfg.bc == BcKind::Periodic) {
        for (int j = 0; j < ne; ++j) {
            from_left.row(j) =
                -(u.row((j + ne - 1) % ne) * cfg.ops.Cm.transpose());
            from_right.row(j) =
                -(u.row((j + 1) % ne) * cfg.ops.Cp.transpose());
        }
    } else {
        for (int j = 1; j < ne; ++j)
            from_left.row(j) = -(u.row(j - 1) * cfg.ops.Cm.transpose());
        // inlet: the upwind state at the left face is the prescribed signal
        from_left.row(0) =
            -(inlet_lift(cfg.ops) * inflow_value(cfg, t)).transpose();
        // outlet: alpha = 1 makes Cp vanish, nothing flows back in
    }
    du = jac_inv * (from_self + from_left + from_right);
    return du;
}

void step(SimState& state, double tau, const SimConfig& cfg) {
    if (!(tau > 0.0)) throw std::invalid_argument("step: tau must be > 0");
    if (state.diverged) return;
    const Eigen::MatrixXd& u = state.u;
    const double t = state.t;
    Eigen::MatrixXd next;
    if (cfg.rk_order == 3) {
        Eigen::MatrixXd u1 = u + tau * rhs(u, t, cfg);
        Eigen::MatrixXd u2 =
            0.75 * u + 0.25 * (u1 + tau * rhs(u1, t + tau, cfg));
        next = (u + 2.0 * (u2 + tau * rhs(u2, t + 0.5 * tau, cfg))) / 3.0;
    } else {
        Eigen::MatrixXd k1 = rhs(u, t, cfg);
        Eigen::MatrixXd k2 = rhs(u + 0.5 * tau * k1, t + 0.5 * tau, cfg);
        Eigen::MatrixXd k3 = rhs(u + 0.5 * tau * k2, t + 0.5 * tau, cfg);
        Eigen::MatrixXd k4 = rhs(u + tau * k3, t + tau, cfg);
        next = u + tau / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    state.u = std::move(next);
    state.t += tau;
    ++state.step_count;
    if (!state.u.allFinite() ||
        state.u.cwiseAbs().maxCoeff() > kDivergenceCap)
        state.diverged = true;
}

// ============================================================================
// cases
// ============================================================================

namespace {

Eigen::VectorXd quad_weights(int p) {
    // Gauss-Legendre weights at the solution points: w_i = 2/((1-x^2)P'^2)
    const SolutionBasis basis = gauss_points(p);
    Eigen::VectorXd w(p + 1);
    for (int i = 0; i <= p; ++i) {
        double x = basis.xi[i];
        double dp = legendre_deriv(p + 1, x);
        w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return w;
}

void run_to(SimState& state, const SimConfig& cfg, double t_end, double tau) {
    long steps = std::lround(t_end / tau);
    for (long i = 0; i < steps && !state.diverged; ++i) step(state, tau, cfg);
}

}  // namespace

double l2_norm(const SimState& state, const SimConfig& cfg) {
    const Eigen::VectorXd w = quad_weights(cfg.ops.p);
    const double jac = 0.5 * element_width(cfg);
    double acc = 0.0;
    for (int j = 0; j < state.u.rows(); ++j)
        acc += (state.u.row(j).transpose().cwiseAbs2().cwiseProduct(w)).sum();
    return std::sqrt(acc * jac);
}

double total_integral(const SimState& state, const SimConfig& cfg) {
    const Eigen::VectorXd w = quad_weights(cfg.ops.p);
    const double jac = 0.5 * element_width(cfg);
    double acc = 0.0;
    for (int j = 0; j < state.u.rows(); ++j)
        acc += state.u.row(j).dot(w);
    return acc * jac;
}

BumpResult run_bump_case(const SimConfig& cfg) {
    if (cfg.ic != IcKind::GaussianBump)
        throw std::invalid_argument("bump case: config must use the bump IC");
    const double tau = resolve_tau(cfg);
    SimState state = initial_state(cfg);
    run_to(state, cfg, cfg.t_end, tau);

    BumpResult res;
    res.diverged = state.diverged;
    res.state = std::move(state);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (res.diverged) {
        res.l2_error = res.linf_error = res.min_value = nan;
        res.peak_value = res.peak_location = nan;
        res.analytic_peak_location = nan;
        return res;
    }

    const SolutionBasis basis = gauss_points(cfg.ops.p);
    const Eigen::VectorXd w = quad_weights(cfg.ops.p);
    const double d = element_width(cfg);
    const double jac = 0.5 * d;
    const double t = res.state.t;

    double l2 = 0.0, linf = 0.0;
    for (int j = 0; j < cfg.n_elements; ++j) {
        for (int q = 0; q <= cfg.ops.p; ++q) {
            double x = cfg.x0 + d * (j + 0.5 * (basis.xi[q] + 1.0));
            double e = res.state.u(j, q) - bump_exact(cfg, x, t);
            l2 += w[q] * e * e;
            linf = std::max(linf, std::abs(e));
        }
    }
    res.l2_error = std::sqrt(l2 * jac);
    res.linf_error = linf;

    // dense polynomial sampling for the peak and the undershoot
    const int per_element = 50;
    res.min_value = std::numeric_limits<double>::max();
    res.peak_value = -std::numeric_limits<double>::max();
    for (int j = 0; j < cfg.n_elements; ++j) {
        Eigen::VectorXd coeffs = res.state.u.row(j).transpose();
        for (int s = 0; s < per_element; ++s) {
            double xi = -1.0 + 2.0 * (s + 0.5) / per_element;
            double v = sample_poly(basis, coeffs, xi);
            double x = cfg.x0 + d * (j + 0.5 * (xi + 1.0));
            if (v < res.min_value) res.min_value = v;
            if (v > res.peak_value) {
                res.peak_value = v;
                res.peak_location = x;
            }
        }
    }
    double apl = cfg.bump_center + t;
    double length = cfg.x1 - cfg.x0;
    apl = cfg.x0 + (apl - cfg.x0) - length * std::floor((apl - cfg.x0) / length);
    res.analytic_peak_location = apl;
    return res;
}

WaveResult run_wave_case(const SimConfig& cfg) {
    if (cfg.bc != BcKind::InflowOutflow)
        throw std::invalid_argument("wave case: needs the inflow/outflow BC");
    const double tau = resolve_tau(cfg);
    SimConfig zeroed = cfg;
    zeroed.ic = IcKind::Constant;
    zeroed.constant_value = 0.0;
    SimState state = initial_state(zeroed);

    const Eigen::VectorXd lr = interface_interp(gauss_points(cfg.ops.p)).lr;
    WaveResult res;
    res.inflow_amplitude = std::abs(cfg.inflow_amplitude);
    long steps = std::lround(cfg.t_end / tau);
    res.t.reserve(steps + 1);
    res.probe.reserve(steps + 1);
    double max_abs = 0.0;
    auto record = [&] {
        double v = lr.dot(state.u.row(cfg.n_elements - 1));
        res.t.push_back(state.t);
        res.probe.push_back(v);
        max_abs = std::max(max_abs, std::abs(v));
    };
    record();
    for (long i = 0; i < steps && !state.diverged; ++i) {
        step(state, tau, cfg);
        record();
    }
    res.diverged = state.diverged;
    res.growth = res.diverged || max_abs > 10.0 * res.inflow_amplitude;
    return res;
}

OrderResult order_study(const SimConfig& tmpl,
                        const std::vector<int>& n_grid) {
    if (n_grid.empty())
        throw std::invalid_argument("order study: empty grid list");
    if (!(tmpl.cfl > 0.0))
        throw std::invalid_argument("order study: fixed cfl required");

    OrderResult res;
    res.n_elements = n_grid;
    res.dx.resize(n_grid.size());
    res.l2_error.resize(n_grid.size());

    parallel_for(static_cast<int>(n_grid.size()), [&](int i) {
        SimConfig cfg = tmpl;
        cfg.n_elements = n_grid[static_cast<size_t>(i)];
        cfg.tau = 0.0;  // derive from cfl per grid
        double tau = resolve_tau(cfg);
        cfg.t_end = 1000.0 * tau;  // fixed iteration count, not fixed horizon
        BumpResult bump = run_bump_case(cfg);
        res.dx[static_cast<size_t>(i)] = element_width(cfg);
        res.l2_error[static_cast<size_t>(i)] =
            bump.diverged ? std::numeric_limits<double>::quiet_NaN()
                          : bump.l2_error;
    });

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    res.diverged = false;
    for (size_t i = 0; i < n_grid.size(); ++i) {
        if (!std::isfinite(res.l2_error[i])) {
            res.diverged = true;
            continue;
        }
        double x = std::log(res.dx[i]), y = std::log(res.l2_error[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    res.slope = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx)
                       : std::numeric_limits<double>::quiet_NaN();
    return res;
}

}  // namespace frlab
