#include "frlab/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "frlab/parallel.hpp"

namespace frlab {

namespace {

using Cplx = std::complex<double>;
constexpr double kMagnitudeCap = 1e12;
const double kInf = std::numeric_limits<double>::infinity();

// s^n in polar form with the growth capped so unstable modes saturate
// instead of overflowing to inf/nan
Cplx capped_pow(Cplx s, long n, bool* capped) {
    if (n == 0) return {1.0, 0.0};
    double mag = std::abs(s);
    if (mag == 0.0) return {0.0, 0.0};
    double logmag = n * std::log(mag);
    double arg = n * std::arg(s);
    if (logmag > std::log(kMagnitudeCap) + 2.0) {
        *capped = true;
        logmag = std::log(kMagnitudeCap) + 2.0;
    }
    return std::polar(std::exp(logmag), arg);
}

}  // namespace

const char* const kModalConvention =
    "Q v = -ik lambda v (primary lambda -> +1+0i); mode time factor "
    "exp(-ik lambda t) vs exact exp(-ik c t)";

// ============================================================================
// modal decomposition
// ============================================================================

ModalDecomposition diagonalize(const Eigen::MatrixXcd& q, double k) {
    if (!(k > 0.0))
        throw std::invalid_argument("diagonalize: k must be > 0");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(q, true);
    ModalDecomposition d;
    d.k = k;
    d.W = es.eigenvectors();
    d.gamma = es.eigenvalues();
    d.lambda = d.gamma / Cplx(0.0, -k);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(d.W);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    d.flagged = !(smin > 0.0) || smax / smin > 1e8;
    return d;
}

int bloch_primary(const Eigen::MatrixXcd& w, const SolutionBasis& basis,
                  double khat) {
    const double kj = khat * (basis.p + 1) / 2.0;
    Eigen::VectorXcd b(basis.xi.size());
    for (int j = 0; j < basis.xi.size(); ++j)
        b[j] = std::exp(Cplx(0.0, kj * (basis.xi[j] + 1.0)));
    Eigen::VectorXd score = (w.adjoint() * b).cwiseAbs();
    for (int m = 0; m < w.cols(); ++m) score[m] /= w.col(m).norm() * b.norm();
    int best = 0;
    score.maxCoeff(&best);
    return best;
}

ModalDecomposition modal_decomposition(const FrOperators& ops,
                                       const MeshSpec& mesh, double khat) {
    const double k = khat * (ops.p + 1) / mesh.delta();
    ModalDecomposition d = diagonalize(assemble_q(ops, mesh, khat), k);
    d.primary = bloch_primary(d.W, gauss_points(ops.p), khat);
    return d;
}

Eigen::VectorXcd beta_weights(const ModalDecomposition& decomp,
                              const SolutionBasis& basis, const MeshSpec& mesh,
                              double k) {
    const double jac = mesh.delta() / 2.0;
    Eigen::VectorXcd b(basis.xi.size());
    for (int j = 0; j < basis.xi.size(); ++j)
        b[j] = std::exp(Cplx(0.0, k * jac * (basis.xi[j] + 1.0)));
    Eigen::VectorXcd beta = decomp.W.fullPivLu().solve(b);
    if ((decomp.W * beta - b).norm() > 1e-10)
        throw std::runtime_error(
            "beta_weights: eigenvector matrix too ill-conditioned to place "
            "the harmonic initial condition");
    return beta;
}

// ============================================================================
// analytic error evolution
// ============================================================================

Eigen::VectorXd semi_discrete_error(const ModalDecomposition& decomp,
                                    const Eigen::VectorXcd& beta, double k,
                                    const Eigen::VectorXd& t_grid, double c) {
    const int n = static_cast<int>(beta.size());
    Eigen::VectorXd out(t_grid.size());
    Eigen::VectorXcd diag(n);
    for (int ti = 0; ti < t_grid.size(); ++ti) {
        const double t = t_grid[ti];
        const Cplx exact = std::exp(Cplx(0.0, -k * c * t));
        for (int m = 0; m < n; ++m)
            diag[m] = std::exp(Cplx(0.0, -k * t) * decomp.lambda[m]) - exact;
        out[ti] = (decomp.W * diag.cwiseProduct(beta)).norm();
    }
    return out;
}

FullyDiscreteError fully_discrete_error(const ModalDecomposition& decomp,
                                        const Eigen::VectorXcd& beta, double k,
                                        double tau, int r,
                                        const Eigen::VectorXi& n_steps_grid,
                                        double c) {
    if (r < 1)
        throw std::invalid_argument("fully_discrete_error: need r >= 1");
    if (!(tau > 0.0))
        throw std::invalid_argument("fully_discrete_error: tau must be > 0");
    const int n = static_cast<int>(beta.size());

    // per-mode one-step amplification: truncated exponential of tau*gamma
    Eigen::VectorXcd s(n);
    for (int m = 0; m < n; ++m) {
        Cplx z = tau * decomp.gamma[m], term = {1.0, 0.0}, acc = {1.0, 0.0};
        for (int j = 1; j <= r; ++j) {
            term *= z / static_cast<double>(j);
            acc += term;
        }
        s[m] = acc;
    }

    FullyDiscreteError out;
    out.err.resize(n_steps_grid.size());
    out.saturated.assign(static_cast<size_t>(n_steps_grid.size()), 0);
    Eigen::VectorXcd diag(n);
    for (int gi = 0; gi < n_steps_grid.size(); ++gi) {
        const long steps = n_steps_grid[gi];
        if (steps < 0)
            throw std::invalid_argument(
                "fully_discrete_error: negative step count");
        bool capped = false;
        const Cplx exact = std::exp(Cplx(0.0, -k * c * tau * steps));
        for (int m = 0; m < n; ++m)
            diag[m] = capped_pow(s[m], steps, &capped) - exact;
        double norm = (decomp.W * diag.cwiseProduct(beta)).norm();
        if (capped || !std::isfinite(norm) || norm > kMagnitudeCap) {
            norm = kMagnitudeCap;
            out.saturated[gi] = 1;
        }
        out.err[gi] = norm;
    }
    return out;
}

Eigen::VectorXd half_life(const ModalDecomposition& decomp, double k, double c,
                          double jac) {
    if (!(k > 0.0)) throw std::invalid_argument("half_life: k must be > 0");
    Eigen::VectorXd out(decomp.lambda.size());
    for (int m = 0; m < decomp.lambda.size(); ++m) {
        double im = decomp.lambda[m].imag();
        out[m] = im >= 0.0 ? kInf : -1.0 / (c * k * (1.0 / jac) * im);
    }
    return out;
}

// ============================================================================
// error maps
// ============================================================================

Eigen::VectorXd default_time_grid() {
    Eigen::VectorXd t(201);
    t[0] = 0.0;
    for (int i = 0; i < 200; ++i)
        t[i + 1] = std::pow(10.0, -2.0 + 5.0 * i / 199.0);
    return t;
}

ErrorMap build_error_map(const ErrorMapConfig& cfg) {
    const double delta = cfg.mesh.delta();
    const double jac = delta / 2.0;
    const SolutionBasis basis = gauss_points(cfg.ops.p);
    const int n_modes = cfg.ops.p + 1;
    const int nk = static_cast<int>(cfg.khat_grid.size());

    ErrorMap map;
    map.convention = kModalConvention;
    map.khat_grid = cfg.khat_grid;
    if (cfg.fully_discrete) {
        std::ostringstream tag;
        tag << "fully(tau=" << cfg.tau << ", r=" << cfg.r << ")";
        map.tag = tag.str();
        std::vector<long> steps;
        for (int i = 0; i < cfg.t_grid.size(); ++i)
            steps.push_back(std::lround(cfg.t_grid[i] / cfg.tau));
        std::sort(steps.begin(), steps.end());
        steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
        map.t_or_n.resize(static_cast<int>(steps.size()));
        for (size_t i = 0; i < steps.size(); ++i)
            map.t_or_n[static_cast<int>(i)] = static_cast<double>(steps[i]);
    } else {
        map.tag = "semi";
        map.t_or_n = cfg.t_grid;
    }

    const int nt = static_cast<int>(map.t_or_n.size());
    map.err.resize(nk, nt);
    map.saturated.assign(static_cast<size_t>(nk) * nt, 0);
    map.half_lives.resize(nk, n_modes);
    map.primary.assign(nk, -1);
    map.flagged.assign(nk, 0);

    parallel_for(nk, [&](int ki) {
        const double khat = cfg.khat_grid[ki];
        const double k = khat * n_modes / delta;
        ModalDecomposition d = diagonalize(assemble_q(cfg.ops, cfg.mesh, khat), k);
        d.primary = bloch_primary(d.W, basis, khat);
        map.primary[ki] = d.primary;
        map.flagged[ki] = d.flagged ? 1 : 0;
        map.half_lives.row(ki) = half_life(d, k, cfg.c, jac).transpose();
        if (d.flagged) {
            map.err.row(ki).setConstant(std::numeric_limits<double>::quiet_NaN());
            return;
        }
        Eigen::VectorXcd beta = beta_weights(d, basis, cfg.mesh, k);
        if (cfg.fully_discrete) {
            Eigen::VectorXi steps(nt);
            for (int i = 0; i < nt; ++i)
                steps[i] = static_cast<int>(map.t_or_n[i]);
            FullyDiscreteError fd =
                fully_discrete_error(d, beta, k, cfg.tau, cfg.r, steps, cfg.c);
            map.err.row(ki) = fd.err.transpose();
            for (int i = 0; i < nt; ++i)
                map.saturated[static_cast<size_t>(ki) * nt + i] =
                    fd.saturated[static_cast<size_t>(i)];
        } else {
            map.err.row(ki) =
                semi_discrete_error(d, beta, k, map.t_or_n, cfg.c).transpose();
        }
    });
    return map;
}

}  // namespace frlab
