#include "frlab/von_neumann.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "frlab/basis.hpp"
#include "frlab/parallel.hpp"

namespace frlab {

namespace {

constexpr double kStabilitySlack = 1e-10;
const double kPi = std::acos(-1.0);

using Cplx = std::complex<double>;

Eigen::VectorXcd bloch_vector(const SolutionBasis& basis, double khat) {
    // k * J = khat (p+1) / 2, independent of the cell width
    const double kj = khat * (basis.p + 1) / 2.0;
    Eigen::VectorXcd b(basis.xi.size());
    for (int j = 0; j < basis.xi.size(); ++j)
        b[j] = std::exp(Cplx(0.0, kj * (basis.xi[j] + 1.0)));
    return b;
}

double spectral_radius(const Eigen::MatrixXcd& r) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(r, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Stability probe for the CFL search: scans khat descending (instabilities
// live at high wavenumbers) and bails out at the first exceedance.
bool stable_quick(const FrOperators& ops, const MeshSpec& mesh, double tau,
                  int rk_order, const Eigen::VectorXd& khat_grid, double a) {
    for (int i = static_cast<int>(khat_grid.size()) - 1; i >= 0; --i) {
        Eigen::MatrixXcd q = a * assemble_q(ops, mesh, khat_grid[i]);
        if (spectral_radius(update_matrix(q, tau, rk_order)) >
            1.0 + kStabilitySlack)
            return false;
    }
    return true;
}

// Greedy one-to-one assignment maximizing eigenvector overlap with the
// previous grid point; perm[m] = column of `vecs` continuing mode m.
std::vector<int> match_modes(const Eigen::MatrixXcd& prev,
                             const Eigen::MatrixXcd& vecs) {
    const int n = static_cast<int>(prev.cols());
    Eigen::MatrixXd overlap = (vecs.adjoint() * prev).cwiseAbs();
    std::vector<int> perm(n, -1);
    std::vector<bool> row_used(n, false), col_used(n, false);
    for (int pick = 0; pick < n; ++pick) {
        int bi = -1, bj = -1;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            if (row_used[i]) continue;
            for (int j = 0; j < n; ++j) {
                if (col_used[j]) continue;
                if (overlap(i, j) > best) {
                    best = overlap(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }
        perm[bj] = bi;
        row_used[bi] = true;
        col_used[bj] = true;
    }
    return perm;
}

}  // namespace

// ============================================================================
// mesh
// ============================================================================

bool MeshSpec::is_uniform(double tol) const {
    if (deltas.empty()) return false;
    for (double d : deltas)
        if (std::abs(d - deltas.front()) > tol) return false;
    return true;
}

double MeshSpec::delta() const {
    if (!is_uniform())
        throw std::invalid_argument(
            "mesh: spectral analysis requires a uniform mesh");
    return deltas.front();
}

MeshSpec uniform_mesh(int cells, double delta) {
    if (cells < 1) throw std::invalid_argument("mesh: need at least one cell");
    if (!(delta > 0.0)) throw std::invalid_argument("mesh: delta must be > 0");
    return {std::vector<double>(static_cast<size_t>(cells), delta)};
}

// ============================================================================
// per-wavenumber operators
// ============================================================================

Eigen::MatrixXcd assemble_q(const FrOperators& ops, const MeshSpec& mesh,
                            double khat) {
    const double d = mesh.delta();
    const double jac_inv = 2.0 / d;  // J = delta / 2
    const double k = khat * (ops.p + 1) / d;
    const Cplx right = std::exp(Cplx(0.0, k * d));
    const Cplx left = std::exp(Cplx(0.0, -k * d));
    return -jac_inv * (right * ops.Cp + ops.C0.cast<Cplx>() + left * ops.Cm);
}

Eigen::MatrixXcd update_matrix(const Eigen::MatrixXcd& q, double tau,
                               int rk_order) {
    if (rk_order != 3 && rk_order != 4)
        throw std::invalid_argument(
            "update_matrix: only rk orders 3 and 4 are supported");
    const int n = static_cast<int>(q.rows());
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    double fact = 1.0;
    for (int m = 1; m <= rk_order; ++m) {
        term = tau * (q * term);
        fact *= m;
        r += term / fact;
    }
    return r;
}

Eigen::VectorXd default_khat_grid(int count) {
    Eigen::VectorXd g(count);
    for (int i = 1; i <= count; ++i) g[i - 1] = kPi * i / count;
    return g;
}

// ============================================================================
// dispersion / dissipation
// ============================================================================

namespace {

void validate_config(const SpectralConfig& cfg) {
    if (!(cfg.tau > 0.0))
        throw std::invalid_argument("spectral config: tau must be > 0");
    if (cfg.khat_grid.size() == 0)
        throw std::invalid_argument("spectral config: empty khat grid");
    for (int i = 0; i < cfg.khat_grid.size(); ++i) {
        double v = cfg.khat_grid[i];
        if (!(v > 0.0 && v <= kPi + 1e-12))
            throw std::invalid_argument(
                "spectral config: khat values must lie in (0, pi]");
        if (i > 0 && v <= cfg.khat_grid[i - 1])
            throw std::invalid_argument(
                "spectral config: khat grid must be strictly increasing");
    }
}

}  // namespace

SpectralResult dispersion_analysis(const SpectralConfig& cfg) {
    validate_config(cfg);
    const double d = cfg.mesh.delta();
    const SolutionBasis basis = gauss_points(cfg.ops.p);
    const int n = cfg.ops.p + 1;

    SpectralResult out;
    out.p = cfg.ops.p;
    out.tau = cfg.tau;
    out.rk_order = cfg.rk_order;
    out.delta = d;
    out.a = cfg.a;
    out.points.reserve(cfg.khat_grid.size());

    const ModePoint* last_good = nullptr;
    for (int gi = 0; gi < cfg.khat_grid.size(); ++gi) {
        const double khat = cfg.khat_grid[gi];
        const double k = khat * n / d;
        Eigen::MatrixXcd q = cfg.a * assemble_q(cfg.ops, cfg.mesh, khat);
        Eigen::MatrixXcd r = update_matrix(q, cfg.tau, cfg.rk_order);

        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(r, true);
        ModePoint pt;
        pt.khat = khat;
        pt.mu = es.eigenvalues();
        pt.vectors = es.eigenvectors();
        pt.defective = std::abs(pt.vectors.determinant()) <= 1e-10;

        if (!pt.defective && last_good != nullptr) {
            std::vector<int> perm = match_modes(last_good->vectors, pt.vectors);
            Eigen::VectorXcd mu(n);
            Eigen::MatrixXcd vecs(n, n);
            for (int m = 0; m < n; ++m) {
                mu[m] = pt.mu[perm[m]];
                vecs.col(m) = pt.vectors.col(perm[m]);
            }
            pt.mu = mu;
            pt.vectors = vecs;
        }

        pt.c.resize(n);
        const double ktau = k * cfg.tau;
        for (int m = 0; m < n; ++m) {
            Cplx c = Cplx(0.0, 1.0) * std::log(pt.mu[m]) / ktau;
            if (!pt.defective && last_good != nullptr) {
                // log mu is defined up to 2 pi i; pick the branch whose real
                // wavespeed stays nearest the previous grid point
                double prev = last_good->c[m].real();
                double branch = std::round((c.real() - prev) * ktau / (2.0 * kPi));
                c -= Cplx(branch * 2.0 * kPi / ktau, 0.0);
            }
            pt.c[m] = c;
        }
        pt.omega = pt.c * k;

        if (pt.defective) {
            pt.primary = -1;
        } else if (last_good == nullptr) {
            Eigen::VectorXcd b = bloch_vector(basis, khat);
            Eigen::VectorXd score =
                (pt.vectors.adjoint() * b).cwiseAbs() / b.norm();
            int best = 0;
            score.maxCoeff(&best);
            pt.primary = best;
        } else {
            pt.primary = last_good->primary;  // index preserved by matching
        }

        out.points.push_back(std::move(pt));
        if (!out.points.back().defective) last_good = &out.points.back();
    }
    return out;
}

StabilityReport is_stable(const SpectralConfig& cfg) {
    validate_config(cfg);
    StabilityReport rep;
    rep.stable = true;
    double worst = -1.0;
    auto probe = [&](double khat) {
        Eigen::MatrixXcd q = cfg.a * assemble_q(cfg.ops, cfg.mesh, khat);
        double rho = spectral_radius(update_matrix(q, cfg.tau, cfg.rk_order));
        if (rho > worst) {
            worst = rho;
            rep.worst_khat = khat;
            rep.worst_mu = rho;
        }
    };
    for (int i = 0; i < cfg.khat_grid.size(); ++i) probe(cfg.khat_grid[i]);
    if (cfg.khat_grid[cfg.khat_grid.size() - 1] < kPi - 1e-12) probe(kPi);
    rep.stable = worst <= 1.0 + kStabilitySlack;
    return rep;
}

// ============================================================================
// CFL limits
// ============================================================================

double cfl_limit(const FrOperators& ops, int rk_order, const MeshSpec& mesh,
                 const Eigen::VectorXd& khat_grid, double a) {
    const double d = mesh.delta();
    if (rk_order != 3 && rk_order != 4)
        throw std::invalid_argument(
            "cfl_limit: only rk orders 3 and 4 are supported");

    // Descending geometric ladder: the first stable rung sits just under the
    // top of the stable set, which is the edge we want even when filtering
    // turns the stable set into a window instead of (0, tau_max].
    const double top = 2.0, ratio = 0.93, floor_tau = 5e-4;
    double lo = -1.0, hi = top / ratio;
    for (double tau = top; tau > floor_tau; tau *= ratio) {
        if (stable_quick(ops, mesh, tau, rk_order, khat_grid, a)) {
            lo = tau;
            break;
        }
        hi = tau;
    }
    if (lo < 0.0)
        throw std::runtime_error(
            "cfl_limit: no stable time step found down to tau ~ 5e-4; the "
            "operators are semi-discretely unstable (an eigenvalue of Q keeps "
            "a positive real part as tau -> 0)");
    if (lo == top) {
        // ladder started inside the stable set; walk up to bracket the edge
        bool bracketed = false;
        for (int i = 0; i < 60; ++i) {
            hi = lo / ratio;
            if (!stable_quick(ops, mesh, hi, rk_order, khat_grid, a)) {
                bracketed = true;
                break;
            }
            lo = hi;
        }
        if (!bracketed)
            throw std::runtime_error(
                "cfl_limit: no finite stability bound located above tau = 2");
    }
    while (hi - lo > 1e-4) {
        double mid = 0.5 * (lo + hi);
        if (stable_quick(ops, mesh, mid, rk_order, khat_grid, a))
            lo = mid;
        else
            hi = mid;
    }
    return a * lo / d;
}

CflMap cfl_scan(int p, int rk_order, double alpha,
                const Eigen::VectorXd& iota_grid,
                const Eigen::VectorXd& sigma_grid, FilterMode mode) {
    if (iota_grid.size() == 0 || sigma_grid.size() == 0)
        throw std::invalid_argument("cfl_scan: grids must be non-empty");
    const SolutionBasis basis = gauss_points(p);
    const int ni = static_cast<int>(iota_grid.size());
    const int ns = static_cast<int>(sigma_grid.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    CflMap map;
    map.p = p;
    map.rk_order = rk_order;
    map.alpha = alpha;
    map.mode = mode;
    map.iota_grid = iota_grid;
    map.sigma_grid = sigma_grid;
    map.cfl = Eigen::MatrixXd::Constant(ni, ns, nan);

    auto cell = [&](double iota, double sigma) -> double {
        try {
            FrOperators ops = assemble_filtered_operators(
                basis, custom_scheme(iota), alpha, sigma, mode);
            return cfl_limit(ops, rk_order);
        } catch (const std::exception&) {
            return nan;  // invalid cell; the scan continues
        }
    };

    parallel_for(ni * ns, [&](int idx) {
        int i = idx / ns, j = idx % ns;
        map.cfl(i, j) = cell(iota_grid[i], sigma_grid[j]);
    });

    // unfiltered baseline: reuse the sigma = 0 column when the grid has one
    int zero_col = -1;
    for (int j = 0; j < ns; ++j)
        if (sigma_grid[j] == 0.0) zero_col = j;
    Eigen::VectorXd baseline(ni);
    if (zero_col >= 0) {
        baseline = map.cfl.col(zero_col);
    } else {
        parallel_for(ni, [&](int i) { baseline[i] = cell(iota_grid[i], 0.0); });
    }

    map.max_cfl = -1.0;
    map.baseline_cfl = -1.0;
    for (int i = 0; i < ni; ++i) {
        if (std::isfinite(baseline[i]) && baseline[i] > map.baseline_cfl)
            map.baseline_cfl = baseline[i];
        for (int j = 0; j < ns; ++j) {
            double v = map.cfl(i, j);
            if (std::isfinite(v) && v > map.max_cfl) {
                map.max_cfl = v;
                map.argmax_iota = i;
                map.argmax_sigma = j;
            }
        }
    }
    if (map.max_cfl < 0.0)
        throw std::runtime_error("cfl_scan: every cell in the scan is invalid");
    return map;
}

}  // namespace frlab
