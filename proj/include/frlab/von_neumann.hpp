#pragma once

#include <Eigen/Dense>
#include <vector>

#include "frlab/filtering.hpp"
#include "frlab/operators.hpp"

namespace frlab {

// ============================================================================
// mesh
// ============================================================================

struct MeshSpec {
    std::vector<double> deltas;  // cell widths, left to right

    bool is_uniform(double tol = 1e-12) const;
    double delta() const;  // uniform width; throws on a non-uniform mesh
};

MeshSpec uniform_mesh(int cells, double delta = 1.0);

// ============================================================================
// per-wavenumber operators
// ============================================================================

// Semi-discrete Bloch symbol at normalized wavenumber khat in [0, pi]:
// Q = -J^{-1} (Cp e^{ik delta} + C0 + Cm e^{-ik delta}), k = khat (p+1)/delta.
// Spectral analysis requires a uniform mesh.
Eigen::MatrixXcd assemble_q(const FrOperators& ops, const MeshSpec& mesh,
                            double khat);

// One-step update matrix: the truncated exponential polynomial of degree
// rk_order in tau*Q (order 3 = three-stage RK, order 4 = classic four-stage).
Eigen::MatrixXcd update_matrix(const Eigen::MatrixXcd& q, double tau,
                               int rk_order);

// khat_i = pi * i / count, i = 1..count (endpoint pi included)
Eigen::VectorXd default_khat_grid(int count = 400);

// ============================================================================
// dispersion / dissipation
// ============================================================================

struct SpectralConfig {
    FrOperators ops;
    MeshSpec mesh = uniform_mesh(1, 1.0);
    double tau = 0.1;
    int rk_order = 3;
    Eigen::VectorXd khat_grid = default_khat_grid();
    double a = 1.0;  // advective speed
};

struct ModePoint {
    double khat = 0.0;
    bool defective = false;       // eigenvector matrix numerically singular
    Eigen::VectorXcd mu;          // update-matrix eigenvalues
    Eigen::MatrixXcd vectors;     // unit eigenvectors, one column per mode
    Eigen::VectorXcd c;           // complex wavespeeds i log(mu)/(k tau)
    Eigen::VectorXcd omega;       // modified frequencies c * k
    int primary = -1;             // tracked physical mode (-1 when defective)
};

struct SpectralResult {
    int p = 0;
    double tau = 0.0;
    int rk_order = 0;
    double delta = 1.0;
    double a = 1.0;
    std::vector<ModePoint> points;  // one per khat, ascending
};

// Eigensolve R over the khat grid. Mode indices are kept consistent across
// the grid by eigenvector overlap; the complex log takes its principal value
// at the smallest khat and the nearest branch thereafter. The primary mode is
// seeded at the smallest khat by maximal overlap with the Bloch vector
// b_j = e^{ikJ(xi_j+1)} and then follows the tracking.
SpectralResult dispersion_analysis(const SpectralConfig& cfg);

struct StabilityReport {
    bool stable = false;
    double worst_khat = 0.0;
    double worst_mu = 0.0;  // spectral radius at worst_khat
};

// Stable iff the spectral radius of R stays <= 1 + 1e-10 across the grid;
// khat = pi is always checked even if the grid omits it.
StabilityReport is_stable(const SpectralConfig& cfg);

// ============================================================================
// CFL limits
// ============================================================================

// Largest stable time step, found by a descending geometric ladder (which
// lands on the top edge of the stable set even when filtering opens a
// stability window rather than an interval down to zero) refined by bisection
// to absolute tolerance 1e-4. Returned as CFL = a tau / delta. Throws when no
// stable step exists down to tau ~ 5e-4.
double cfl_limit(const FrOperators& ops, int rk_order,
                 const MeshSpec& mesh = uniform_mesh(1, 1.0),
                 const Eigen::VectorXd& khat_grid = default_khat_grid(),
                 double a = 1.0);

struct CflMap {
    int p = 0;
    int rk_order = 0;
    double alpha = 1.0;
    FilterMode mode = FilterMode::None;
    Eigen::VectorXd iota_grid;
    Eigen::VectorXd sigma_grid;
    Eigen::MatrixXd cfl;  // iota x sigma; NaN marks an invalid cell
    int argmax_iota = -1;
    int argmax_sigma = -1;
    double max_cfl = 0.0;
    double baseline_cfl = 0.0;  // best unfiltered (sigma = 0) limit
};

// Cartesian (iota, sigma) scan, parallel over cells. Cells where cfl_limit
// fails (iota out of range, no stable step) are NaN and skipped in the argmax.
CflMap cfl_scan(int p, int rk_order, double alpha,
                const Eigen::VectorXd& iota_grid,
                const Eigen::VectorXd& sigma_grid, FilterMode mode);

}  // namespace frlab
