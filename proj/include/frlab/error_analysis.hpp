#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "frlab/basis.hpp"
#include "frlab/von_neumann.hpp"

namespace frlab {

// ============================================================================
// modal decomposition of the semi-discrete operator
// ============================================================================

// Q = -ik W diag(lambda) W^{-1}. The sign puts the primary convective
// velocity at +1 (exact transport is e^{-ikct}); the matching time factor for
// mode n is then e^{-ik lambda_n t}. Verified against a matrix-exponential
// oracle in the tests; recorded in emitted metadata as well.
extern const char* const kModalConvention;

struct ModalDecomposition {
    double k = 0.0;           // dimensional wavenumber khat (p+1)/delta
    Eigen::MatrixXcd W;       // eigenvectors of Q, one column per mode
    Eigen::VectorXcd gamma;   // raw eigenvalues of Q
    Eigen::VectorXcd lambda;  // gamma / (-ik): complex convective velocities
    int primary = -1;         // Bloch-matched physical mode (set when known)
    bool flagged = false;     // cond(W) > 1e8: treat the point as unreliable
};

ModalDecomposition diagonalize(const Eigen::MatrixXcd& q, double k);

// Index of the eigenvector with maximal overlap against the Bloch vector
// b_j = e^{ikJ(xi_j+1)}.
int bloch_primary(const Eigen::MatrixXcd& w, const SolutionBasis& basis,
                  double khat);

// assemble_q + diagonalize + primary identification in one call
ModalDecomposition modal_decomposition(const FrOperators& ops,
                                       const MeshSpec& mesh, double khat);

// beta solves W beta = b for the Bloch vector b; harmonic initial data is
// exactly the beta-weighted sum of the Q-modes.
Eigen::VectorXcd beta_weights(const ModalDecomposition& decomp,
                              const SolutionBasis& basis, const MeshSpec& mesh,
                              double k);

// ============================================================================
// analytic error evolution
// ============================================================================

// ||e(t)||_2 over the solution points of one element, per t:
// e(t) = W diag(e^{-ik lambda_n t} - e^{-ikct}) beta.
Eigen::VectorXd semi_discrete_error(const ModalDecomposition& decomp,
                                    const Eigen::VectorXcd& beta, double k,
                                    const Eigen::VectorXd& t_grid,
                                    double c = 1.0);

struct FullyDiscreteError {
    Eigen::VectorXd err;              // one entry per step count
    std::vector<std::uint8_t> saturated;  // magnitude hit the 1e12 cap
};

// Same error after n steps of the degree-r truncated-exponential update:
// e(n tau) = W diag(s_m^n - e^{-ikc n tau}) beta, s_m = sum (tau gamma_m)^j/j!.
// Unstable growth saturates at 1e12 instead of overflowing.
FullyDiscreteError fully_discrete_error(const ModalDecomposition& decomp,
                                        const Eigen::VectorXcd& beta, double k,
                                        double tau, int r,
                                        const Eigen::VectorXi& n_steps_grid,
                                        double c = 1.0);

// Per-mode decay time -1/(c k J^{-1} Im lambda_n); +inf for non-decaying.
Eigen::VectorXd half_life(const ModalDecomposition& decomp, double k, double c,
                          double jac);

// ============================================================================
// (khat, t) error maps
// ============================================================================

// 0 followed by 200 log-spaced times in [1e-2, 1e3]
Eigen::VectorXd default_time_grid();

struct ErrorMapConfig {
    FrOperators ops;
    MeshSpec mesh = uniform_mesh(1, 1.0);
    Eigen::VectorXd khat_grid = default_khat_grid();
    Eigen::VectorXd t_grid = default_time_grid();
    bool fully_discrete = false;
    double tau = 0.05;  // fully discrete only
    int r = 3;          // fully discrete only
    double c = 1.0;
};

struct ErrorMap {
    std::string tag;  // "semi" or "fully(tau=..., r=...)"
    std::string convention = "";
    Eigen::VectorXd khat_grid;
    Eigen::VectorXd t_or_n;                  // times (semi) or step counts
    Eigen::MatrixXd err;                     // khat x t_or_n
    std::vector<std::uint8_t> saturated;     // row-major khat x t_or_n
    Eigen::MatrixXd half_lives;              // khat x mode
    std::vector<int> primary;                // per khat
    std::vector<std::uint8_t> flagged;       // per khat
};

// Parallel over khat columns; deterministic slot writes. For fully discrete
// maps the time grid is converted to unique step counts n = round(t / tau).
ErrorMap build_error_map(const ErrorMapConfig& cfg);

}  // namespace frlab
