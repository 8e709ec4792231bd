#pragma once

#include <Eigen/Dense>

#include "frlab/basis.hpp"
#include "frlab/operators.hpp"

namespace frlab {

// Where the smoothing matrix enters the update stencil.
enum class FilterMode {
    None,            // leave the operators alone
    FullScheme,      // premultiply every stencil block by S
    DiffOnly,        // smooth only the interior derivative, D -> S D
    CorrectionOnly,  // smooth only the correction lifts, h -> S h
};

// Discrete Gaussian smoother on the solution points. Rows are renormalized to
// sum to one so constants pass through exactly; sigma = 0 is the identity.
Eigen::MatrixXd gaussian_filter_matrix(const SolutionBasis& basis, double sigma);

FrOperators assemble_filtered_operators(const SolutionBasis& basis,
                                        const CorrectionScheme& scheme,
                                        double alpha, double sigma,
                                        FilterMode mode);

// Ratio of convective to filter-dissipative scales for a filter of width
// sigma applied once per step of size tau on cells of width h.
double filter_reynolds(double rho, double u, double tau, double sigma, double h);

}  // namespace frlab
