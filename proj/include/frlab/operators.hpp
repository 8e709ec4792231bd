#pragma once

#include <Eigen/Dense>

#include "frlab/basis.hpp"
#include "frlab/correction.hpp"

namespace frlab {

// Per-cell update stencil for linear advection (unit speed) on the reference
// element: du/dt = -J^{-1} (Cp u_{j+1} + C0 u_j + Cm u_{j-1}).
// alpha is the upwind weight of the interface flux (1 = full upwind when the
// wind blows left-to-right, 1/2 = central).
struct FrOperators {
    int p = 0;
    double alpha = 1.0;
    Eigen::MatrixXd Cm;  // couples to the left neighbor
    Eigen::MatrixXd C0;  // self
    Eigen::MatrixXd Cp;  // couples to the right neighbor
};

FrOperators assemble_operators(const SolutionBasis& basis,
                               const CorrectionScheme& scheme, double alpha);

}  // namespace frlab
