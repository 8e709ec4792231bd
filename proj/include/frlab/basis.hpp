#pragma once

#include <Eigen/Dense>

namespace frlab {

// Nodal basis on the reference element [-1, 1]: p+1 solution points and the
// Lagrange operators built on them.
struct SolutionBasis {
    int p;                 // polynomial order, points.size() == p+1
    Eigen::VectorXd xi;    // strictly increasing, all in (-1, 1) for Gauss points
};

// Legendre P_n(x) and its derivative via the three-term recurrence.
double legendre(int n, double x);
double legendre_deriv(int n, double x);

// Roots of P_{p+1}, increasing. Newton iteration from Chebyshev-like initial
// guesses; converges to machine precision for any practical p.
SolutionBasis gauss_points(int p);

// D_ij = l_j'(xi_i), built with barycentric weights. The diagonal uses the
// negative-sum trick so that D*1 = 0 holds exactly.
Eigen::MatrixXd diff_matrix(const SolutionBasis& basis);

// Lagrange cardinal values l_j(x) at an arbitrary point (barycentric form).
Eigen::VectorXd interp_vector(const SolutionBasis& basis, double x);

// ll_j = l_j(-1), lr_j = l_j(+1).
struct InterfaceInterp {
    Eigen::VectorXd ll, lr;
};
InterfaceInterp interface_interp(const SolutionBasis& basis);

}  // namespace frlab
