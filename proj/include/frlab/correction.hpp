#pragma once

#include <Eigen/Dense>

#include "frlab/basis.hpp"

namespace frlab {

// One-parameter VCJH correction family:
//   h_l(xi) = ((-1)^p / 2) [ L_p - (eta_p L_{p-1} + L_{p+1}) / (1 + eta_p) ]
//   h_r(xi) = h_l(-xi)
// with eta_p = iota (2p+1) (a_p p!)^2 / 2 and a_p = (2p)! / (2^p (p!)^2).
// Boundary values h_l(-1)=1, h_l(+1)=0 hold for every admissible iota.

enum class CorrectionVariant { DG, Huynh, IotaPlus, Custom };

struct CorrectionScheme {
    double iota;
    CorrectionVariant variant;
};

double a_coeff(int p);                    // a_p above
double eta_from_iota(int p, double iota);

// Admissible range is iota > iota_lower_bound(p); eta -> -1 at the bound and
// the family degenerates.
double iota_lower_bound(int p);

CorrectionScheme dg_scheme();                 // iota = 0
CorrectionScheme huynh_scheme(int p);         // g2 lumping: iota = 2(p+1)/((2p+1) p (a_p p!)^2)
CorrectionScheme custom_scheme(double iota);

// h_l evaluated from the Legendre series (used for boundary-value checks).
double hl_value(int p, double iota, double x);
double hl_deriv_value(int p, double iota, double x);

// dh_l/dxi and dh_r/dxi at the solution points.
struct CorrectionDerivs {
    Eigen::VectorXd hl, hr;
};
CorrectionDerivs vcjh_correction_derivs(const SolutionBasis& basis,
                                        const CorrectionScheme& scheme);

}  // namespace frlab
