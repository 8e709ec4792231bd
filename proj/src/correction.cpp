#include "frlab/correction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace frlab {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void check_p(int p) {
    if (p < 0) throw std::invalid_argument("correction: p must be >= 0");
}

// For p = 0 the family needs L_{-1}; with the L_{-1} := 0 convention the
// boundary conditions h_l(-1)=1, h_l(1)=0 only hold at iota = 0.
void check_scheme(int p, double iota) {
    check_p(p);
    if (p == 0 && iota != 0.0) {
        throw std::invalid_argument(
            "correction: p = 0 admits only the DG member (iota = 0); "
            "the correction boundary conditions fail for any other iota");
    }
    double lb = iota_lower_bound(p);
    if (iota <= lb) {
        std::ostringstream os;
        os << "correction: iota = " << iota
           << " is at or below the VCJH stability bound " << lb
           << " for p = " << p << " (eta -> -1 degenerates the family)";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

double a_coeff(int p) {
    check_p(p);
    // (2p)! / (2^p (p!)^2) computed as prod_{i=1..p} (2i-1)/i * ... kept as
    // factorials; p stays small (matrices are (p+1)^2) so double is exact enough
    return factorial(2 * p) / (std::pow(2.0, p) * factorial(p) * factorial(p));
}

double eta_from_iota(int p, double iota) {
    double apfac = a_coeff(p) * factorial(p);
    return iota * (2 * p + 1) * apfac * apfac / 2.0;
}

double iota_lower_bound(int p) {
    double apfac = a_coeff(p) * factorial(p);
    return -2.0 / ((2 * p + 1) * apfac * apfac);
}

CorrectionScheme dg_scheme() { return {0.0, CorrectionVariant::DG}; }

CorrectionScheme huynh_scheme(int p) {
    check_p(p);
    if (p == 0)
        throw std::invalid_argument("correction: Huynh lumping is undefined at p = 0");
    double apfac = a_coeff(p) * factorial(p);
    return {2.0 * (p + 1) / ((2 * p + 1) * p * apfac * apfac),
            CorrectionVariant::Huynh};
}

CorrectionScheme custom_scheme(double iota) {
    return {iota, CorrectionVariant::Custom};
}

double hl_value(int p, double iota, double x) {
    check_scheme(p, iota);
    double sign = (p % 2 == 0) ? 1.0 : -1.0;
    if (p == 0) return 0.5 * (1.0 - x);  // L_{-1} = 0, eta = 0
    double eta = eta_from_iota(p, iota);
    return 0.5 * sign *
           (legendre(p, x) -
            (eta * legendre(p - 1, x) + legendre(p + 1, x)) / (1.0 + eta));
}

double hl_deriv_value(int p, double iota, double x) {
    check_scheme(p, iota);
    double sign = (p % 2 == 0) ? 1.0 : -1.0;
    if (p == 0) return -0.5;
    double eta = eta_from_iota(p, iota);
    return 0.5 * sign *
           (legendre_deriv(p, x) -
            (eta * legendre_deriv(p - 1, x) + legendre_deriv(p + 1, x)) /
                (1.0 + eta));
}

CorrectionDerivs vcjh_correction_derivs(const SolutionBasis& basis,
                                        const CorrectionScheme& scheme) {
    const int n = static_cast<int>(basis.xi.size());
    CorrectionDerivs out;
    out.hl.resize(n);
    out.hr.resize(n);
    for (int i = 0; i < n; ++i) {
        out.hl[i] = hl_deriv_value(basis.p, scheme.iota, basis.xi[i]);
        // h_r(xi) = h_l(-xi)  =>  h_r'(xi) = -h_l'(-xi)
        out.hr[i] = -hl_deriv_value(basis.p, scheme.iota, -basis.xi[i]);
    }
    return out;
}

}  // namespace frlab
