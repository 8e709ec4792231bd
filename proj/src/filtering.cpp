#include "frlab/filtering.hpp"

#include <cmath>
#include <stdexcept>

namespace frlab {

Eigen::MatrixXd gaussian_filter_matrix(const SolutionBasis& basis,
                                       double sigma) {
    if (sigma < 0.0)
        throw std::invalid_argument("filtering: sigma must be >= 0");
    const int n = static_cast<int>(basis.xi.size());
    if (sigma == 0.0) return Eigen::MatrixXd::Identity(n, n);

    const double pi = std::acos(-1.0);
    const double amp = std::sqrt(6.0 / (pi * sigma * sigma));
    Eigen::MatrixXd s(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double d = basis.xi[i] - basis.xi[j];
            s(i, j) = amp * std::exp(-6.0 * d * d / (sigma * sigma));
        }
    }
    // Renormalize rows: the kernel is sampled, not integrated, so exactness on
    // constants has to be imposed.
    for (int i = 0; i < n; ++i) s.row(i) /= s.row(i).sum();
    return s;
}

FrOperators assemble_filtered_operators(const SolutionBasis& basis,
                                        const CorrectionScheme& scheme,
                                        double alpha, double sigma,
                                        FilterMode mode) {
    if (mode == FilterMode::None || sigma == 0.0)
        return assemble_operators(basis, scheme, alpha);

    const Eigen::MatrixXd s = gaussian_filter_matrix(basis, sigma);
    FrOperators ops = assemble_operators(basis, scheme, alpha);
    switch (mode) {
        case FilterMode::FullScheme:
            ops.Cm = s * ops.Cm;
            ops.C0 = s * ops.C0;
            ops.Cp = s * ops.Cp;
            break;
        case FilterMode::DiffOnly: {
            // Rebuild C0 around the smoothed derivative; the lifts and the
            // neighbor blocks keep their unfiltered traces.
            const Eigen::MatrixXd d = diff_matrix(basis);
            ops.C0 += s * d - d;
            break;
        }
        case FilterMode::CorrectionOnly: {
            const InterfaceInterp itp = interface_interp(basis);
            const CorrectionDerivs cd = vcjh_correction_derivs(basis, scheme);
            const Eigen::VectorXd shl = s * cd.hl;
            const Eigen::VectorXd shr = s * cd.hr;
            ops.Cm = alpha * (shl * itp.lr.transpose());
            ops.Cp = (1.0 - alpha) * (shr * itp.ll.transpose());
            ops.C0 = diff_matrix(basis) - alpha * (shl * itp.ll.transpose()) -
                     (1.0 - alpha) * (shr * itp.lr.transpose());
            break;
        }
        case FilterMode::None:
            break;
    }
    return ops;
}

double filter_reynolds(double rho, double u, double tau, double sigma,
                       double h) {
    if (!(rho > 0.0 && u > 0.0 && tau > 0.0 && sigma > 0.0 && h > 0.0))
        throw std::invalid_argument(
            "filter_reynolds: all of rho, u, tau, sigma, h must be > 0");
    return 24.0 * rho * u * tau / (sigma * sigma * h);
}

}  // namespace frlab
