#include "frlab/operators.hpp"

#include <stdexcept>

namespace frlab {

FrOperators assemble_operators(const SolutionBasis& basis,
                               const CorrectionScheme& scheme, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("operators: alpha must lie in [0, 1]");

    const Eigen::MatrixXd D = diff_matrix(basis);
    const InterfaceInterp itp = interface_interp(basis);
    const CorrectionDerivs cd = vcjh_correction_derivs(basis, scheme);

    FrOperators ops;
    ops.p = basis.p;
    ops.alpha = alpha;
    // Interface flux = alpha * (left state) + (1 - alpha) * (right state);
    // each correction lifts the jump between that flux and the interior trace.
    ops.Cm = alpha * (cd.hl * itp.lr.transpose());
    ops.Cp = (1.0 - alpha) * (cd.hr * itp.ll.transpose());
    ops.C0 = D - alpha * (cd.hl * itp.ll.transpose()) -
             (1.0 - alpha) * (cd.hr * itp.lr.transpose());
    return ops;
}

}  // namespace frlab
