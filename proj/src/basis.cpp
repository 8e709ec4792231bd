#include "frlab/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace frlab {

double legendre(int n, double x) {
    if (n == 0) return 1.0;
    if (n == 1) return x;
    double pm1 = 1.0, pm0 = x;
    for (int m = 2; m <= n; ++m) {
        double pm = ((2 * m - 1) * x * pm0 - (m - 1) * pm1) / m;
        pm1 = pm0;
        pm0 = pm;
    }
    return pm0;
}

double legendre_deriv(int n, double x) {
    if (n == 0) return 0.0;
    // (1-x^2) P_n' = n (P_{n-1} - x P_n); endpoints use P_n'(+-1) = (+-1)^{n-1} n(n+1)/2
    if (std::abs(1.0 - x * x) < 1e-14) {
        double v = n * (n + 1) / 2.0;
        return (x < 0 && n % 2 == 0) ? -v : v;
    }
    return n * (legendre(n - 1, x) - x * legendre(n, x)) / (1.0 - x * x);
}

SolutionBasis gauss_points(int p) {
    if (p < 0) throw std::invalid_argument("gauss_points: p must be >= 0");
    const int n = p + 1;
    Eigen::VectorXd xi(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, then Newton on P_n
        double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double f = legendre(n, x);
            double df = legendre_deriv(n, x);
            double dx = f / df;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        xi[i] = x;
    }
    // enforce exact symmetry of the point set
    for (int i = 0; i < n / 2; ++i) {
        double v = 0.5 * (xi[n - 1 - i] - xi[i]);
        xi[i] = -v;
        xi[n - 1 - i] = v;
    }
    if (n % 2 == 1) xi[n / 2] = 0.0;
    return SolutionBasis{p, xi};
}

namespace {

Eigen::VectorXd bary_weights(const Eigen::VectorXd& xi) {
    const int n = static_cast<int>(xi.size());
    Eigen::VectorXd w(n);
    for (int j = 0; j < n; ++j) {
        double prod = 1.0;
        for (int m = 0; m < n; ++m)
            if (m != j) prod *= (xi[j] - xi[m]);
        w[j] = 1.0 / prod;
    }
    return w;
}

}  // namespace

Eigen::MatrixXd diff_matrix(const SolutionBasis& basis) {
    const Eigen::VectorXd& xi = basis.xi;
    const int n = static_cast<int>(xi.size());
    Eigen::VectorXd w = bary_weights(xi);
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            D(i, j) = (w[j] / w[i]) / (xi[i] - xi[j]);
            diag -= D(i, j);
        }
        D(i, i) = diag;  // rows sum to zero: constants differentiate to zero
    }
    return D;
}

Eigen::VectorXd interp_vector(const SolutionBasis& basis, double x) {
    const Eigen::VectorXd& xi = basis.xi;
    const int n = static_cast<int>(xi.size());
    Eigen::VectorXd l = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
        if (std::abs(x - xi[j]) < 1e-14) {
            l[j] = 1.0;
            return l;
        }
    }
    Eigen::VectorXd w = bary_weights(xi);
    double denom = 0.0;
    for (int j = 0; j < n; ++j) {
        l[j] = w[j] / (x - xi[j]);
        denom += l[j];
    }
    l /= denom;
    return l;
}

InterfaceInterp interface_interp(const SolutionBasis& basis) {
    return InterfaceInterp{interp_vector(basis, -1.0), interp_vector(basis, 1.0)};
}

}  // namespace frlab
