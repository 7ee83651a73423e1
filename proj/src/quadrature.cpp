#include "zernike/quadrature.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "zernike/errors.hpp"

namespace zernike {

namespace {

// Monic Jacobi recurrence on [-1, 1] for (1 - x)^A (1 + x)^B.
double recurrence_diag(int k, double A, double B) {
    if (k == 0) return (B - A) / (A + B + 2.0);
    const double s = 2.0 * k + A + B;
    return (B * B - A * A) / (s * (s + 2.0));
}

double recurrence_offdiag_sq(int k, double A, double B) {
    if (k == 1) return 4.0 * (1.0 + A) * (1.0 + B) / ((2.0 + A + B) * (2.0 + A + B) * (3.0 + A + B));
    const double s = 2.0 * k + A + B;
    return 4.0 * k * (k + A) * (k + B) * (k + A + B) / (s * s * (s + 1.0) * (s - 1.0));
}

}  // namespace

GaussJacobiRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_jacobi: need at least one node");
    if (n > kMaxQuadratureNodes)
        throw PrecisionError("gauss_jacobi: " + std::to_string(n) + " nodes exceeds capacity " +
                             std::to_string(kMaxQuadratureNodes));
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");

    Eigen::VectorXd diag(n);
    Eigen::VectorXd offdiag(n > 1 ? n - 1 : 0);
    std::vector<double> sqrt_beta(n + 1, 0.0);
    for (int k = 0; k < n; ++k) diag(k) = recurrence_diag(k, a, b);
    for (int k = 1; k <= n; ++k) sqrt_beta[k] = std::sqrt(recurrence_offdiag_sq(k, a, b));
    for (int k = 0; k + 1 < n; ++k) offdiag(k) = sqrt_beta[k + 1];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, offdiag, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("gauss_jacobi: tridiagonal eigensolve failed");

    const double scale = std::pow(2.0, a + b + 1.0);
    const double mu0 = scale * std::beta(a + 1.0, b + 1.0);
    const double p0 = 1.0 / std::sqrt(mu0);

    GaussJacobiRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = solver.eigenvalues()(i);
        double christoffel = 0.0;
        for (int pass = 0; pass < 2; ++pass) {
            // Orthonormal recurrence: sqrt(b_{k+1}) p_{k+1} = (x - a_k) p_k - sqrt(b_k) p_{k-1}
            double p_prev = 0.0, p = p0, dp_prev = 0.0, dp = 0.0;
            double sum_sq = p * p;
            for (int k = 0; k < n; ++k) {
                const double p_next = ((x - diag(k)) * p - sqrt_beta[k] * p_prev) / sqrt_beta[k + 1];
                const double dp_next = (p + (x - diag(k)) * dp - sqrt_beta[k] * dp_prev) / sqrt_beta[k + 1];
                p_prev = p;
                p = p_next;
                dp_prev = dp;
                dp = dp_next;
                if (k + 1 < n) sum_sq += p * p;
            }
            if (pass == 0) {
                if (dp != 0.0) x -= p / dp;
            } else {
                christoffel = 1.0 / sum_sq;
            }
        }
        rule.nodes[i] = 0.5 * (x + 1.0);
        rule.weights[i] = christoffel / scale;
    }
    return rule;
}

}  // namespace zernike
