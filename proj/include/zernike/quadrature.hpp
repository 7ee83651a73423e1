#pragma once

#include <cstddef>
#include <vector>

namespace zernike {

/// Largest Gauss-Jacobi rule the library will build.
inline constexpr int kMaxQuadratureNodes = 256;

/// Gauss-Jacobi rule on [0, 1] for the weight (1 - u)^a u^b, a, b > -1.
/// Exact for polynomials in u of degree <= 2 n - 1.
struct GaussJacobiRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double b = 0.0;

    std::size_t size() const { return nodes.size(); }

    template <typename F>
    auto integrate(F&& f) const -> decltype(f(0.0)) {
        decltype(f(0.0)) sum{};
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// Nodes from the Golub-Welsch eigenproblem of the Jacobi matrix, then one
/// Newton polish on the orthonormal recurrence; weights are Christoffel
/// numbers evaluated at the polished nodes.
/// Throws PrecisionError if n > kMaxQuadratureNodes, DomainError if a or b <= -1.
GaussJacobiRule gauss_jacobi(int n, double a, double b = 0.0);

}  // namespace zernike
