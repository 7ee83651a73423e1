#pragma once

#include <array>

namespace zernike {

using Vec2 = std::array<double, 2>;

/// The (alpha, beta, hbar) triple of the generalized Zernike operator
///   Z = d^2 + alpha (r.d)^2 + beta r.d
/// alpha sets the curvature of the (pseudo)sphere, beta the drift.
struct Params {
    double alpha = -1.0;
    double beta = -2.0;
    double hbar = 1.0;

    /// Throws ConfigError unless alpha, beta are finite and hbar > 0.
    void validate() const;

    double beta_tilde() const { return hbar * beta; }
    /// -1 for the sphere, +1 for the pseudosphere, 0 in the flat limit.
    int curvature_sign() const { return (alpha > 0) - (alpha < 0); }
    /// Radius 1/sqrt(|alpha|). DomainError when alpha == 0.
    double r0() const;
};

Params make_params(double alpha, double beta, double hbar = 1.0);

inline double norm2(const Vec2& r) { return r[0] * r[0] + r[1] * r[1]; }

}  // namespace zernike
