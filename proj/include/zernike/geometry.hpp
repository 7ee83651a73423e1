#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "zernike/graded_poly.hpp"
#include "zernike/params.hpp"

namespace zernike {

/// Configuration-space metric of the curved Zernike/Higgs system,
///   ds^2 = dr.dr - alpha (r.dr)^2 / (1 + alpha r^2),
/// a sphere (alpha < 0) or pseudosphere (alpha > 0) of radius 1/sqrt|alpha|.
struct Metric2 {
    Eigen::Matrix2d g;
    Eigen::Matrix2d g_inv;
    double det_g = 1.0;
};

enum class MeasureKind {
    /// (1 + alpha r^2)^((alpha - beta)/(2 alpha)), the measure carried by
    /// similarity-transformed wavefunctions.
    transform,
    /// Same base with the exponent negated, (beta - alpha)/(2 alpha).
    transform_negated,
    /// sqrt(det g) = (1 + alpha r^2)^(-1/2).
    invariant,
};

/// 1 + alpha r^2; DomainError unless strictly positive.
double domain_factor(const Params& params, const Vec2& r);

Metric2 metric_at(const Params& params, const Vec2& r);

/// (x1, x2, x0) with x0 > 0 on r^2 - sgn(alpha) x0^2 = -1/alpha.
std::array<double, 3> embed(const Params& params, const Vec2& r);

/// Imaginary gauge function i beta_eff/(4 alpha) log(1 + alpha r^2).
std::complex<double> gauge_phi(const Params& params, double beta_eff, const Vec2& r);
/// Its gradient, i beta_eff r / (2 (1 + alpha r^2)). Defined for alpha = 0 too.
std::array<std::complex<double>, 2> gauge_gradient(const Params& params, double beta_eff, const Vec2& r);

double measure_exponent(const Params& params, MeasureKind which);
double measure_weight(const Params& params, MeasureKind which, const Vec2& r);

/// omega2 r^2 / (1 + alpha r^2).
double higgs_potential(const Params& params, double omega2, const Vec2& r);

/// Laplace-Beltrami operator d^2 + alpha (r.d)^2 + alpha r.d, exact on polynomials.
GradedPoly2 laplace_beltrami_apply(const Params& params, const GradedPoly2& f);

}  // namespace zernike
