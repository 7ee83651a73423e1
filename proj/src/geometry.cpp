#include "zernike/geometry.hpp"

#include <cmath>
#include <sstream>

#include "zernike/errors.hpp"

namespace zernike {

double domain_factor(const Params& params, const Vec2& r) {
    const double s = 1.0 + params.alpha * norm2(r);
    if (!(s > 0.0)) {
        std::ostringstream msg;
        msg << "point (" << r[0] << ", " << r[1] << ") outside metric domain: 1 + alpha r^2 = " << s;
        throw DomainError(msg.str());
    }
    return s;
}

namespace {

void require_curved(const Params& params, const char* op) {
    if (params.alpha == 0.0) throw DomainError(std::string(op) + ": alpha = 0 is not supported");
}

}  // namespace

Metric2 metric_at(const Params& params, const Vec2& r) {
    require_curved(params, "metric_at");
    const double s = domain_factor(params, r);
    const Eigen::Vector2d x(r[0], r[1]);
    Metric2 m;
    m.g = Eigen::Matrix2d::Identity() - (params.alpha / s) * x * x.transpose();
    m.g_inv = Eigen::Matrix2d::Identity() + params.alpha * x * x.transpose();
    m.det_g = 1.0 / s;
    return m;
}

std::array<double, 3> embed(const Params& params, const Vec2& r) {
    require_curved(params, "embed");
    const double s = domain_factor(params, r);
    // sgn(alpha) x0^2 = r^2 + 1/alpha  =>  x0^2 = (1 + alpha r^2)/|alpha|
    return {r[0], r[1], std::sqrt(s / std::abs(params.alpha))};
}

std::complex<double> gauge_phi(const Params& params, double beta_eff, const Vec2& r) {
    require_curved(params, "gauge_phi");
    const double s = domain_factor(params, r);
    return {0.0, beta_eff / (4.0 * params.alpha) * std::log(s)};
}

std::array<std::complex<double>, 2> gauge_gradient(const Params& params, double beta_eff, const Vec2& r) {
    const double s = domain_factor(params, r);
    const double c = beta_eff / (2.0 * s);
    return {std::complex<double>{0.0, c * r[0]}, std::complex<double>{0.0, c * r[1]}};
}

double measure_exponent(const Params& params, MeasureKind which) {
    require_curved(params, "measure_exponent");
    switch (which) {
        case MeasureKind::transform: return (params.alpha - params.beta) / (2.0 * params.alpha);
        case MeasureKind::transform_negated: return (params.beta - params.alpha) / (2.0 * params.alpha);
        case MeasureKind::invariant: return -0.5;
    }
    return 0.0;
}

double measure_weight(const Params& params, MeasureKind which, const Vec2& r) {
    const double exponent = measure_exponent(params, which);
    return std::pow(domain_factor(params, r), exponent);
}

double higgs_potential(const Params& params, double omega2, const Vec2& r) {
    const double s = domain_factor(params, r);
    return omega2 * norm2(r) / s;
}

GradedPoly2 laplace_beltrami_apply(const Params& params, const GradedPoly2& f) {
    // D acts as multiplication by the degree n, so each term picks up
    // 4ab on the lowered monomial plus alpha (n^2 + n) on itself.
    GradedPoly2::Terms out;
    for (const auto& [mono, c] : f.terms()) {
        const double n = mono.degree();
        out[mono] += c * (params.alpha * (n * n + n));
        if (mono.a > 0 && mono.b > 0) out[{mono.a - 1, mono.b - 1}] += c * (4.0 * mono.a * mono.b);
    }
    return GradedPoly2(std::move(out));
}

}  // namespace zernike
