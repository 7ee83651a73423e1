#include "zernike/zernike_operator.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "zernike/errors.hpp"
#include "zernike/quadrature.hpp"

namespace zernike {

namespace {

constexpr double kResonanceTol = 1e-10;
constexpr double kPi = 3.14159265358979323846;

bool resonant(double lambda_low, double lambda_top) {
    return std::abs(lambda_low - lambda_top) < kResonanceTol * (1.0 + std::abs(lambda_top));
}

}  // namespace

GradedPoly2 apply_zernike(const Params& params, const GradedPoly2& f) {
    GradedPoly2::Terms out;
    for (const auto& [mono, c] : f.terms()) {
        out[mono] += c * degree_block_eigenvalue(params, mono.degree());
        if (mono.a > 0 && mono.b > 0) out[{mono.a - 1, mono.b - 1}] += c * (4.0 * mono.a * mono.b);
    }
    return GradedPoly2(std::move(out));
}

double degree_block_eigenvalue(const Params& params, int n) {
    return params.alpha * n * n + params.beta * n;
}

double exact_eigenvalue(const Params& params, int n) {
    return -double(n) * (params.alpha * n + params.beta);
}

std::optional<ResonanceLocus> find_resonance(const Params& params, int max_degree,
                                             std::optional<int> m_sector) {
    for (int n = 0; n <= max_degree; ++n) {
        const double top = degree_block_eigenvalue(params, n);
        for (int k = 1; 2 * k <= n; ++k) {
            // the (n, m) block only reaches degree n - 2k when min(a, b) >= k
            if (m_sector && (n - std::abs(*m_sector)) / 2 < k) continue;
            if (m_sector && (n - *m_sector) % 2 != 0) continue;
            if (resonant(degree_block_eigenvalue(params, n - 2 * k), top)) return ResonanceLocus{n, k};
        }
    }
    return std::nullopt;
}

EigenPair build_eigenfunction(const Params& params, int n, int m, Normalization mode) {
    if (n < 0 || std::abs(m) > n || (n - m) % 2 != 0) {
        std::ostringstream msg;
        msg << "build_eigenfunction: invalid (n, m) = (" << n << ", " << m << ")";
        throw DomainError(msg.str());
    }
    const int a = (n + m) / 2;
    const int b = (n - m) / 2;
    const double lambda_top = degree_block_eigenvalue(params, n);

    GradedPoly2 component = GradedPoly2::monomial(a, b);
    GradedPoly2 poly = component;
    for (int k = 1; k <= std::min(a, b); ++k) {
        const double lambda_low = degree_block_eigenvalue(params, n - 2 * k);
        if (resonant(lambda_low, lambda_top)) {
            std::ostringstream msg;
            msg << "resonance at (n, k) = (" << n << ", " << k << "): beta = -2 alpha (n - k) = "
                << -2.0 * params.alpha * (n - k);
            throw ResonanceError(msg.str(), n, k);
        }
        component = component.laplacian() * cplx(-1.0 / (lambda_low - lambda_top));
        poly += component;
    }

    switch (mode) {
        case Normalization::monic_top: break;
        case Normalization::rim: {
            const double r0 = params.r0();
            const cplx rim_value = poly.evaluate(r0, 0.0);
            if (std::abs(rim_value) < 1e-14 * poly.max_abs_coeff())
                throw DomainError("build_eigenfunction: eigenfunction vanishes at the rim point");
            poly *= 1.0 / rim_value;
            break;
        }
        case Normalization::unit_norm: poly *= 1.0 / weighted_norm(poly, 0.0, params); break;
    }
    return EigenPair{n, m, exact_eigenvalue(params, n), std::move(poly)};
}

cplx inner_product(const GradedPoly2& f, const GradedPoly2& g, double weight_exponent,
                   const Params& params) {
    if (!(params.alpha < 0.0))
        throw DomainError("inner_product: requires alpha < 0 (compact disk)");
    if (!(weight_exponent > -1.0))
        throw DomainError("inner_product: weight exponent must exceed -1");
    if (f.empty() || g.empty()) return 0.0;

    const int nodes = (f.degree() + g.degree()) / 2 + 2;
    const GaussJacobiRule rule = gauss_jacobi(nodes, weight_exponent, 0.0);

    // u = r^2 / r0^2 maps the disk integral to pi r0^2 int_0^1 (1-u)^w r^(nf+ng) du.
    const double r0 = params.r0();
    const int max_power = (f.degree() + g.degree()) / 2;
    std::vector<double> moments(max_power + 1);
    for (int s = 0; s <= max_power; ++s) {
        moments[s] = rule.integrate([s](double u) { return std::pow(u, s); }) * kPi *
                     std::pow(r0, 2 * s + 2);
    }

    std::map<int, std::vector<std::pair<Monomial, cplx>>> g_by_sector;
    for (const auto& [mono, c] : g.terms()) g_by_sector[mono.angular()].emplace_back(mono, c);

    cplx sum = 0.0;
    for (const auto& [mf, cf] : f.terms()) {
        const auto it = g_by_sector.find(mf.angular());
        if (it == g_by_sector.end()) continue;
        for (const auto& [mg, cg] : it->second) {
            sum += std::conj(cf) * cg * moments[(mf.degree() + mg.degree()) / 2];
        }
    }
    return sum;
}

double weighted_norm(const GradedPoly2& f, double weight_exponent, const Params& params) {
    return std::sqrt(std::max(0.0, inner_product(f, f, weight_exponent, params).real()));
}

double residual_norm(const Params& params, const EigenPair& pair, double weight_exponent) {
    const GradedPoly2 residual = apply_zernike(params, pair.poly) + pair.poly * cplx(pair.energy);
    return weighted_norm(residual, weight_exponent, params);
}

}  // namespace zernike
