#include "zernike/sampling.hpp"

#include <cmath>

namespace zernike {

GradedPoly2 random_polynomial(std::mt19937_64& rng, int max_degree) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    GradedPoly2::Terms terms;
    for (int n = 0; n <= max_degree; ++n)
        for (int a = 0; a <= n; ++a) terms[{a, n - a}] = cplx{coef(rng), coef(rng)};
    return GradedPoly2(std::move(terms));
}

GradedPoly2 random_real_polynomial(std::mt19937_64& rng, int max_degree) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    GradedPoly2::Terms terms;
    for (int n = 0; n <= max_degree; ++n) {
        for (int a = 0; 2 * a <= n; ++a) {
            const int b = n - a;
            if (a == b) {
                terms[{a, b}] = coef(rng);
            } else {
                const cplx c{coef(rng), coef(rng)};
                terms[{a, b}] = c;
                terms[{b, a}] = std::conj(c);
            }
        }
    }
    return GradedPoly2(std::move(terms));
}

std::vector<Vec2> random_interior_points(const Params& params, int count, std::mt19937_64& rng,
                                         double fraction) {
    const double radius = fraction * (params.alpha == 0.0 ? 1.0 : params.r0());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Vec2> points;
    points.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double rho = radius * std::sqrt(unit(rng));
        const double theta = 2.0 * M_PI * unit(rng);
        points.push_back({rho * std::cos(theta), rho * std::sin(theta)});
    }
    return points;
}

}  // namespace zernike
