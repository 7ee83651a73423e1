#pragma once

#include <random>
#include <vector>

#include "zernike/graded_poly.hpp"
#include "zernike/params.hpp"

namespace zernike {

/// Complex coefficients uniform in [-1, 1]^2 on every z^a zbar^b with a + b <= max_degree.
GradedPoly2 random_polynomial(std::mt19937_64& rng, int max_degree);

/// Same, restricted to real-valued polynomials (coeff(a,b) = conj(coeff(b,a))).
GradedPoly2 random_real_polynomial(std::mt19937_64& rng, int max_degree);

/// Points uniform in the disk of radius fraction * r0 (radius `fraction` when alpha == 0).
std::vector<Vec2> random_interior_points(const Params& params, int count, std::mt19937_64& rng,
                                         double fraction = 0.9);

}  // namespace zernike
