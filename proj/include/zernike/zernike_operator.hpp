#pragma once

#include <optional>

#include "zernike/graded_poly.hpp"
#include "zernike/params.hpp"

namespace zernike {

/// Normalization applied to constructed eigenfunctions.
enum class Normalization {
    monic_top,  ///< coefficient of the top monomial z^a zbar^b is 1
    rim,        ///< value 1 at (r0, 0), the classical R_n^m(1) = 1 convention
    unit_norm,  ///< unit L^2 norm under the flat (weight exponent 0) disk measure
};

struct EigenPair {
    int n = 0;
    int m = 0;
    /// Zernike eigenvalue E in Z psi = -E psi.
    double energy = 0.0;
    GradedPoly2 poly;
};

/// (d^2 + alpha D^2 + beta D) f, exact on coefficients.
GradedPoly2 apply_zernike(const Params& params, const GradedPoly2& f);

/// Diagonal value alpha n^2 + beta n of Z on homogeneous degree-n polynomials.
double degree_block_eigenvalue(const Params& params, int n);

/// E_n = -n (alpha n + beta).
double exact_eigenvalue(const Params& params, int n);

/// Locus where lambda_{n-2k} ~ lambda_n for some n <= max_degree and 1 <= k <= n/2
/// (restricted to angular index m when given). Returns the first offending (n, k).
struct ResonanceLocus {
    int n = 0;
    int k = 0;
};
std::optional<ResonanceLocus> find_resonance(const Params& params, int max_degree,
                                             std::optional<int> m_sector = std::nullopt);

/// Polynomial eigenfunction with top component z^a zbar^b, a = (n+m)/2, b = (n-m)/2,
/// built by back-substitution through the lower degrees.
/// Throws DomainError for invalid (n, m) and ResonanceError on the resonance locus.
EigenPair build_eigenfunction(const Params& params, int n, int m,
                              Normalization mode = Normalization::monic_top);

/// Weighted disk inner product
///   int_{|r| < r0} (1 + alpha r^2)^weight_exponent conj(f) g d^2r,
/// exact for polynomials. Requires alpha < 0 and weight_exponent > -1.
cplx inner_product(const GradedPoly2& f, const GradedPoly2& g, double weight_exponent,
                   const Params& params);

/// ||(Z + E) poly|| in the weighted norm.
double residual_norm(const Params& params, const EigenPair& pair, double weight_exponent);

/// Weighted norm ||f||.
double weighted_norm(const GradedPoly2& f, double weight_exponent, const Params& params);

}  // namespace zernike
