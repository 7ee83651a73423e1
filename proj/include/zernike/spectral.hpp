#pragma once

#include <array>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "zernike/graded_poly.hpp"
#include "zernike/params.hpp"

namespace zernike {

/// Which Hamiltonian a matrix or pointwise evaluation refers to.
///  - zernike:         H = -hbar^2 (d^2 + alpha D^2 + beta D)
///  - higgs_pq:        p^2 + alpha (p.r)(r.p) + V_{bt - 2 hbar alpha} + hbar (bt - 2 hbar alpha),
///                     p the DeWitt momentum -i hbar (d + d log g^(1/4))
///  - higgs_laplacian: -hbar^2 Lap_g + (bt - hbar alpha)(bt - 3 hbar alpha) r^2/(4(1 + alpha r^2))
///                     + hbar (bt - hbar alpha)
///  - free_particle:   p^2 + alpha (p.r)(r.p) alone (higgs_pq at beta = 2 alpha)
/// with bt = hbar beta.
enum class OperatorTag { zernike, higgs_pq, higgs_laplacian, free_particle };

const char* to_string(OperatorTag tag);
OperatorTag operator_tag_from_string(const std::string& name);

/// Sign convention for the real similarity factor G = (1 + alpha r^2)^gamma that
/// maps the Zernike form onto the Higgs form, G H_zernike G^-1 = H_higgs.
enum class SimilarityConvention {
    derived,  ///< gamma = +(beta - alpha)/(4 alpha); the identity holds
    printed,  ///< gamma = -(beta - alpha)/(4 alpha); kept to document that it fails
};

double similarity_exponent(const Params& params, SimilarityConvention convention = SimilarityConvention::derived);

struct BasisSpec {
    int max_degree = 0;
    std::optional<int> m_sector;
};

/// Monomials z^a zbar^b with a + b <= max_degree (and a - b = m_sector when set),
/// ordered by degree, then by decreasing angular index.
std::vector<Monomial> basis_monomials(const BasisSpec& basis);

/// Dense matrix of an operator in the monomial basis e_b = z^a zbar^b.
/// For the Higgs tags the basis functions are the gauge-mapped G e_b, where the
/// Higgs eigenfunctions live; `gauge_exponent` records gamma (0 for zernike).
struct OperatorMatrix {
    /// H e_b = sum_a entries(a, b) e_a within the basis span.
    Eigen::MatrixXcd entries;
    /// <e_a, H e_b>_w
    Eigen::MatrixXcd galerkin;
    /// <e_a, e_b>_w
    Eigen::MatrixXcd gram;
    BasisSpec basis;
    std::vector<Monomial> monomials;
    double weight_exponent = 0.0;
    double gauge_exponent = 0.0;
    OperatorTag tag = OperatorTag::zernike;
    Params params;

    /// Wrap a bare matrix: identity Gram, galerkin == entries.
    static OperatorMatrix from_dense(Eigen::MatrixXcd m);
};

struct AssembleOptions {
    /// Node-doubling tolerance for quadrature-assembled entries.
    double quadrature_tol = 1e-8;
};

/// Requires alpha < 0. Throws DomainError for alpha >= 0 or a non-integrable
/// weight, QuadratureError when doubling the node count moves an entry by more
/// than options.quadrature_tol (relative to the largest entry).
OperatorMatrix assemble(const Params& params, OperatorTag tag, const BasisSpec& basis,
                        double weight_exponent, const AssembleOptions& options = {});

struct SpectrumRow {
    int n = 0;
    int m = 0;
    double e_exact = 0.0;
    cplx e_numeric;
    double abs_err = 0.0;
};

struct SpectrumReport {
    /// Sorted by real part, then imaginary part. Hamiltonian eigenvalues.
    std::vector<cplx> eigenvalues;
    double max_imag = 0.0;
    std::optional<std::vector<double>> compared_to;
    double max_abs_deviation = 0.0;
    /// One row per compared basis label; energies in Zernike units E = lambda / hbar^2.
    std::vector<SpectrumRow> rows;
};

inline constexpr int kEigenDimensionCap = 600;

/// All eigenvalues of `matrix.entries`. ConvergenceError if the QR iteration fails.
SpectrumReport eigen(const OperatorMatrix& matrix, int dimension_cap = kEigenDimensionCap);

/// Match every basis label (n, m) to the nearest unused numeric eigenvalue
/// and fill rows / compared_to / max_abs_deviation. Higgs tags compare only
/// n <= max_degree - 2.
void compare_with_exact(SpectrumReport& report, const OperatorMatrix& matrix);

/// max |M_ab - conj(M_ba)| / (1 + max |M|) on the Galerkin form.
double symmetry_defect(const OperatorMatrix& matrix);

nlohmann::json to_json(const SpectrumReport& report);
/// Columns n, m, E_exact, E_numeric_re, E_numeric_im, abs_err.
std::string to_csv(const SpectrumReport& report);

// ---------------------------------------------------------------------------
// Pointwise action

/// Value, gradient and Hessian (xx, xy, yy) of a function at a point.
struct Jet {
    cplx value;
    std::array<cplx, 2> grad{};
    std::array<cplx, 3> hess{};
};

Jet poly_jet(const GradedPoly2& f, const Vec2& r);
/// Jet of (1 + alpha r^2)^exponent.
Jet power_factor_jet(const Params& params, double exponent, const Vec2& r);
Jet operator*(const Jet& u, const Jet& v);

/// Apply the tagged operator to the function described by `psi` at point r.
cplx apply_pointwise(const Params& params, OperatorTag tag, const Jet& psi, const Vec2& r);

/// max over points of |G (H_Z f) - H_target (G f)| / max(1, |lhs|, |rhs|).
double similarity_deviation(const Params& params, const GradedPoly2& f, std::span<const Vec2> points,
                            OperatorTag target = OperatorTag::higgs_pq,
                            SimilarityConvention convention = SimilarityConvention::derived);

/// Max similarity deviation over `trials` random polynomials of degree <= max_degree
/// plus the constant polynomial.
double similarity_check(const Params& params, int max_degree, std::span<const Vec2> points,
                        std::mt19937_64& rng, OperatorTag target = OperatorTag::higgs_pq,
                        SimilarityConvention convention = SimilarityConvention::derived,
                        int trials = 8);

/// max over points of |H_pq f - H_laplacian f| / max(1, |H_pq f|, |H_laplacian f|).
double operator_form_deviation(const Params& params, const GradedPoly2& f, std::span<const Vec2> points);
double operator_form_consistency(const Params& params, std::span<const Vec2> points, std::mt19937_64& rng,
                                 int max_degree = 4, int trials = 8);

/// One candidate weight exponent of the pseudo-Hermiticity search.
struct WeightCandidate {
    std::string label;
    double exponent = 0.0;
    bool integrable = false;
    /// symmetry_defect of the zernike matrix under this weight; +inf if not integrable.
    double defect = 0.0;
};

/// Evaluates the zernike matrix (degree <= max_degree) under the weight exponents
/// (alpha - beta)/(2 alpha) - 1/2 and (beta - alpha)/(2 alpha) - 1/2.
std::vector<WeightCandidate> pseudo_hermiticity_search(const Params& params, int max_degree);

}  // namespace zernike
