#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace zernike {

using cplx = std::complex<double>;

/// Exponent pair (a, b) of the circular-harmonic monomial z^a zbar^b,
/// z = x1 + i x2. Degree n = a + b, angular index m = a - b.
struct Monomial {
    int a = 0;
    int b = 0;

    int degree() const { return a + b; }
    int angular() const { return a - b; }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Bivariate polynomial in the graded basis z^a zbar^b with complex
/// coefficients. Value type; every operation returns a new polynomial.
///
/// The two differential operators that build the Zernike operator are sparse
/// here: the Euler operator D = r.d is diagonal, D(z^a zbar^b) = (a+b) z^a zbar^b,
/// and the flat Laplacian d^2 = 4 d_z d_zbar lowers (a, b) -> (a-1, b-1) with
/// coefficient 4ab.
class GradedPoly2 {
public:
    using Terms = std::map<Monomial, cplx>;

    GradedPoly2() = default;
    explicit GradedPoly2(Terms terms);

    static GradedPoly2 constant(cplx c);
    static GradedPoly2 monomial(int a, int b, cplx c = 1.0);
    /// x1 = (z + zbar)/2, x2 = (z - zbar)/(2i), r^2 = z zbar.
    static GradedPoly2 x1();
    static GradedPoly2 x2();
    static GradedPoly2 r2();
    /// Build from Cartesian coefficients: coeffs[{i, j}] multiplies x1^i x2^j.
    static GradedPoly2 from_cartesian(const std::map<std::pair<int, int>, cplx>& coeffs);

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    cplx coeff(int a, int b) const;
    /// Highest a + b present; -1 for the zero polynomial.
    int degree() const;

    GradedPoly2& operator+=(const GradedPoly2& other);
    GradedPoly2& operator-=(const GradedPoly2& other);
    GradedPoly2& operator*=(cplx s);
    friend GradedPoly2 operator+(GradedPoly2 lhs, const GradedPoly2& rhs) { return lhs += rhs; }
    friend GradedPoly2 operator-(GradedPoly2 lhs, const GradedPoly2& rhs) { return lhs -= rhs; }
    friend GradedPoly2 operator*(GradedPoly2 p, cplx s) { return p *= s; }
    friend GradedPoly2 operator*(cplx s, GradedPoly2 p) { return p *= s; }
    friend GradedPoly2 operator*(const GradedPoly2& lhs, const GradedPoly2& rhs);

    /// Euler operator r.d.
    GradedPoly2 euler() const;
    /// Flat Laplacian d1^2 + d2^2.
    GradedPoly2 laplacian() const;
    GradedPoly2 d_z() const;
    GradedPoly2 d_zbar() const;
    /// Cartesian partials: d1 = d_z + d_zbar, d2 = i (d_z - d_zbar).
    GradedPoly2 d_x1() const;
    GradedPoly2 d_x2() const;
    /// Multiply by r^2 = z zbar.
    GradedPoly2 times_r2() const;
    GradedPoly2 conj() const;

    /// Terms whose angular index equals m.
    GradedPoly2 sector(int m) const;
    /// True when coeff(a,b) = conj(coeff(b,a)) for all terms, to `tol` absolute.
    bool is_real_valued(double tol = 0.0) const;
    double max_abs_coeff() const;

    cplx evaluate(double x1, double x2) const;
    /// Evaluate at complex z, zbar treated as independent variables.
    cplx evaluate_z(cplx z, cplx zbar) const;

    /// Expand into Cartesian coefficients of x1^i x2^j.
    std::map<std::pair<int, int>, cplx> to_cartesian() const;

    /// Drop terms with |c| <= tol.
    GradedPoly2 pruned(double tol) const;

private:
    void add_term(const Monomial& mono, cplx c);

    Terms terms_;
};

/// {"terms": [{"a":int, "b":int, "re":float, "im":float}, ...]}
nlohmann::json to_json(const GradedPoly2& p);
GradedPoly2 poly_from_json(const nlohmann::json& j);

}  // namespace zernike
