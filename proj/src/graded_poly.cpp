#include "zernike/graded_poly.hpp"

#include <algorithm>
#include <cmath>

#include "zernike/errors.hpp"

namespace zernike {

namespace {

constexpr cplx kI{0.0, 1.0};

// Binomial coefficients, small n only.
double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

cplx ipow(cplx base, int e) {
    cplx r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

GradedPoly2::GradedPoly2(Terms terms) {
    for (const auto& [mono, c] : terms) {
        if (mono.a < 0 || mono.b < 0) throw DomainError("GradedPoly2: negative exponent");
        add_term(mono, c);
    }
}

GradedPoly2 GradedPoly2::constant(cplx c) { return monomial(0, 0, c); }

GradedPoly2 GradedPoly2::monomial(int a, int b, cplx c) {
    if (a < 0 || b < 0) throw DomainError("GradedPoly2::monomial: negative exponent");
    GradedPoly2 p;
    p.add_term({a, b}, c);
    return p;
}

GradedPoly2 GradedPoly2::x1() { return monomial(1, 0, 0.5) + monomial(0, 1, 0.5); }

GradedPoly2 GradedPoly2::x2() {
    return monomial(1, 0, -0.5 * kI) + monomial(0, 1, 0.5 * kI);
}

GradedPoly2 GradedPoly2::r2() { return monomial(1, 1); }

GradedPoly2 GradedPoly2::from_cartesian(const std::map<std::pair<int, int>, cplx>& coeffs) {
    // x1^i x2^j = ((z+zbar)/2)^i ((z-zbar)/(2i))^j, expanded binomially.
    GradedPoly2 out;
    for (const auto& [ij, c] : coeffs) {
        const auto [i, j] = ij;
        const cplx scale = c / (std::pow(2.0, i + j) * ipow(kI, j));
        for (int k = 0; k <= i; ++k) {
            for (int l = 0; l <= j; ++l) {
                const double sign = ((j - l) % 2 == 0) ? 1.0 : -1.0;
                out.add_term({k + l, (i - k) + (j - l)},
                             scale * binomial(i, k) * binomial(j, l) * sign);
            }
        }
    }
    return out;
}

void GradedPoly2::add_term(const Monomial& mono, cplx c) {
    if (c == cplx{}) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (it->second == cplx{}) terms_.erase(it);
    }
}

cplx GradedPoly2::coeff(int a, int b) const {
    const auto it = terms_.find({a, b});
    return it == terms_.end() ? cplx{} : it->second;
}

int GradedPoly2::degree() const {
    int n = -1;
    for (const auto& [mono, c] : terms_) n = std::max(n, mono.degree());
    return n;
}

GradedPoly2& GradedPoly2::operator+=(const GradedPoly2& other) {
    for (const auto& [mono, c] : other.terms_) add_term(mono, c);
    return *this;
}

GradedPoly2& GradedPoly2::operator-=(const GradedPoly2& other) {
    for (const auto& [mono, c] : other.terms_) add_term(mono, -c);
    return *this;
}

GradedPoly2& GradedPoly2::operator*=(cplx s) {
    if (s == cplx{}) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, c] : terms_) c *= s;
    return *this;
}

GradedPoly2 operator*(const GradedPoly2& lhs, const GradedPoly2& rhs) {
    GradedPoly2 out;
    for (const auto& [m1, c1] : lhs.terms_)
        for (const auto& [m2, c2] : rhs.terms_) out.add_term({m1.a + m2.a, m1.b + m2.b}, c1 * c2);
    return out;
}

GradedPoly2 GradedPoly2::euler() const {
    GradedPoly2 out;
    for (const auto& [mono, c] : terms_) out.add_term(mono, c * double(mono.degree()));
    return out;
}

GradedPoly2 GradedPoly2::laplacian() const {
    GradedPoly2 out;
    for (const auto& [mono, c] : terms_) {
        if (mono.a > 0 && mono.b > 0) out.add_term({mono.a - 1, mono.b - 1}, c * (4.0 * mono.a * mono.b));
    }
    return out;
}

GradedPoly2 GradedPoly2::d_z() const {
    GradedPoly2 out;
    for (const auto& [mono, c] : terms_)
        if (mono.a > 0) out.add_term({mono.a - 1, mono.b}, c * double(mono.a));
    return out;
}

GradedPoly2 GradedPoly2::d_zbar() const {
    GradedPoly2 out;
    for (const auto& [mono, c] : terms_)
        if (mono.b > 0) out.add_term({mono.a, mono.b - 1}, c * double(mono.b));
    return out;
}

GradedPoly2 GradedPoly2::d_x1() const { return d_z() + d_zbar(); }

GradedPoly2 GradedPoly2::d_x2() const { return (d_z() - d_zbar()) * kI; }

GradedPoly2 GradedPoly2::times_r2() const {
    GradedPoly2 out;
    for (const auto& [mono, c] : terms_) out.add_term({mono.a + 1, mono.b + 1}, c);
    return out;
}

GradedPoly2 GradedPoly2::conj() const {
    // conj(z^a zbar^b) = z^b zbar^a
    GradedPoly2 out;
    for (const auto& [mono, c] : terms_) out.add_term({mono.b, mono.a}, std::conj(c));
    return out;
}

GradedPoly2 GradedPoly2::sector(int m) const {
    GradedPoly2 out;
    for (const auto& [mono, c] : terms_)
        if (mono.angular() == m) out.add_term(mono, c);
    return out;
}

bool GradedPoly2::is_real_valued(double tol) const {
    for (const auto& [mono, c] : terms_) {
        if (std::abs(c - std::conj(coeff(mono.b, mono.a))) > tol) return false;
    }
    return true;
}

double GradedPoly2::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

cplx GradedPoly2::evaluate(double x1, double x2) const {
    return evaluate_z({x1, x2}, {x1, -x2});
}

cplx GradedPoly2::evaluate_z(cplx z, cplx zbar) const {
    const int n = std::max(degree(), 0);
    std::vector<cplx> zp(n + 1, 1.0), zbp(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) {
        zp[k] = zp[k - 1] * z;
        zbp[k] = zbp[k - 1] * zbar;
    }
    cplx sum = 0.0;
    for (const auto& [mono, c] : terms_) sum += c * zp[mono.a] * zbp[mono.b];
    return sum;
}

std::map<std::pair<int, int>, cplx> GradedPoly2::to_cartesian() const {
    // z^a zbar^b = (x1 + i x2)^a (x1 - i x2)^b
    std::map<std::pair<int, int>, cplx> out;
    for (const auto& [mono, c] : terms_) {
        for (int k = 0; k <= mono.a; ++k) {
            for (int l = 0; l <= mono.b; ++l) {
                const int px2 = k + l;
                const int px1 = mono.a + mono.b - px2;
                const cplx factor = binomial(mono.a, k) * binomial(mono.b, l) * ipow(kI, k) *
                                    ipow(-kI, l);
                out[{px1, px2}] += c * factor;
            }
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == cplx{}; });
    return out;
}

GradedPoly2 GradedPoly2::pruned(double tol) const {
    GradedPoly2 out;
    for (const auto& [mono, c] : terms_)
        if (std::abs(c) > tol) out.add_term(mono, c);
    return out;
}

nlohmann::json to_json(const GradedPoly2& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [mono, c] : p.terms()) {
        terms.push_back({{"a", mono.a}, {"b", mono.b}, {"re", c.real()}, {"im", c.imag()}});
    }
    return {{"terms", terms}};
}

GradedPoly2 poly_from_json(const nlohmann::json& j) {
    GradedPoly2::Terms terms;
    try {
        for (const auto& t : j.at("terms")) {
            const Monomial mono{t.at("a").get<int>(), t.at("b").get<int>()};
            if (mono.a < 0 || mono.b < 0) throw ConfigError("malformed polynomial JSON: negative exponent");
            terms[mono] += cplx{t.at("re").get<double>(), t.at("im").get<double>()};
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed polynomial JSON: ") + e.what());
    }
    return GradedPoly2(std::move(terms));
}

}  // namespace zernike
