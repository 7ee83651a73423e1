#include "zernike/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "zernike/errors.hpp"
#include "zernike/geometry.hpp"
#include "zernike/quadrature.hpp"
#include "zernike/sampling.hpp"
#include "zernike/zernike_operator.hpp"

namespace zernike {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI{0.0, 1.0};

bool is_higgs(OperatorTag tag) { return tag != OperatorTag::zernike; }

// Parameters whose spectrum the tag reproduces: free_particle is higgs_pq at beta = 2 alpha.
Params effective_params(const Params& params, OperatorTag tag) {
    Params p = params;
    if (tag == OperatorTag::free_particle) p.beta = 2.0 * p.alpha;
    return p;
}

double basis_gauge_exponent(const Params& params, OperatorTag tag) {
    if (!is_higgs(tag)) return 0.0;
    return similarity_exponent(effective_params(params, tag));
}

bool complex_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

std::string fmt17(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

const char* to_string(OperatorTag tag) {
    switch (tag) {
        case OperatorTag::zernike: return "zernike";
        case OperatorTag::higgs_pq: return "higgs_pq";
        case OperatorTag::higgs_laplacian: return "higgs_laplacian";
        case OperatorTag::free_particle: return "free_particle";
    }
    return "unknown";
}

OperatorTag operator_tag_from_string(const std::string& name) {
    for (auto tag : {OperatorTag::zernike, OperatorTag::higgs_pq, OperatorTag::higgs_laplacian,
                     OperatorTag::free_particle}) {
        if (name == to_string(tag)) return tag;
    }
    throw ConfigError("unknown operator tag '" + name + "'");
}

double similarity_exponent(const Params& params, SimilarityConvention convention) {
    if (params.alpha == 0.0) throw DomainError("similarity_exponent: alpha = 0 is not supported");
    const double gamma = (params.beta - params.alpha) / (4.0 * params.alpha);
    return convention == SimilarityConvention::derived ? gamma : -gamma;
}

std::vector<Monomial> basis_monomials(const BasisSpec& basis) {
    if (basis.max_degree < 0) throw ConfigError("basis max_degree must be non-negative");
    std::vector<Monomial> out;
    for (int n = 0; n <= basis.max_degree; ++n) {
        for (int a = n; a >= 0; --a) {
            const Monomial mono{a, n - a};
            if (basis.m_sector && mono.angular() != *basis.m_sector) continue;
            out.push_back(mono);
        }
    }
    return out;
}

OperatorMatrix OperatorMatrix::from_dense(Eigen::MatrixXcd m) {
    if (m.rows() != m.cols()) throw DomainError("OperatorMatrix: matrix must be square");
    OperatorMatrix out;
    out.gram = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    out.galerkin = m;
    out.entries = std::move(m);
    return out;
}

// ---------------------------------------------------------------------------
// Pointwise action

Jet poly_jet(const GradedPoly2& f, const Vec2& r) {
    const GradedPoly2 fx = f.d_x1();
    const GradedPoly2 fy = f.d_x2();
    Jet j;
    j.value = f.evaluate(r[0], r[1]);
    j.grad = {fx.evaluate(r[0], r[1]), fy.evaluate(r[0], r[1])};
    j.hess = {fx.d_x1().evaluate(r[0], r[1]), fx.d_x2().evaluate(r[0], r[1]),
              fy.d_x2().evaluate(r[0], r[1])};
    return j;
}

Jet power_factor_jet(const Params& params, double exponent, const Vec2& r) {
    const double a = params.alpha;
    const double s = domain_factor(params, r);
    const double g = std::pow(s, exponent);
    const double d1 = exponent * g / s * 2.0 * a;                                 // coefficient of x_i
    const double d2 = exponent * (exponent - 1.0) * g / (s * s) * 4.0 * a * a;    // of x_i x_j
    Jet j;
    j.value = g;
    j.grad = {d1 * r[0], d1 * r[1]};
    j.hess = {d1 + d2 * r[0] * r[0], d2 * r[0] * r[1], d1 + d2 * r[1] * r[1]};
    return j;
}

Jet operator*(const Jet& u, const Jet& v) {
    Jet w;
    w.value = u.value * v.value;
    w.grad = {u.value * v.grad[0] + v.value * u.grad[0], u.value * v.grad[1] + v.value * u.grad[1]};
    w.hess = {u.value * v.hess[0] + v.value * u.hess[0] + 2.0 * u.grad[0] * v.grad[0],
              u.value * v.hess[1] + v.value * u.hess[1] + u.grad[0] * v.grad[1] + u.grad[1] * v.grad[0],
              u.value * v.hess[2] + v.value * u.hess[2] + 2.0 * u.grad[1] * v.grad[1]};
    return w;
}

cplx apply_pointwise(const Params& params, OperatorTag tag, const Jet& psi, const Vec2& r) {
    const double alpha = params.alpha;
    const double hbar = params.hbar;
    const double hb2 = hbar * hbar;
    const double bt = params.beta_tilde();
    const double r2 = norm2(r);
    const double s = domain_factor(params, r);

    const cplx lap = psi.hess[0] + psi.hess[2];
    const cplx d1 = r[0] * psi.grad[0] + r[1] * psi.grad[1];
    const cplx d2 = r[0] * r[0] * psi.hess[0] + 2.0 * r[0] * r[1] * psi.hess[1] +
                    r[1] * r[1] * psi.hess[2] + d1;

    if (tag == OperatorTag::zernike) return -hb2 * (lap + alpha * d2 + params.beta * d1);
    if (tag == OperatorTag::higgs_laplacian) {
        const double coupling = (bt - hbar * alpha) * (bt - 3.0 * hbar * alpha) / 4.0;
        return -hb2 * (lap + alpha * d2 + alpha * d1) +
               (coupling * r2 / s + hbar * (bt - hbar * alpha)) * psi.value;
    }

    // DeWitt momentum p = -i hbar (d + A), A = d log g^(1/4) = -alpha r / (2 s).
    const double a_dot_x = -alpha * r2 / (2.0 * s);
    const double a_dot_a = alpha * alpha * r2 / (4.0 * s * s);
    const double div_a = -alpha / (s * s);
    const double d_a_dot_x = -alpha * r2 / (s * s);
    const cplx a_dot_grad = -alpha / (2.0 * s) * d1;

    // p^2 psi
    const cplx p_sq = -hb2 * (lap + div_a * psi.value + 2.0 * a_dot_grad + a_dot_a * psi.value);
    // (r.p) psi = -i hbar q,  q = D psi + (A.x) psi;  (p.r)(r.p) psi = -hbar^2 (2q + Dq + (A.x) q)
    const cplx q = d1 + a_dot_x * psi.value;
    const cplx dq = d2 + d_a_dot_x * psi.value + a_dot_x * d1;
    const cplx radial = -hb2 * (2.0 * q + dq + a_dot_x * q);
    const cplx kinetic = p_sq + alpha * radial;
    if (tag == OperatorTag::free_particle) return kinetic;

    const double freq = bt - 2.0 * hbar * alpha;
    return kinetic + (freq * freq * r2 / (4.0 * s) + hbar * freq) * psi.value;
}

double similarity_deviation(const Params& params, const GradedPoly2& f, std::span<const Vec2> points,
                            OperatorTag target, SimilarityConvention convention) {
    const GradedPoly2 hz_f = apply_zernike(params, f) * cplx(-params.hbar * params.hbar);
    const double gamma = similarity_exponent(params, convention);
    double worst = 0.0;
    for (const Vec2& r : points) {
        const Jet g = power_factor_jet(params, gamma, r);
        const cplx lhs = g.value * hz_f.evaluate(r[0], r[1]);
        const cplx rhs = apply_pointwise(params, target, g * poly_jet(f, r), r);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
    }
    return worst;
}

double similarity_check(const Params& params, int max_degree, std::span<const Vec2> points,
                        std::mt19937_64& rng, OperatorTag target, SimilarityConvention convention,
                        int trials) {
    double worst = similarity_deviation(params, GradedPoly2::constant(1.0), points, target, convention);
    for (int t = 0; t < trials; ++t) {
        const GradedPoly2 f = random_polynomial(rng, max_degree);
        worst = std::max(worst, similarity_deviation(params, f, points, target, convention));
    }
    return worst;
}

double operator_form_deviation(const Params& params, const GradedPoly2& f, std::span<const Vec2> points) {
    double worst = 0.0;
    for (const Vec2& r : points) {
        const Jet j = poly_jet(f, r);
        const cplx pq = apply_pointwise(params, OperatorTag::higgs_pq, j, r);
        const cplx lb = apply_pointwise(params, OperatorTag::higgs_laplacian, j, r);
        worst = std::max(worst, std::abs(pq - lb) / std::max({1.0, std::abs(pq), std::abs(lb)}));
    }
    return worst;
}

double operator_form_consistency(const Params& params, std::span<const Vec2> points, std::mt19937_64& rng,
                                 int max_degree, int trials) {
    double worst = operator_form_deviation(params, GradedPoly2::constant(1.0), points);
    for (int t = 0; t < trials; ++t)
        worst = std::max(worst, operator_form_deviation(params, random_polynomial(rng, max_degree), points));
    return worst;
}

// ---------------------------------------------------------------------------
// Assembly

namespace {

Eigen::MatrixXcd gram_matrix(const std::vector<Monomial>& basis, double exponent, const Params& params) {
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const GradedPoly2 ei = GradedPoly2::monomial(basis[i].a, basis[i].b);
        for (Eigen::Index j = i; j < dim; ++j) {
            if (basis[i].angular() != basis[j].angular()) continue;
            const cplx v = inner_product(ei, GradedPoly2::monomial(basis[j].a, basis[j].b), exponent, params);
            gram(i, j) = v;
            gram(j, i) = std::conj(v);
        }
    }
    return gram;
}

// <G e_a, H (G e_b)>_w by Gauss-Jacobi in u = r^2/r0^2 with weight (1-u)^(w + 2 gamma).
// Rotation covariance lets every basis function be evaluated on the positive x1 axis.
Eigen::MatrixXcd galerkin_by_quadrature(const Params& params, OperatorTag tag,
                                        const std::vector<Monomial>& basis, double gamma,
                                        double jacobi_exponent, int nodes) {
    const GaussJacobiRule rule = gauss_jacobi(nodes, jacobi_exponent, 0.0);
    const double r0 = params.r0();
    const auto dim = static_cast<Eigen::Index>(basis.size());
    std::vector<GradedPoly2> polys;
    polys.reserve(basis.size());
    for (const auto& mono : basis) polys.push_back(GradedPoly2::monomial(mono.a, mono.b));

    Eigen::MatrixXcd galerkin = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double rho = r0 * std::sqrt(rule.nodes[q]);
        const Vec2 point{rho, 0.0};
        const Jet g = power_factor_jet(params, gamma, point);
        const double scale = rule.weights[q] * kPi * r0 * r0 / g.value.real();
        for (Eigen::Index b = 0; b < dim; ++b) {
            const cplx hb = apply_pointwise(params, tag, g * poly_jet(polys[b], point), point);
            for (Eigen::Index a = 0; a < dim; ++a) {
                if (basis[a].angular() != basis[b].angular()) continue;
                galerkin(a, b) += scale * std::pow(rho, basis[a].degree()) * hb;
            }
        }
    }
    return galerkin;
}

}  // namespace

OperatorMatrix assemble(const Params& params, OperatorTag tag, const BasisSpec& basis,
                        double weight_exponent, const AssembleOptions& options) {
    params.validate();
    if (!(params.alpha < 0.0))
        throw DomainError("assemble: matrix assembly requires alpha < 0 (compact disk)");

    OperatorMatrix out;
    out.basis = basis;
    out.monomials = basis_monomials(basis);
    out.weight_exponent = weight_exponent;
    out.tag = tag;
    out.params = params;
    out.gauge_exponent = basis_gauge_exponent(params, tag);
    const auto dim = static_cast<Eigen::Index>(out.monomials.size());

    if (tag == OperatorTag::zernike) {
        out.entries = Eigen::MatrixXcd::Zero(dim, dim);
        std::map<Monomial, Eigen::Index> index;
        for (Eigen::Index i = 0; i < dim; ++i) index[out.monomials[i]] = i;
        const double scale = -params.hbar * params.hbar;
        for (Eigen::Index b = 0; b < dim; ++b) {
            const auto image = apply_zernike(params, GradedPoly2::monomial(out.monomials[b].a, out.monomials[b].b));
            for (const auto& [mono, c] : image.terms()) out.entries(index.at(mono), b) = scale * c;
        }
        out.gram = gram_matrix(out.monomials, weight_exponent, params);
        out.galerkin = out.gram * out.entries;
        return out;
    }

    const double gamma = out.gauge_exponent;
    const double jacobi_exponent = weight_exponent + 2.0 * gamma;
    if (!(jacobi_exponent > -1.0)) {
        std::ostringstream msg;
        msg << "assemble: weight exponent " << weight_exponent << " with gauge exponent " << gamma
            << " is not integrable at the rim";
        throw DomainError(msg.str());
    }
    out.gram = gram_matrix(out.monomials, jacobi_exponent, params);

    const int nodes = basis.max_degree + 4;
    out.galerkin = galerkin_by_quadrature(params, tag, out.monomials, gamma, jacobi_exponent, nodes);
    const Eigen::MatrixXcd doubled =
        galerkin_by_quadrature(params, tag, out.monomials, gamma, jacobi_exponent, 2 * nodes);
    const double scale = std::max(1.0, doubled.cwiseAbs().maxCoeff());
    const double change = (doubled - out.galerkin).cwiseAbs().maxCoeff() / scale;
    if (change > options.quadrature_tol) {
        std::ostringstream msg;
        msg << "assemble: node doubling moved Galerkin entries by " << change << " (tolerance "
            << options.quadrature_tol << ")";
        throw QuadratureError(msg.str());
    }
    out.galerkin = doubled;
    out.entries = out.gram.llt().solve(out.galerkin);
    return out;
}

// ---------------------------------------------------------------------------
// Spectra

SpectrumReport eigen(const OperatorMatrix& matrix, int dimension_cap) {
    const auto dim = matrix.entries.rows();
    if (dim > dimension_cap) {
        throw DomainError("eigen: dimension " + std::to_string(dim) + " exceeds cap " +
                          std::to_string(dimension_cap));
    }
    SpectrumReport report;
    if (dim == 0) return report;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(matrix.entries, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw ConvergenceError("eigen: QR iteration did not converge");
    const auto& values = solver.eigenvalues();
    report.eigenvalues.assign(values.data(), values.data() + values.size());
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), complex_less);
    for (const auto& v : report.eigenvalues) report.max_imag = std::max(report.max_imag, std::abs(v.imag()));
    return report;
}

void compare_with_exact(SpectrumReport& report, const OperatorMatrix& matrix) {
    const Params exact_params = effective_params(matrix.params, matrix.tag);
    const double hb2 = matrix.params.hbar * matrix.params.hbar;
    const int max_n = is_higgs(matrix.tag) ? matrix.basis.max_degree - 2 : matrix.basis.max_degree;

    std::vector<bool> used(report.eigenvalues.size(), false);
    std::vector<double> reference;
    report.rows.clear();
    report.max_abs_deviation = 0.0;
    for (const Monomial& mono : matrix.monomials) {
        if (mono.degree() > max_n) continue;
        const double exact = exact_eigenvalue(exact_params, mono.degree());
        std::size_t best = report.eigenvalues.size();
        double best_err = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
            if (used[i]) continue;
            const double err = std::abs(report.eigenvalues[i] / hb2 - exact);
            if (err < best_err) {
                best_err = err;
                best = i;
            }
        }
        if (best == report.eigenvalues.size()) break;
        used[best] = true;
        reference.push_back(exact);
        report.rows.push_back({mono.degree(), mono.angular(), exact, report.eigenvalues[best] / hb2, best_err});
        report.max_abs_deviation = std::max(report.max_abs_deviation, best_err);
    }
    report.compared_to = std::move(reference);
}

double symmetry_defect(const OperatorMatrix& matrix) {
    const Eigen::MatrixXcd& m = matrix.galerkin;
    if (m.size() == 0) return 0.0;
    const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    return defect / (1.0 + m.cwiseAbs().maxCoeff());
}

nlohmann::json to_json(const SpectrumReport& report) {
    nlohmann::json j;
    j["eigenvalues"] = nlohmann::json::array();
    for (const auto& v : report.eigenvalues) j["eigenvalues"].push_back({{"re", v.real()}, {"im", v.imag()}});
    j["max_imag"] = report.max_imag;
    j["compared_to"] = report.compared_to ? nlohmann::json(*report.compared_to) : nlohmann::json(nullptr);
    j["max_abs_deviation"] = report.max_abs_deviation;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        j["rows"].push_back({{"n", row.n},
                             {"m", row.m},
                             {"E_exact", row.e_exact},
                             {"E_numeric_re", row.e_numeric.real()},
                             {"E_numeric_im", row.e_numeric.imag()},
                             {"abs_err", row.abs_err}});
    }
    return j;
}

std::string to_csv(const SpectrumReport& report) {
    std::ostringstream os;
    os << "n,m,E_exact,E_numeric_re,E_numeric_im,abs_err\n";
    for (const auto& row : report.rows) {
        os << row.n << ',' << row.m << ',' << fmt17(row.e_exact) << ',' << fmt17(row.e_numeric.real()) << ','
           << fmt17(row.e_numeric.imag()) << ',' << fmt17(row.abs_err) << '\n';
    }
    return os.str();
}

std::vector<WeightCandidate> pseudo_hermiticity_search(const Params& params, int max_degree) {
    const double printed = measure_exponent(params, MeasureKind::transform) - 0.5;
    const double negated = measure_exponent(params, MeasureKind::transform_negated) - 0.5;
    std::vector<WeightCandidate> out{{"(alpha-beta)/(2alpha) - 1/2", printed},
                                     {"(beta-alpha)/(2alpha) - 1/2", negated}};
    for (auto& c : out) {
        c.integrable = c.exponent > -1.0;
        if (!c.integrable) {
            c.defect = std::numeric_limits<double>::infinity();
            continue;
        }
        c.defect = symmetry_defect(assemble(params, OperatorTag::zernike, {max_degree, std::nullopt}, c.exponent));
    }
    return out;
}

}  // namespace zernike
