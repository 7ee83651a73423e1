#include "zernike/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "zernike/classical.hpp"
#include "zernike/errors.hpp"
#include "zernike/geometry.hpp"
#include "zernike/sampling.hpp"
#include "zernike/spectral.hpp"
#include "zernike/zernike_operator.hpp"

namespace zernike {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Recorder {
public:
    explicit Recorder(VerificationReport& report) : report_(report) {}

    // Pass iff measured <= tolerance. Exceptions from `body` turn into failures.
    void check(const std::string& suite, const std::string& name, const std::string& params, double tolerance,
               const std::function<double(std::string&)>& body) {
        CheckResult r{suite, name, params, CheckStatus::fail, kInf, tolerance, {}};
        try {
            r.measured = body(r.detail);
            r.status = r.measured <= tolerance ? CheckStatus::pass : CheckStatus::fail;
        } catch (const Error& e) {
            r.detail = std::string(e.kind()) + ": " + e.what();
        }
        report_.checks.push_back(std::move(r));
    }

    void skip(const std::string& suite, const std::string& name, const std::string& params, double tolerance,
              const std::string& why) {
        report_.checks.push_back({suite, name, params, CheckStatus::skip, 0.0, tolerance, why});
    }

    void finding(Finding f) { report_.findings.push_back(std::move(f)); }

private:
    VerificationReport& report_;
};

std::mt19937_64 suite_rng(std::uint64_t seed, int suite) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(suite)};
    return std::mt19937_64(seq);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// Geometry

double pullback_deviation(const Params& p, const Vec2& r) {
    const double h = 1e-6;
    Eigen::Matrix<double, 3, 2> J;
    for (int j = 0; j < 2; ++j) {
        Vec2 rp = r, rm = r;
        rp[j] += h;
        rm[j] -= h;
        const auto ep = embed(p, rp), em = embed(p, rm);
        for (int i = 0; i < 3; ++i) J(i, j) = (ep[i] - em[i]) / (2 * h);
    }
    Eigen::Matrix3d eta = Eigen::Matrix3d::Identity();
    eta(2, 2) = p.alpha < 0 ? 1.0 : -1.0;
    return (J.transpose() * eta * J - metric_at(p, r).g).cwiseAbs().maxCoeff();
}

double gauge_gradient_deviation(const Params& p, double beta_eff, const Vec2& r) {
    const double h = 1e-6;
    const auto grad = gauge_gradient(p, beta_eff, r);
    double worst = 0.0;
    for (int j = 0; j < 2; ++j) {
        Vec2 rp = r, rm = r;
        rp[j] += h;
        rm[j] -= h;
        const auto fd = (gauge_phi(p, beta_eff, rp) - gauge_phi(p, beta_eff, rm)) / (2 * h);
        worst = std::max(worst, std::abs(fd - grad[j]));
    }
    return worst;
}

// (1/sqrt g) d_i (sqrt g g^{ij} d_j f) by nested central differences, relative to the exact value.
double laplace_beltrami_deviation(const Params& p, const GradedPoly2& f, const GradedPoly2& lb, const Vec2& r) {
    const double h = 1e-4;
    auto flux = [&](const Vec2& q, int i) {
        const Metric2 m = metric_at(p, q);
        cplx grad[2];
        for (int j = 0; j < 2; ++j) {
            Vec2 qp = q, qm = q;
            qp[j] += h;
            qm[j] -= h;
            grad[j] = (f.evaluate(qp[0], qp[1]) - f.evaluate(qm[0], qm[1])) / (2 * h);
        }
        return std::sqrt(m.det_g) * (m.g_inv(i, 0) * grad[0] + m.g_inv(i, 1) * grad[1]);
    };
    cplx div = 0.0;
    for (int i = 0; i < 2; ++i) {
        Vec2 rp = r, rm = r;
        rp[i] += h;
        rm[i] -= h;
        div += (flux(rp, i) - flux(rm, i)) / (2 * h);
    }
    div /= std::sqrt(metric_at(p, r).det_g);
    const cplx exact = lb.evaluate(r[0], r[1]);
    return std::abs(div - exact) / std::max(1.0, std::abs(exact));
}

void geometry_suite(Recorder& rec, const std::vector<Params>& sets, std::uint64_t seed) {
    auto rng = suite_rng(seed, 1);
    std::set<double> magnitudes;
    for (const Params& p : sets) magnitudes.insert(std::abs(p.alpha));
    for (double mag : magnitudes) {
        for (double alpha : {-mag, mag}) {
            const Params p = make_params(alpha, 0.0);
            const std::string tag = "alpha=" + fmt(alpha);
            rec.check("geometry", "embedding_pullback", tag, 1e-8, [&](std::string& detail) {
                double worst = 0.0;
                for (const Vec2& r : random_interior_points(p, 200, rng)) worst = std::max(worst, pullback_deviation(p, r));
                detail = "200 random interior points";
                return worst;
            });
            rec.check("geometry", "gauge_gradient", tag, 1e-8, [&](std::string& detail) {
                double worst = 0.0;
                for (const Vec2& r : random_interior_points(p, 100, rng))
                    worst = std::max(worst, gauge_gradient_deviation(p, 1.7, r));
                detail = "beta_eff=1.7, 100 points";
                return worst;
            });
            rec.check("geometry", "laplace_beltrami", tag, 1e-6, [&](std::string& detail) {
                double worst = 0.0;
                for (int trial = 0; trial < 5; ++trial) {
                    const GradedPoly2 f = random_polynomial(rng, 4);
                    const GradedPoly2 lb = laplace_beltrami_apply(p, f);
                    for (const Vec2& r : random_interior_points(p, 20, rng, 0.7))
                        worst = std::max(worst, laplace_beltrami_deviation(p, f, lb, r));
                }
                detail = "5 random polynomials of degree <= 4, 20 points each";
                return worst;
            });
            const Params coincide = make_params(alpha, 2.0 * alpha);
            rec.check("geometry", "weight_coincidence_beta_2alpha", tag, 0.0, [&](std::string&) {
                double worst = 0.0;
                for (const Vec2& r : random_interior_points(coincide, 50, rng))
                    worst = std::max(worst, std::abs(measure_weight(coincide, MeasureKind::transform, r) -
                                                     measure_weight(coincide, MeasureKind::invariant, r)));
                return worst;
            });
        }
    }
}

// ---------------------------------------------------------------------------
// Poly engine

void poly_suite(Recorder& rec, const std::vector<Params>& sets, int max_degree) {
    constexpr int N = 12;
    for (const Params& p : sets) {
        const std::string tag = describe(p);
        rec.check("poly", "dense_spectrum_oracle", tag, 1e-9, [&](std::string& detail) {
            const auto basis = basis_monomials({N, std::nullopt});
            const auto dim = static_cast<Eigen::Index>(basis.size());
            Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
            for (Eigen::Index j = 0; j < dim; ++j) {
                const GradedPoly2 image = apply_zernike(p, GradedPoly2::monomial(basis[j].a, basis[j].b));
                for (Eigen::Index i = 0; i < dim; ++i) M(i, j) = image.coeff(basis[i].a, basis[i].b);
            }
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, false);
            if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");
            std::vector<double> got, want;
            double imag = 0.0;
            for (Eigen::Index i = 0; i < dim; ++i) {
                got.push_back(-solver.eigenvalues()[i].real());
                imag = std::max(imag, std::abs(solver.eigenvalues()[i].imag()));
            }
            for (int n = 0; n <= N; ++n)
                for (int k = 0; k <= n; ++k) want.push_back(exact_eigenvalue(p, n));
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            double worst = imag;
            for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
            detail = "degree <= 12 monomial basis, multiset {-n(alpha n + beta)} with multiplicity n+1";
            return worst;
        });

        if (const auto locus = find_resonance(p, max_degree)) {
            rec.skip("poly", "eigenfunction_residuals", tag, 1e-10,
                     "resonant at n=" + std::to_string(locus->n) + ", k=" + std::to_string(locus->k));
            continue;
        }
        rec.check("poly", "eigenfunction_residuals", tag, 1e-10, [&](std::string& detail) {
            double worst = 0.0;
            for (int n = 0; n <= max_degree; ++n) {
                for (int m = -n; m <= n; m += 2) {
                    const EigenPair pair = build_eigenfunction(p, n, m);
                    const GradedPoly2 res = apply_zernike(p, pair.poly) + pair.energy * pair.poly;
                    worst = std::max(worst, res.max_abs_coeff() / std::max(1.0, pair.poly.max_abs_coeff()));
                }
            }
            detail = "coefficient residual of (Z + E) psi, all (n, m) with n <= " + std::to_string(max_degree);
            return worst;
        });

        // Eigenfunctions are orthogonal under the weight that symmetrizes the operator.
        const double w_star = (p.beta - 2.0 * p.alpha) / (2.0 * p.alpha) + 0.0;
        const std::string name = "eigenfunction_orthogonality_w=" + fmt(w_star);
        if (!(w_star > -1.0)) {
            rec.skip("poly", name, tag, 1e-10, "weight not integrable at the rim");
            continue;
        }
        rec.check("poly", name, tag, 1e-10, [&](std::string& detail) {
            const int top = std::min(max_degree, 8);
            std::vector<EigenPair> pairs;
            for (int n = 0; n <= top; ++n) {
                for (int m = -n; m <= n; m += 2) {
                    EigenPair e = build_eigenfunction(p, n, m);
                    e.poly *= 1.0 / weighted_norm(e.poly, w_star, p);
                    pairs.push_back(std::move(e));
                }
            }
            double worst = 0.0;
            for (std::size_t i = 0; i < pairs.size(); ++i)
                for (std::size_t j = i + 1; j < pairs.size(); ++j)
                    if (pairs[i].n != pairs[j].n || pairs[i].m != pairs[j].m)
                        worst = std::max(worst, std::abs(inner_product(pairs[i].poly, pairs[j].poly, w_star, p)));
            detail = "unit-normalized eigenfunctions, n <= " + std::to_string(top);
            return worst;
        });
    }
}

// ---------------------------------------------------------------------------
// Spectral

void reality_suite(Recorder& rec, double hbar) {
    rec.check("spectral", "reality_sweep", "alpha in [-2,-0.25], beta in [-3,1], 20x20", 1e-8,
              [&](std::string& detail) {
                  double worst = 0.0;
                  for (int i = 0; i < 20; ++i) {
                      for (int j = 0; j < 20; ++j) {
                          const Params p = make_params(-2.0 + 1.75 * i / 19.0, -3.0 + 4.0 * j / 19.0, hbar);
                          const auto report = eigen(assemble(p, OperatorTag::zernike, {8, std::nullopt}, 0.0));
                          worst = std::max(worst, report.max_imag);
                      }
                  }
                  detail = "max |Im lambda| of the zernike matrix, degree <= 8";
                  return worst;
              });
}

void similarity_suite(Recorder& rec, const std::vector<Params>& sets, int max_degree, double tol_quad,
                      std::uint64_t seed) {
    auto rng = suite_rng(seed, 4);
    std::vector<Params> pointwise = sets;
    pointwise.push_back(make_params(std::abs(sets.front().alpha), 0.5, sets.front().hbar));
    for (const Params& p : pointwise) {
        const std::string tag = describe(p);
        rec.check("similarity", "pointwise_identity", tag, 1e-8, [&](std::string& detail) {
            const auto points = random_interior_points(p, 50, rng);
            detail = "50 interior points, random polynomials of degree <= 4 plus the constant";
            return similarity_check(p, 4, points, rng);
        });
    }

    std::set<double> alphas;
    for (const Params& p : sets) alphas.insert(p.alpha);
    for (double alpha : alphas) {
        const Params p = make_params(alpha, 2.0 * alpha, sets.front().hbar);
        const std::string tag = describe(p);
        rec.check("similarity", "beta_2alpha_reduces_to_kinetic", tag, 1e-8, [&](std::string& detail) {
            const auto points = random_interior_points(p, 50, rng);
            detail = "G-conjugated zernike operator vs -hbar^2 Laplace-Beltrami (DeWitt form)";
            return similarity_check(p, 4, points, rng, OperatorTag::free_particle);
        });
        rec.check("similarity", "free_particle_symmetry_sqrt_g", tag, 1e-10, [&](std::string& detail) {
            detail = "Galerkin matrix under weight exponent -1/2, degree <= 8";
            return symmetry_defect(assemble(p, OperatorTag::free_particle, {8, std::nullopt}, -0.5));
        });
    }

    const int degree = std::min(max_degree, 10);
    AssembleOptions options;
    options.quadrature_tol = tol_quad;
    for (const Params& p : sets) {
        const std::string tag = describe(p);
        if (!(p.alpha < 0.0)) continue;
        rec.check("similarity", "spectral_agreement_higgs_pq", tag, 1e-7, [&](std::string& detail) {
            double worst = 0.0;
            for (int m = -degree; m <= degree; ++m) {
                const BasisSpec basis{degree, m};
                auto z = eigen(assemble(p, OperatorTag::zernike, basis, 0.0)).eigenvalues;
                auto h = eigen(assemble(p, OperatorTag::higgs_pq, basis, 0.0, options)).eigenvalues;
                if (z.size() != h.size()) throw ConvergenceError("sector sizes differ");
                for (std::size_t i = 0; i < z.size(); ++i)
                    worst = std::max(worst, std::abs(z[i] - h[i]) / std::max(1.0, std::abs(z[i])));
            }
            detail = "per m-sector, degree <= " + std::to_string(degree) + ", relative to max(1, |lambda|)";
            return worst;
        });
        rec.check("similarity", "m_sector_commutation", tag, 1e-9, [&](std::string& detail) {
            std::vector<double> pooled, full;
            for (const auto& v : eigen(assemble(p, OperatorTag::zernike, {8, std::nullopt}, 0.0)).eigenvalues)
                full.push_back(v.real());
            for (int m = -8; m <= 8; ++m)
                for (const auto& v : eigen(assemble(p, OperatorTag::zernike, {8, m}, 0.0)).eigenvalues)
                    pooled.push_back(v.real());
            std::sort(full.begin(), full.end());
            std::sort(pooled.begin(), pooled.end());
            if (full.size() != pooled.size()) return kInf;
            double worst = 0.0;
            for (std::size_t i = 0; i < full.size(); ++i) worst = std::max(worst, std::abs(full[i] - pooled[i]));
            detail = "degree <= 8";
            return worst;
        });

        const auto points = random_interior_points(p, 50, rng);
        const double printed = similarity_check(p, 4, points, rng, OperatorTag::higgs_pq, SimilarityConvention::printed);
        const double derived = similarity_check(p, 4, points, rng, OperatorTag::higgs_pq, SimilarityConvention::derived);
        rec.finding({"similarity_factor_sign", tag,
                     "G = (1 + alpha r^2)^gamma with gamma = +(beta - alpha)/(4 alpha) conjugates the Zernike "
                     "operator into the Higgs operator; the opposite sign does not.",
                     {{"gamma_derived", similarity_exponent(p, SimilarityConvention::derived)},
                      {"deviation_derived", derived},
                      {"gamma_opposite", similarity_exponent(p, SimilarityConvention::printed)},
                      {"deviation_opposite", printed}}});
    }
}

void operator_form_suite(Recorder& rec, const std::vector<Params>& sets, std::uint64_t seed) {
    auto rng = suite_rng(seed, 5);
    for (const Params& p : sets) {
        const std::string tag = describe(p);
        const auto points = random_interior_points(p, 50, rng);
        double deviation = kInf;
        double constant = kInf;
        rec.check("operator_form", "pq_vs_laplace_beltrami", tag, 1e-8, [&](std::string& detail) {
            constant = operator_form_deviation(p, GradedPoly2::constant(1.0), points);
            deviation = operator_form_consistency(p, points, rng);
            detail = "50 points, random polynomials of degree <= 4 plus the constant";
            return deviation;
        });
        const double freq = p.beta_tilde() - 2.0 * p.hbar * p.alpha;
        const double shifted = p.beta_tilde() - p.hbar * p.alpha;
        rec.finding({"operator_form_consistency", tag,
                     "The (p.r)(r.p) form and the Laplace-Beltrami form are the same operator; the different "
                     "additive constants are compensated by the different potential coefficients.",
                     {{"max_relative_deviation", deviation},
                      {"constant_function_deviation", constant},
                      {"constant_pq_form", p.hbar * freq},
                      {"constant_lb_form", p.hbar * shifted},
                      {"potential_coefficient_pq_form", freq * freq / 4.0},
                      {"potential_coefficient_lb_form", shifted * (shifted - 2.0 * p.hbar * p.alpha) / 4.0}}});
    }
}

void weight_search_suite(Recorder& rec, const std::vector<Params>& sets) {
    for (const Params& p : sets) {
        const std::string tag = describe(p);
        std::vector<WeightCandidate> candidates;
        rec.check("weight_search", "symmetrizing_exponent_exists", tag, 1e-8, [&](std::string& detail) {
            candidates = pseudo_hermiticity_search(p, 8);
            double best = kInf;
            for (const auto& c : candidates) best = std::min(best, c.defect);
            detail = "min symmetry defect of the zernike Galerkin matrix over the two candidates, degree <= 8";
            return best;
        });
        if (candidates.empty()) continue;
        nlohmann::json data = nlohmann::json::array();
        std::string passing = "none";
        for (const auto& c : candidates) {
            data.push_back({{"candidate", c.label},
                            {"exponent", c.exponent},
                            {"integrable", c.integrable},
                            {"defect", c.integrable ? nlohmann::json(c.defect) : nlohmann::json(nullptr)}});
            if (c.integrable && c.defect < 1e-8) passing = passing == "none" ? c.label : passing + " and " + c.label;
        }
        rec.finding({"measure_exponent", tag, "Symmetrizing weight exponent: " + passing, data});

        // Higgs (p.r)(r.p) matrix under the invariant sqrt(g) weight.
        nlohmann::json higgs;
        try {
            higgs["symmetry_defect"] = symmetry_defect(assemble(p, OperatorTag::higgs_pq, {8, std::nullopt}, -0.5));
        } catch (const Error& e) {
            higgs["error"] = std::string(e.kind()) + ": " + e.what();
        }
        rec.finding({"higgs_matrix_sqrt_g_symmetry", tag,
                     "Symmetry defect of the Higgs-representation Galerkin matrix under weight exponent -1/2.",
                     higgs});
    }
}

// ---------------------------------------------------------------------------
// Classical

// Random real state on a bounded Higgs orbit. For alpha > 0 that needs E < omega^2;
// escaping orbits grow |x| exponentially and make absolute tolerances meaningless.
PhaseState random_bounded_state(const Params& p, std::mt19937_64& rng, double pmax) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double rmax = p.alpha < 0 ? 0.6 * p.r0() : 0.6;
    const double w2 = p.beta_tilde() * p.beta_tilde() / 4.0;
    for (int attempt = 0; attempt < 100000; ++attempt) {
        Vec2 x;
        do {
            x = {rmax * u(rng), rmax * u(rng)};
        } while (norm2(x) >= rmax * rmax);
        const PhaseState s = PhaseState::real(x, {pmax * u(rng), pmax * u(rng)});
        if (p.alpha < 0 || invariants(p, s).E < w2) return s;
    }
    throw ConvergenceError("no bounded initial state found (omega^2 too small)");
}

double log_slope(int order, const std::function<double(double)>& diff) {
    const std::vector<double> hs{1e-1, 1e-2, 1e-3, 1e-4};
    double worst = 0.0;
    for (std::size_t k = 1; k < hs.size(); ++k) {
        const double slope = std::log(diff(hs[k - 1]) / diff(hs[k])) / std::log(hs[k - 1] / hs[k]);
        worst = std::max(worst, std::abs(slope - order));
    }
    return worst;
}

void classical_suite(Recorder& rec, const std::vector<Params>& sets, double tol_ode, std::uint64_t seed) {
    auto rng = suite_rng(seed, 7);
    IntegrateOptions options;
    options.tol = tol_ode;

    for (const Params& base : sets) {
        for (double alpha : {-std::abs(base.alpha), std::abs(base.alpha)}) {
            const Params p = make_params(alpha, base.beta, base.hbar);
            const std::string tag = describe(p);
            if (alpha > 0 && p.beta_tilde() == 0.0) {
                rec.skip("classical", "gauge_equivalence", tag, 1e-7, "no bounded orbits for alpha > 0 without potential");
                continue;
            }
            double im_x = 0.0, gauge = 0.0, position = 0.0;
            std::string failure;
            try {
                for (int k = 0; k < 5; ++k) {
                    const PhaseState s = random_bounded_state(p, rng, 0.3);
                    const Trajectory h = integrate(Variant::higgs_real, p, s, 20.0, options);
                    const Trajectory z = integrate(Variant::zernike_complex, p,
                                                   gauge_shift(p, s, GaugeDirection::to_complex), 20.0, options);
                    for (std::size_t i = 0; i < std::min(h.samples.size(), z.samples.size()); ++i) {
                        const PhaseState& zs = z.samples[i].state;
                        const Vec2 prof = gauge_profile(p, zs.real_x());
                        im_x = std::max(im_x, zs.max_imag_x());
                        for (int c = 0; c < 2; ++c) {
                            gauge = std::max(gauge, std::abs(zs.p[c].imag() - prof[c]));
                            position = std::max(position, std::abs(zs.x[c].real() - h.samples[i].state.x[c].real()));
                        }
                    }
                }
            } catch (const Error& e) {
                failure = std::string(e.kind()) + ": " + e.what();
            }
            const auto report = [&](const char* name, double tol, double value, const char* what) {
                rec.check("classical", name, tag, tol, [&](std::string& detail) {
                    if (!failure.empty()) throw ConvergenceError(failure);
                    detail = what;
                    return value;
                });
            };
            report("gauge_equivalence_im_x", 1e-8, im_x, "5 gauge-shifted states, T=20: max |Im x(t)|");
            report("gauge_equivalence_im_p_profile", 1e-7, gauge, "max |Im p(t) - bt x/(2(1+alpha r^2))|");
            report("gauge_equivalence_positions", 1e-7, position, "max |x_zernike(t) - x_higgs(t)|");
            rec.check("classical", "energy_bridge", tag, 1e-12, [&](std::string& detail) {
                double worst = 0.0;
                for (int k = 0; k < 50; ++k) {
                    const PhaseState s = random_bounded_state(p, rng, 0.8);
                    const cplx hz = hamiltonian(Variant::zernike_complex, p, gauge_shift(p, s, GaugeDirection::to_complex));
                    const cplx hh = hamiltonian(Variant::higgs_real, p, s);
                    worst = std::max(worst, std::abs(hz - hh));
                }
                detail = "50 random states, |H_zernike(gauge_shift s) - H_higgs(s)|";
                return worst;
            });
        }

        const Params p = make_params(-std::abs(base.alpha), base.beta, base.hbar);
        const std::string tag = describe(p);
        if (p.beta_tilde() == 0.0) {
            rec.skip("classical", "conservation", tag, 1e-7, "geodesic orbits reach the rim");
        } else {
            rec.check("classical", "conservation", tag, 1e-7, [&](std::string& detail) {
                double worst = 0.0;
                for (int k = 0; k < 5; ++k) {
                    const PhaseState s = random_bounded_state(p, rng, 0.5);
                    const auto period = higgs_period(p, invariants(p, s).E);
                    if (!period) throw ConvergenceError("bounded orbit without a period");
                    IntegrateOptions o = options;
                    o.sample_dt = *period / 20.0;
                    const Trajectory t = integrate(Variant::higgs_real, p, s, 50.0 * *period, o);
                    const Invariants& i0 = t.invariant_samples.front();
                    for (const auto& inv : t.invariant_samples) {
                        worst = std::max({worst, std::abs(inv.E - i0.E) / (1 + std::abs(i0.E)),
                                          std::abs(inv.L - i0.L) / (1 + std::abs(i0.L)),
                                          std::abs(inv.S11 - i0.S11) / (1 + std::abs(i0.S11)),
                                          std::abs(inv.S12 - i0.S12) / (1 + std::abs(i0.S12)),
                                          std::abs(inv.S22 - i0.S22) / (1 + std::abs(i0.S22))});
                    }
                }
                detail = "5 orbits over 50 periods; max relative drift of E, L, S11, S12, S22";
                return worst;
            });
        }
    }

    // r.p well away from 0 so the O(hbar) term dominates the O(hbar^2) one.
    const Vec2 x{0.3, -0.2}, q0{0.7, -0.4};
    const PhaseState s = PhaseState::real(x, q0);
    for (const Params& q : sets) {
        rec.check("classical", "weyl_contraction_fixed_beta_tilde", describe(q), 0.1, [&](std::string& detail) {
            const double bt = q.beta_tilde();
            detail = "|log-log slope - 1| of |H_weyl - H_zernike| for hbar in {1e-1..1e-4}";
            return log_slope(1, [&](double hbar) {
                const Params h = make_params(q.alpha, bt / hbar, hbar);
                return std::abs(hamiltonian(Variant::weyl, h, s) - hamiltonian(Variant::zernike_complex, h, s));
            });
        });
    }
    // The O(hbar) term is hbar (2 alpha - beta) r.p; it vanishes at beta = 2 alpha, leaving O(hbar^2).
    for (const Params& q : sets) {
        const int order = q.beta == 2.0 * q.alpha ? 2 : 1;
        rec.check("classical", "weyl_contraction_fixed_beta", describe(q), 0.1, [&](std::string& detail) {
            const double rp = x[0] * q0[0] + x[1] * q0[1];
            const double kinetic = norm2(q0) + q.alpha * rp * rp;
            detail = "|log-log slope - " + std::to_string(order) +
                     "| of |H_weyl - (p^2 + alpha (r.p)^2)| for hbar in {1e-1..1e-4}";
            return log_slope(order, [&](double hbar) {
                return std::abs(hamiltonian(Variant::weyl, make_params(q.alpha, q.beta, hbar), s) - kinetic);
            });
        });
    }
}

void closure_suite(Recorder& rec, const std::vector<Params>& sets, double tol_ode) {
    IntegrateOptions options;
    options.tol = tol_ode;
    for (const Params& base : sets) {
        const Params p = make_params(-std::abs(base.alpha), base.beta, base.hbar);
        const std::string tag = describe(p);
        if (p.beta_tilde() == 0.0) {
            rec.skip("closure", "bounded_orbits_close", tag, 1e-6, "geodesic orbits reach the rim");
            continue;
        }
        rec.check("closure", "bounded_orbits_close", tag, 1e-6, [&](std::string& detail) {
            const double r0 = p.r0();
            const std::vector<Vec2> momenta{{0.0, 0.2}, {0.1, 0.3}, {-0.2, 0.4}, {0.3, 0.0}};
            double worst = 0.0;
            int closed = 0;
            for (double frac : {0.1, 0.3, 0.5}) {
                for (const Vec2& q : momenta) {
                    const PhaseState s = PhaseState::real({frac * r0, 0.0}, q);
                    const auto period = higgs_period(p, invariants(p, s).E);
                    if (!period) throw ConvergenceError("bounded orbit without a period");
                    const Trajectory t = integrate(Variant::higgs_real, p, s, 1.3 * *period, options);
                    const auto found = closure_detect(t, 1e-6);
                    if (!found) {
                        worst = kInf;
                        continue;
                    }
                    ++closed;
                    worst = std::max(worst, std::abs(*found - *period) / *period);
                }
            }
            detail = std::to_string(closed) + "/12 orbits closed; measured = max relative gap to pi/sqrt(omega^2 - alpha E)";
            return worst;
        });
    }
}

}  // namespace

const char* to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::skip: return "SKIP";
    }
    return "?";
}

bool VerificationReport::all_passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

std::string describe(const Params& params) {
    return "alpha=" + fmt(params.alpha) + " beta=" + fmt(params.beta) + " hbar=" + fmt(params.hbar);
}

std::vector<Params> verification_param_sets(const RunConfig& config) {
    if (config.params_explicit) return {config.params()};
    return {make_params(-1.0, -2.0, config.hbar), make_params(-0.5, -1.0, config.hbar),
            make_params(-1.0, -0.7, config.hbar)};
}

VerificationReport run_verification(const RunConfig& config) {
    config.validate();
    VerificationReport report;
    report.seed = config.seed;
    Recorder rec(report);
    const auto sets = verification_param_sets(config);
    const int degree = std::max(config.max_degree, 2);

    geometry_suite(rec, sets, config.seed);
    poly_suite(rec, sets, degree);
    reality_suite(rec, config.hbar);
    similarity_suite(rec, sets, degree, config.tol_quad, config.seed);
    operator_form_suite(rec, sets, config.seed);
    weight_search_suite(rec, sets);
    classical_suite(rec, sets, config.tol_ode, config.seed);
    closure_suite(rec, sets, config.tol_ode);
    return report;
}

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["seed"] = report.seed;
    j["all_passed"] = report.all_passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks) {
        j["checks"].push_back({{"suite", c.suite},
                               {"name", c.name},
                               {"params", c.params},
                               {"status", to_string(c.status)},
                               {"measured", std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json("inf")},
                               {"tolerance", c.tolerance},
                               {"detail", c.detail}});
    }
    j["findings"] = nlohmann::json::array();
    for (const auto& f : report.findings)
        j["findings"].push_back({{"name", f.name}, {"params", f.params}, {"summary", f.summary}, {"data", f.data}});
    return j;
}

std::string to_text(const VerificationReport& report) {
    std::ostringstream os;
    os.precision(3);
    int passed = 0, failed = 0, skipped = 0;
    for (const auto& c : report.checks) {
        os << '[' << to_string(c.status) << "] " << c.suite << '/' << c.name << "  (" << c.params << ")  measured="
           << std::scientific << c.measured << " tol=" << c.tolerance << std::defaultfloat;
        if (!c.detail.empty()) os << "  -- " << c.detail;
        os << '\n';
        passed += c.status == CheckStatus::pass;
        failed += c.status == CheckStatus::fail;
        skipped += c.status == CheckStatus::skip;
    }
    os << "\nFindings:\n";
    for (const auto& f : report.findings) {
        os << "* " << f.name << "  (" << f.params << ")\n  " << f.summary << "\n  " << f.data.dump() << '\n';
    }
    os << '\n' << passed << " passed, " << failed << " failed, " << skipped << " skipped (seed " << report.seed << ")\n";
    return os.str();
}

}  // namespace zernike
