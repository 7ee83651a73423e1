// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "zernike/classical.hpp"
#include "zernike/errors.hpp"
#include "zernike/geometry.hpp"
#include "zernike/sampling.hpp"
#include "zernike/spectral.hpp"
#include "zernike/zernike_operator.hpp"

using namespace zernike;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = false;
    std::string summary;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const Error& e) {
        o = {false, std::string(e.kind()) + ": " + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %s %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.summary.c_str());
    std::fflush(stdout);
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// 10x10 grid over alpha in [-2, -0.25], beta in [-3, 1], endpoints included.
std::vector<Params> parameter_grid() {
    std::vector<Params> out;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) out.push_back(make_params(-2.0 + 1.75 * i / 9.0, -3.0 + 4.0 * j / 9.0));
    return out;
}

// Random real state on a bounded orbit; alpha > 0 requires E < omega^2.
PhaseState bounded_state(const Params& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double rmax = p.alpha < 0 ? 0.6 * p.r0() : 0.6;
    const double w2 = p.beta_tilde() * p.beta_tilde() / 4.0;
    while (true) {
        Vec2 x{rmax * u(rng), rmax * u(rng)};
        if (norm2(x) >= rmax * rmax) continue;
        const PhaseState s = PhaseState::real(x, {0.3 * u(rng), 0.3 * u(rng)});
        if (p.alpha < 0 || invariants(p, s).E < w2) return s;
    }
}

double max_relative_drift(const Trajectory& t) {
    const Invariants& i0 = t.invariant_samples.front();
    double worst = 0.0;
    for (const auto& inv : t.invariant_samples) {
        worst = std::max({worst, std::abs(inv.E - i0.E) / (1 + std::abs(i0.E)),
                          std::abs(inv.L - i0.L) / (1 + std::abs(i0.L)),
                          std::abs(inv.S11 - i0.S11) / (1 + std::abs(i0.S11)),
                          std::abs(inv.S12 - i0.S12) / (1 + std::abs(i0.S12)),
                          std::abs(inv.S22 - i0.S22) / (1 + std::abs(i0.S22))});
    }
    return worst;
}

double log_slope_deviation(const std::function<double(double)>& diff) {
    const double hs[] = {1e-1, 1e-2, 1e-3, 1e-4};
    double worst = 0.0;
    for (int k = 1; k < 4; ++k)
        worst = std::max(worst, std::abs(std::log10(diff(hs[k - 1]) / diff(hs[k])) - 1.0));
    return worst;
}

// Trajectories from AC5, reused for the conservation part of AC6.
std::vector<Trajectory> higgs_runs;

}  // namespace

int main() {
    report("AC1", "exact spectrum reproduction", [] {
        const auto start = Clock::now();
        const Params zp = make_params(-1, -2);
        const OperatorMatrix m = assemble(zp, OperatorTag::zernike, {10, std::nullopt}, 0.0);
        SpectrumReport r = eigen(m);
        compare_with_exact(r, m);
        bool multiplicities = true;
        for (int n = 0; n <= 10; ++n) {
            const auto count = std::count_if(r.rows.begin(), r.rows.end(), [n](const SpectrumRow& row) {
                return row.e_exact == n * (n + 2.0) && std::abs(row.e_numeric.real() - n * (n + 2.0)) < 1e-9;
            });
            multiplicities = multiplicities && count == n + 1;
        }
        const double elapsed = seconds_since(start);
        double grid = 0.0;
        for (const Params& p : parameter_grid()) {
            const OperatorMatrix g = assemble(p, OperatorTag::zernike, {10, std::nullopt}, 0.0);
            SpectrumReport gr = eigen(g);
            compare_with_exact(gr, g);
            grid = std::max(grid, gr.max_abs_deviation);
        }
        const bool pass = r.max_abs_deviation < 1e-9 && multiplicities && elapsed < 5.0 && grid < 1e-8;
        return Outcome{pass, "zernike point max err " + sci(r.max_abs_deviation) + " (< 1e-9), multiplicities n+1 " +
                                 (multiplicities ? "ok" : "WRONG") + ", " + sci(elapsed) + " s (< 5 s); 10x10 grid max err " +
                                 sci(grid) + " (< 1e-8)"};
    });

    report("AC2", "reality of spectrum", [] {
        double worst = 0.0;
        for (const Params& p : parameter_grid())
            worst = std::max(worst, eigen(assemble(p, OperatorTag::zernike, {10, std::nullopt}, 0.0)).max_imag);
        return Outcome{worst < 1e-8, "max |Im lambda| over 10x10 grid " + sci(worst) + " (< 1e-8)"};
    });

    report("AC3", "similarity equivalence", [] {
        std::mt19937_64 rng(3003);
        double pointwise = 0.0;
        for (const Params& p : {make_params(-1, -2), make_params(-1, -0.7), make_params(1, 0.5)}) {
            const auto points = random_interior_points(p, 50, rng);
            pointwise = std::max(pointwise, similarity_check(p, 4, points, rng));
        }
        double spectral = 0.0;
        for (const Params& p : {make_params(-1, -2), make_params(-1, -0.7)}) {
            for (int m = -10; m <= 10; ++m) {
                const auto z = eigen(assemble(p, OperatorTag::zernike, {10, m}, 0.0)).eigenvalues;
                const auto h = eigen(assemble(p, OperatorTag::higgs_pq, {10, m}, 0.0)).eigenvalues;
                for (std::size_t i = 0; i < z.size(); ++i)
                    spectral = std::max(spectral, std::abs(z[i] - h[i]) / std::max(1.0, std::abs(z[i])));
            }
        }
        return Outcome{pointwise < 1e-8 && spectral < 1e-7,
                       "pointwise relative " + sci(pointwise) + " (< 1e-8); spectra zernike vs higgs_pq " + sci(spectral) +
                           " (< 1e-7)"};
    });

    report("AC4", "Hermitian point beta = 2 alpha", [] {
        std::mt19937_64 rng(4004);
        double defect = 0.0, kinetic = 0.0;
        for (double alpha : {-1.0, -0.5, -2.0}) {
            const Params p = make_params(alpha, 2 * alpha);
            defect = std::max(defect, symmetry_defect(assemble(p, OperatorTag::free_particle, {10, std::nullopt}, -0.5)));
            const auto points = random_interior_points(p, 50, rng);
            kinetic = std::max(kinetic, similarity_check(p, 4, points, rng, OperatorTag::free_particle));
        }
        return Outcome{defect < 1e-10 && kinetic < 1e-8, "symmetry defect under sqrt(g) " + sci(defect) +
                                                             " (< 1e-10); G-conjugated vs kinetic " + sci(kinetic) + " (< 1e-8)"};
    });

    report("AC5", "classical gauge equivalence", [] {
        const auto start = Clock::now();
        std::mt19937_64 rng(5005);
        double im_x = 0.0, gauge = 0.0, position = 0.0;
        int runs = 0;
        for (double alpha : {-1.0, 1.0}) {
            for (double bt : {0.5, 2.0}) {
                const Params p = make_params(alpha, bt);
                for (int k = 0; k < 5; ++k) {
                    const PhaseState s = bounded_state(p, rng);
                    Trajectory h = integrate(Variant::higgs_real, p, s, 20.0);
                    const Trajectory z =
                        integrate(Variant::zernike_complex, p, gauge_shift(p, s, GaugeDirection::to_complex), 20.0);
                    for (std::size_t i = 0; i < z.samples.size(); ++i) {
                        const PhaseState& zs = z.samples[i].state;
                        const Vec2 prof = gauge_profile(p, zs.real_x());
                        im_x = std::max(im_x, zs.max_imag_x());
                        for (int c = 0; c < 2; ++c) {
                            gauge = std::max(gauge, std::abs(zs.p[c].imag() - prof[c]));
                            position = std::max(position, std::abs(zs.x[c].real() - h.samples[i].state.x[c].real()));
                        }
                    }
                    higgs_runs.push_back(std::move(h));
                    ++runs;
                }
            }
        }
        const double elapsed = seconds_since(start);
        const bool pass = im_x < 1e-8 && gauge < 1e-7 && position < 1e-7 && elapsed < 10.0;
        return Outcome{pass, std::to_string(runs) + " runs, T=20: |Im x| " + sci(im_x) + " (< 1e-8), |Im p - profile| " +
                                 sci(gauge) + " (< 1e-7), position gap " + sci(position) + " (< 1e-7), " + sci(elapsed) +
                                 " s (< 10 s)"};
    });

    report("AC6", "superintegrability", [] {
        double drift = 0.0;
        for (const auto& t : higgs_runs) drift = std::max(drift, max_relative_drift(t));
        const Params p = make_params(-1, 1.0);
        int closed = 0;
        double gap = 0.0;
        const std::vector<Vec2> momenta{{0.0, 0.2}, {0.1, 0.3}, {-0.2, 0.4}, {0.3, 0.0}};
        for (double r : {0.1, 0.3, 0.5}) {
            for (const Vec2& q : momenta) {
                const PhaseState s = PhaseState::real({r, 0.0}, q);
                const double period = *higgs_period(p, invariants(p, s).E);
                const Trajectory t = integrate(Variant::higgs_real, p, s, 1.3 * period);
                drift = std::max(drift, max_relative_drift(t));
                if (const auto found = closure_detect(t, 1e-6)) {
                    ++closed;
                    gap = std::max(gap, std::abs(*found - period) / period);
                }
            }
        }
        return Outcome{drift < 1e-7 && closed == 12,
                       "max relative drift of E, L, S_ij " + sci(drift) + " (< 1e-7); " + std::to_string(closed) +
                           "/12 alpha=-1 orbits closed at tol 1e-6 (period gap " + sci(gap) + ")"};
    });

    report("AC7", "geometry", [] {
        std::mt19937_64 rng(7007);
        double pullback = 0.0, lb = 0.0;
        for (double alpha : {-1.0, 1.0}) {
            const Params p = make_params(alpha, 0.0);
            for (const Vec2& r : random_interior_points(p, 200, rng)) {
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
                eta(2, 2) = alpha < 0 ? 1.0 : -1.0;
                pullback = std::max(pullback, (J.transpose() * eta * J - metric_at(p, r).g).cwiseAbs().maxCoeff());
            }
            for (int trial = 0; trial < 5; ++trial) {
                const GradedPoly2 f = random_polynomial(rng, 4);
                const GradedPoly2 exact = laplace_beltrami_apply(p, f);
                for (const Vec2& r : random_interior_points(p, 20, rng, 0.7)) {
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
                    const cplx e = exact.evaluate(r[0], r[1]);
                    lb = std::max(lb, std::abs(div - e) / std::max(1.0, std::abs(e)));
                }
            }
        }
        return Outcome{pullback < 1e-8 && lb < 1e-6, "embedding pullback " + sci(pullback) +
                                                         " (< 1e-8, 200 points per sign); Laplace-Beltrami " + sci(lb) +
                                                         " (< 1e-6, alpha = +-1)"};
    });

    report("AC8", "Weyl contractions", [] {
        const PhaseState s = PhaseState::real({0.3, -0.2}, {0.7, -0.4});
        const double alpha = -1.0, beta = -0.7, bt = -0.7;
        const double fixed_bt = log_slope_deviation([&](double hbar) {
            const Params q = make_params(alpha, bt / hbar, hbar);
            return std::abs(hamiltonian(Variant::weyl, q, s) - hamiltonian(Variant::zernike_complex, q, s));
        });
        const double rp = 0.3 * 0.7 + 0.2 * 0.4;
        const double kinetic = 0.49 + 0.16 + alpha * rp * rp;
        const double fixed_beta = log_slope_deviation([&](double hbar) {
            return std::abs(hamiltonian(Variant::weyl, make_params(alpha, beta, hbar), s) - kinetic);
        });
        return Outcome{fixed_bt < 0.1 && fixed_beta < 0.1, "|slope - 1| at fixed beta_tilde " + sci(fixed_bt) +
                                                               ", at fixed (alpha, beta) " + sci(fixed_beta) +
                                                               " (< 0.1, hbar 1e-1..1e-4, alpha=-1 beta=-0.7)"};
    });

    report("AC9", "findings stated", [] {
        const Params p = make_params(-1, -0.7);
        std::string exponent = "none";
        for (const auto& c : pseudo_hermiticity_search(p, 8))
            if (c.integrable && c.defect < 1e-8) exponent = c.label + " = " + sci(c.exponent);
        std::mt19937_64 rng(9009);
        const auto points = random_interior_points(p, 50, rng);
        const double form = operator_form_consistency(p, points, rng);
        return Outcome{exponent != "none" && std::isfinite(form),
                       "at alpha=-1 beta=-0.7 hbar=1: symmetrizing measure exponent " + exponent +
                           "; operator_form_consistency deviation " + sci(form)};
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED", failures);
    return failures == 0 ? 0 : 1;
}
