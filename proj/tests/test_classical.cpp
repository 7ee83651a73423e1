#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "zernike/classical.hpp"
#include "zernike/errors.hpp"

using namespace zernike;
using cplx = std::complex<double>;

namespace {

// Random real state with |x| < 0.6 r0 and moderate momentum.
PhaseState random_state(const Params& p, std::mt19937_64& rng, double pmax = 0.6) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double rmax = p.alpha < 0 ? 0.6 * p.r0() : 0.6;
    Vec2 x;
    do {
        x = {rmax * u(rng), rmax * u(rng)};
    } while (norm2(x) >= rmax * rmax);
    return PhaseState::real(x, {pmax * u(rng), pmax * u(rng)});
}

}  // namespace

TEST(Classical, VariantNames) {
    for (auto v : {Variant::zernike_complex, Variant::higgs_real, Variant::weyl})
        EXPECT_EQ(variant_from_string(to_string(v)), v);
    EXPECT_THROW(variant_from_string("nope"), ConfigError);
}

TEST(Classical, HamiltonianExamples) {
    for (double alpha : {-1.0, 0.5}) {
        const Params p = make_params(alpha, 1.7);
        EXPECT_NEAR(std::abs(hamiltonian(Variant::higgs_real, p, PhaseState::real({0, 0}, {1, 0})) - 1.0), 0.0,
                    1e-15);
    }
    const Params p = make_params(-1, 2);
    const PhaseState s = PhaseState::real({0.5, 0.0}, {0.0, 1.0});
    EXPECT_NEAR(std::abs(hamiltonian(Variant::zernike_complex, p, s) - 1.0), 0.0, 1e-15);
    EXPECT_THROW(hamiltonian(Variant::higgs_real, p, PhaseState::real({1.2, 0.0}, {0.0, 1.0})), DomainError);
}

TEST(Classical, WeylApproachesKineticAsHbarVanishes) {
    // hbar = 0 is outside Params; at fixed beta the difference from p^2 + alpha (r.p)^2 is O(hbar).
    const PhaseState s = PhaseState::real({0.3, -0.2}, {0.7, -0.4});
    const double alpha = -1.0, beta = -0.7;
    const double rp = 0.3 * 0.7 + 0.2 * 0.4;
    const double kinetic = 0.49 + 0.16 + alpha * rp * rp;
    double prev = 0.0;
    for (double hbar : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double diff = std::abs(hamiltonian(Variant::weyl, make_params(alpha, beta, hbar), s) - kinetic);
        if (prev > 0.0) EXPECT_NEAR(std::log10(prev / diff), 1.0, 0.1);
        prev = diff;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(Classical, FlowDerivativeExamples) {
    const Params p = make_params(-1, 1.5);
    const PhaseState d = flow_derivative(Variant::higgs_real, p, PhaseState::real({0, 0}, {1, 0}));
    EXPECT_NEAR(std::abs(d.x[0] - 2.0), 0.0, 1e-15);
    EXPECT_EQ(d.x[1], cplx(0.0));
    EXPECT_EQ(d.p[0], cplx(0.0));
    EXPECT_EQ(d.p[1], cplx(0.0));

    // Central force: pdot = -2 alpha (r.p) p - 2 omega^2 x / s^2.
    const Vec2 x{0.3, -0.4}, q{0.2, 0.5};
    const PhaseState g = flow_derivative(Variant::higgs_real, p, PhaseState::real(x, q));
    const double rp = x[0] * q[0] + x[1] * q[1], s = 1.0 - norm2(x), w2 = 1.5 * 1.5 / 4;
    for (int i = 0; i < 2; ++i)
        EXPECT_NEAR(g.p[i].real(), 2.0 * rp * q[i] - 2.0 * w2 * x[i] / (s * s), 1e-14);
}

TEST(Classical, FlowDerivativeMatchesFiniteDifferenceGradient) {
    std::mt19937_64 rng(5);
    const double h = 1e-6;
    int checked = 0;
    for (Variant v : {Variant::higgs_real, Variant::zernike_complex, Variant::weyl}) {
        for (double alpha : {-1.0, 1.0}) {
            const Params p = make_params(alpha, 0.8, 0.9);
            for (int k = 0; k < 17; ++k) {
                const PhaseState s = random_state(p, rng);
                const PhaseState d = flow_derivative(v, p, s);
                for (int i = 0; i < 2; ++i) {
                    PhaseState pp = s, pm = s, xp = s, xm = s;
                    pp.p[i] += h;
                    pm.p[i] -= h;
                    xp.x[i] += h;
                    xm.x[i] -= h;
                    const cplx dh_dp = (hamiltonian(v, p, pp) - hamiltonian(v, p, pm)) / (2 * h);
                    const cplx dh_dx = (hamiltonian(v, p, xp) - hamiltonian(v, p, xm)) / (2 * h);
                    EXPECT_LT(std::abs(d.x[i] - dh_dp), 1e-7);
                    EXPECT_LT(std::abs(d.p[i] + dh_dx), 1e-7);
                }
                ++checked;
            }
        }
    }
    EXPECT_GE(checked, 100);
}

TEST(Classical, GaugeShiftExamples) {
    const Params p = make_params(-1, 2);
    const PhaseState origin = PhaseState::real({0, 0}, {0.3, -0.4});
    const PhaseState o2 = gauge_shift(p, origin, GaugeDirection::to_complex);
    EXPECT_EQ(o2.p, origin.p);

    const PhaseState c = gauge_shift(p, PhaseState::real({0.5, 0.0}, {0.0, 1.0}), GaugeDirection::to_complex);
    EXPECT_NEAR(c.p[0].real(), 0.0, 1e-15);
    EXPECT_NEAR(c.p[0].imag(), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(std::abs(c.p[1] - 1.0), 0.0, 1e-15);

    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) {
        const PhaseState s = random_state(p, rng);
        const PhaseState back = gauge_shift(p, gauge_shift(p, s, GaugeDirection::to_complex), GaugeDirection::to_real);
        for (int i = 0; i < 2; ++i) {
            EXPECT_LT(std::abs(back.p[i] - s.p[i]), 1e-12);
            EXPECT_EQ(back.x[i], s.x[i]);
        }
    }
    EXPECT_THROW(gauge_shift(p, PhaseState::real({0.5, 0.0}, {0.0, 1.0}), GaugeDirection::to_real),
                 GaugeMismatchError);
    EXPECT_THROW(gauge_shift(p, PhaseState::real({1.5, 0.0}, {0.0, 1.0}), GaugeDirection::to_complex), DomainError);
}

TEST(Classical, EnergyBridge) {
    std::mt19937_64 rng(4);
    for (double alpha : {-1.0, 1.0}) {
        for (double bt : {0.5, 2.0}) {
            const Params p = make_params(alpha, bt);
            for (int k = 0; k < 25; ++k) {
                const PhaseState s = random_state(p, rng);
                const cplx hz = hamiltonian(Variant::zernike_complex, p, gauge_shift(p, s, GaugeDirection::to_complex));
                const cplx hh = hamiltonian(Variant::higgs_real, p, s);
                EXPECT_LT(std::abs(hz.real() - hh.real()), 1e-12);
                EXPECT_LT(std::abs(hz.imag()), 1e-12);
            }
        }
    }
}

TEST(Classical, InvariantsExamples) {
    const Params p = make_params(-1, 1.3);
    const Invariants o = invariants(p, PhaseState::real({0, 0}, {0.3, -0.7}));
    EXPECT_EQ(o.L, 0.0);
    EXPECT_NEAR(o.S11, 0.09, 1e-15);
    EXPECT_NEAR(o.S12, -0.21, 1e-15);
    EXPECT_NEAR(o.S22, 0.49, 1e-15);

    const Params flat = make_params(0.0, 0.0);
    const Invariants f = invariants(flat, PhaseState::real({0.4, 0.1}, {0.3, -0.7}));
    EXPECT_NEAR(f.S11, 0.09, 1e-15);
    EXPECT_NEAR(f.S22, 0.49, 1e-15);
}

TEST(Classical, TimeZeroReturnsInitialState) {
    const Params p = make_params(-1, 1.0);
    const PhaseState s0 = PhaseState::real({0.1, 0.2}, {0.3, 0.0});
    for (Variant v : {Variant::higgs_real, Variant::zernike_complex, Variant::weyl}) {
        const Trajectory t = integrate(v, p, s0, 0.0);
        ASSERT_EQ(t.samples.size(), 1u);
        EXPECT_EQ(t.samples[0].t, 0.0);
        EXPECT_EQ(t.samples[0].state.x, s0.x);
    }
}

TEST(Classical, GeodesicConservesEnergyAndAngularMomentum) {
    // Geodesic orbits touch the rim after about 3.9 time units from this state; stay short of it.
    const Params p = make_params(-1, 0.0);
    const Trajectory t = integrate(Variant::higgs_real, p, PhaseState::real({0.1, 0.0}, {0.0, 0.2}), 3.0);
    const Invariants& i0 = t.invariant_samples.front();
    double spread_S = 0.0;
    for (const auto& inv : t.invariant_samples) {
        EXPECT_NEAR(inv.E, i0.E, 1e-9);
        EXPECT_NEAR(inv.L, i0.L, 1e-9);
        spread_S = std::max({spread_S, std::abs(inv.S11 - i0.S11), std::abs(inv.S12 - i0.S12),
                             std::abs(inv.S22 - i0.S22)});
    }
    EXPECT_LT(spread_S, 1e-7 * (1.0 + std::abs(i0.S11) + std::abs(i0.S22)));
    EXPECT_LT(t.integrator_stats.max_energy_drift, 1e-9);
    for (std::size_t k = 1; k < t.samples.size(); ++k) EXPECT_GT(t.samples[k].t, t.samples[k - 1].t);
}

TEST(Classical, GeodesicReachesRim) {
    const Params p = make_params(-1, 0.0);
    try {
        integrate(Variant::higgs_real, p, PhaseState::real({0.1, 0.0}, {0.0, 0.2}), 5.0);
        FAIL() << "expected BoundaryError";
    } catch (const BoundaryError& e) {
        ASSERT_FALSE(e.partial().samples.empty());
        const double t_last = e.partial().samples.back().t;
        EXPECT_GT(t_last, 3.5);
        EXPECT_LT(t_last, 4.0);
    }
}

TEST(Classical, ComplexFlowStaysRealAndMatchesHiggs) {
    std::mt19937_64 rng(77);
    for (double alpha : {-1.0, 1.0}) {
        for (double bt : {0.5, 2.0}) {
            const Params p = make_params(alpha, bt);
            const PhaseState s = random_state(p, rng, 0.3);
            const Trajectory h = integrate(Variant::higgs_real, p, s, 5.0);
            const Trajectory z = integrate(Variant::zernike_complex, p, gauge_shift(p, s, GaugeDirection::to_complex), 5.0);
            ASSERT_EQ(h.samples.size(), z.samples.size());
            for (std::size_t k = 0; k < h.samples.size(); ++k) {
                const PhaseState& zs = z.samples[k].state;
                EXPECT_LT(zs.max_imag_x(), 1e-8);
                const Vec2 prof = gauge_profile(p, zs.real_x());
                for (int i = 0; i < 2; ++i) {
                    EXPECT_LT(std::abs(zs.p[i].imag() - prof[i]), 1e-7);
                    EXPECT_LT(std::abs(zs.x[i].real() - h.samples[k].state.x[i].real()), 1e-7);
                }
            }
        }
    }
}

TEST(Classical, SuperintegralsConserved) {
    std::mt19937_64 rng(13);
    const Params p = make_params(-1, 1.2);
    for (int k = 0; k < 4; ++k) {
        const PhaseState s = random_state(p, rng, 0.5);
        const Trajectory t = integrate(Variant::higgs_real, p, s, 30.0);
        const Invariants& i0 = t.invariant_samples.front();
        for (const auto& inv : t.invariant_samples) {
            EXPECT_LT(std::abs(inv.E - i0.E) / (1 + std::abs(i0.E)), 1e-7);
            EXPECT_LT(std::abs(inv.L - i0.L) / (1 + std::abs(i0.L)), 1e-7);
            EXPECT_LT(std::abs(inv.S11 - i0.S11) / (1 + std::abs(i0.S11)), 1e-7);
            EXPECT_LT(std::abs(inv.S12 - i0.S12) / (1 + std::abs(i0.S12)), 1e-7);
            EXPECT_LT(std::abs(inv.S22 - i0.S22) / (1 + std::abs(i0.S22)), 1e-7);
        }
    }
}

TEST(Classical, FlatCircularOrbitPeriod) {
    const double omega = 1.5;
    const Params flat = make_params(0.0, 2 * omega);
    const double a = 0.4;
    const Trajectory t = integrate(Variant::higgs_real, flat, PhaseState::real({a, 0.0}, {0.0, omega * a}), 5.0);
    const auto period = closure_detect(t, 1e-6);
    ASSERT_TRUE(period.has_value());
    EXPECT_NEAR(*period, M_PI / omega, 1e-6);
}

TEST(Classical, ClosureMatchesAnalyticPeriod) {
    const Params p = make_params(-1, 1.0);
    const PhaseState s = PhaseState::real({0.3, 0.1}, {-0.2, 0.4});
    const double E = invariants(p, s).E;
    const auto expected = higgs_period(p, E);
    ASSERT_TRUE(expected.has_value());
    const Trajectory t = integrate(Variant::higgs_real, p, s, 1.5 * *expected);
    const auto period = closure_detect(t, 1e-6);
    ASSERT_TRUE(period.has_value());
    EXPECT_NEAR(*period, *expected, 1e-6);
}

TEST(Classical, UnboundedPseudosphereOrbitDoesNotClose) {
    const Params p = make_params(1, 0.1);
    const Trajectory t = integrate(Variant::higgs_real, p, PhaseState::real({0.1, 0.0}, {2.0, 0.5}), 5.0);
    EXPECT_FALSE(closure_detect(t, 1e-6).has_value());
    EXPECT_FALSE(higgs_period(p, invariants(p, t.samples.front().state).E).has_value());
}

TEST(Classical, IntegrateOptionErrors) {
    const Params p = make_params(-1, 1.0);
    const PhaseState s = PhaseState::real({0.1, 0.0}, {0.0, 0.2});
    IntegrateOptions o;
    o.tol = 1e-3;
    EXPECT_THROW(integrate(Variant::higgs_real, p, s, 1.0, o), ConfigError);
    o.tol = 1e-14;
    EXPECT_THROW(integrate(Variant::higgs_real, p, s, 1.0, o), ConfigError);
}

TEST(Classical, TrajectoryCsvLayout) {
    const Params p = make_params(-1, 1.0);
    IntegrateOptions o;
    o.sample_dt = 0.25;
    const Trajectory t = integrate(Variant::higgs_real, p, PhaseState::real({0.1, 0.0}, {0.0, 0.2}), 1.0, o);
    const std::string csv = trajectory_csv(t);
    EXPECT_EQ(csv.rfind("t,x1,x2,re_p1,im_p1,re_p2,im_p2,E,L,S11,S12,S22\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
    const std::string g = trajectory_csv(t, true);
    EXPECT_NE(g.find(",im_x_abs,gauge_dev\n"), std::string::npos);
}
