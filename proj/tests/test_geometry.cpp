#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "zernike/errors.hpp"
#include "zernike/geometry.hpp"
#include "zernike/sampling.hpp"

using namespace zernike;

namespace {

// Pullback of the ambient metric diag(1, 1, -sign(alpha)) along embed().
Eigen::Matrix2d pullback(const Params& p, const Vec2& r) {
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
    return J.transpose() * eta * J;
}

}  // namespace

TEST(Geometry, MetricInverseAndDeterminant) {
    for (double alpha : {-1.0, 1.0, -0.3}) {
        const Params p = make_params(alpha, 0.0);
        const Metric2 m = metric_at(p, {0.3, -0.2});
        EXPECT_LT((m.g * m.g_inv - Eigen::Matrix2d::Identity()).norm(), 1e-14);
        EXPECT_NEAR(m.g.determinant(), m.det_g, 1e-14);
    }
}

TEST(Geometry, MetricExamples) {
    const Metric2 m = metric_at(make_params(-1, 0), {0.0, 0.0});
    EXPECT_LT((m.g - Eigen::Matrix2d::Identity()).norm(), 1e-15);
    const Metric2 q = metric_at(make_params(-1, 0), {0.5, 0.0});
    EXPECT_NEAR(q.g(0, 0), 1.0 / 0.75, 1e-14);
    EXPECT_NEAR(q.g(1, 1), 1.0, 1e-14);
    EXPECT_THROW(metric_at(make_params(-1, 0), {1.0, 0.0}), DomainError);
    EXPECT_THROW(metric_at(make_params(-1, 0), {0.8, 0.8}), DomainError);
}

TEST(Geometry, EmbeddingPullbackMatchesMetric) {
    std::mt19937_64 rng(17);
    for (double alpha : {-1.0, 1.0, -2.5, 0.5}) {
        const Params p = make_params(alpha, 0.0);
        for (const Vec2& r : random_interior_points(p, 200, rng)) {
            const Eigen::Matrix2d diff = pullback(p, r) - metric_at(p, r).g;
            EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-8) << "alpha=" << alpha;
        }
    }
}

TEST(Geometry, GaugePhiExamplesAndGradient) {
    const Params p = make_params(-1, 0);
    EXPECT_EQ(gauge_phi(p, 3.0, {0.0, 0.0}), std::complex<double>(0.0, 0.0));
    const double c = std::sqrt(0.25);
    const auto v = gauge_phi(p, 1.0, {c, c});
    EXPECT_NEAR(v.real(), 0.0, 1e-15);
    EXPECT_NEAR(v.imag(), 0.173287, 1e-6);
    EXPECT_EQ(gauge_phi(make_params(1, 0), 0.0, {0.4, 0.1}), std::complex<double>(0.0, 0.0));

    std::mt19937_64 rng(2);
    for (double alpha : {-1.0, 1.0}) {
        const Params q = make_params(alpha, 0.0);
        for (const Vec2& r : random_interior_points(q, 50, rng)) {
            const auto grad = gauge_gradient(q, 1.3, r);
            const double h = 1e-6;
            for (int j = 0; j < 2; ++j) {
                Vec2 rp = r, rm = r;
                rp[j] += h;
                rm[j] -= h;
                const auto fd = (gauge_phi(q, 1.3, rp) - gauge_phi(q, 1.3, rm)) / (2 * h);
                EXPECT_LT(std::abs(fd - grad[j]), 1e-8);
            }
        }
    }
}

TEST(Geometry, MeasureWeightExamples) {
    const Vec2 r{std::sqrt(0.5), 0.0};
    const Params zp = make_params(-1, -2);
    EXPECT_NEAR(measure_weight(zp, MeasureKind::invariant, r), std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(measure_weight(zp, MeasureKind::transform, r), measure_weight(zp, MeasureKind::invariant, r),
                1e-15);
    EXPECT_NEAR(measure_weight(make_params(-1, 0), MeasureKind::transform, r), std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(measure_weight(make_params(-1, 0), MeasureKind::transform_negated, r), std::sqrt(2.0), 1e-12);
}

TEST(Geometry, WeightsCoincideAtBetaTwoAlpha) {
    std::mt19937_64 rng(4);
    for (double alpha : {-1.0, -0.5, 0.7}) {
        const Params p = make_params(alpha, 2 * alpha);
        for (const Vec2& r : random_interior_points(p, 20, rng))
            EXPECT_EQ(measure_weight(p, MeasureKind::transform, r), measure_weight(p, MeasureKind::invariant, r));
    }
}

TEST(Geometry, HiggsPotentialExamples) {
    const Params p = make_params(-1, 0);
    EXPECT_EQ(higgs_potential(p, 2.0, {0.0, 0.0}), 0.0);
    EXPECT_EQ(higgs_potential(p, 0.0, {0.3, 0.1}), 0.0);
    EXPECT_NEAR(higgs_potential(p, 1.0, {std::sqrt(0.5), 0.0}), 1.0, 1e-12);
}

TEST(Geometry, LaplaceBeltramiExamples) {
    for (double alpha : {-1.0, 0.4}) {
        const Params p = make_params(alpha, 0.0);
        EXPECT_TRUE(laplace_beltrami_apply(p, GradedPoly2::constant(2.0)).empty());
        const GradedPoly2 r2 = laplace_beltrami_apply(p, GradedPoly2::r2());
        EXPECT_LT((r2 - (GradedPoly2::constant(4.0) + 6 * alpha * GradedPoly2::r2())).max_abs_coeff(), 1e-14);
        // d^2 x = 0 and D x = D^2 x = x, so both first-order pieces contribute alpha x.
        const GradedPoly2 x = laplace_beltrami_apply(p, GradedPoly2::x1());
        EXPECT_LT((x - 2.0 * alpha * GradedPoly2::x1()).max_abs_coeff(), 1e-14);
    }
}

TEST(Geometry, LaplaceBeltramiMatchesCoordinateFormula) {
    // (1/sqrt g) d_i (sqrt g g^{ij} d_j f) by nested central differences.
    std::mt19937_64 rng(23);
    for (double alpha : {-1.0, 1.0}) {
        const Params p = make_params(alpha, 0.0);
        for (int trial = 0; trial < 5; ++trial) {
            const GradedPoly2 f = random_polynomial(rng, 4);
            const GradedPoly2 lb = laplace_beltrami_apply(p, f);
            for (const Vec2& r : random_interior_points(p, 10, rng, 0.7)) {
                const double h = 1e-4;
                auto flux = [&](const Vec2& q, int i) {
                    const Metric2 m = metric_at(p, q);
                    const double sq = std::sqrt(m.det_g);
                    std::complex<double> grad[2];
                    for (int j = 0; j < 2; ++j) {
                        Vec2 qp = q, qm = q;
                        qp[j] += h;
                        qm[j] -= h;
                        grad[j] = (f.evaluate(qp[0], qp[1]) - f.evaluate(qm[0], qm[1])) / (2 * h);
                    }
                    return sq * (m.g_inv(i, 0) * grad[0] + m.g_inv(i, 1) * grad[1]);
                };
                std::complex<double> div = 0.0;
                for (int i = 0; i < 2; ++i) {
                    Vec2 rp = r, rm = r;
                    rp[i] += h;
                    rm[i] -= h;
                    div += (flux(rp, i) - flux(rm, i)) / (2 * h);
                }
                div /= std::sqrt(metric_at(p, r).det_g);
                const auto exact = lb.evaluate(r[0], r[1]);
                EXPECT_LT(std::abs(div - exact) / std::max(1.0, std::abs(exact)), 1e-6);
            }
        }
    }
}
