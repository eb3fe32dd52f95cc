#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "fene/error.hpp"
#include "fene/fokker_planck.hpp"
#include "fene/rng.hpp"

using namespace fene;

namespace {

constexpr double pi = std::numbers::pi;

ConfigCoeffs random_coeffs(int m_max, int n_r, std::uint64_t seed, bool mean_zero = true) {
    const CounterRng rng(seed);
    ConfigCoeffs c(m_max, n_r);
    for (int m = 0; m <= m_max; ++m)
        for (int n = 0; n < n_r; ++n) {
            if (mean_zero && m == 0 && n == 0) continue;
            const std::uint64_t i = 2 * static_cast<std::uint64_t>(m * n_r + n);
            c.set(m, n, cplx(rng.normal(i), m == 0 ? 0.0 : rng.normal(i + 1)));
        }
    return c;
}

}  // namespace

TEST(Stiffness, ConstantRowVanishesAndSymmetric) {
    const ConfigBasis basis(FeneParams{1.0, 8, 3});
    for (int m = 0; m <= 3; ++m) {
        const Eigen::MatrixXd A = stiffness_matrix(basis, m);
        EXPECT_LT((A - A.transpose()).cwiseAbs().maxCoeff(), 1e-12);
        if (m == 0) {
            EXPECT_LT(A.row(0).cwiseAbs().maxCoeff(), 1e-14);
            EXPECT_LT(A.col(0).cwiseAbs().maxCoeff(), 1e-14);
        }
        EXPECT_LT((A - stiffness_matrix(basis, -m)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(Stiffness, EntriesAgainstDenseQuadrature) {
    const double k = 1.0;
    const ConfigBasis basis(FeneParams{k, 6, 2});
    const double c0 = pi / (k + 1.0);
    for (int m = 0; m <= 2; ++m) {
        const Eigen::MatrixXd A = stiffness_matrix(basis, m);
        for (int a = 0; a < 6; a += 2)
            for (int b = 1; b < 6; b += 2) {
                auto radial = [&](double r) {
                    double acc = 0.0;
                    const int nt = 32;
                    for (int j = 0; j < nt; ++j) {
                        const double th = 2 * pi * j / nt;
                        const Point2 R{r * std::cos(th), r * std::sin(th)};
                        const auto ga = basis.gradient(m, a, R), gb = basis.gradient(m, b, R);
                        acc += (ga[0] * std::conj(gb[0]) + ga[1] * std::conj(gb[1])).real();
                    }
                    return acc * (2 * pi / nt) * std::pow(1 - r * r, k) / c0 * r;
                };
                const double oracle =
                    boost::math::quadrature::gauss_kronrod<double, 61>::integrate(radial, 0.0, 1.0, 15, 1e-14);
                EXPECT_NEAR(A(a, b), oracle, 1e-9 * (1.0 + std::abs(oracle))) << m << " " << a << " " << b;
            }
    }
}

TEST(SpectralGap, MatchesRestrictedA0AndConverges) {
    const ConfigBasis basis(FeneParams{1.0, 16, 2});
    const Eigen::MatrixXd A0 = stiffness_matrix(basis, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A0.bottomRightCorner(15, 15));
    const GapMode gap = spectral_gap_mode(basis);
    double overall = es.eigenvalues()[0];
    for (int m = 1; m <= 2; ++m) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(stiffness_matrix(basis, m));
        overall = std::min(overall, em.eigenvalues()[0]);
    }
    EXPECT_NEAR(gap.lambda, overall, 1e-12 * overall);

    for (double k : {1.0, 2.0}) {
        const double a = spectral_gap(ConfigBasis(FeneParams{k, 24, 2}));
        const double b = spectral_gap(ConfigBasis(FeneParams{k, 32, 2}));
        EXPECT_LT(std::abs(a - b) / a, 1e-8) << "k=" << k;
    }
    const double l1 = spectral_gap(ConfigBasis(FeneParams{1.0, 24, 2}));
    const double l2 = spectral_gap(ConfigBasis(FeneParams{2.0, 24, 2}));
    EXPECT_GT(l1, 0.0);
    EXPECT_GT(l2, 0.0);
    EXPECT_NE(l1, l2);
}

TEST(FpRelax, ZeroAndEigenvector) {
    const ConfigBasis basis(FeneParams{1.0, 10, 2});
    const FpOperator op(basis, 0.05);
    const ConfigCoeffs zero(2, 10);
    EXPECT_EQ(entropy(fp_relax(zero, op, 0.05)), 0.0);

    for (int m = 0; m <= 2; ++m) {
        const Eigen::VectorXd& mu = op.eigenvalues(m);
        const Eigen::MatrixXd& V = op.eigenvectors(m);
        const int col = m == 0 ? 2 : 1;
        ConfigCoeffs c(2, 10);
        for (int n = 0; n < 10; ++n) c.set(m, n, V(n, col));
        const ConfigCoeffs out = fp_relax(c, op, 0.05);
        const double f = std::exp(-mu[col] * 0.05);
        for (int n = 0; n < 10; ++n) EXPECT_NEAR(out(m, n).real(), f * V(n, col), 1e-13);
        // a step other than op.dt() builds its own propagator
        const ConfigCoeffs out2 = fp_relax(c, op, 0.02);
        EXPECT_NEAR(out2(m, 3).real(), std::exp(-mu[col] * 0.02) * V(3, col), 1e-13);
    }
}

TEST(FpRelax, EntropyDecaysAtLeastAtGapRate) {
    const ConfigBasis basis(FeneParams{1.0, 12, 2});
    const double lam = spectral_gap(basis);
    const double dt = 0.01;
    const FpOperator op(basis, dt);
    ConfigCoeffs c = random_coeffs(2, 12, 3);
    const double e0 = entropy(c);
    double prev = e0;
    for (int s = 0; s < 200; ++s) {
        c = fp_relax(c, op, dt);
        const double e = entropy(c);
        EXPECT_LE(e, prev);
        prev = e;
        EXPECT_EQ(c(0, 0), cplx(0.0));
    }
    const double slope = -std::log(prev / e0) / (200 * dt);
    EXPECT_GE(slope, 2.0 * lam - 1e-6);
}

TEST(FpRelax, CrankNicolsonIsStableAndConsistent) {
    const ConfigBasis basis(FeneParams{1.0, 8, 2});
    const FpOperator ex(basis, 1e-5), cn(basis, 1e-5, PropagatorKind::crank_nicolson);
    const ConfigCoeffs c = random_coeffs(2, 8, 5);
    const ConfigCoeffs a = fp_relax(c, ex, 1e-5), b = fp_relax(c, cn, 1e-5);
    double diff = 0.0;
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n < 8; ++n) diff = std::max(diff, std::abs(a(m, n) - b(m, n)));
    EXPECT_LT(diff, 1e-4);
    const FpOperator big(basis, 10.0, PropagatorKind::crank_nicolson);
    EXPECT_LE(entropy(fp_relax(c, big, 10.0)), entropy(c));
}

TEST(Rotate, UnitaryAndModeZeroFixed) {
    const ConfigCoeffs c = random_coeffs(3, 6, 9);
    const ConfigCoeffs same = rotate(c, 0.0, 0.1);
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n < 6; ++n) EXPECT_EQ(same(m, n), c(m, n));
    const ConfigCoeffs r = rotate(c, 3.7, 0.01);
    for (int n = 0; n < 6; ++n) EXPECT_EQ(r(0, n), c(0, n));
    EXPECT_LT(std::abs(entropy(r) - entropy(c)), 1e-14 * entropy(c));
    // mode m picks up exp(i m omega dt / 2)
    EXPECT_NEAR(std::abs(r(2, 1) - c(2, 1) * std::polar(1.0, 2 * 3.7 * 0.01 / 2)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r(-2, 1) - std::conj(r(2, 1))), 0.0, 0.0);
}

TEST(EntropyDissipation, Basics) {
    const ConfigBasis basis(FeneParams{1.0, 16, 2});
    const FpOperator op(basis, 0.1);
    const ConfigCoeffs zero(2, 16);
    EXPECT_EQ(entropy(zero), 0.0);
    EXPECT_EQ(dissipation(zero, op), 0.0);
    ConfigCoeffs unit(2, 16);
    unit.set(2, 0, 1.0);
    // c_{-2,0} = conj(c_{2,0}) contributes as well
    EXPECT_NEAR(entropy(unit), 2.0, 1e-15);
    const GapMode gap = spectral_gap_mode(basis);
    ConfigCoeffs v(2, 16);
    for (int n = 0; n < 16; ++n) v.set(gap.m, n, gap.eigenvector[n]);
    // for m > 0 the conjugate mode doubles both integrals
    EXPECT_NEAR(dissipation(v, op) / entropy(v), gap.lambda, 1e-10 * gap.lambda);
}

TEST(ConfigCoeffs, HermitianAccessAndRealLayout) {
    ConfigCoeffs c(2, 3);
    c.set(1, 2, cplx(1.0, -2.0));
    c.set(0, 1, cplx(3.0, 5.0));
    EXPECT_EQ(c(-1, 2), cplx(1.0, 2.0));
    EXPECT_EQ(c(0, 1), cplx(3.0, 0.0));
    const ConfigCoeffs back = ConfigCoeffs::from_real(c.to_real(), 2, 3);
    for (int m = -2; m <= 2; ++m)
        for (int n = 0; n < 3; ++n) EXPECT_EQ(back(m, n), c(m, n));
}
