#include "qb/multivariate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace qb;

namespace {

TruncationPolicy tight() {
    TruncationPolicy p;
    p.tail_tol = 1e-22;
    return p;
}

MultiIndex random_index(std::mt19937& rng, std::size_t len, int lo = -2, int hi = 2) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::vector<long> v(len);
    for (auto& x : v) x = d(rng);
    return MultiIndex(v);
}

ThreeNJParams random_3nj(std::mt19937& rng, std::size_t k) {
    std::uniform_int_distribution<int> d(-2, 2);
    return ThreeNJParams{d(rng), random_index(rng, k + 2), random_index(rng, k), random_index(rng, k)};
}

// One-variable value through the defining series in 100 digits.
double jdef(long nu, long y, double q) {
    const mp100 Q(q);
    return to_double(qbessel<mp100>(static_cast<int>(nu), ipow(Q, y), Q));
}

}  // namespace

TEST(MultiIndex, Accessors) {
    const MultiIndex v{3, -1, 4, 1};
    EXPECT_EQ(v.abs_sum(), 7);
    EXPECT_EQ(v.hat(), (MultiIndex{1, 4, -1, 3}));
    EXPECT_EQ(v.hat().hat(), v);
    EXPECT_EQ(v.hat().abs_sum(), v.abs_sum());
    EXPECT_EQ(v.prime(), (MultiIndex{-1, 4, 1}));
    EXPECT_EQ(v.prime().size(), v.size() - 1);
    EXPECT_THROW(MultiIndex{}.prime(), DomainError);
}

TEST(MultiIndex, Rotation) {
    const MultiIndex n{1, 2, 3, 4};
    EXPECT_EQ(rotated(n, 1), (MultiIndex{4, 1, 2, 3}));
    EXPECT_EQ(rotated(n, 3), (MultiIndex{2, 3, 4, 1}));
    // one step applied k+2 times is the identity; j steps equal j single steps
    MultiIndex m = n;
    for (int i = 0; i < 4; ++i) m = rotated(m, 1);
    EXPECT_EQ(m, n);
    EXPECT_EQ(rotated(rotated(rotated(n, 1), 1), 1), rotated(n, 3));
}

TEST(MultiQBessel, ParamsValidated) {
    SixJEngine<double> e(0.5);
    EXPECT_THROW(multi_qbessel(e, MultiBesselParams{{0, 0, 0}, {0, 0}, {0, 0}}), DomainError);
    EXPECT_THROW(multi_qbessel(e, MultiBesselParams{{0, 0, 0, 0}, {0, 0}, {0}}), DomainError);
}

TEST(MultiQBessel, OneVariable) {
    const double q = 0.5;
    QContext ctx(q, 15);
    for (long n0 = -1; n0 <= 1; ++n0)
        for (long n1 = -2; n1 <= 2; ++n1)
            for (long n2 = -1; n2 <= 1; ++n2)
                for (long x = -2; x <= 2; ++x)
                    for (long l = -2; l <= 2; ++l) {
                        const double v = multi_qbessel(MultiBesselParams{{n0, n1, n2}, {x}, {l}}, ctx);
                        EXPECT_NEAR(v, jdef(n1 - n2 - n0, x - n2 + l - n0, q), 1e-12);
                    }
}

TEST(MultiQBessel, FactorwiseExample) {
    const double q = 0.5;
    QContext ctx(q, 15);
    // nu = (0,1,1,0), x = lambda = 0: J_1(q^0) J_1(q^0)
    const double v = multi_qbessel(MultiBesselParams{{0, 1, 1, 0}, {0, 0}, {0, 0}}, ctx);
    EXPECT_NEAR(v, jdef(1, 0, q) * jdef(1, 0, q), 1e-13);
}

TEST(MultiQBessel, FactorwiseRandom) {
    const double q = 0.3;
    SixJEngine<double> e(q);
    std::mt19937 rng(3);
    for (int it = 0; it < 40; ++it) {
        const std::size_t d = 1 + it % 3;
        MultiBesselParams p{random_index(rng, d + 2), random_index(rng, d), random_index(rng, d)};
        double expect = 1;
        for (std::size_t j = 1; j <= d; ++j) {
            const long xj1 = j < d ? p.x[j] : p.nu[d + 1];
            const long lj0 = j > 1 ? p.lambda[j - 2] : p.nu[0];
            expect *= jdef(p.nu[j] - xj1 - lj0, p.x[j - 1] - xj1 + p.lambda[j - 1] - lj0, q);
        }
        EXPECT_NEAR(multi_qbessel(e, p), expect, 1e-12 * std::max(1.0, std::abs(expect)));
    }
}

TEST(MultiQBessel, SelfDuality) {
    SixJEngine<double> e(0.5);
    std::mt19937 rng(17);
    for (int it = 0; it < 100; ++it) {
        const std::size_t d = 1 + it % 4;
        MultiBesselParams p{random_index(rng, d + 2, -3, 3), random_index(rng, d, -3, 3),
                            random_index(rng, d, -3, 3)};
        const auto s = multi_self_duality(e, p);
        EXPECT_LE(s.residual(), 1e-14 * std::max(1.0, std::abs(s.lhs)));
    }
}

TEST(MultiOrthogonality, OneVariableIsHankel) {
    SixJEngine<double> e(0.5);
    for (long l = -2; l <= 2; ++l)
        for (long l2 = -2; l2 <= 2; ++l2) {
            const MultiIndex nu{1, 2, -1};
            const auto s = multi_orthogonality(e, nu, {l}, {l2}, tight());
            EXPECT_LT(s.residual(), 1e-8);
            // same sum as the one-variable theorem with order nu_1 - nu_2 - nu_0
            const auto h = hankel_orthogonality(e, static_cast<int>(nu[1] - nu[2] - nu[0]), l - nu[2] - nu[0],
                                                l2 - nu[2] - nu[0], tight());
            EXPECT_NEAR(s.lhs, h.lhs * std::pow(0.5, nu[2] + nu[0]), 1e-10);
        }
}

TEST(MultiOrthogonality, TwoVariables) {
    SixJEngine<double> e(0.5);
    double worst = 0;
    for (const MultiIndex& nu : {MultiIndex{0, 0, 0, 0}, MultiIndex{0, 1, 0, 1}, MultiIndex{1, -1, 2, 0}})
        for (long a = -2; a <= 2; ++a)
            for (long b = -2; b <= 2; ++b)
                for (long c = -2; c <= 2; ++c)
                    for (long d = -2; d <= 2; ++d) {
                        const auto s = multi_orthogonality(e, nu, {a, b}, {c, d}, tight());
                        EXPECT_TRUE(s.converged);
                        worst = std::max(worst, s.residual());
                    }
    EXPECT_LT(worst, 1e-7);
}

TEST(MultiOrthogonality, DeltaValue) {
    SixJEngine<double> e(0.5);
    EXPECT_NEAR(multi_orthogonality(e, {0, 0, 0, 0}, {0, 0}, {0, 0}, tight()).lhs, 1.0, 1e-7);
    const auto s = multi_orthogonality(e, {1, 0, 2, -1}, {1, 2}, {1, 2}, tight());
    EXPECT_NEAR(s.lhs, std::pow(0.5, -1 + 1 - 2), 1e-7);
}

TEST(MultiOrthogonality, ThreeVariables) {
    SixJEngine<double> e(0.5);
    std::mt19937 rng(23);
    for (int it = 0; it < 12; ++it) {
        const MultiIndex nu = random_index(rng, 5, -1, 1);
        const MultiIndex l = random_index(rng, 3);
        const MultiIndex l2 = it % 2 ? l : random_index(rng, 3);
        EXPECT_LT(multi_orthogonality(e, nu, l, l2, tight()).residual(), 1e-6);
    }
}

TEST(ThreeNJ, KOneIsRecoupling) {
    QContext ctx(0.5, 15);
    std::mt19937 rng(1);
    for (int it = 0; it < 30; ++it) {
        const auto p = random_3nj(rng, 1);
        EXPECT_EQ(threenj_R(p, ctx), recoupling_R(p.x, p.n[0], p.n[1], p.n[2], p.r[0], p.s[0], ctx));
        // S^{x,n}_{r,s} at k=1 is R^{x,n_1,n_2,n_3}_{r_1,s_1} with s_2 = x, r_0 = n_2
        EXPECT_EQ(threenj_S(p, ctx), recoupling_R(p.x, p.n[0], p.n[1], p.n[2], p.r[0], p.s[0], ctx));
    }
}

TEST(ThreeNJ, Factorization) {
    SixJEngine<double> e(0.5);
    std::mt19937 rng(2);
    for (int it = 0; it < 30; ++it) {
        const std::size_t k = 2 + it % 3;
        const auto p = random_3nj(rng, k);
        for (int k1 = 1; k1 < static_cast<int>(k); ++k1) {
            const auto s = threenj_factorization(e, p, k1);
            EXPECT_LE(s.residual(), 1e-12 * std::max(1.0, std::abs(s.lhs)));
        }
    }
}

TEST(ThreeNJ, CorollaryBridge) {
    SixJEngine<double> e(0.5);
    std::mt19937 rng(4);
    for (std::size_t k = 1; k <= 3; ++k)
        for (int it = 0; it < 50; ++it) {
            const auto s = threenj_corollary(e, random_3nj(rng, k));
            EXPECT_LT(s.residual(), 1e-10);
        }
}

TEST(ThreeNJ, Duality) {
    SixJEngine<double> e(0.5);
    std::mt19937 rng(6);
    for (std::size_t k = 1; k <= 4; ++k)
        for (int it = 0; it < 30; ++it) EXPECT_LT(threenj_duality(e, random_3nj(rng, k)).residual(), 1e-12);
}

TEST(ThreeNJ, SLacksSelfDuality) {
    SixJEngine<double> e(0.5);
    const ThreeNJParams p{1, {0, 1, 0, -1}, {1, 0}, {0, 1}};
    const double a = threenj_S(e, p);
    const double b = threenj_S(e, ThreeNJParams{p.x, p.n.hat(), p.s.hat(), p.r.hat()});
    EXPECT_GT(std::abs(a - b), 1e-2 * std::max(std::abs(a), std::abs(b)));
}

TEST(ThreeNJ, OrthogonalityR) {
    SixJEngine<double> e(0.5);
    const MultiIndex n{0, 1, 0, -1};
    double worst = 0;
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c)
                for (long d = -2; d <= 2; ++d)
                    worst = std::max(worst, threenj_orthogonality(e, Comb::R, 1, n, {a, b}, {c, d}, tight()).residual());
    EXPECT_LT(worst, 1e-7);
}

TEST(ThreeNJ, OrthogonalityS) {
    SixJEngine<double> e(0.5);
    const MultiIndex n{0, 1, 0, -1};
    double worst = 0;
    for (long a = -1; a <= 1; ++a)
        for (long b = -1; b <= 1; ++b)
            for (long c = -1; c <= 1; ++c)
                for (long d = -1; d <= 1; ++d)
                    worst = std::max(worst, threenj_orthogonality(e, Comb::S, 1, n, {a, b}, {c, d}, tight()).residual());
    EXPECT_LT(worst, 1e-7);
}

TEST(MultiBE, SFormExamples) {
    SixJEngine<double> e(0.5);
    EXPECT_LT(multi_biedenharn_elliott(e, ThreeNJParams{0, {0, 0, 0, 0}, {0, 0}, {0, 0}}, tight()).residual(), 1e-7);
    EXPECT_LT(multi_biedenharn_elliott(e, ThreeNJParams{1, {0, 1, 0, -1, 1}, {1, 0, 1}, {0, -1, 1}}, tight()).residual(),
              1e-6);
}

TEST(MultiBE, SFormRandom) {
    SixJEngine<double> e(0.5);
    std::mt19937 rng(8);
    for (std::size_t k = 2; k <= 3; ++k)
        for (int it = 0; it < 15; ++it) {
            const auto s = multi_biedenharn_elliott(e, random_3nj(rng, k), tight());
            EXPECT_LT(s.residual(), k == 2 ? 1e-7 : 1e-6);
        }
}

TEST(MultiBE, KTwoMatchesOneVariable) {
    SixJEngine<double> e(0.5);
    std::mt19937 rng(9);
    for (int it = 0; it < 20; ++it) EXPECT_LT(multi_be_k2_crosscheck(e, random_3nj(rng, 2), tight()), 1e-8);
}

TEST(MultiBE, DerivedCoefficientForm) {
    SixJEngine<double> e(0.5);
    std::mt19937 rng(10);
    for (std::size_t k = 2; k <= 3; ++k)
        for (int it = 0; it < 8; ++it)
            EXPECT_LT(multi_biedenharn_elliott_J(e, random_3nj(rng, k), AForm::Derived, tight()).residual(), 1e-7);
}

TEST(MultiBE, PrintedCoefficientFormDiffers) {
    SixJEngine<double> e(0.5);
    std::mt19937 rng(12);
    double worst = 0;
    for (int it = 0; it < 8; ++it)
        worst = std::max(worst, multi_biedenharn_elliott_J(e, random_3nj(rng, 2), AForm::Printed, tight()).residual());
    EXPECT_GT(worst, 1e-4);
}

TEST(SComposition, ReportedAtZeroLabels) {
    SixJEngine<double> e(0.5);
    const auto s = s_composition(e, ThreeNJParams{0, {0, 0, 0, 0}, {0, 0}, {0, 0}},
                                 TruncationPolicy::fixed_window(-12, 20));
    EXPECT_TRUE(std::isfinite(s.rhs));
    EXPECT_GT(s.residual(), 1e-3);
}

TEST(MultiCG, ZeroConventionAndProduct) {
    QContext ctx(0.5, 15);
    CGTable cg(ctx);
    EXPECT_EQ(multi_cg(1, {-1, 2}, {0, 1, 1, 0}, cg), 0.0);
    EXPECT_EQ(multi_cg(1, {1, 2}, {0, -1, 1, 0}, cg), 0.0);
    EXPECT_NEAR(multi_cg(2, {1, 3}, {0, 1, 2, 1}, cg), cg(2, 0, 1) * cg(1, 1, 3) * cg(3, 2, 1), 1e-16);
}

TEST(MultiCG, KOneMatchesCoupledVector) {
    QContext ctx(0.5, 15);
    CGTable cg(ctx);
    const TruncatedFock fock(30);
    for (long x = 0; x <= 2; ++x)
        for (long n1 = 0; n1 <= 2; ++n1)
            for (long n2 = 0; n2 <= 2; ++n2)
                for (long n3 = 0; n3 <= 2; ++n3)
                    for (long r1 = 0; r1 <= 3; ++r1) {
                        const auto v = coupled_vector(Scheme::S1_23, x, r1 - n1, x - n1 + n2 - n3, fock, cg);
                        EXPECT_NEAR(multi_cg(x, {r1}, {n1, n2, n3}, cg), v.coeff({static_cast<int>(n1),
                                    static_cast<int>(n2), static_cast<int>(n3)}), 1e-14);
                    }
}

TEST(MultiCG, ExpansionThroughThreeNJ) {
    QContext ctx(0.5, 15);
    CGTable cg(ctx);
    SixJEngine<double> e(0.5);
    double worst = 0;
    for (long x = 0; x <= 2; ++x)
        for (long r1 = 0; r1 <= 2; ++r1)
            for (long n1 = 0; n1 <= 1; ++n1)
                for (long n2 = 0; n2 <= 1; ++n2)
                    for (long n3 = 0; n3 <= 1; ++n3)
                        worst = std::max(worst, cg_expansion(e, cg, x, {r1}, {n1, n2, n3}, tight()).residual());
    EXPECT_LT(worst, 1e-7);
    for (const auto& [x, n, r] : std::vector<std::tuple<long, MultiIndex, MultiIndex>>{
             {1, {0, 1, 1, 0}, {1, 1}}, {2, {1, 0, 2, 1}, {2, 1}}, {3, {1, 2, 0, 1}, {3, 2}}})
        EXPECT_LT(cg_expansion(e, cg, x, r, n, tight()).residual(), 1e-7);
}
