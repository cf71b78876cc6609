#include "qb/coupling.hpp"

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

double jq(int nu, double x, double q) { return to_double(qbessel<double>(nu, x, q)); }

// The defining series cancels for large arguments; evaluate it with 100 digits.
double jq_exact(int nu, long y, double q) {
    const mp100 Q(q);
    return to_double(qbessel<mp100>(nu, ipow(Q, y), Q));
}

}  // namespace

// ---------------------------------------------------------------------------
// Closed forms

TEST(SixJ, VanishesOffDiagonalInR) {
    QContext ctx(0.5, 15);
    for (long r1 = -3; r1 <= 3; ++r1)
        for (long r2 = -3; r2 <= 3; ++r2)
            if (r1 != r2) EXPECT_EQ(sixj_closed(1, r1, 0, r2, ctx), 0.0);
}

TEST(SixJ, EqualLabelsGiveBesselAtOne) {
    QContext ctx(0.5, 15);
    const double j0 = jq(0, 1.0, 0.25);
    for (long p = -3; p <= 3; ++p) EXPECT_NEAR(sixj_closed(p, 0, p, 0, ctx), j0, 1e-14);
}

TEST(SixJ, MatchesDefinitionThroughQBessel) {
    for (double q : {0.3, 0.5, 0.7}) {
        QContext ctx(q, 15);
        for (long r = -3; r <= 3; ++r)
            for (long d = -4; d <= 4; ++d) {
                const double expect = std::pow(-q, d) * jq_exact(static_cast<int>(r), d, q * q);
                EXPECT_NEAR(sixj_closed(d, r, 0, r, ctx), expect, 1e-12 * std::max(1.0, std::abs(expect)))
                    << "q=" << q << " r=" << r << " d=" << d;
            }
    }
}

TEST(SixJ, AgreesWithInnerProductOracle) {
    for (double q : {0.3, 0.5}) {
        QContext ctx(q, 15);
        CGTable cg(ctx);
        const TruncatedFock fock(60);
        double worst = 0;
        for (long x = 0; x <= 2; ++x)
            for (long p1 = -3; p1 <= 3; ++p1)
                for (long p2 = -3; p2 <= 3; ++p2)
                    for (long r = -3; r <= 3; ++r) {
                        const double o = sixj_oracle(x, p1, r, p2, r, fock, cg);
                        worst = std::max(worst, std::abs(o - sixj_closed(p1, r, p2, r, ctx)));
                    }
        EXPECT_LT(worst, 1e-8) << "q=" << q;
    }
}

TEST(SixJ, OracleOffDiagonalIsZero) {
    QContext ctx(0.5, 15);
    CGTable cg(ctx);
    const TruncatedFock fock(60);
    for (long r2 = -2; r2 <= 2; ++r2)
        EXPECT_NEAR(sixj_oracle(1, 0, 0, 1, r2, fock, cg), r2 == 0 ? sixj_closed(0, 0, 1, 0, ctx) : 0.0, 1e-8);
}

TEST(SixJ, TranslationInvariance) {
    QContext ctx(0.5, 15);
    for (long p1 = -3; p1 <= 3; ++p1)
        for (long p2 = -3; p2 <= 3; ++p2)
            for (long r = -2; r <= 2; ++r)
                for (long k = -3; k <= 3; ++k)
                    EXPECT_EQ(sixj_closed(p1 + k, r, p2 + k, r, ctx), sixj_closed(p1, r, p2, r, ctx));
}

TEST(SixJ, Duality) {
    QContext ctx(0.5, 15);
    for (long p1 = -3; p1 <= 3; ++p1)
        for (long p2 = -3; p2 <= 3; ++p2)
            for (long r = -2; r <= 2; ++r)
                EXPECT_NEAR(sixj_closed(p1, r, p2, r, ctx), sixj_closed(-p2, r, -p1, r, ctx), 1e-12);
}

TEST(SixJ, Orthogonality) {
    SixJEngine<double> e(0.5);
    double worst = 0;
    for (long p2 = -3; p2 <= 3; ++p2)
        for (long p3 = -3; p3 <= 3; ++p3)
            for (long r2 = -3; r2 <= 3; ++r2)
                for (long r3 = -3; r3 <= 3; ++r3)
                    worst = std::max(worst, sixj_orthogonality(e, p2, r2, p3, r3, tight()).residual());
    EXPECT_LT(worst, 1e-8);
}

TEST(Recoupling, ExampleValue) {
    QContext ctx(0.5, 15);
    EXPECT_NEAR(recoupling_R(1, 0, 0, 0, 0, 0, ctx), jq(1, 1.0, 0.25), 1e-14);
}

TEST(Recoupling, ReducesToSixJ) {
    QContext ctx(0.5, 15);
    for (long x = 0; x <= 2; ++x)
        for (long n1 = -2; n1 <= 2; ++n1)
            for (long n2 = -2; n2 <= 2; ++n2)
                for (long n3 = -2; n3 <= 2; ++n3)
                    for (long p1 = -2; p1 <= 2; ++p1)
                        for (long p2 = -2; p2 <= 2; ++p2) {
                            const long r = x - n1 + n2 - n3;
                            EXPECT_NEAR(recoupling_R(x, n1, n2, n3, n1 + p1, n3 - p2, ctx),
                                        sixj_closed(p1, r, p2, r, ctx), 1e-14);
                        }
}

TEST(Recoupling, CommonLabelShift) {
    QContext ctx(0.5, 15);
    for (long k = -2; k <= 2; ++k)
        for (long a = -2; a <= 2; ++a)
            for (long b = -2; b <= 2; ++b)
                EXPECT_NEAR(recoupling_R(1 + k, 0 + k, 1 + k, -1 + k, a + k, b + k, ctx),
                            recoupling_R(1, 0, 1, -1, a, b, ctx), 1e-14);
}

// ---------------------------------------------------------------------------
// q-Hankel orthogonality and transforms

TEST(Hankel, Orthogonality) {
    for (double q : {0.3, 0.5, 0.7}) {
        SixJEngine<double> e(q);
        for (int nu = -2; nu <= 3; ++nu)
            for (long m = -3; m <= 3; ++m)
                for (long n = -3; n <= 3; ++n) {
                    const auto s = hankel_orthogonality(e, nu, m, n, tight());
                    EXPECT_LT(s.residual(), 1e-8) << "q=" << q << " nu=" << nu << " m=" << m << " n=" << n;
                    if (m == n) EXPECT_NEAR(s.lhs, std::pow(q, -n), 1e-8);
                }
    }
}

TEST(Hankel, OrthogonalityInMultiplePrecision) {
    SixJEngine<mp40> e(mp40(0.7));
    for (int nu = -2; nu <= 3; ++nu) {
        const auto s = hankel_orthogonality(e, nu, 2, 2, tight());
        EXPECT_LT(to_double(abs(s.lhs - s.rhs)), 1e-15);
    }
}

TEST(Hankel, TransformOfBasisFunctionConcentrates) {
    const double q = 0.5;
    SixJEngine<double> e(q);
    for (int nu : {-1, 0, 2}) {
        const long m = 1;
        auto f = [&](long x) { return e.J(nu, x + m); };
        const auto g = qhankel_transform<double>(e, f, nu, -3, 3, tight());
        for (long n = -3; n <= 3; ++n) EXPECT_NEAR(g[n + 3], n == m ? std::pow(q, -m) : 0.0, 1e-9);
    }
}

TEST(Hankel, TransformOfZeroIsZero) {
    SixJEngine<double> e(0.5);
    const auto g = qhankel_transform<double>(e, [](long) { return 0.0; }, 1, -5, 5, tight());
    for (double v : g) EXPECT_EQ(v, 0.0);
}

TEST(Hankel, Involution) {
    SixJEngine<double> e(0.5);
    for (int nu = -2; nu <= 2; ++nu)
        for (long shift : {0L, 2L}) EXPECT_LT(qhankel_involution(e, nu, -4, 4, shift, tight()).residual(), 1e-9);
}

// H_{r123} differs from H_{r312} H_{r132}: for all labels zero both sides
// use order 0, and H_0 H_0 is the identity.
TEST(Hankel, FactorizationFailsAtZeroLabels) {
    SixJEngine<double> e(0.5);
    EXPECT_GT(qhankel_factorization(e, 0, 0, 0, 0, -4, 4, 0, tight()).residual(), 1e-2);
}

// ---------------------------------------------------------------------------
// Summation identities

TEST(BiedenharnElliott, JFormExamples) {
    SixJEngine<double> e(0.5);
    EXPECT_LT(biedenharn_elliott_J(e, 0, 0, 0, 0, 0, 0, tight()).residual(), 1e-8);
    EXPECT_LT(biedenharn_elliott_J(e, 1, 0, -1, 1, 0, 1, tight()).residual(), 1e-8);
}

TEST(BiedenharnElliott, JFormRandom) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-3, 3);
    for (double q : {0.3, 0.5, 0.7}) {
        SixJEngine<double> e(q);
        for (int i = 0; i < 40; ++i) {
            const long P = d(rng), Q = d(rng), R = d(rng), nu = d(rng), m1 = d(rng), m2 = d(rng);
            EXPECT_LT(biedenharn_elliott_J(e, P, Q, R, nu, m1, m2, tight()).residual(), 1e-8)
                << q << " " << P << " " << Q << " " << R << " " << nu << " " << m1 << " " << m2;
        }
    }
}

TEST(BiedenharnElliott, RFormRandom) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-2, 2);
    SixJEngine<double> e(0.5);
    for (int i = 0; i < 60; ++i) {
        const long x = d(rng), n1 = d(rng), n2 = d(rng), n3 = d(rng), n4 = d(rng);
        const long p1 = d(rng), p2 = d(rng), r1 = d(rng), r2 = d(rng);
        EXPECT_LT(biedenharn_elliott_R(e, x, n1, n2, n3, n4, p1, p2, r1, r2, tight()).residual(), 1e-8);
    }
}

// The displayed backcoupling sum is not an identity. At all labels zero the
// right-hand side collapses by orthogonality to delta_{p1,p2} q^{-p2}, while
// the left-hand side is J_0(q^{p1+p2}).
TEST(Backcoupling, CounterexampleAtZeroLabels) {
    const double q = 0.5;
    SixJEngine<double> e(q);
    for (long p1 = -2; p1 <= 2; ++p1)
        for (long p2 = -2; p2 <= 2; ++p2) {
            const auto s = backcoupling_J(e, 0, 0, 0, 0, p1, p2, tight());
            EXPECT_NEAR(s.lhs, jq(0, std::pow(q, p1 + p2), q), 1e-12);
            EXPECT_NEAR(s.rhs, p1 == p2 ? std::pow(q, -p2) : 0.0, 1e-9);
        }
    EXPECT_GT(backcoupling_J(e, 0, 0, 0, 0, 0, 0, tight()).residual(), 0.1);
}

TEST(Backcoupling, RFormIsTheJFormInBaseQSquared) {
    // With (-q)^{...} prefactors stripped, the R-form sum is the J-form in base q^2.
    SixJEngine<double> e(0.5);
    SixJEngine<double> e2(0.25);
    for (long p1 = -2; p1 <= 2; ++p1) {
        const auto r = backcoupling_R(e, 0, 0, 0, 0, p1, 0, tight());
        const auto j = backcoupling_J(e2, 0, 0, 0, 0, p1, 0, tight());
        EXPECT_NEAR(r.lhs, std::pow(-0.5, p1) * j.lhs, 1e-12);
    }
}

TEST(Hexagon, AllZeroLabels) {
    SixJEngine<double> e(0.5);
    const HexagonLabels h{};
    EXPECT_LT(hexagon_R(e, h, tight()).residual(), 1e-8);
    EXPECT_LT(hexagon_J(e, h, tight()).residual(), 1e-8);
}

TEST(Hexagon, SymmetricInstanceIsExact) {
    SixJEngine<double> e(0.5);
    HexagonLabels h;
    h.x = 1;
    h.n = {1, 0, 0, 1};
    h.p = {2, 2, -1, -1};
    const auto s = hexagon_J(e, h, tight());
    EXPECT_EQ(s.lhs, s.rhs);
}

// Substituting the closed form turns each R-form side into the matching
// J-form side in base q_J = q_R^2, up to the factor (-q_R)^{n2+n3}.
TEST(Hexagon, JFormIsTheRFormRescaled) {
    const double qR = 0.6, qJ = qR * qR;
    SixJEngine<double> eR(qR), eJ(qJ);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int i = 0; i < 30; ++i) {
        HexagonLabels h;
        h.x = d(rng);
        for (auto& v : h.n) v = d(rng);
        for (auto& v : h.p) v = d(rng);
        const auto r = hexagon_R(eR, h, tight());
        const auto j = hexagon_J(eJ, h, tight());
        const double f = std::pow(-qR, h.n[1] + h.n[2]);
        EXPECT_NEAR(j.lhs, f * r.lhs, 1e-10 * std::max(1.0, std::abs(j.lhs)));
        EXPECT_NEAR(j.rhs, f * r.rhs, 1e-10 * std::max(1.0, std::abs(j.rhs)));
    }
}

TEST(Hexagon, PrintedInstanceDoesNotBalance) {
    SixJEngine<double> e(0.5);
    HexagonLabels h;
    h.x = 1;
    h.n = {1, 0, 0, -1};
    h.p = {0, 1, 0, 1};
    const auto s = hexagon_R(e, h, tight());
    EXPECT_TRUE(s.converged);
    EXPECT_GT(s.residual(), 1e-4);
}

// ---------------------------------------------------------------------------
// Yang-Baxter

TEST(YangBaxter, UnitarityOnAdaptiveInterior) {
    QContext ctx(0.5, 15);
    for (int u = -1; u <= 1; ++u)
        for (int v = -1; v <= 1; ++v) {
            const auto rep = yang_baxter_adaptive(u, v, 0, -10, 10, ctx);
            EXPECT_LE(rep.interior_lo, 0);
            EXPECT_GE(rep.interior_hi, 0);
            EXPECT_LT(rep.unitarity_defect, 1e-6);
        }
}

TEST(YangBaxter, WiderWindowWidensInterior) {
    SixJEngine<double> e(0.5);
    const auto rep = yang_baxter(e, 1, 1, 1, -16, 16, 12);
    EXPECT_LT(rep.unitarity_defect, 1e-6);
}

TEST(YangBaxter, NarrowWindowIsRejected) {
    SixJEngine<double> e(0.5);
    EXPECT_THROW(yang_baxter(e, 0, 0, 0, -4, 4, 1), InsufficientWindow);
    EXPECT_THROW(yang_baxter(e, 0, 0, 0, -4, 4, 5), InsufficientWindow);
}

// In this gauge the two triple products differ by O(1) on the interior;
// the residual is reported, not asserted small.
TEST(YangBaxter, TripleProductReported) {
    QContext ctx(0.5, 15);
    const auto rep = yang_baxter_adaptive(1, 1, 1, -10, 10, ctx);
    EXPECT_TRUE(std::isfinite(rep.triple_residual));
    EXPECT_GT(rep.triple_residual, 1e-6);
}

// ---------------------------------------------------------------------------
// Trees

TEST(BinaryTree, StructureAndFlip) {
    const auto t = tree_1_23(2, 0, 1, 1, 1);
    EXPECT_TRUE(t.is_full());
    EXPECT_EQ(t.leaves(), (std::vector<long>{0, 1, 1}));
    const auto f = t.flipped();
    EXPECT_EQ(f.leaves(), (std::vector<long>{1, 1, 0}));
    EXPECT_NE(f, t);
    EXPECT_EQ(f.flipped(), t);
    EXPECT_EQ(t.flipped({1}).leaves(), (std::vector<long>{0, 1, 1}));
    EXPECT_EQ(t.flipped({1}), t.flipped({1}));
    EXPECT_EQ(tree_12_3(2, 0, 1, 1, 1).leaves(), t.leaves());
    EXPECT_NE(tree_12_3(2, 0, 1, 1, 1), t);
    BinaryTree bad{0, {BinaryTree::leaf(1)}};
    EXPECT_FALSE(bad.is_full());
}

TEST(BinaryTree, CoefficientIsProductOfCG) {
    QContext ctx(0.5, 15);
    CGTable cg(ctx);
    const auto t = tree_1_23(2, 1, 3, 2, 4);
    EXPECT_NEAR(t.coefficient(cg), cg(2, 1, 4) * cg(4, 3, 2), 1e-15);
}

TEST(BinaryTree, SixJMove) {
    QContext ctx(0.5, 15);
    CGTable cg(ctx);
    SixJEngine<double> e(0.5);
    double worst = 0;
    for (long x = 0; x <= 3; ++x)
        for (long n1 = 0; n1 <= 3; ++n1)
            for (long n2 = 0; n2 <= 3; ++n2)
                for (long n3 = 0; n3 <= 3; ++n3)
                    for (long p = 0; p <= 4; ++p)
                        worst = std::max(worst, tree_move(e, cg, x, n1, n2, n3, p).residual());
    EXPECT_LT(worst, 1e-10);
}

// Composing the four flips and moves of the backcoupling chain reproduces
// the single move, with the kernel sum_p R_{p1',p} R_{p2',p}.
TEST(BinaryTree, BackcouplingChain) {
    QContext ctx(0.5, 15);
    CGTable cg(ctx);
    SixJEngine<double> e(0.5);
    double worst = 0;
    for (long x = 0; x <= 3; ++x)
        for (long n1 = 0; n1 <= 2; ++n1)
            for (long n2 = 0; n2 <= 2; ++n2)
                for (long n3 = 0; n3 <= 2; ++n3)
                    for (long p = 0; p <= 3; ++p)
                        worst = std::max(worst, tree_backcoupling_chain(e, cg, x, n1, n2, n3, p, tight()).residual());
    EXPECT_LT(worst, 1e-8);
}

TEST(BinaryTree, CGContraction) {
    QContext ctx(0.5, 15);
    CGTable cg(ctx);
    SixJEngine<double> e(0.5);
    double worst = 0;
    for (long x = 0; x <= 3; ++x)
        for (long n = 0; n <= 3; ++n)
            for (long m = 0; m <= 3; ++m)
                for (long k = 0; k <= 3; ++k)
                    for (long p1 = -n; p1 <= 3; ++p1) worst = std::max(worst, cg_contraction(e, cg, x, n, m, k, p1).residual());
    EXPECT_LT(worst, 1e-8);
}
