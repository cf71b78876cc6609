#include "qb/qcore.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qb;

namespace {

double brute_product(double a, double q, int terms) {
    long double p = 1;
    long double aq = a;
    for (int k = 0; k < terms; ++k) {
        p *= (1 - aq);
        aq *= q;
    }
    return static_cast<double>(p);
}

}  // namespace

TEST(QContext, RejectsBadParameters) {
    EXPECT_THROW(QContext(0.0), DomainError);
    EXPECT_THROW(QContext(1.0), DomainError);
    EXPECT_THROW(QContext(-0.2), DomainError);
    EXPECT_THROW(QContext(0.5, 10), DomainError);
    EXPECT_NO_THROW(QContext(0.5, 15));
}

TEST(QPochFinite, Examples) {
    QContext ctx(0.5);
    EXPECT_EQ(qpoch_finite(0.7, ctx, 0), 1.0);
    EXPECT_NEAR(qpoch_finite(0.5, ctx, 2), 0.375, 1e-15);
    EXPECT_EQ(qpoch_finite(1.0, ctx, 3), 0.0);
    EXPECT_THROW(qpoch_finite(0.5, ctx, -1), DomainError);
}

TEST(QPochFinite, Recurrence) {
    const double q = 0.7;
    for (double a : {-1.3, 0.2, 0.9, 2.5}) {
        for (long n = 0; n < 20; ++n) {
            const double lhs = qpoch_finite(a, q, n + 1);
            const double rhs = qpoch_finite(a, q, n) * (1 - a * std::pow(q, n));
            EXPECT_NEAR(lhs, rhs, 4e-16 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST(QPochInfinite, Examples) {
    QContext ctx(0.5);
    TruncationPolicy pol;
    pol.tail_tol = 1e-18;
    auto r0 = qpoch_infinite(0.0, ctx, pol);
    EXPECT_EQ(r0.value, 1.0);
    EXPECT_TRUE(r0.converged);
    EXPECT_NEAR(qpoch_infinite(0.5, ctx, pol).value, brute_product(0.5, 0.5, 200), 1e-15);
    EXPECT_EQ(qpoch_infinite(1.0, ctx, pol).value, 0.0);
}

TEST(QPochInfinite, FlagsMaxTerms) {
    TruncationPolicy pol;
    pol.max_terms = 3;
    pol.tail_tol = 1e-30;
    auto r = qpoch_infinite<double>(0.5, 0.9, pol);
    EXPECT_FALSE(r.converged);
    EXPECT_GT(r.est_error, pol.tail_tol);
}

TEST(QPochInfinite, SplitsAtFiniteN) {
    const mp40 q("0.3");
    TruncationPolicy pol;
    pol.tail_tol = 1e-30;
    for (const char* as : {"0.45", "-2.0", "1.7"}) {
        const mp40 a(as);
        auto full = qpoch_infinite(a, q, pol);
        for (long n = 1; n <= 10; ++n) {
            auto tail = qpoch_infinite(mp40(a * ipow(q, n)), q, pol);
            const mp40 rhs = qpoch_finite(a, q, n) * tail.value;
            EXPECT_LT(to_double(abs(full.value - rhs)), full.est_error + 4 * tail.est_error + 1e-35);
        }
    }
}

TEST(Rphis, TrivialCases) {
    TruncationPolicy pol;
    EXPECT_EQ(rphis<double>({0.0}, {0.25}, 0.5, 0.0, pol).value, 1.0);
    auto r = rphis<double>({1.0, 0.0}, {0.3}, 0.5, 0.7, pol);
    EXPECT_EQ(r.value, 1.0);
    EXPECT_EQ(r.est_error, 0.0);
}

TEST(Rphis, OnePhiOneAgainstDirectSum) {
    // 1phi1(0; q^2; q, q/4) at q = 1/2 by a 200-term direct summation
    const double q = 0.5, x = 0.25, b = q * q, z = q * x;
    long double s = 0;
    for (int k = 0; k < 200; ++k) {
        long double t = 1;
        for (int j = 0; j < k; ++j) t *= z / ((1 - std::pow(q, j + 1)) * (1 - b * std::pow(q, j)));
        t *= std::pow(-1.0, k) * std::pow(q, k * (k - 1) / 2.0);
        s += t;
    }
    TruncationPolicy pol;
    pol.tail_tol = 1e-18;
    auto r = rphis<double>({0.0}, {b}, q, z, pol);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, static_cast<double>(s), 1e-15);
}

TEST(Rphis, QBinomialTheorem) {
    // 1phi0(a; -; q, z) = (az;q)_inf / (z;q)_inf
    const mp40 q("0.6"), a("0.35"), z("0.45");
    TruncationPolicy pol;
    pol.tail_tol = 1e-34;
    auto r = rphis<mp40>({a}, {}, q, z, pol);
    const mp40 rhs = qpoch_infinite_value(mp40(a * z), q) / qpoch_infinite_value(z, q);
    EXPECT_LT(to_double(abs(r.value - rhs)), 1e-32);
}

TEST(Rphis, QGaussSum) {
    // 2phi1(a, b; c; q, c/(ab)) = (c/a, c/b; q)_inf / (c, c/(ab); q)_inf
    const mp40 q("0.5"), a("0.3"), b("-0.4"), c("0.05");
    TruncationPolicy pol;
    pol.tail_tol = 1e-34;
    const mp40 z = c / (a * b);
    auto r = rphis<mp40>({a, b}, {c}, q, z, pol);
    const mp40 rhs = qpoch_infinite_value(mp40(c / a), q) * qpoch_infinite_value(mp40(c / b), q) /
                     (qpoch_infinite_value(c, q) * qpoch_infinite_value(z, q));
    EXPECT_LT(to_double(abs(r.value - rhs)), 1e-30);
}

TEST(Rphis, TerminatingMatchesFiniteSum) {
    const double q = 0.4, b = 0.2, z = 1.3;
    for (int n = 0; n <= 6; ++n) {
        long double s = 0;
        for (int k = 0; k <= n; ++k) {
            long double t = 1;
            for (int j = 0; j < k; ++j)
                t *= (1 - std::pow(q, j - n)) * z / ((1 - std::pow(q, j + 1)) * (1 - b * std::pow(q, j)));
            s += t;
        }
        TruncationPolicy pol;
        auto r = rphis<double>({std::pow(q, -n), 0.0}, {b}, q, z, pol, n);
        EXPECT_EQ(r.est_error, 0.0);
        EXPECT_NEAR(r.value, static_cast<double>(s), 1e-11 * std::max(1.0L, std::abs(s)));
        auto r2 = rphis<double>({std::pow(q, -n), 0.0}, {b}, q, z, pol);
        EXPECT_NEAR(r2.value, static_cast<double>(s), 1e-11 * std::max(1.0L, std::abs(s)));
    }
}

TEST(Rphis, PoleInLowerParameter) {
    TruncationPolicy pol;
    EXPECT_THROW(rphis<double>({0.5}, {4.0}, 0.5, 0.3, pol), PoleInLowerParameter);
}

TEST(Rphis, NonConvergent) {
    TruncationPolicy pol;
    pol.max_terms = 5;
    EXPECT_THROW(rphis<double>({0.5}, {}, 0.9, 0.99, pol), NonConvergent);
}

TEST(BilateralSum, Examples) {
    TruncationPolicy pol;
    pol.tail_tol = 1e-16;
    auto zero = bilateral_sum<double>([](long) { return 0.0; }, pol);
    EXPECT_EQ(zero.value, 0.0);
    EXPECT_EQ(zero.est_error, 0.0);
    auto geo = bilateral_sum<double>([](long x) { return std::pow(0.5, std::abs(x)); }, pol);
    EXPECT_NEAR(geo.value, 3.0, 1e-15);
    EXPECT_TRUE(geo.converged);
    auto one = bilateral_sum<double>([](long x) { return x < 0 ? 0.0 : std::pow(0.3, x); }, pol);
    EXPECT_NEAR(one.value, 1 / 0.7, 1e-15);
}

TEST(BilateralSum, JacobiTripleProduct) {
    // sum_k q^{k^2} z^k = (q^2, -qz, -q/z; q^2)_inf
    const mp40 q("0.7"), z("1.9");
    TruncationPolicy pol;
    pol.tail_tol = 1e-34;
    auto r = bilateral_sum<mp40>([&](long k) { return ipow(q, k * k) * ipow(z, k); }, pol);
    const mp40 q2 = q * q;
    const mp40 rhs = qpoch_infinite_value(q2, q2) * qpoch_infinite_value(mp40(-q * z), q2) *
                     qpoch_infinite_value(mp40(-q / z), q2);
    EXPECT_LT(to_double(abs(r.value - rhs)), 1e-32);
}

TEST(BilateralSum, WindowEnlargementInvariance) {
    TruncationPolicy pol;
    pol.tail_tol = 1e-14;
    auto f = [](long k) { return std::pow(0.5, k * k / 3.0) * (k % 2 ? -1.0 : 1.0); };
    auto r = bilateral_sum<double>(f, pol);
    ASSERT_TRUE(r.converged);
    auto wide = TruncationPolicy::fixed_window(pol.lo - 10 - r.terms_used, pol.hi + 10 + r.terms_used, 1e-14);
    auto r2 = bilateral_sum<double>(f, wide);
    EXPECT_LT(std::abs(r.value - r2.value), 2 * pol.tail_tol);
}

TEST(BilateralSum, FixedWindowReportsTail) {
    auto pol = TruncationPolicy::fixed_window(-2, 2, 1e-10);
    auto r = bilateral_sum<double>([](long x) { return std::pow(0.5, std::abs(x)); }, pol);
    EXPECT_EQ(r.terms_used, 5);
    EXPECT_FALSE(r.converged);
    EXPECT_THROW(TruncationPolicy::fixed_window(3, 1), DomainError);
}

TEST(BilateralSum, MaxTermsThrows) {
    TruncationPolicy pol;
    pol.max_terms = 80;
    EXPECT_THROW(bilateral_sum<double>([](long) { return 1.0; }, pol), NonConvergent);
}
