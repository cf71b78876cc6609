#include "qb/qfunctions.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qb;

namespace {

double qpinf(double a, double q) {
    long double p = 1, aq = a;
    for (int k = 0; k < 400; ++k, aq *= q) p *= (1 - aq);
    return static_cast<double>(p);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST(Wall, DegreeZeroAndOrigin) {
    const double a = 0.4;
    for (double q : {0.3, 0.7}) {
        QContext ctx(q);
        for (long x = 0; x < 5; ++x) EXPECT_NEAR(wall_poly({0, x, a}, ctx), 1.0, 1e-14);
        // q-Chu-Vandermonde with one upper parameter 0: (-aq)^n q^{n(n-1)/2} / (aq;q)_n
        for (int n = 0; n < 8; ++n) {
            double expected = 1;
            for (int k = 0; k < n; ++k) expected *= -a * std::pow(q, k + 1) / (1 - a * std::pow(q, k + 1));
            EXPECT_LT(rel(wall_poly({n, 0, a}, ctx), expected), 1e-13);
        }
    }
}

TEST(Wall, DegreeOneExplicit) {
    const double q = 0.5, a = 0.5;
    // 1 + (1 - q^{-1}) q^{2} / ((1 - q)(1 - aq))
    const double expected = 1 + (1 - 1 / q) * q * q / ((1 - q) * (1 - a * q));
    QContext ctx(q);
    EXPECT_NEAR(wall_poly({1, 1, a}, ctx), expected, 1e-15);
    EXPECT_NEAR(wall_poly_2phi0<double>(1, 1, a, q), expected, 1e-15);
}

TEST(Wall, ClosedFormsAgree) {
    for (double qd : {0.3, 0.5, 0.7}) {
        for (double ad : {0.3, 0.5, 1.0}) {
            const mp100 q = from_double<mp100>(qd), a = from_double<mp100>(ad);
            for (int n = 0; n <= 8; ++n) {
                for (long x = 0; x <= 8; ++x) {
                    const double f1 = to_double(wall_poly_2phi1(n, x, a, q));
                    const double f0 = to_double(wall_poly_2phi0(n, x, a, q));
                    EXPECT_LT(rel(f1, f0), 1e-12) << n << " " << x << " " << ad << " " << qd;
                    EXPECT_LT(rel(wall_poly<double>(n, x, ad, qd), f1), 1e-12);
                }
            }
        }
    }
}

TEST(Wall, LogSpaceHandlesLargeDegree) {
    const mp100 q("0.5"), a("0.25");
    for (int n : {20, 35}) {
        for (long x : {0L, 5L, 30L, 50L}) {
            const mp100 ref = x < n ? wall_poly_2phi0(n, x, a, q) : wall_poly_2phi1(n, x, a, q);
            EXPECT_LT(rel(wall_poly<double>(n, x, 0.25, 0.5), to_double(ref)), 1e-9) << n << " " << x;
        }
    }
}

TEST(WallOrthonormal, Examples) {
    const double q = 0.5;
    QContext ctx(q);
    EXPECT_NEAR(wall_orthonormal({0, 0, 1.0}, ctx), std::sqrt(qpinf(q, q)), 1e-15);
    EXPECT_THROW(wall_orthonormal({0, 0, 2.0}, ctx), DomainError);
    EXPECT_THROW(wall_orthonormal({0, 0, 2.5}, ctx), DomainError);
    EXPECT_THROW(wall_orthonormal({0, 0, -0.1}, ctx), DomainError);
}

TEST(WallOrthonormal, DualOrthogonality) {
    const double q = 0.5, a = 0.5;
    for (long x = 0; x < 4; ++x) {
        for (long y = 0; y < 4; ++y) {
            double s = 0;
            for (int n = 0; n < 120; ++n) s += wall_orthonormal<double>(n, x, a, q) * wall_orthonormal<double>(n, y, a, q);
            EXPECT_NEAR(s, x == y ? 1.0 : 0.0, 1e-10) << x << " " << y;
        }
    }
}

TEST(WallOrthonormal, PrimalOrthogonality) {
    for (double q : {0.3, 0.5}) {
        for (double a : {0.5, 1.2}) {
            for (int n = 0; n < 4; ++n) {
                for (int m = 0; m < 4; ++m) {
                    double s = 0;
                    for (long x = 0; x < 150; ++x) s += wall_orthonormal<double>(n, x, a, q) * wall_orthonormal<double>(m, x, a, q);
                    EXPECT_NEAR(s, n == m ? 1.0 : 0.0, 1e-10) << n << " " << m;
                }
            }
        }
    }
}

TEST(QBessel, Examples) {
    QContext ctx(0.5);
    EXPECT_EQ(qbessel(0, 0.0, ctx), 1.0);
    for (int nu = 1; nu < 4; ++nu) EXPECT_EQ(qbessel(nu, 0.0, ctx), 0.0);
    const double lhs = qbessel(-2, 0.25, ctx);
    const double rhs = 0.5 * qbessel(2, 0.0625, ctx);
    EXPECT_NEAR(lhs, rhs, 1e-16);
    EXPECT_THROW(qbessel(1, -0.5, ctx), DomainError);
}

TEST(QBessel, DefinitionAgainstDirectSum) {
    // x^{nu/2} (q^{nu+1};q)_inf/(q;q)_inf sum_k (-1)^k q^{k(k-1)/2} (qx)^k / ((q, q^{nu+1}; q)_k)
    const double q = 0.5;
    for (int nu = 0; nu < 4; ++nu) {
        for (double x : {0.1, 0.9, 3.0}) {
            long double s = 0, t = 1;
            const double b = std::pow(q, nu + 1);
            for (int k = 0; k < 120; ++k) {
                s += t;
                t *= -std::pow(q, k) * q * x / ((1 - std::pow(q, k + 1)) * (1 - b * std::pow(q, k)));
            }
            const double ref = std::pow(x, nu / 2.0) * qpinf(b, q) / qpinf(q, q) * static_cast<double>(s);
            EXPECT_NEAR(qbessel<double>(nu, x, q), ref, 1e-14);
        }
    }
}

TEST(QBessel, ReflectionInvolution) {
    const mp40 q("0.5");
    for (int n = 1; n <= 4; ++n) {
        for (const char* xs : {"0.3", "1.5"}) {
            const mp40 x(xs);
            const mp40 direct = qbessel(n, x, q);
            const mp40 back = sign_pow(n) * ipow(mp40(sqrt(q)), -n) * qbessel(-n, mp40(x * ipow(q, -n)), q);
            EXPECT_LT(to_double(abs(direct - back) / abs(direct)), 1e-12);
        }
    }
}

TEST(QBessel, LatticeMatchesDefinition) {
    const mp100 q("0.5");
    LatticeBessel<double> jd(0.5);
    LatticeBessel<mp100> jm(q);
    for (int nu = -3; nu <= 4; ++nu) {
        for (long y = -12; y <= 25; ++y) {
            const mp100 ref = qbessel(nu, ipow(q, y), q);
            const double scale = std::max(1e-30, to_double(abs(ref)));
            EXPECT_LT(to_double(abs(jm(nu, y) - ref)), 1e-60 + 1e-40 * scale) << nu << " " << y;
            EXPECT_LT(std::abs(jd(nu, y) - to_double(ref)), 1e-15 * std::max(1.0, scale)) << nu << " " << y;
        }
    }
    EXPECT_GT(jd.cached(), 0u);
    EXPECT_EQ(to_double(qbessel_lattice(2, 3L, q)), to_double(jm(2, 3)));
}

TEST(GenFun, Examples) {
    QContext ctx(0.5, 30);
    TruncationPolicy pol;
    pol.tail_tol = 1e-25;
    EXPECT_LT(genfun_check(1, 0.5, 0.0, ctx, pol).value, 1e-25);
    EXPECT_LT(genfun_check(1, 0.5, 0.25, ctx, pol).value, 1e-10);
    auto z = genfun_check(0, 0.0, 0.5, ctx, pol);
    EXPECT_LT(z.value, 1e-25);
    EXPECT_TRUE(z.converged);
    EXPECT_THROW(genfun_check(1, 0.5, 1.0, ctx, pol), DomainError);
    EXPECT_THROW(genfun_check(1, 0.5, -1.5, ctx, pol), DomainError);
}

TEST(GenFun, NegativeOrders) {
    QContext ctx(0.3, 30);
    TruncationPolicy pol;
    pol.tail_tol = 1e-25;
    for (int nu = -3; nu <= 3; ++nu)
        for (double t : {-0.6, 0.2, 0.8})
            EXPECT_LT(genfun_check(nu, 0.7, t, ctx, pol).value, 1e-20) << nu << " " << t;
}

TEST(WallGenFun, Examples) {
    TruncationPolicy pol;
    pol.tail_tol = 1e-25;
    QContext c5(0.5, 30), c3(0.3, 30);
    for (int nu = 0; nu < 4; ++nu) {
        const double w = wall_genfun_check(0, nu, 0.25, c5, pol).value;
        const double g = genfun_check(nu, 0.25, std::pow(0.5, nu + 1), c5, pol).value;
        EXPECT_LT(w, 1e-20);
        EXPECT_LT(g, 1e-20);
    }
    EXPECT_LT(wall_genfun_check(1, 2, 0.25, c5, pol).value, 1e-10);
    EXPECT_LT(wall_genfun_check(2, 0, 0.5, c3, pol).value, 1e-10);
    EXPECT_THROW(wall_genfun_check(-1, 0, 0.5, c3, pol), DegreeNegative);
    EXPECT_THROW(wall_genfun_check(1, -1, 0.5, c3, pol), DomainError);
}

TEST(WallGenFun, DoubleBackendStillTight) {
    TruncationPolicy pol;
    pol.tail_tol = 1e-15;
    QContext ctx(0.5, 15);
    EXPECT_LT(wall_genfun_check(3, 2, 0.8, ctx, pol).value, 1e-12);
}
