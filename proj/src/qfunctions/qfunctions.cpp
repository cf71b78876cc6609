#include "qb/qfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qb {

using std::abs;
using std::exp;
using std::log;
using std::sqrt;

namespace {

template <class Real>
struct LogTerm {
    Real la;
    int s;
};

template <class Real>
int sgn(const Real& v) {
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

template <class Real>
std::vector<LogTerm<Real>> terms_2phi1(int n, long x, const Real& a, const Real& q) {
    std::vector<LogTerm<Real>> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    const Real lq = log(q);
    Real la(0);
    int s = 1;
    out.push_back({la, s});
    for (int k = 0; k < n; ++k) {
        const Real f1 = Real(1) - ipow(q, k - n);
        const Real f2 = Real(1) - ipow(q, k + 1);
        const Real f3 = Real(1) - a * ipow(q, k + 1);
        if (f3 == 0) throw PoleInLowerParameter("aq q^k = 1 in the Wall 2phi1");
        la += log(abs(f1)) + Real(x + 1) * lq - log(f2) - log(abs(f3));
        s *= sgn(f1) * sgn(f3);
        out.push_back({la, s});
    }
    return out;
}

template <class Real>
std::vector<LogTerm<Real>> terms_2phi0(int n, long x, const Real& a, const Real& q) {
    std::vector<LogTerm<Real>> out;
    const Real lq = log(q);
    const Real aqn = qpoch_finite(Real(a * q), q, n);
    if (aqn == 0) throw PoleInLowerParameter("(aq;q)_n vanishes in the Wall 2phi0 prefactor");
    Real la = Real(n) * log(abs(a)) + Real(static_cast<long>(n) * (n + 1) / 2) * lq - log(abs(aqn));
    int s = sign_pow(n) * (n % 2 == 0 ? 1 : sgn(a)) * sgn(aqn);
    out.push_back({la, s});
    const long last = x >= 0 ? std::min<long>(n, x) : n;
    for (long k = 0; k < last; ++k) {
        const Real f1 = Real(1) - ipow(q, k - n);
        const Real f2 = Real(1) - ipow(q, k - x);
        const Real f3 = Real(1) - ipow(q, k + 1);
        la += log(abs(f1)) + log(abs(f2)) - log(f3) + Real(x - k) * lq - log(abs(a));
        s *= -sgn(f1) * sgn(f2) * sgn(a);
        out.push_back({la, s});
    }
    return out;
}

template <class Real>
WallEval<Real> sum_log_terms(const std::vector<LogTerm<Real>>& terms, WallForm form) {
    Real m = terms.front().la;
    for (const auto& t : terms) m = std::max(m, t.la);
    Real s(0);
    Real mag(0);
    for (const auto& t : terms) {
        const Real e = exp(t.la - m);
        s += t.s * e;
        mag += e;
    }
    WallEval<Real> w;
    w.form = form;
    w.sign = sgn(s);
    if (w.sign == 0) {
        w.log_abs = Real(0);
        w.condition = std::numeric_limits<double>::infinity();
    } else {
        w.log_abs = m + log(abs(s));
        w.condition = to_double(mag / abs(s));
    }
    return w;
}

template <class Real>
Real full_tol() {
    return epsilon_of<Real>() / 16;
}

}  // namespace

template <class Real>
Real wall_poly_2phi1(int n, long x, const Real& a, const Real& q) {
    if (n < 0) throw DegreeNegative("Wall polynomial degree must be >= 0");
    TruncationPolicy p;
    p.tail_tol = to_double(full_tol<Real>());
    auto r = rphis<Real>({ipow(q, -n), Real(0)}, {Real(a * q)}, q, ipow(q, x + 1), p, n);
    return r.value;
}

template <class Real>
Real wall_poly_2phi0(int n, long x, const Real& a, const Real& q) {
    if (n < 0) throw DegreeNegative("Wall polynomial degree must be >= 0");
    if (a == 0) throw DomainError("the 2phi0 form of the Wall polynomial needs a != 0");
    TruncationPolicy p;
    p.tail_tol = to_double(full_tol<Real>());
    const long last = x >= 0 ? std::min<long>(n, x) : n;
    auto r = rphis<Real>({ipow(q, -n), ipow(q, -x)}, {}, q, ipow(q, x) / a, p, last);
    const Real pref = ipow(Real(-a), n) * ipow(q, static_cast<long>(n) * (n + 1) / 2) /
                      qpoch_finite(Real(a * q), q, n);
    return pref * r.value;
}

template <class Real>
WallEval<Real> wall_eval(int n, long x, const Real& a, const Real& q) {
    if (n < 0) throw DegreeNegative("Wall polynomial degree must be >= 0");
    std::optional<WallEval<Real>> e1, e2;
    try {
        e1 = sum_log_terms(terms_2phi1(n, x, a, q), WallForm::TwoPhiOne);
    } catch (const PoleInLowerParameter&) {
    }
    if (a != 0) {
        try {
            e2 = sum_log_terms(terms_2phi0(n, x, a, q), WallForm::TwoPhiZero);
        } catch (const PoleInLowerParameter&) {
        }
    }
    if (e1 && e2) return e2->condition < e1->condition ? *e2 : *e1;
    if (e1) return *e1;
    if (e2) return *e2;
    throw PoleInLowerParameter("both Wall polynomial forms hit a pole");
}

template <class Real>
Real wall_poly(int n, long x, const Real& a, const Real& q) {
    auto w = wall_eval(n, x, a, q);
    if (w.sign == 0) return Real(0);
    return w.sign * exp(w.log_abs);
}

template <class Real>
Real wall_orthonormal(int n, long x, const Real& a, const Real& q) {
    if (!(a > 0) || !(a * q < 1)) throw DomainError("orthonormal Wall polynomials need 0 < a < 1/q");
    if (x < 0) throw DomainError("orthonormal Wall polynomials need x >= 0");
    const Real aq = a * q;
    const Real logpref = (Real(x - n) * log(aq) + log(qpoch_infinite_value(aq, q)) +
                          log(qpoch_finite(aq, q, n)) - log(qpoch_finite(q, q, n)) -
                          log(qpoch_finite(q, q, x))) /
                         2;
    auto w = wall_eval(n, x, a, q);
    if (w.sign == 0) return Real(0);
    return sign_pow(n + x) * w.sign * exp(w.log_abs + logpref);
}

double wall_poly(const WallParams& p, const QContext& ctx) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        return to_double(wall_poly<Real>(p.n, p.x, from_double<Real>(p.a), ctx.q_as<Real>()));
    });
}

double wall_orthonormal(const WallParams& p, const QContext& ctx) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        return to_double(wall_orthonormal<Real>(p.n, p.x, from_double<Real>(p.a), ctx.q_as<Real>()));
    });
}

namespace {

template <class Real>
Real qbessel_nonneg(int nu, const Real& x, const Real& q) {
    if (x == 0) return nu == 0 ? Real(1) : Real(0);
    TruncationPolicy p;
    p.tail_tol = to_double(full_tol<Real>());
    p.max_terms = 1000000;
    const Real b = ipow(q, nu + 1);
    auto r = rphis<Real>({Real(0)}, {b}, q, Real(q * x), p);
    return ipow(Real(sqrt(x)), nu) * qpoch_infinite_value(b, q) / qpoch_infinite_value(q, q) * r.value;
}

}  // namespace

template <class Real>
Real qbessel(int nu, const Real& x, const Real& q) {
    if (x < 0) throw DomainError("qbessel needs x >= 0");
    if (nu >= 0) return qbessel_nonneg(nu, x, q);
    const int n = -nu;
    return sign_pow(n) * ipow(Real(sqrt(q)), n) * qbessel_nonneg(n, Real(x * ipow(q, n)), q);
}

double qbessel(int nu, double x, const QContext& ctx) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        return to_double(qbessel<Real>(nu, from_double<Real>(x), ctx.q_as<Real>()));
    });
}

template <class Real>
LatticeBessel<Real>::LatticeBessel(const Real& base)
    : q_(base), sqrt_q_(sqrt(base)), qq_inf_(qpoch_infinite_value(base, base)) {
    if (!(base > 0 && base < 1)) throw DomainError("q-Bessel base must lie in (0,1)");
}

template <class Real>
Real LatticeBessel<Real>::operator()(int nu, long y) {
    const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(nu)) << 32) |
                              static_cast<std::uint32_t>(static_cast<std::int32_t>(y));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Real v;
    if (nu >= 0) {
        v = eval_nonneg(nu, y);
    } else {
        const int n = -nu;
        v = sign_pow(n) * ipow(sqrt_q_, n) * (*this)(n, y + n);
    }
    cache_.emplace(key, v);
    return v;
}

template <class Real>
Real LatticeBessel<Real>::eval_nonneg(int nu, long y) {
    const Real& q = q_;
    const long k0 = std::max<long>(0, -y);
    const Real eps = full_tol<Real>();
    // P_k = (q^{y+k+1};q)_inf, c_k = q^{nu y/2 + k(k-1)/2+(nu+1)k}/(q;q)_k.
    // The prefactor q^{nu y/2} is carried inside c_k: on its own it overflows
    // for y << 0 while the sum underflows.
    Real P = qpoch_infinite_value(ipow(q, y + k0 + 1), q);
    Real c = ipow(sqrt_q_, k0 * (k0 - 1) + 2 * static_cast<long>(nu + 1) * k0 + static_cast<long>(nu) * y) /
             qpoch_finite(q, q, k0);
    Real qk = ipow(q, k0);
    const Real qnu1 = ipow(q, nu + 1);
    Real qyk1 = ipow(q, y + k0 + 1);
    int sign = sign_pow(k0);
    Real S(0);
    for (long k = k0; k < k0 + 100000; ++k) {
        const Real t = sign * c * P;
        S += t;
        if (c == 0) break;
        if (k >= k0 + 2 && abs(t) <= eps * abs(S)) break;
        c *= qk * qnu1 / (Real(1) - qk * q);
        P /= (Real(1) - qyk1);
        qk *= q;
        qyk1 *= q;
        sign = -sign;
    }
    return S / qq_inf_;
}

template <class Real>
Real qbessel_lattice(int nu, long y, const Real& q) {
    LatticeBessel<Real> j(q);
    return j(nu, y);
}

namespace {

template <class Real>
SeriesResult<Real> genfun_lhs(int mu, const Real& x, const Real& t, const Real& q,
                              const TruncationPolicy& policy) {
    SeriesResult<Real> r;
    Real sum(0);
    Real qm(1);   // q^m
    Real tm(1);   // t^m
    Real qqm(1);  // (q;q)_m
    const Real sq = sqrt(q);
    double last[3] = {0, 0, 0};
    for (long m = 0; m < policy.max_terms; ++m) {
        const Real term = ipow(sq, -static_cast<long>(mu) * m) * qbessel(mu, Real(x * qm), q) * tm / qqm;
        sum += term;
        last[m % 3] = to_double(abs(term));
        if (m >= 2 && last[0] + last[1] + last[2] <= policy.tail_tol / 4) {
            r.value = sum;
            r.est_error = 2 * (last[0] + last[1] + last[2]);
            r.terms_used = m + 1;
            r.converged = true;
            return r;
        }
        qm *= q;
        tm *= t;
        qqm *= (Real(1) - qm);
    }
    throw NonConvergent("generating-function series exhausted max_terms");
}

}  // namespace

template <class Real>
IdentitySides<Real> genfun_sides(int nu, const Real& x, const Real& t, const Real& q,
                                 const TruncationPolicy& policy) {
    if (!(abs(t) < 1)) throw DomainError("generating function needs |t| < 1");
    if (x < 0) throw DomainError("generating function needs x >= 0");
    if (nu < 0 && x == 0) throw DomainError("negative order needs x > 0");
    IdentitySides<Real> out;
    auto l = genfun_lhs(nu, x, t, q, policy);
    out.lhs = l.value;
    out.est_error = l.est_error;
    out.terms_used = l.terms_used;
    const Real qinf = qpoch_infinite_value(q, q);
    const Real tinf = qpoch_infinite_value(t, q);
    if (nu >= 0) {
        const Real b = ipow(q, nu + 1);
        auto r = rphis<Real>({t}, {b}, q, Real(q * x), policy);
        const Real xpow = (x == 0) ? Real(nu == 0 ? 1 : 0) : ipow(Real(sqrt(x)), nu);
        out.rhs = xpow * qpoch_infinite_value(b, q) / (qinf * tinf) * r.value;
        out.est_error += r.est_error;
        out.terms_used += r.terms_used;
    } else {
        // sum_k (t;q)_k/(q;q)_k (-1)^k q^{k(k-1)/2} (qx)^k (q^{nu+1+k};q)_inf, zero for k < -nu
        Real s(0);
        double last[3] = {0, 0, 0};
        long k = -nu;
        for (long i = 0;; ++i, ++k) {
            if (i >= policy.max_terms) throw NonConvergent("regularised 1phi1 exhausted max_terms");
            const Real term = qpoch_finite(t, q, k) / qpoch_finite(q, q, k) * sign_pow(k) *
                              ipow(q, k * (k - 1) / 2) * ipow(Real(q * x), k) *
                              qpoch_infinite_value(ipow(q, nu + 1 + k), q);
            s += term;
            last[i % 3] = to_double(abs(term));
            if (i >= 2 && last[0] + last[1] + last[2] <= policy.tail_tol / 4) break;
        }
        out.rhs = ipow(Real(sqrt(x)), nu) / (qinf * tinf) * s;
        out.est_error += 2 * (last[0] + last[1] + last[2]);
    }
    out.converged = out.est_error <= policy.tail_tol;
    return out;
}

template <class Real>
IdentitySides<Real> wall_genfun_sides(int n, int nu, const Real& x, const Real& q,
                                      const TruncationPolicy& policy) {
    if (n < 0) throw DegreeNegative("Wall degree must be >= 0");
    if (nu < 0) throw DomainError("the Wall generating function needs nu >= 0 so that |q^{nu+1}| < 1");
    const int mu = nu - n;
    if (x < 0 || (mu < 0 && x == 0)) throw DomainError("invalid argument for the Wall generating function");
    IdentitySides<Real> out;
    auto l = genfun_lhs(mu, x, ipow(q, nu + 1), q, policy);
    out.lhs = l.value;
    out.est_error = l.est_error;
    out.terms_used = l.terms_used;
    const Real xpow = (x == 0) ? Real(mu == 0 ? 1 : 0) : ipow(Real(sqrt(x)), mu);
    out.rhs = xpow * qpoch_infinite_value(Real(q * x), q) / qpoch_infinite_value(q, q) *
              wall_poly(n, nu, x, q);
    out.converged = out.est_error <= policy.tail_tol;
    return out;
}

SeriesResult<double> genfun_check(int nu, double x, double t, const QContext& ctx,
                                  const TruncationPolicy& policy) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        auto s = genfun_sides<Real>(nu, from_double<Real>(x), from_double<Real>(t), ctx.q_as<Real>(), policy);
        SeriesResult<double> r;
        r.value = s.residual();
        r.est_error = s.est_error;
        r.terms_used = s.terms_used;
        r.converged = s.converged;
        return r;
    });
}

SeriesResult<double> wall_genfun_check(int n, int nu, double x, const QContext& ctx,
                                       const TruncationPolicy& policy) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        auto s = wall_genfun_sides<Real>(n, nu, from_double<Real>(x), ctx.q_as<Real>(), policy);
        SeriesResult<double> r;
        r.value = s.residual();
        r.est_error = s.est_error;
        r.terms_used = s.terms_used;
        r.converged = s.converged;
        return r;
    });
}

#define QB_INSTANTIATE(R)                                                                     \
    template R wall_poly_2phi1<R>(int, long, const R&, const R&);                              \
    template R wall_poly_2phi0<R>(int, long, const R&, const R&);                              \
    template WallEval<R> wall_eval<R>(int, long, const R&, const R&);                          \
    template R wall_poly<R>(int, long, const R&, const R&);                                    \
    template R wall_orthonormal<R>(int, long, const R&, const R&);                             \
    template R qbessel<R>(int, const R&, const R&);                                            \
    template R qbessel_lattice<R>(int, long, const R&);                                        \
    template class LatticeBessel<R>;                                                           \
    template IdentitySides<R> genfun_sides<R>(int, const R&, const R&, const R&,               \
                                              const TruncationPolicy&);                        \
    template IdentitySides<R> wall_genfun_sides<R>(int, int, const R&, const R&,               \
                                                   const TruncationPolicy&);
QB_FOR_EACH_REAL(QB_INSTANTIATE)
#undef QB_INSTANTIATE

}  // namespace qb
