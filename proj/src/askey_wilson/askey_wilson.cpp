#include "qb/askey_wilson.hpp"

#include <algorithm>
#include <cmath>

namespace qb {

using std::abs;
using std::sqrt;

void AWParams::validate() const {
    if (n < 0) throw DegreeNegative("Askey-Wilson degree must be non-negative");
    if (x == 0) throw DomainError("Askey-Wilson variable x must be non-zero");
    if (a == 0) throw DomainError("Askey-Wilson parameter a must be non-zero");
}

void MultiAWParams::validate() const {
    if (n.empty()) throw DomainError("multivariate Askey-Wilson needs d >= 1");
    if (x.size() != n.size()) throw DomainError("x and n must have the same length");
    if (alpha.size() != n.size() + 3) throw DomainError("alpha must have length d+3");
    for (long v : n)
        if (v < 0) throw DegreeNegative("Askey-Wilson degrees must be non-negative");
    for (double v : x)
        if (v == 0) throw DomainError("Askey-Wilson variables must be non-zero");
    for (double v : alpha)
        if (v == 0) throw DomainError("alpha entries must be non-zero");
}

void LimitSchedule::validate() const {
    MultiBesselParams{nu, x, lambda}.validate();
    if (m_values.empty()) throw DomainError("limit schedule needs at least one m");
    for (std::size_t i = 1; i < m_values.size(); ++i)
        if (m_values[i] <= m_values[i - 1]) throw DomainError("m values must be strictly increasing");
    for (long m : m_values)
        for (long l : lambda.values())
            if (l + m < 0) throw DegreeNegative("lambda + m has a negative entry");
}

template <class Real>
Real aw_poly(long n, const Real& x, const Real& a, const Real& b, const Real& c, const Real& d, const Real& q) {
    if (n < 0) throw DegreeNegative("Askey-Wilson degree must be non-negative");
    const Real ab = a * b, ac = a * c, ad = a * d;
    const Real up[4] = {ipow(q, -n), ab * c * d * ipow(q, n - 1), a * x, a / x};
    // up_k = (upper;q)_k / (q;q)_k * q^k, built incrementally
    Real up_k(1);
    Real qk(1);
    Real sum(0);
    for (long k = 0; k <= n; ++k) {
        const Real low = qpoch_finite(Real(ab * qk), q, n - k) * qpoch_finite(Real(ac * qk), q, n - k) *
                         qpoch_finite(Real(ad * qk), q, n - k);
        sum += up_k * low;
        if (k == n) break;
        Real num(1);
        for (const auto& u : up) num *= Real(1) - u * qk;
        up_k *= num * q / (Real(1) - qk * q);
        qk *= q;
        if (up_k == 0) break;
    }
    return sum / ipow(a, n);
}

template <class Real>
Real aw_poly_4phi3(long n, const Real& x, const Real& a, const Real& b, const Real& c, const Real& d,
                   const Real& q) {
    if (n < 0) throw DegreeNegative("Askey-Wilson degree must be non-negative");
    const Real ab = a * b, ac = a * c, ad = a * d;
    TruncationPolicy p;
    auto r = rphis<Real>({ipow(q, -n), ab * c * d * ipow(q, n - 1), a * x, a / x}, {ab, ac, ad}, q, q, p, n);
    return qpoch_finite(ab, q, n) * qpoch_finite(ac, q, n) * qpoch_finite(ad, q, n) / ipow(a, n) * r.value;
}

double aw_poly(const AWParams& p, const QContext& ctx) {
    p.validate();
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        return to_double(aw_poly<Real>(p.n, from_double<Real>(p.x), from_double<Real>(p.a), from_double<Real>(p.b),
                                       from_double<Real>(p.c), from_double<Real>(p.d), ctx.q_as<Real>()));
    });
}

template <class Real>
IdentitySides<Real> aw_symmetry(long n, const Real& x, const std::array<Real, 4>& abcd, const std::array<int, 4>& perm,
                                const Real& q) {
    std::array<int, 4> seen{};
    for (int i : perm) {
        if (i < 0 || i > 3 || seen[static_cast<std::size_t>(i)]++) throw DomainError("perm must be a permutation of 0..3");
    }
    std::array<Real, 4> s;
    for (std::size_t i = 0; i < 4; ++i) s[i] = abcd[static_cast<std::size_t>(perm[i])];
    IdentitySides<Real> out;
    out.lhs = aw_poly(n, x, abcd[0], abcd[1], abcd[2], abcd[3], q);
    out.rhs = aw_poly(n, x, s[0], s[1], s[2], s[3], q);
    return out;
}

template <class Real>
Real multi_aw(const std::vector<long>& n, const std::vector<Real>& x, const std::vector<Real>& alpha, const Real& q) {
    const std::size_t d = n.size();
    if (x.size() != d || alpha.size() != d + 3) throw DomainError("multi_aw: x needs length d and alpha length d+3");
    Real out(1);
    long N = 0;
    for (std::size_t j = 1; j <= d; ++j) {
        const Real& aj = alpha[j];
        const Real& xj1 = j < d ? x[j] : alpha[d + 2];
        const Real r = alpha[j + 1] / aj;
        const Real qN = ipow(q, N);
        out *= aw_poly(n[j - 1], x[j - 1], Real(aj * qN), Real(aj * qN / (alpha[0] * alpha[0])), Real(r * xj1),
                       Real(r / xj1), q);
        N += n[j - 1];
    }
    return out;
}

double multi_aw(const MultiAWParams& p, const QContext& ctx) {
    p.validate();
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        std::vector<Real> x, alpha;
        for (double v : p.x) x.push_back(from_double<Real>(v));
        for (double v : p.alpha) alpha.push_back(from_double<Real>(v));
        return to_double(multi_aw<Real>(p.n, x, alpha, ctx.q_as<Real>()));
    });
}

bool LimitReport::decreasing_from(long m0) const {
    double prev = -1;
    for (const auto& pt : points) {
        if (pt.m < m0 || pt.pole) continue;
        if (prev >= 0 && !(pt.relative_error < prev)) return false;
        prev = pt.relative_error;
    }
    return true;
}

double LimitReport::error_at(long m) const {
    for (const auto& pt : points)
        if (pt.m == m && !pt.pole) return pt.relative_error;
    return -1;
}

namespace {

// Lambda_0 .. Lambda_d.
std::vector<long> big_lambda(const LimitSchedule& s) {
    std::vector<long> L{s.nu[0]};
    for (std::size_t j = 0; j < s.lambda.size(); ++j) L.push_back(L.back() - s.lambda[j]);
    return L;
}

// All exponents below are doubled so that the halves in nu_j/2 stay integral;
// h = q^{1/2}.
template <class Real>
Real target_prefactor(const LimitSchedule& s, const Real& q) {
    const std::size_t d = s.x.size();
    const auto L = big_lambda(s);
    const Real h = sqrt(q);
    auto xx = [&](std::size_t j) { return j <= d ? s.x[j - 1] : s.nu[d + 1]; };
    Real out = ipow(qpoch_infinite_value(q, q), static_cast<long>(d));
    for (std::size_t j = 1; j <= d; ++j) {
        const long lam_step = s.form == LimitForm::Corrected ? L[j - 1] - L[j] : (j < d ? L[j + 1] : L[d]) - L[j];
        out *= ipow(h, (xx(j + 1) - xx(j) + lam_step) * (s.nu[j] - xx(j + 1) - L[j - 1]));
    }
    return out;
}

template <class Real>
LimitReport run_limit(const LimitSchedule& s, const QContext& ctx, int digits) {
    const std::size_t d = s.x.size();
    const Real q = ctx.q_as<Real>();
    const Real h = sqrt(q);
    const bool fixed = s.form == LimitForm::Corrected;
    const auto L = big_lambda(s);
    auto xx = [&](std::size_t j) { return j <= d ? s.x[j - 1] : s.nu[d + 1]; };

    LimitReport rep;
    rep.digits = digits;
    SixJEngine<Real> e(q);
    const Real J = multi_qbessel(e, MultiBesselParams{s.nu, s.x, MultiIndex(std::vector<long>(L.begin() + 1, L.end()))});
    const Real target = target_prefactor(s, q) * J;
    rep.target = to_double(target);

    for (long m : s.m_values) {
        LimitPoint pt;
        pt.m = m;
        // C_m vanishes when nu_j - nu_{j-1} - 2m + i = 0 for some 0 <= i < lambda_j + m.
        for (std::size_t j = 1; j <= d; ++j) {
            const long lo = s.nu[j] - s.nu[j - 1] - 2 * m;
            if (lo <= 0 && -lo < s.lambda[j - 1] + m) pt.pole = true;
        }
        if (pt.pole) {
            rep.points.push_back(pt);
            continue;
        }
        std::vector<Real> alpha{ipow(q, -m), ipow(h, s.nu[0])};
        for (std::size_t j = 1; j <= d; ++j) alpha.push_back(ipow(h, s.nu[j] - 2 * static_cast<long>(j) * m));
        alpha.push_back(fixed ? ipow(h, s.nu[d] - 2 * s.nu[0] - 2 * s.nu[d + 1] + 2 + 2 * m)
                              : ipow(q, s.nu[d + 1] + m));
        std::vector<Real> xm;
        std::vector<long> deg;
        for (std::size_t j = 1; j <= d; ++j) {
            xm.push_back(ipow(h, s.nu[j - 1] - 2 * s.nu[0] - 2 * s.x[j - 1] + 2 * m + (fixed ? 2 : 0)));
            deg.push_back(s.lambda[j - 1] + m);
        }
        Real C(1);
        for (std::size_t j = 1; j <= d; ++j) {
            const long shift = fixed ? 2 : 2 * m;
            C *= ipow(h, (s.nu[j - 1] - 2 * s.nu[j] + 2 * s.nu[0] + 2 * xx(j + 1) - shift) * deg[j - 1]) *
                 qpoch_finite(ipow(q, s.nu[j] - s.nu[j - 1] - 2 * m), q, deg[j - 1]);
        }
        const Real ratio = multi_aw(deg, xm, alpha, q) / C;
        pt.ratio = to_double(ratio);
        pt.relative_error = to_double(target != 0 ? abs(ratio / target - 1) : abs(ratio));
        if (target != 0) rep.fitted_constant = to_double(ratio / target);
        rep.points.push_back(pt);
    }

    // onset: first m from which the remaining errors decrease strictly
    for (const auto& pt : rep.points) {
        if (pt.pole) continue;
        if (rep.decreasing_from(pt.m)) {
            rep.onset = pt.m;
            break;
        }
    }
    return rep;
}

int limit_digits(const LimitSchedule& s, const QContext& ctx) {
    const long m_max = s.m_values.back();
    const int need = 15 + static_cast<int>(std::ceil(2.0 * static_cast<double>(m_max) * std::log10(1.0 / ctx.q())));
    return std::max(ctx.working_precision(), need);
}

}  // namespace

double limit_prefactor(const LimitSchedule& s, const QContext& ctx) {
    s.validate();
    return with_backend(backend_for_digits(std::max(ctx.working_precision(), 16)), [&](auto tag) {
        using Real = decltype(tag);
        return to_double(target_prefactor<Real>(s, ctx.q_as<Real>()));
    });
}

LimitReport limit_check(const LimitSchedule& s, const QContext& ctx) {
    s.validate();
    const int digits = limit_digits(s, ctx);
    const Backend b = backend_for_digits(digits);
    return with_backend(b, [&](auto tag) {
        using Real = decltype(tag);
        return run_limit<Real>(s, ctx, backend_digits(b));
    });
}

#define QB_INSTANTIATE_AW(R)                                                                                   \
    template R aw_poly<R>(long, const R&, const R&, const R&, const R&, const R&, const R&);                 \
    template R aw_poly_4phi3<R>(long, const R&, const R&, const R&, const R&, const R&, const R&);           \
    template IdentitySides<R> aw_symmetry<R>(long, const R&, const std::array<R, 4>&, const std::array<int, 4>&, \
                                             const R&);                                                       \
    template R multi_aw<R>(const std::vector<long>&, const std::vector<R>&, const std::vector<R>&, const R&);
QB_FOR_EACH_REAL(QB_INSTANTIATE_AW)
#undef QB_INSTANTIATE_AW

}  // namespace qb
