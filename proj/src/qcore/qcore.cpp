#include "qb/qcore.hpp"

#include <cmath>
#include <deque>
#include <sstream>

namespace qb {

using std::abs;

QContext::QContext(double q, int working_precision, double default_tol)
    : q_(q), working_precision_(working_precision), default_tol_(default_tol) {
    if (!(q > 0.0 && q < 1.0)) {
        std::ostringstream os;
        os << "q must lie in (0,1), got " << q;
        throw DomainError(os.str());
    }
    if (working_precision < 15) throw DomainError("working_precision must be at least 15 digits");
    if (!(default_tol > 0.0)) throw DomainError("default_tol must be positive");
}

void TruncationPolicy::validate() const {
    if (max_terms <= 0) throw DomainError("max_terms must be positive");
    if (!(tail_tol > 0.0)) throw DomainError("tail_tol must be positive");
    if (lo > hi) throw DomainError("bilateral window requires lo <= hi");
}

TruncationPolicy TruncationPolicy::fixed_window(long lo, long hi, double tail_tol) {
    TruncationPolicy p;
    p.adaptive = false;
    p.lo = lo;
    p.hi = hi;
    p.tail_tol = tail_tol;
    p.validate();
    return p;
}

template <class Real>
Real qpoch_finite(const Real& a, const Real& q, long n) {
    if (n < 0) throw DomainError("qpoch_finite requires n >= 0");
    Real p(1);
    Real aq = a;
    for (long k = 0; k < n; ++k) {
        p *= (Real(1) - aq);
        aq *= q;
    }
    return p;
}

template <class Real>
SeriesResult<Real> qpoch_infinite(const Real& a, const Real& q, const TruncationPolicy& policy) {
    SeriesResult<Real> r;
    r.value = Real(1);
    if (a == 0) return r;
    const double oneminusq = 1.0 - to_double(q);
    Real aq = a;
    long k = 0;
    for (; k < policy.max_terms; ++k) {
        r.value *= (Real(1) - aq);
        aq *= q;
        const double bound = 2.0 * to_double(abs(r.value)) * to_double(abs(aq)) / oneminusq;
        if (bound <= policy.tail_tol || r.value == 0) {
            r.est_error = r.value == 0 ? 0.0 : bound;
            r.terms_used = k + 1;
            r.converged = true;
            return r;
        }
    }
    r.terms_used = k;
    r.est_error = 2.0 * to_double(abs(r.value)) * to_double(abs(aq)) / oneminusq;
    r.converged = false;
    return r;
}

template <class Real>
Real qpoch_infinite_value(const Real& a, const Real& q) {
    TruncationPolicy p;
    p.tail_tol = to_double(epsilon_of<Real>()) / 16.0;
    p.max_terms = 1000000;
    auto r = qpoch_infinite(a, q, p);
    if (!r.converged) throw NonConvergent("(a;q)_infinity did not converge");
    return r.value;
}

template <class Real>
SeriesResult<Real> rphis(const std::vector<Real>& upper, const std::vector<Real>& lower,
                         const Real& q, const Real& z, const TruncationPolicy& policy,
                         std::optional<long> terminating_degree) {
    const long r = static_cast<long>(upper.size());
    const long s = static_cast<long>(lower.size());
    const long e = 1 + s - r;
    const Real zero_guard = 32 * epsilon_of<Real>();

    SeriesResult<Real> res;
    Real term(1);
    Real sum(0);
    Real qk(1);
    double last[3] = {0.0, 0.0, 0.0};
    for (long k = 0; k < policy.max_terms; ++k) {
        sum += term;
        last[k % 3] = to_double(abs(term));
        res.terms_used = k + 1;
        if (terminating_degree && k >= *terminating_degree) {
            res.value = sum;
            res.est_error = 0.0;
            res.converged = true;
            return res;
        }
        if (term == 0 && k > 0) break;
        if (!terminating_degree && k >= 2) {
            const double tail = last[0] + last[1] + last[2];
            if (tail <= policy.tail_tol / 4) {
                res.value = sum;
                res.est_error = 2.0 * tail;
                res.converged = true;
                return res;
            }
        }
        // ratio term_{k+1} / term_k
        Real num(1);
        bool terminated = false;
        for (const auto& u : upper) {
            Real f = Real(1) - u * qk;
            if (abs(f) <= zero_guard) terminated = true;
            num *= f;
        }
        Real den = Real(1) - qk * q;
        for (const auto& l : lower) {
            Real f = Real(1) - l * qk;
            if (abs(f) <= zero_guard && !terminated) {
                std::ostringstream os;
                os << "lower parameter hits q^{-" << k << "}";
                throw PoleInLowerParameter(os.str());
            }
            den *= f;
        }
        if (terminated) {
            res.value = sum;
            res.est_error = 0.0;
            res.converged = true;
            return res;
        }
        Real ratio = num / den * z;
        if (e != 0) ratio *= ipow(Real(-qk), e);
        term *= ratio;
        qk *= q;
    }
    if (res.terms_used > 0 && term == 0) {
        res.value = sum;
        res.est_error = 0.0;
        res.converged = true;
        return res;
    }
    throw NonConvergent("rphis exhausted max_terms");
}

template <class Real>
SeriesResult<Real> bilateral_sum(const std::function<Real(long)>& term,
                                 const TruncationPolicy& policy, long center) {
    policy.validate();
    long lo = center + policy.lo;
    long hi = center + policy.hi;
    std::deque<Real> terms;
    for (long k = lo; k <= hi; ++k) terms.push_back(term(k));

    auto boundary = [&](bool left) {
        double s = 0.0;
        const std::size_t n = terms.size();
        for (std::size_t i = 0; i < 3 && i < n; ++i) {
            s += to_double(abs(left ? terms[i] : terms[n - 1 - i]));
        }
        return s;
    };

    if (policy.adaptive) {
        const long step = 4;
        for (;;) {
            const bool left_ok = boundary(true) <= policy.tail_tol / 4;
            const bool right_ok = boundary(false) <= policy.tail_tol / 4;
            if (left_ok && right_ok) break;
            if (static_cast<long>(terms.size()) >= policy.max_terms) {
                std::ostringstream os;
                os << "bilateral window [" << lo << "," << hi << "] reached max_terms";
                throw NonConvergent(os.str());
            }
            if (!left_ok) {
                for (long i = 0; i < step; ++i) terms.push_front(term(--lo));
            }
            if (!right_ok) {
                for (long i = 0; i < step; ++i) terms.push_back(term(++hi));
            }
        }
    }

    SeriesResult<Real> res;
    Real sum(0);
    for (const auto& t : terms) sum += t;
    res.value = sum;
    res.terms_used = static_cast<long>(terms.size());
    res.est_error = 2.0 * (boundary(true) + boundary(false));
    res.converged = res.est_error <= policy.tail_tol;
    return res;
}

double qpoch_finite(double a, const QContext& ctx, long n) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        return to_double(qpoch_finite<Real>(from_double<Real>(a), ctx.q_as<Real>(), n));
    });
}

SeriesResult<double> qpoch_infinite(double a, const QContext& ctx, const TruncationPolicy& policy) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        auto r = qpoch_infinite<Real>(from_double<Real>(a), ctx.q_as<Real>(), policy);
        SeriesResult<double> out;
        out.value = to_double(r.value);
        out.est_error = r.est_error;
        out.terms_used = r.terms_used;
        out.converged = r.converged;
        return out;
    });
}

#define QB_INSTANTIATE(R)                                                                     \
    template R qpoch_finite<R>(const R&, const R&, long);                                      \
    template SeriesResult<R> qpoch_infinite<R>(const R&, const R&, const TruncationPolicy&);   \
    template R qpoch_infinite_value<R>(const R&, const R&);                                    \
    template SeriesResult<R> rphis<R>(const std::vector<R>&, const std::vector<R>&, const R&,  \
                                      const R&, const TruncationPolicy&, std::optional<long>); \
    template SeriesResult<R> bilateral_sum<R>(const std::function<R(long)>&,                   \
                                              const TruncationPolicy&, long);
QB_FOR_EACH_REAL(QB_INSTANTIATE)
#undef QB_INSTANTIATE

}  // namespace qb
