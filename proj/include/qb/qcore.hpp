#pragma once

// q-Pochhammer symbols, basic hypergeometric series in the Gasper-Rahman
// normalisation, and deterministic truncated sums over N and Z.

#include "qb/errors.hpp"
#include "qb/real.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qb {

class QContext {
public:
    explicit QContext(double q, int working_precision = 30, double default_tol = 1e-20);

    double q() const noexcept { return q_; }
    int working_precision() const noexcept { return working_precision_; }
    double default_tol() const noexcept { return default_tol_; }
    Backend backend() const noexcept { return backend_for_digits(working_precision_); }

    template <class Real>
    Real q_as() const {
        return from_double<Real>(q_);
    }

private:
    double q_;
    int working_precision_;
    double default_tol_;
};

struct TruncationPolicy {
    long max_terms = 100000;
    double tail_tol = 1e-20;
    bool adaptive = true;
    long lo = -30;
    long hi = 40;

    void validate() const;
    static TruncationPolicy fixed_window(long lo, long hi, double tail_tol = 1e-20);
};

template <class Real>
struct SeriesResult {
    Real value{};
    double est_error = 0.0;
    long terms_used = 0;
    bool converged = true;
};

// (a;q)_n for n >= 0.
template <class Real>
Real qpoch_finite(const Real& a, const Real& q, long n);

// (a;q)_infinity truncated once the first-order tail bound
// 2|P| |a| q^k / (1-q) drops below policy.tail_tol.
template <class Real>
SeriesResult<Real> qpoch_infinite(const Real& a, const Real& q, const TruncationPolicy& policy);

// (a;q)_infinity to the working precision of Real.
template <class Real>
Real qpoch_infinite_value(const Real& a, const Real& q);

// r phi s (upper; lower; q, z) with the factor [(-1)^k q^{k(k-1)/2}]^{1+s-r}.
// When `terminating_degree` is given the sum stops exactly at k = n; an upper
// parameter that numerically equals q^{-n} is also detected.
template <class Real>
SeriesResult<Real> rphis(const std::vector<Real>& upper, const std::vector<Real>& lower,
                         const Real& q, const Real& z, const TruncationPolicy& policy,
                         std::optional<long> terminating_degree = std::nullopt);

// Sum over Z of term(center + k), k in [policy.lo, policy.hi], in ascending
// index order. In adaptive mode each side is extended until its three
// outermost terms sum to at most tail_tol/4; est_error is twice the sum of
// the six boundary magnitudes.
template <class Real>
SeriesResult<Real> bilateral_sum(const std::function<Real(long)>& term,
                                 const TruncationPolicy& policy, long center = 0);

// Context-driven double-valued conveniences.
double qpoch_finite(double a, const QContext& ctx, long n);
SeriesResult<double> qpoch_infinite(double a, const QContext& ctx, const TruncationPolicy& policy);

}  // namespace qb
