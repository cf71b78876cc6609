#pragma once

// Wall polynomials, their orthonormalised form, and Jackson's third
// (Hahn-Exton) q-Bessel function for integer order.

#include "qb/qcore.hpp"

#include <cstdint>
#include <unordered_map>

namespace qb {

struct WallParams {
    int n = 0;     // degree
    long x = 0;    // evaluation point q^x
    double a = 0;  // parameter
};

enum class WallForm { TwoPhiOne, TwoPhiZero };

// A Wall polynomial value in sign/log-magnitude form, with the summation
// form that produced it and that form's condition number
// sum|t_k| / |sum t_k|.
template <class Real>
struct WallEval {
    Real log_abs{};
    int sign = 0;
    WallForm form = WallForm::TwoPhiOne;
    double condition = 0.0;
};

// p_n(q^x; a; q) as the terminating 2phi1(q^{-n}, 0; aq; q, q^{x+1}).
template <class Real>
Real wall_poly_2phi1(int n, long x, const Real& a, const Real& q);

// The same polynomial from (-a)^n q^{n(n+1)/2} / (aq;q)_n * 2phi0(q^{-n}, q^{-x}; -; q, q^x/a).
template <class Real>
Real wall_poly_2phi0(int n, long x, const Real& a, const Real& q);

// Evaluates both forms in log space and keeps the better conditioned one.
// The 2phi1 terms grow like q^{-(n-x)^2/2} when x < n, where the 2phi0 form
// has no cancellation; the reverse holds for x >= n.
template <class Real>
WallEval<Real> wall_eval(int n, long x, const Real& a, const Real& q);

template <class Real>
Real wall_poly(int n, long x, const Real& a, const Real& q);

// (-1)^{n+x} sqrt((aq)^{x-n} (aq;q)_inf (aq;q)_n / ((q;q)_n (q;q)_x)) p_n(q^x;a;q),
// assembled in log space so that large n and x do not overflow.
template <class Real>
Real wall_orthonormal(int n, long x, const Real& a, const Real& q);

double wall_poly(const WallParams& p, const QContext& ctx);
double wall_orthonormal(const WallParams& p, const QContext& ctx);

// J_nu(x; q) from its 1phi1 definition; negative order by one reflection.
template <class Real>
Real qbessel(int nu, const Real& x, const Real& q);

double qbessel(int nu, double x, const QContext& ctx);

// J_nu(q^y; q) on the lattice, from the cancellation-free expansion
//   J_nu(q^y) = q^{nu y/2} / (q;q)_inf
//               * sum_{k >= max(0,-y)} (-1)^k q^{k(k-1)/2 + (nu+1)k} (q^{y+k+1};q)_inf / (q;q)_k
// (nu >= 0), which follows from the 1phi1(0;B;q,Z) <-> 1phi1(0;Z;q,B) symmetry.
// All terms are small when y < 0, unlike the defining series.
template <class Real>
Real qbessel_lattice(int nu, long y, const Real& q);

// Memoised lattice values J_nu(base^y; base) for one evaluation. Not shared
// between threads; every case builds its own.
template <class Real>
class LatticeBessel {
public:
    explicit LatticeBessel(const Real& base);
    const Real& base() const noexcept { return q_; }
    Real operator()(int nu, long y);
    std::size_t cached() const noexcept { return cache_.size(); }

private:
    Real eval_nonneg(int nu, long y);
    Real q_;
    Real sqrt_q_;
    Real qq_inf_;
    std::unordered_map<std::uint64_t, Real> cache_;
};

template <class Real>
struct IdentitySides {
    Real lhs{};
    Real rhs{};
    double est_error = 0.0;
    long terms_used = 0;
    bool converged = true;
    double residual() const {
        using std::abs;
        return to_double(abs(lhs - rhs));
    }
};

// Generating function: sum_m q^{-nu m/2} J_nu(x q^m) t^m/(q;q)_m against
// x^{nu/2} (q^{nu+1};q)_inf / (q,t;q)_inf * 1phi1(t; q^{nu+1}; q, qx).
// For nu < 0 the product (q^{nu+1};q)_inf 1phi1(...) is taken in its
// regularised termwise form.
template <class Real>
IdentitySides<Real> genfun_sides(int nu, const Real& x, const Real& t, const Real& q,
                                 const TruncationPolicy& policy);

// Wall-polynomial specialisation t = q^{nu+1} with order nu - n:
// sum_m q^{-(nu-n)m/2} J_{nu-n}(x q^m) q^{m(nu+1)}/(q;q)_m
//   against x^{(nu-n)/2} (qx;q)_inf/(q;q)_inf p_n(q^nu; x; q).
template <class Real>
IdentitySides<Real> wall_genfun_sides(int n, int nu, const Real& x, const Real& q,
                                      const TruncationPolicy& policy);

SeriesResult<double> genfun_check(int nu, double x, double t, const QContext& ctx,
                                  const TruncationPolicy& policy);
SeriesResult<double> wall_genfun_check(int n, int nu, double x, const QContext& ctx,
                                       const TruncationPolicy& policy);

}  // namespace qb
