#pragma once

// Askey-Wilson polynomials in one and several variables, and the limit
// transition from the d-variable polynomials to multivariate q-Bessel
// functions.

#include "qb/multivariate.hpp"

#include <array>
#include <vector>

namespace qb {

// p_n(x; a, b, c, d | q), with x the symmetric variable (the polynomial
// depends on x + 1/x).
struct AWParams {
    long n = 0;
    double x = 1;
    double a = 0, b = 0, c = 0, d = 0;
    void validate() const;
};

// Pole-free evaluation:
//   a^{-n} sum_k q^k (q^{-n}, abcd q^{n-1}, ax, a/x; q)_k (ab q^k, ac q^k, ad q^k; q)_{n-k} / (q;q)_k,
// which is (ab,ac,ad;q)_n a^{-n} 4phi3 with the lower Pochhammers cleared.
template <class Real>
Real aw_poly(long n, const Real& x, const Real& a, const Real& b, const Real& c, const Real& d, const Real& q);
double aw_poly(const AWParams& p, const QContext& ctx);

// The same value through the terminating 4phi3 and the prefactor. Throws
// PoleInLowerParameter when ab, ac or ad is q^{-j} with j < n.
template <class Real>
Real aw_poly_4phi3(long n, const Real& x, const Real& a, const Real& b, const Real& c, const Real& d,
                   const Real& q);

// p_n at (a, b, c, d) against p_n at the parameters permuted by perm
// (perm[i] is the index of the parameter placed in slot i).
template <class Real>
IdentitySides<Real> aw_symmetry(long n, const Real& x, const std::array<Real, 4>& abcd, const std::array<int, 4>& perm,
                                const Real& q);

// P_d(n; x; alpha | q) = prod_j p_{n_j}(x_j; alpha_j q^{N_{j-1}}, alpha_j q^{N_{j-1}} / alpha_0^2,
//                                      (alpha_{j+1}/alpha_j) x_{j+1}, (alpha_{j+1}/alpha_j) / x_{j+1} | q),
// x_{d+1} = alpha_{d+2}. n and x have length d, alpha length d+3.
struct MultiAWParams {
    std::vector<long> n;
    std::vector<double> x;
    std::vector<double> alpha;
    int d() const noexcept { return static_cast<int>(n.size()); }
    void validate() const;
};

template <class Real>
Real multi_aw(const std::vector<long>& n, const std::vector<Real>& x, const std::vector<Real>& alpha, const Real& q);
double multi_aw(const MultiAWParams& p, const QContext& ctx);

// Which substitution the limit uses.
//   Printed:   alpha(m) = (q^{-m}, q^{nu_0/2}, q^{nu_j/2 - jm}, q^{nu_{d+1} + m}),
//              x(m)_j = q^{nu_{j-1}/2 - nu_0 - x_j + m},
//              C_m exponent (nu_{j-1}/2 - nu_j + nu_0 + x_{j+1} - m)(lambda_j + m),
//              prefactor exponent (x_{j+1} - x_j + Lambda_{j+1} - Lambda_j)(nu_j - x_{j+1} - Lambda_{j-1})/2
//              with Lambda_{d+1} read as Lambda_d.
//   Corrected: alpha_{d+2} = q^{nu_d/2 - nu_0 - nu_{d+1} + 1 + m},
//              x(m)_j = q^{nu_{j-1}/2 - nu_0 - x_j + 1 + m},
//              C_m exponent (nu_{j-1}/2 - nu_j + nu_0 + x_{j+1} - 1)(lambda_j + m),
//              prefactor exponent (x_{j+1} - x_j + Lambda_{j-1} - Lambda_j)(nu_j - x_{j+1} - Lambda_{j-1})/2.
// In both, x_{d+1} = nu_{d+1}, Lambda_0 = nu_0 and Lambda_j = nu_0 - lambda_1 - ... - lambda_j.
enum class LimitForm { Printed, Corrected };

struct LimitSchedule {
    std::vector<long> m_values{1, 2, 3, 4, 5, 6, 7, 8};
    MultiIndex lambda;  // length d
    MultiIndex nu;      // length d+2
    MultiIndex x;       // length d
    LimitForm form = LimitForm::Corrected;
    void validate() const;
};

struct LimitPoint {
    long m = 0;
    bool pole = false;  // C_m vanishes; the point is skipped
    double ratio = 0;   // P_d / C_m
    double relative_error = 0;
};

struct LimitReport {
    double target = 0;            // (q;q)_inf^d * prefactor * J_nu(x, Lambda)
    std::vector<LimitPoint> points;
    double fitted_constant = 0;   // ratio / target at the last non-pole m
    long onset = -1;              // smallest m after which the errors decrease strictly; -1 if never
    int digits = 0;               // decimal digits used
    // Errors at non-pole points with m >= m0 decrease strictly.
    bool decreasing_from(long m0) const;
    // Relative error at m, or a negative value when m is absent or a pole.
    double error_at(long m) const;
};

// (q;q)_inf^d times the prefactor of the limit, without the q-Bessel factor.
double limit_prefactor(const LimitSchedule& s, const QContext& ctx);

// Evaluates the normalised ratio P_d(lambda + m; x(m); alpha(m)) / C_m for each
// scheduled m. Precision grows with m: at least 15 + 2 m log10(1/q) digits.
// Throws DegreeNegative when some lambda_j + m < 0.
LimitReport limit_check(const LimitSchedule& s, const QContext& ctx);

}  // namespace qb
