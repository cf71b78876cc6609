#pragma once

// Multivariate q-Bessel functions, the right-comb and left-comb 3nj-symbols
// R and S, and the product, orthogonality, duality and Biedenharn-Elliott
// relations between them.
//
// Vectors are stored 0-based: n[0] is n_1, r[0] is r_1, nu[0] is nu_0.

#include "qb/coupling.hpp"

#include <vector>

namespace qb {

class MultiIndex {
public:
    MultiIndex() = default;
    MultiIndex(std::initializer_list<long> v) : v_(v) {}
    explicit MultiIndex(std::vector<long> v) : v_(std::move(v)) {}

    std::size_t size() const noexcept { return v_.size(); }
    long operator[](std::size_t i) const { return v_[i]; }
    long& operator[](std::size_t i) { return v_[i]; }
    const std::vector<long>& values() const noexcept { return v_; }

    long abs_sum() const;     // |v|, the entry sum
    MultiIndex hat() const;   // reversal
    MultiIndex prime() const; // first entry dropped; throws DomainError when empty

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<long> v_;
};

// nu has length d+2, x and lambda length d.
struct MultiBesselParams {
    MultiIndex nu, x, lambda;
    int d() const noexcept { return static_cast<int>(x.size()); }
    void validate() const;
};

// n has length k+2, r and s length k.
struct ThreeNJParams {
    long x = 0;
    MultiIndex n, r, s;
    int k() const noexcept { return static_cast<int>(r.size()); }
    void validate() const;
};

enum class Lattice { Base, Squared };  // J(.; q) or J(.; q^2)

// prod_j J_{nu_j - x_{j+1} - lambda_{j-1}}(q^{x_j - x_{j+1} + lambda_j - lambda_{j-1}}),
// lambda_0 = nu_0, x_{d+1} = nu_{d+1}.
template <class Real>
Real multi_qbessel(SixJEngine<Real>& e, const MultiBesselParams& p, Lattice lattice = Lattice::Base);
double multi_qbessel(const MultiBesselParams& p, const QContext& ctx);

// nu(x, n) = (n_1, x + n_2, ..., x + n_{k+1}, n_{k+2}).
MultiIndex nu_of(long x, const MultiIndex& n);

// Sum over x in Z^d of J_nu(x,lambda) J_nu(x,lambda') q^{x_1} against
// delta q^{nu_{d+1} + nu_0 - lambda_d}. Summed x_1 first, then x_2, ...
template <class Real>
IdentitySides<Real> multi_orthogonality(SixJEngine<Real>& e, const MultiIndex& nu, const MultiIndex& lambda,
                                        const MultiIndex& lambda2, const TruncationPolicy& policy);

// J_nu(x, lambda) against J_{hat nu}(hat lambda, hat x).
template <class Real>
IdentitySides<Real> multi_self_duality(SixJEngine<Real>& e, const MultiBesselParams& p);

// R^{x,n}_{r,s} = prod_j R^{x, s_{j-1}, n_{j+1}, r_{j+1}}_{r_j, s_j}, s_0 = n_1, r_{k+1} = n_{k+2}.
template <class Real>
Real threenj_R(SixJEngine<Real>& e, const ThreeNJParams& p);
double threenj_R(const ThreeNJParams& p, const QContext& ctx);

// S^{x,n}_{r,s} = prod_j R^{s_{j+1}, n_1, r_{j-1}, n_{j+2}}_{r_j, s_j}, s_{k+1} = x, r_0 = n_2.
template <class Real>
Real threenj_S(SixJEngine<Real>& e, const ThreeNJParams& p);
double threenj_S(const ThreeNJParams& p, const QContext& ctx);

// R^{x,n}_{r,s} split at k = k1 + k2 into R^{x,(n_1..n_{k1+1}, r_{k1+1})}_{r_1..r_{k1}, s_1..s_{k1}}
// times R^{x,(s_{k1}, n_{k1+2}..n_{k+2})}_{r_{k1+1}..r_k, s_{k1+1}..s_k}.
template <class Real>
IdentitySides<Real> threenj_factorization(SixJEngine<Real>& e, const ThreeNJParams& p, int k1);

// threenj_R against (-q)^{r_1 + s_k - n_1 - n_{k+2}} J_{nu(x,n)}(r, s; q^2).
template <class Real>
IdentitySides<Real> threenj_corollary(SixJEngine<Real>& e, const ThreeNJParams& p);

// R^{x,n}_{r,s} against R^{x,hat n}_{hat s, hat r}.
template <class Real>
IdentitySides<Real> threenj_duality(SixJEngine<Real>& e, const ThreeNJParams& p);

// sum_r R^{x,n}_{r,s} R^{x,n}_{r,s'} (or the same for S) against delta_{s,s'}.
enum class Comb { R, S };
template <class Real>
IdentitySides<Real> threenj_orthogonality(SixJEngine<Real>& e, Comb comb, long x, const MultiIndex& n,
                                          const MultiIndex& s, const MultiIndex& s2, const TruncationPolicy& policy);

// R^{x,n}_{r,s} against sum_{t in Z^{k-1}} S^{x,n}_{(t,r_1),s} R^{r_1,n'}_{r',t}. Requires k >= 2.
template <class Real>
IdentitySides<Real> multi_biedenharn_elliott(SixJEngine<Real>& e, const ThreeNJParams& p,
                                             const TruncationPolicy& policy);

// The same identity written for q-Bessel functions in base q:
// J_{nu(x,n)}(r,s) against sum_t A^{r_1}_{t,s} J_{nu(r_1,n')}(r',t).
// Printed: A = (-q^{1/2})^{|t|+|s|-|n|-(k-2)n_1-s_k+r_2}
//              prod_j J_{s_{j+1}-n_1+t_{j-1}+n_{j+2}}(q^{s_j+t_j-n_1-n_{j+2}}), t_0 = n_2, t_k = r_1.
// Derived: the exponent gains + t_{k-1} and the order has - n_{j+2} in place of + n_{j+2}.
enum class AForm { Printed, Derived };
template <class Real>
IdentitySides<Real> multi_biedenharn_elliott_J(SixJEngine<Real>& e, const ThreeNJParams& p, AForm form,
                                               const TruncationPolicy& policy);

// At k = 2 the S-form is the one-variable Biedenharn-Elliott identity.
// Returns the larger of the two side mismatches between the multivariate
// S-form and (-q)^{P-R} times the one-variable q-Bessel form in base q^2,
// with P = r_1 - n_1, Q = r_2 - s_1, R = n_4 - s_2, nu = x - n_1,
// mu_1 = n_2 - r_2, mu_2 = n_1 - s_1 + n_3 - n_4.
template <class Real>
double multi_be_k2_crosscheck(SixJEngine<Real>& e, const ThreeNJParams& p, const TruncationPolicy& policy);

// n rotated right by j places: (n_{k+3-j}, ..., n_{k+2}, n_1, ..., n_{k+2-j}).
MultiIndex rotated(const MultiIndex& n, long j);

// S^{x,n}_{s,r} against the composition of k+1 transitions through the
// rotated label vectors n_1, ..., n_{k+1}, summed over s_1, ..., s_k in Z^k on
// the policy window (coordinatewise).
template <class Real>
IdentitySides<Real> s_composition(SixJEngine<Real>& e, const ThreeNJParams& p, const TruncationPolicy& policy);

// C_{x,r,n} = prod_{j=1}^{k+1} C_{r_{j-1}, n_j, r_j}, r_0 = x, r_{k+1} = n_{k+2}.
double multi_cg(long x, const MultiIndex& r, const MultiIndex& n, CGTable& cg);

// C_{x,r,n} against sum_s R^{x,n}_{r,s} C_{x,hat s,hat n}.
IdentitySides<double> cg_expansion(SixJEngine<double>& e, CGTable& cg, long x, const MultiIndex& r,
                                   const MultiIndex& n, const TruncationPolicy& policy);

}  // namespace qb
