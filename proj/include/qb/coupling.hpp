#pragma once

// 6j-symbols as q-Bessel functions, binary coupling trees, and the
// summation identities they imply.

#include "qb/qfunctions.hpp"
#include "qb/repr.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qb {

// Shared evaluator for one q: Jackson q-Bessel values on the lattices of
// base q and base q^2, memoised. One engine per thread.
template <class Real>
class SixJEngine {
public:
    explicit SixJEngine(const Real& q);

    const Real& q() const noexcept { return q_; }
    Real J(int nu, long y) { return jq_(nu, y); }    // J_nu(q^y; q)
    Real JQ(int nu, long y) { return jQ_(nu, y); }   // J_nu(q^{2y}; q^2)
    Real mq_pow(long e) const { return ipow(Real(-q_), e); }
    Real sqrtq_pow(long e) const { return ipow(sqrt_q_, e); }

    // R_{p1,r1;p2,r2} = delta_{r1,r2} (-q)^{p1-p2} J_{r1}(q^{2(p1-p2)}; q^2)
    Real sixj(long p1, long r1, long p2, long r2);
    // R^{x,n1,n2,n3}_{a,b} = (-q)^{a+b-n1-n3} J_{x-n1+n2-n3}(q^{2(a+b-n1-n3)}; q^2)
    Real R(long x, long n1, long n2, long n3, long a, long b);

private:
    Real q_;
    Real sqrt_q_;
    LatticeBessel<Real> jq_;
    LatticeBessel<Real> jQ_;
};

double sixj_closed(long p1, long r1, long p2, long r2, const QContext& ctx);
double recoupling_R(long x, long n1, long n2, long n3, long p1p, long p2p, const QContext& ctx);

// ---------------------------------------------------------------------------
// Identities. Each returns both sides; the residual is |lhs - rhs|.

// J_{r123}(q^{p1+p2}) against sum_p J_{r132}(q^{p+p1}) J_{r312}(q^{p+p2}) q^p,
// r_ijk = x - n_i + n_j - n_k.
template <class Real>
IdentitySides<Real> backcoupling_J(SixJEngine<Real>& e, long x, long n1, long n2, long n3, long p1, long p2,
                                   const TruncationPolicy& policy);

// R^{x,n1,n2,n3}_{p1,p2} against sum_p R^{x,n1,n3,n2}_{p1,p} R^{x,n3,n1,n2}_{p,p2}.
template <class Real>
IdentitySides<Real> backcoupling_R(SixJEngine<Real>& e, long x, long n1, long n2, long n3, long p1, long p2,
                                   const TruncationPolicy& policy);

// J_{nu+mu1}(q^{P-Q}) J_{nu+mu2}(q^{Q-R}) against sum_mu A^{mu1,mu2,mu}_{P,Q,R} J_{nu+mu}(q^{P-R}).
template <class Real>
IdentitySides<Real> biedenharn_elliott_J(SixJEngine<Real>& e, long P, long Q, long R, long nu, long mu1, long mu2,
                                         const TruncationPolicy& policy);

// R^{x,n1,n2,p1}_{r1,p2} R^{x,p2,n3,n4}_{p1,r2}
//   against sum_p R^{r1,n2,n3,n4}_{p1,p} R^{x,n1,p,n4}_{r1,r2} R^{r2,n1,n2,n3}_{p,p2}.
template <class Real>
IdentitySides<Real> biedenharn_elliott_R(SixJEngine<Real>& e, long x, long n1, long n2, long n3, long n4, long p1,
                                         long p2, long r1, long r2, const TruncationPolicy& policy);

struct HexagonLabels {
    long x = 0;
    std::array<long, 4> n{};
    std::array<long, 4> p{};
};

// sum_r R^{x,p1,n3,n4}_{p2,r} R^{r,n2,n1,n3}_{p3,p1} R^{x,p3,n2,n4}_{p4,r}
//   against sum_r R^{x,n1,n2,p2}_{r,p1} R^{r,n2,n4,n3}_{p2,p4} R^{x,n1,n3,p4}_{r,p3}.
template <class Real>
IdentitySides<Real> hexagon_R(SixJEngine<Real>& e, const HexagonLabels& h, const TruncationPolicy& policy);

// The q-Bessel transcription of the hexagon: one displayed sum and the same
// sum after (n1,n2,p1,p3) <-> (n4,n3,p2,p4), evaluated in base q.
template <class Real>
IdentitySides<Real> hexagon_J(SixJEngine<Real>& e, const HexagonLabels& h, const TruncationPolicy& policy);

// sum_x J_nu(q^{x+m}) J_nu(q^{x+n}) q^x against delta_{mn} q^{-n}.
template <class Real>
IdentitySides<Real> hankel_orthogonality(SixJEngine<Real>& e, int nu, long m, long n, const TruncationPolicy& policy);

// sum_{p1,r1} R_{p1,r1;p2,r2} R_{p1,r1;p3,r3} against delta delta.
template <class Real>
IdentitySides<Real> sixj_orthogonality(SixJEngine<Real>& e, long p2, long r2, long p3, long r3,
                                       const TruncationPolicy& policy);

// (H_nu f)(n) = sum_x f(x) J_nu(q^{x+n}) q^x for n in [out_lo, out_hi].
template <class Real>
std::vector<Real> qhankel_transform(SixJEngine<Real>& e, const std::function<Real(long)>& f, int nu, long out_lo,
                                    long out_hi, const TruncationPolicy& policy);

// Compares H_{r123} f with H_{r312}(H_{r132} f) on [out_lo, out_hi] for
// f(x) = q^{x^2/2} (x + shift); returns the largest pointwise difference.
template <class Real>
IdentitySides<Real> qhankel_factorization(SixJEngine<Real>& e, long x, long n1, long n2, long n3, long out_lo,
                                          long out_hi, long shift, const TruncationPolicy& policy);

// H_nu(H_nu f) against f on [out_lo, out_hi]; the q-Hankel transform is an involution.
template <class Real>
IdentitySides<Real> qhankel_involution(SixJEngine<Real>& e, int nu, long out_lo, long out_hi, long shift,
                                       const TruncationPolicy& policy);

// ---------------------------------------------------------------------------
// Yang-Baxter operator on l^2(Z) (x) l^2(Z), in the gauge where the height a
// of a pair (i, j) is 0 for factors (1,2) and (1,3) and the first index i for
// factors (2,3).

struct YangBaxterReport {
    double triple_residual = 0;  // max interior |LHS - RHS|
    double unitarity_defect = 0;  // max interior |<R e, R e'> - delta|
    long interior_lo = 0, interior_hi = 0;
};

// window [lo, hi] truncates every factor; interior = [lo + margin, hi - margin].
// Throws InsufficientWindow if R(u,v) sends more than cut_tol of the squared
// norm of an interior pair vector outside the window.
template <class Real>
YangBaxterReport yang_baxter(SixJEngine<Real>& e, long u, long v, long w, long lo, long hi, long margin,
                             double cut_tol = 1e-6);

// Widest centred interior (margin at least a quarter of the window) that
// passes the leak check.
YangBaxterReport yang_baxter_adaptive(long u, long v, long w, long lo, long hi, const QContext& ctx,
                                      double cut_tol = 1e-6);

double yang_baxter_residual(long u, long v, long w, long lo, long hi, const QContext& ctx);

// ---------------------------------------------------------------------------
// Coupling trees

struct BinaryTree {
    long label = 0;
    std::vector<BinaryTree> children;  // empty (leaf) or exactly two

    static BinaryTree leaf(long n);
    static BinaryTree node(long label, BinaryTree left, BinaryTree right);

    bool is_leaf() const noexcept { return children.empty(); }
    bool is_full() const;
    std::vector<long> leaves() const;
    // Swaps the two children of the node reached by `path` (0 = left, 1 = right).
    BinaryTree flipped(const std::vector<int>& path = {}) const;
    // Product of C_{label, left.label, right.label} over internal nodes.
    double coefficient(CGTable& cg) const;
    std::string to_string() const;

    friend bool operator==(const BinaryTree& a, const BinaryTree& b);
    friend bool operator!=(const BinaryTree& a, const BinaryTree& b) { return !(a == b); }
};

// (n1, (n2 n3)_{p1'})_x and ((n1 n2)_{p2'}, n3)_x
BinaryTree tree_1_23(long x, long n1, long n2, long n3, long p1p);
BinaryTree tree_12_3(long x, long n1, long n2, long n3, long p2p);

// C_{x,n1,p1'} C_{p1',n2,n3} against sum_{p2'} R^{x,n1,n2,n3}_{p1',p2'} C_{x,p2',n3} C_{p2',n1,n2}:
// the single 6j move between the two three-leaf trees.
IdentitySides<double> tree_move(SixJEngine<double>& e, CGTable& cg, long x, long n1, long n2, long n3, long p1p);

// The same tree expanded through the backcoupling chain
// (n1,(n2 n3)) -> (n1,(n3 n2)) -> ((n1 n3),n2) -> (n2,(n1 n3)) -> ((n2 n1),n3) -> ((n1 n2),n3),
// i.e. with the kernel sum_p R^{x,n1,n3,n2}_{p1',p} R^{x,n3,n1,n2}_{p2',p} in place of R.
IdentitySides<double> tree_backcoupling_chain(SixJEngine<double>& e, CGTable& cg, long x, long n1, long n2, long n3,
                                              long p1p, const TruncationPolicy& policy);

// C_{x,n+p1,n} C_{n+p1,m,k} against sum_{p2 <= k} R_{p1,r;p2,r} C_{x,k-p2,k} C_{k-p2,m,n}, x - r = n - m + k.
IdentitySides<double> cg_contraction(SixJEngine<double>& e, CGTable& cg, long x, long n, long m, long k, long p1);

}  // namespace qb
