#include "qb/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace qb {

using std::abs;
using std::sqrt;

template <class Real>
SixJEngine<Real>::SixJEngine(const Real& q) : q_(q), sqrt_q_(sqrt(q)), jq_(q), jQ_(Real(q * q)) {}

template <class Real>
Real SixJEngine<Real>::sixj(long p1, long r1, long p2, long r2) {
    if (r1 != r2) return Real(0);
    return mq_pow(p1 - p2) * JQ(static_cast<int>(r1), p1 - p2);
}

template <class Real>
Real SixJEngine<Real>::R(long x, long n1, long n2, long n3, long a, long b) {
    const long e = a + b - n1 - n3;
    return mq_pow(e) * JQ(static_cast<int>(x - n1 + n2 - n3), e);
}

double sixj_closed(long p1, long r1, long p2, long r2, const QContext& ctx) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        SixJEngine<Real> e(ctx.q_as<Real>());
        return to_double(e.sixj(p1, r1, p2, r2));
    });
}

double recoupling_R(long x, long n1, long n2, long n3, long p1p, long p2p, const QContext& ctx) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        SixJEngine<Real> e(ctx.q_as<Real>());
        return to_double(e.R(x, n1, n2, n3, p1p, p2p));
    });
}

namespace {

template <class Real>
IdentitySides<Real> with_sum(Real lhs, const SeriesResult<Real>& s) {
    IdentitySides<Real> out;
    out.lhs = lhs;
    out.rhs = s.value;
    out.est_error = s.est_error;
    out.terms_used = s.terms_used;
    out.converged = s.converged;
    return out;
}

}  // namespace

template <class Real>
IdentitySides<Real> backcoupling_J(SixJEngine<Real>& e, long x, long n1, long n2, long n3, long p1, long p2,
                                   const TruncationPolicy& policy) {
    const int r123 = static_cast<int>(x - n1 + n2 - n3);
    const int r132 = static_cast<int>(x - n1 + n3 - n2);
    const int r312 = static_cast<int>(x - n3 + n1 - n2);
    auto s = bilateral_sum<Real>(
        [&](long p) { return e.J(r132, p + p1) * e.J(r312, p + p2) * ipow(e.q(), p); }, policy);
    return with_sum(e.J(r123, p1 + p2), s);
}

template <class Real>
IdentitySides<Real> backcoupling_R(SixJEngine<Real>& e, long x, long n1, long n2, long n3, long p1, long p2,
                                   const TruncationPolicy& policy) {
    auto s = bilateral_sum<Real>([&](long p) { return e.R(x, n1, n3, n2, p1, p) * e.R(x, n3, n1, n2, p, p2); },
                                 policy);
    return with_sum(e.R(x, n1, n2, n3, p1, p2), s);
}

template <class Real>
IdentitySides<Real> biedenharn_elliott_J(SixJEngine<Real>& e, long P, long Q, long R, long nu, long mu1, long mu2,
                                         const TruncationPolicy& policy) {
    const Real lhs = e.J(static_cast<int>(nu + mu1), P - Q) * e.J(static_cast<int>(nu + mu2), Q - R);
    const int sgn = sign_pow(mu1 + mu2);
    auto s = bilateral_sum<Real>(
        [&](long mu) {
            const Real A = sgn * e.sqrtq_pow(2 * mu - mu1 - mu2) * e.J(static_cast<int>(mu2 - mu1 + P - Q), mu - mu1) *
                           e.J(static_cast<int>(mu1 - mu2 + Q - R), mu - mu2);
            return A * e.J(static_cast<int>(nu + mu), P - R);
        },
        policy);
    return with_sum(lhs, s);
}

template <class Real>
IdentitySides<Real> biedenharn_elliott_R(SixJEngine<Real>& e, long x, long n1, long n2, long n3, long n4, long p1,
                                         long p2, long r1, long r2, const TruncationPolicy& policy) {
    const Real lhs = e.R(x, n1, n2, p1, r1, p2) * e.R(x, p2, n3, n4, p1, r2);
    auto s = bilateral_sum<Real>(
        [&](long p) {
            return e.R(r1, n2, n3, n4, p1, p) * e.R(x, n1, p, n4, r1, r2) * e.R(r2, n1, n2, n3, p, p2);
        },
        policy);
    return with_sum(lhs, s);
}

namespace {

template <class Real>
IdentitySides<Real> two_sums(const SeriesResult<Real>& l, const SeriesResult<Real>& r) {
    IdentitySides<Real> out;
    out.lhs = l.value;
    out.rhs = r.value;
    out.est_error = l.est_error + r.est_error;
    out.terms_used = l.terms_used + r.terms_used;
    out.converged = l.converged && r.converged;
    return out;
}

}  // namespace

template <class Real>
IdentitySides<Real> hexagon_R(SixJEngine<Real>& e, const HexagonLabels& h, const TruncationPolicy& policy) {
    const long x = h.x;
    const auto [n1, n2, n3, n4] = h.n;
    const auto [p1, p2, p3, p4] = h.p;
    auto l = bilateral_sum<Real>(
        [&](long r) {
            return e.R(x, p1, n3, n4, p2, r) * e.R(r, n2, n1, n3, p3, p1) * e.R(x, p3, n2, n4, p4, r);
        },
        policy);
    auto rr = bilateral_sum<Real>(
        [&](long r) {
            return e.R(x, n1, n2, p2, r, p1) * e.R(r, n2, n4, n3, p2, p4) * e.R(x, n1, n3, p4, r, p3);
        },
        policy);
    return two_sums(l, rr);
}

namespace {

// sum_r (-1)^{p2+p4} q^{r-n4+(p2+p4)/2} J_{r-n2+n1-n3}(q^{p1+p3-n2-n3})
//       J_{x-p1+n3-n4}(q^{r+p2-p1-n4}) J_{x-p3+n2-n4}(q^{r+p4-p3-n4})
template <class Real>
SeriesResult<Real> hexagon_J_side(SixJEngine<Real>& e, long x, long n1, long n2, long n3, long n4, long p1, long p2,
                                  long p3, long p4, const TruncationPolicy& policy) {
    const int sgn = sign_pow(p2 + p4);
    return bilateral_sum<Real>(
        [&](long r) {
            return sgn * e.sqrtq_pow(2 * (r - n4) + p2 + p4) * e.J(static_cast<int>(r - n2 + n1 - n3), p1 + p3 - n2 - n3) *
                   e.J(static_cast<int>(x - p1 + n3 - n4), r + p2 - p1 - n4) *
                   e.J(static_cast<int>(x - p3 + n2 - n4), r + p4 - p3 - n4);
        },
        policy);
}

}  // namespace

template <class Real>
IdentitySides<Real> hexagon_J(SixJEngine<Real>& e, const HexagonLabels& h, const TruncationPolicy& policy) {
    const auto [n1, n2, n3, n4] = h.n;
    const auto [p1, p2, p3, p4] = h.p;
    auto l = hexagon_J_side(e, h.x, n1, n2, n3, n4, p1, p2, p3, p4, policy);
    auto r = hexagon_J_side(e, h.x, n4, n3, n2, n1, p2, p1, p4, p3, policy);
    return two_sums(l, r);
}

template <class Real>
IdentitySides<Real> hankel_orthogonality(SixJEngine<Real>& e, int nu, long m, long n, const TruncationPolicy& policy) {
    auto s = bilateral_sum<Real>([&](long x) { return e.J(nu, x + m) * e.J(nu, x + n) * ipow(e.q(), x); }, policy);
    IdentitySides<Real> out = with_sum(Real(0), s);
    out.lhs = s.value;
    out.rhs = m == n ? ipow(e.q(), -n) : Real(0);
    return out;
}

template <class Real>
IdentitySides<Real> sixj_orthogonality(SixJEngine<Real>& e, long p2, long r2, long p3, long r3,
                                       const TruncationPolicy& policy) {
    // R_{p1,r1;..} vanishes unless r1 = r2, so the r1-sum has at most one term.
    IdentitySides<Real> out;
    out.rhs = (p2 == p3 && r2 == r3) ? Real(1) : Real(0);
    if (r2 != r3) {
        out.lhs = Real(0);
        return out;
    }
    auto s = bilateral_sum<Real>([&](long p1) { return e.sixj(p1, r2, p2, r2) * e.sixj(p1, r2, p3, r3); }, policy,
                                 std::max(p2, p3));
    out.lhs = s.value;
    out.est_error = s.est_error;
    out.terms_used = s.terms_used;
    out.converged = s.converged;
    return out;
}

template <class Real>
std::vector<Real> qhankel_transform(SixJEngine<Real>& e, const std::function<Real(long)>& f, int nu, long out_lo,
                                    long out_hi, const TruncationPolicy& policy) {
    std::vector<Real> out;
    for (long n = out_lo; n <= out_hi; ++n) {
        auto s = bilateral_sum<Real>([&](long x) { return f(x) * e.J(nu, x + n) * ipow(e.q(), x); }, policy);
        out.push_back(s.value);
    }
    return out;
}

namespace {

template <class Real>
std::function<Real(long)> gaussian_test_function(const Real& q, long shift) {
    const Real sq = sqrt(q);
    return [sq, shift](long x) { return ipow(sq, (x + shift) * (x + shift)); };
}

// Lazily evaluated, memoised transform g = H_nu f on the whole lattice.
template <class Real>
class LazyTransform {
public:
    LazyTransform(SixJEngine<Real>& e, std::function<Real(long)> f, int nu, const TruncationPolicy& policy)
        : e_(e), f_(std::move(f)), nu_(nu), policy_(policy) {}
    Real operator()(long n) {
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        auto s = bilateral_sum<Real>([&](long x) { return f_(x) * e_.J(nu_, x + n) * ipow(e_.q(), x); }, policy_);
        cache_.emplace(n, s.value);
        return s.value;
    }

private:
    SixJEngine<Real>& e_;
    std::function<Real(long)> f_;
    int nu_;
    TruncationPolicy policy_;
    std::unordered_map<long, Real> cache_;
};

template <class Real>
IdentitySides<Real> max_gap(const std::vector<Real>& a, const std::vector<Real>& b) {
    IdentitySides<Real> out;
    Real worst(-1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Real d = abs(a[i] - b[i]);
        if (d > worst) {
            worst = d;
            out.lhs = a[i];
            out.rhs = b[i];
        }
    }
    return out;
}

}  // namespace

template <class Real>
IdentitySides<Real> qhankel_factorization(SixJEngine<Real>& e, long x, long n1, long n2, long n3, long out_lo,
                                          long out_hi, long shift, const TruncationPolicy& policy) {
    const int r123 = static_cast<int>(x - n1 + n2 - n3);
    const int r132 = static_cast<int>(x - n1 + n3 - n2);
    const int r312 = static_cast<int>(x - n3 + n1 - n2);
    auto f = gaussian_test_function(e.q(), shift);
    const auto direct = qhankel_transform<Real>(e, f, r123, out_lo, out_hi, policy);
    LazyTransform<Real> inner(e, f, r132, policy);
    const auto composed = qhankel_transform<Real>(e, [&](long y) { return inner(y); }, r312, out_lo, out_hi, policy);
    return max_gap(direct, composed);
}

template <class Real>
IdentitySides<Real> qhankel_involution(SixJEngine<Real>& e, int nu, long out_lo, long out_hi, long shift,
                                       const TruncationPolicy& policy) {
    auto f = gaussian_test_function(e.q(), shift);
    LazyTransform<Real> inner(e, f, nu, policy);
    const auto twice = qhankel_transform<Real>(e, [&](long y) { return inner(y); }, nu, out_lo, out_hi, policy);
    std::vector<Real> orig;
    for (long n = out_lo; n <= out_hi; ++n) orig.push_back(f(n));
    return max_gap(twice, orig);
}

// ---------------------------------------------------------------------------
// Yang-Baxter

namespace {

template <class Real>
using Vec3 = std::map<std::array<long, 3>, Real>;

enum class Height { Zero, FirstIndex };

// R(u,v) acting on tensor slots (s,t): e_{x-a} (x) e_{b-x} -> sum_y R^{u,a,v,b}_{x,y} e_{b-y} (x) e_{y-a}.
template <class Real>
Vec3<Real> apply_pair(SixJEngine<Real>& e, long u, long v, int s, int t, Height h, const Vec3<Real>& in, long lo,
                      long hi) {
    Vec3<Real> out;
    for (const auto& [key, c] : in) {
        const long a = h == Height::Zero ? 0 : key[0];
        const long x = a + key[s];
        const long b = x + key[t];
        const long ylo = std::max(a + lo, b - hi);
        const long yhi = std::min(a + hi, b - lo);
        for (long y = ylo; y <= yhi; ++y) {
            auto k2 = key;
            k2[s] = b - y;
            k2[t] = y - a;
            out[k2] += c * e.R(u, a, v, b, x, y);
        }
    }
    return out;
}

}  // namespace

template <class Real>
YangBaxterReport yang_baxter(SixJEngine<Real>& e, long u, long v, long w, long lo, long hi, long margin,
                             double cut_tol) {
    YangBaxterReport rep;
    rep.interior_lo = lo + margin;
    rep.interior_hi = hi - margin;
    if (margin < 0 || rep.interior_lo > rep.interior_hi) throw InsufficientWindow("window has no interior");
    const long ilo = rep.interior_lo, ihi = rep.interior_hi;
    auto inside = [&](const std::array<long, 3>& k, int rank) {
        for (int i = 0; i < rank; ++i)
            if (k[i] < ilo || k[i] > ihi) return false;
        return true;
    };

    // Leak check and unitarity on the pair space (slots 0,1, height 0).
    // The leak is the squared weight that R sends outside the window,
    // measured on a band of the same width on either side.
    const long band = hi - lo + 1;
    std::vector<std::pair<std::array<long, 3>, Vec3<Real>>> images;
    for (long i = ilo; i <= ihi; ++i) {
        for (long j = ilo; j <= ihi; ++j) {
            const std::array<long, 3> k{i, j, 0};
            Vec3<Real> wide = apply_pair(e, u, v, 0, 1, Height::Zero, Vec3<Real>{{k, Real(1)}}, lo - band, hi + band);
            Vec3<Real> img;
            Real leak(0);
            for (const auto& [k2, c] : wide) {
                if (k2[0] < lo || k2[0] > hi || k2[1] < lo || k2[1] > hi)
                    leak += c * c;
                else
                    img.emplace(k2, c);
            }
            if (to_double(leak) > cut_tol) {
                std::ostringstream os;
                os << "R(" << u << "," << v << ") sends squared weight " << to_double(leak) << " of interior pair ("
                   << i << "," << j << ") outside [" << lo << "," << hi << "]";
                throw InsufficientWindow(os.str());
            }
            images.emplace_back(k, std::move(img));
        }
    }
    for (std::size_t a = 0; a < images.size(); ++a) {
        for (std::size_t b = a; b < images.size(); ++b) {
            // images only overlap within a sector i + j = const
            const auto& ka = images[a].first;
            const auto& kb = images[b].first;
            if (ka[0] + ka[1] != kb[0] + kb[1]) continue;
            Real ip(0);
            for (const auto& [k, c] : images[a].second) {
                auto it = images[b].second.find(k);
                if (it != images[b].second.end()) ip += c * it->second;
            }
            const double d = to_double(abs(ip - Real(a == b ? 1 : 0)));
            rep.unitarity_defect = std::max(rep.unitarity_defect, d);
        }
    }

    // Triple products on interior basis vectors.
    for (long i = ilo; i <= ihi; ++i) {
        for (long j = ilo; j <= ihi; ++j) {
            for (long k = ilo; k <= ihi; ++k) {
                const Vec3<Real> e0{{{i, j, k}, Real(1)}};
                // R12(u,w) R13(v,w) R23(u,v)
                auto l = apply_pair(e, u, v, 1, 2, Height::FirstIndex, e0, lo, hi);
                l = apply_pair(e, v, w, 0, 2, Height::Zero, l, lo, hi);
                l = apply_pair(e, u, w, 0, 1, Height::Zero, l, lo, hi);
                // R23(u,v) R13(v,w) R12(u,w)
                auto r = apply_pair(e, u, w, 0, 1, Height::Zero, e0, lo, hi);
                r = apply_pair(e, v, w, 0, 2, Height::Zero, r, lo, hi);
                r = apply_pair(e, u, v, 1, 2, Height::FirstIndex, r, lo, hi);
                for (const auto& [key, c] : l) {
                    if (!inside(key, 3)) continue;
                    auto it = r.find(key);
                    const Real d = abs(c - (it == r.end() ? Real(0) : it->second));
                    rep.triple_residual = std::max(rep.triple_residual, to_double(d));
                }
                for (const auto& [key, c] : r) {
                    if (inside(key, 3) && l.find(key) == l.end())
                        rep.triple_residual = std::max(rep.triple_residual, to_double(abs(c)));
                }
            }
        }
    }
    return rep;
}

YangBaxterReport yang_baxter_adaptive(long u, long v, long w, long lo, long hi, const QContext& ctx,
                                      double cut_tol) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        SixJEngine<Real> e(ctx.q_as<Real>());
        for (long margin = (hi - lo) / 4;; ++margin) {
            if (lo + margin > hi - margin) {
                std::ostringstream os;
                os << "no interior of [" << lo << "," << hi << "] keeps the leak of R below " << cut_tol;
                throw InsufficientWindow(os.str());
            }
            try {
                return yang_baxter(e, u, v, w, lo, hi, margin, cut_tol);
            } catch (const InsufficientWindow&) {
            }
        }
    });
}

double yang_baxter_residual(long u, long v, long w, long lo, long hi, const QContext& ctx) {
    return yang_baxter_adaptive(u, v, w, lo, hi, ctx).triple_residual;
}

// ---------------------------------------------------------------------------
// Trees

BinaryTree BinaryTree::leaf(long n) { return BinaryTree{n, {}}; }

BinaryTree BinaryTree::node(long label, BinaryTree left, BinaryTree right) {
    BinaryTree t{label, {}};
    t.children.push_back(std::move(left));
    t.children.push_back(std::move(right));
    return t;
}

bool BinaryTree::is_full() const {
    if (children.empty()) return true;
    return children.size() == 2 && children[0].is_full() && children[1].is_full();
}

std::vector<long> BinaryTree::leaves() const {
    if (is_leaf()) return {label};
    std::vector<long> out;
    for (const auto& c : children) {
        auto l = c.leaves();
        out.insert(out.end(), l.begin(), l.end());
    }
    return out;
}

BinaryTree BinaryTree::flipped(const std::vector<int>& path) const {
    BinaryTree t = *this;
    BinaryTree* cur = &t;
    for (int step : path) {
        if (cur->is_leaf() || step < 0 || step > 1) throw DomainError("flip path leaves the tree");
        cur = &cur->children[static_cast<std::size_t>(step)];
    }
    if (cur->is_leaf()) throw DomainError("cannot flip a leaf");
    std::swap(cur->children[0], cur->children[1]);
    return t;
}

double BinaryTree::coefficient(CGTable& cg) const {
    if (is_leaf()) return 1.0;
    return cg(label, children[0].label, children[1].label) * children[0].coefficient(cg) * children[1].coefficient(cg);
}

std::string BinaryTree::to_string() const {
    if (is_leaf()) return std::to_string(label);
    return "(" + children[0].to_string() + " " + children[1].to_string() + ")_" + std::to_string(label);
}

bool operator==(const BinaryTree& a, const BinaryTree& b) {
    return a.label == b.label && a.children == b.children;
}

BinaryTree tree_1_23(long x, long n1, long n2, long n3, long p1p) {
    return BinaryTree::node(x, BinaryTree::leaf(n1),
                            BinaryTree::node(p1p, BinaryTree::leaf(n2), BinaryTree::leaf(n3)));
}

BinaryTree tree_12_3(long x, long n1, long n2, long n3, long p2p) {
    return BinaryTree::node(x, BinaryTree::node(p2p, BinaryTree::leaf(n1), BinaryTree::leaf(n2)),
                            BinaryTree::leaf(n3));
}

namespace {

// sum over internal labels t >= 0 of K(t) * coefficient(((n1 n2)_t, n3)_x), stopping
// once the coefficients have decayed (C_{x,t,n3} falls off like q^t for large t).
template <class K>
IdentitySides<double> expand_in_12_3(CGTable& cg, long x, long n1, long n2, long n3, double lhs, K&& kernel) {
    IdentitySides<double> out;
    out.lhs = lhs;
    double s = 0;
    double tail = 0;
    long t = 0;
    int small = 0;
    for (; t < 2000 && small < 3; ++t) {
        const double c = tree_12_3(x, n1, n2, n3, t).coefficient(cg);
        const double term = c == 0.0 ? 0.0 : kernel(t) * c;
        s += term;
        if (t > std::max({x, n1, n2, n3}) && std::abs(term) < 1e-18) {
            ++small;
        } else {
            small = 0;
        }
        tail = std::abs(term);
    }
    out.rhs = s;
    out.est_error = 2 * tail;
    out.terms_used = t;
    return out;
}

}  // namespace

IdentitySides<double> tree_move(SixJEngine<double>& e, CGTable& cg, long x, long n1, long n2, long n3, long p1p) {
    const double lhs = tree_1_23(x, n1, n2, n3, p1p).coefficient(cg);
    return expand_in_12_3(cg, x, n1, n2, n3, lhs, [&](long t) { return e.R(x, n1, n2, n3, p1p, t); });
}

IdentitySides<double> tree_backcoupling_chain(SixJEngine<double>& e, CGTable& cg, long x, long n1, long n2, long n3,
                                              long p1p, const TruncationPolicy& policy) {
    const double lhs = tree_1_23(x, n1, n2, n3, p1p).coefficient(cg);
    return expand_in_12_3(cg, x, n1, n2, n3, lhs, [&](long t) {
        return bilateral_sum<double>([&](long p) { return e.R(x, n1, n3, n2, p1p, p) * e.R(x, n3, n1, n2, t, p); },
                                     policy)
            .value;
    });
}

IdentitySides<double> cg_contraction(SixJEngine<double>& e, CGTable& cg, long x, long n, long m, long k, long p1) {
    const long r = x - (n - m + k);
    IdentitySides<double> out;
    out.lhs = cg(x, n + p1, n) * cg(n + p1, m, k);
    double s = 0;
    long used = 0;
    int small = 0;
    // p2 runs down from k; C_{x,k-p2,k} decays as k - p2 grows.
    for (long p2 = k; small < 3 && used < 4000; --p2, ++used) {
        const double c = cg(x, k - p2, k);
        const double term = c == 0.0 ? 0.0 : e.sixj(p1, r, p2, r) * c * cg(k - p2, m, n);
        s += term;
        if (k - p2 > x + n + m + 4 && std::abs(term) < 1e-18) {
            ++small;
        } else {
            small = 0;
        }
    }
    out.rhs = s;
    out.terms_used = used;
    return out;
}

#define QB_INSTANTIATE(R)                                                                                       \
    template class SixJEngine<R>;                                                                               \
    template IdentitySides<R> backcoupling_J<R>(SixJEngine<R>&, long, long, long, long, long, long,            \
                                                const TruncationPolicy&);                                       \
    template IdentitySides<R> backcoupling_R<R>(SixJEngine<R>&, long, long, long, long, long, long,            \
                                                const TruncationPolicy&);                                       \
    template IdentitySides<R> biedenharn_elliott_J<R>(SixJEngine<R>&, long, long, long, long, long, long,      \
                                                      const TruncationPolicy&);                                 \
    template IdentitySides<R> biedenharn_elliott_R<R>(SixJEngine<R>&, long, long, long, long, long, long, long, \
                                                      long, long, const TruncationPolicy&);                     \
    template IdentitySides<R> hexagon_R<R>(SixJEngine<R>&, const HexagonLabels&, const TruncationPolicy&);     \
    template IdentitySides<R> hexagon_J<R>(SixJEngine<R>&, const HexagonLabels&, const TruncationPolicy&);     \
    template IdentitySides<R> hankel_orthogonality<R>(SixJEngine<R>&, int, long, long, const TruncationPolicy&); \
    template IdentitySides<R> sixj_orthogonality<R>(SixJEngine<R>&, long, long, long, long,                    \
                                                    const TruncationPolicy&);                                   \
    template std::vector<R> qhankel_transform<R>(SixJEngine<R>&, const std::function<R(long)>&, int, long, long, \
                                                 const TruncationPolicy&);                                      \
    template IdentitySides<R> qhankel_factorization<R>(SixJEngine<R>&, long, long, long, long, long, long, long, \
                                                       const TruncationPolicy&);                                \
    template IdentitySides<R> qhankel_involution<R>(SixJEngine<R>&, int, long, long, long,                     \
                                                    const TruncationPolicy&);                                   \
    template YangBaxterReport yang_baxter<R>(SixJEngine<R>&, long, long, long, long, long, long, double);
QB_FOR_EACH_REAL(QB_INSTANTIATE)
#undef QB_INSTANTIATE

}  // namespace qb
