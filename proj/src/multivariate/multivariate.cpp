#include "qb/multivariate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace qb {

using std::abs;
using std::sqrt;

long MultiIndex::abs_sum() const {
    long s = 0;
    for (long v : v_) s += v;
    return s;
}

MultiIndex MultiIndex::hat() const { return MultiIndex(std::vector<long>(v_.rbegin(), v_.rend())); }

MultiIndex MultiIndex::prime() const {
    if (v_.empty()) throw DomainError("prime of an empty multi-index");
    return MultiIndex(std::vector<long>(v_.begin() + 1, v_.end()));
}

void MultiBesselParams::validate() const {
    if (x.size() == 0) throw DomainError("multivariate q-Bessel needs d >= 1");
    if (lambda.size() != x.size()) throw DomainError("x and lambda must have the same length");
    if (nu.size() != x.size() + 2) throw DomainError("nu must have length d+2");
}

void ThreeNJParams::validate() const {
    if (r.size() == 0) throw DomainError("3nj-symbol needs k >= 1");
    if (s.size() != r.size()) throw DomainError("r and s must have the same length");
    if (n.size() != r.size() + 2) throw DomainError("n must have length k+2");
}

MultiIndex nu_of(long x, const MultiIndex& n) {
    std::vector<long> v(n.values());
    for (std::size_t j = 1; j + 1 < v.size(); ++j) v[j] += x;
    return MultiIndex(std::move(v));
}

MultiIndex rotated(const MultiIndex& n, long j) {
    const long m = static_cast<long>(n.size());
    std::vector<long> v(n.size());
    for (long i = 0; i < m; ++i) v[i] = n[static_cast<std::size_t>(((i - j) % m + m) % m)];
    return MultiIndex(std::move(v));
}

namespace {

template <class Real>
Real lattice_J(SixJEngine<Real>& e, Lattice l, long nu, long y) {
    return l == Lattice::Base ? e.J(static_cast<int>(nu), y) : e.JQ(static_cast<int>(nu), y);
}

// Factor j (1-based) of J_nu(x, lambda), with lambda_0 = nu_0, x_{d+1} = nu_{d+1}.
template <class Real>
Real multi_factor(SixJEngine<Real>& e, Lattice l, const MultiIndex& nu, long xj, long xj1, long lj, long lj0,
                  std::size_t j) {
    return lattice_J(e, l, nu[j] - xj1 - lj0, xj - xj1 + lj - lj0);
}

// sum over a_1..a_d in Z of prod_{i=0}^{d} f(i, a_i, a_{i+1}) with a_0 = first
// and a_{d+1} = last fixed, summed a_1 first. Each partial sum is memoised
// in its outer variable.
//
// centre(i, b) locates the bulk of the a_i-sum for a given outer value b; the
// q-Bessel factors shift with their order, so a fixed window would miss it.
template <class Real>
class ChainSum {
public:
    using Edge = std::function<Real(int, long, long)>;
    using Centre = std::function<long(int, long)>;
    ChainSum(int d, long first, Edge f, const TruncationPolicy& policy, Centre centre = nullptr)
        : d_(d), first_(first), f_(std::move(f)), centre_(std::move(centre)), policy_(policy),
          memo_(static_cast<std::size_t>(d + 1)) {}

    SeriesResult<Real> operator()(long last) {
        SeriesResult<Real> out;
        if (d_ == 0) {
            out.value = f_(0, first_, last);
            return out;
        }
        out = level(d_, last);
        out.est_error += inner_error_;
        out.converged = out.converged && inner_converged_;
        return out;
    }

private:
    // g_i(b) = sum_{a_i} g_{i-1}(a_i) f(i, a_i, b), g_0(a) = f(0, first, a).
    SeriesResult<Real> level(int i, long b) {
        auto& m = memo_[static_cast<std::size_t>(i)];
        if (auto it = m.find(b); it != m.end()) return it->second;
        auto s = bilateral_sum<Real>(
            [&](long a) {
                using std::isfinite;
                const Real inner = i == 1 ? f_(0, first_, a) : level_value(i - 1, a);
                if (inner == 0) return Real(0);
                Real v = inner * f_(i, a, b);
                if (!isfinite(v)) throw NonConvergent("non-finite term in a nested lattice sum");
                return v;
            },
            policy_, centre_ ? centre_(i, b) : 0);
        m.emplace(b, s);
        return s;
    }
    Real level_value(int i, long b) {
        auto s = level(i, b);
        inner_error_ = std::max(inner_error_, s.est_error);
        inner_converged_ = inner_converged_ && s.converged;
        return s.value;
    }

    int d_;
    long first_;
    Edge f_;
    Centre centre_;
    TruncationPolicy policy_;
    std::vector<std::map<long, SeriesResult<Real>>> memo_;
    double inner_error_ = 0;
    bool inner_converged_ = true;
};

template <class Real>
IdentitySides<Real> sides(const Real& lhs, const SeriesResult<Real>& rhs) {
    IdentitySides<Real> out;
    out.lhs = lhs;
    out.rhs = rhs.value;
    out.est_error = rhs.est_error;
    out.terms_used = rhs.terms_used;
    out.converged = rhs.converged;
    return out;
}

}  // namespace

template <class Real>
Real multi_qbessel(SixJEngine<Real>& e, const MultiBesselParams& p, Lattice lattice) {
    p.validate();
    const std::size_t d = p.x.size();
    Real out(1);
    for (std::size_t j = 1; j <= d; ++j) {
        const long xj = p.x[j - 1];
        const long xj1 = j < d ? p.x[j] : p.nu[d + 1];
        const long lj = p.lambda[j - 1];
        const long lj0 = j > 1 ? p.lambda[j - 2] : p.nu[0];
        out *= multi_factor(e, lattice, p.nu, xj, xj1, lj, lj0, j);
        if (out == 0) break;
    }
    return out;
}

double multi_qbessel(const MultiBesselParams& p, const QContext& ctx) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        SixJEngine<Real> e(ctx.q_as<Real>());
        return to_double(multi_qbessel(e, p));
    });
}

template <class Real>
IdentitySides<Real> multi_orthogonality(SixJEngine<Real>& e, const MultiIndex& nu, const MultiIndex& lambda,
                                        const MultiIndex& lambda2, const TruncationPolicy& policy) {
    MultiBesselParams p{nu, lambda, lambda};
    p.validate();
    if (lambda2.size() != lambda.size()) throw DomainError("lambda and lambda' must have the same length");
    const std::size_t d = lambda.size();
    auto lam = [&](const MultiIndex& l, std::size_t j) { return j == 0 ? nu[0] : l[j - 1]; };
    // Edge i couples x_i and x_{i+1}; edge 0 carries the weight q^{x_1}.
    auto edge = [&](int i, long a, long b) -> Real {
        if (i == 0) return ipow(e.q(), b);
        const auto j = static_cast<std::size_t>(i);
        return multi_factor(e, Lattice::Base, nu, a, b, lam(lambda, j), lam(lambda, j - 1), j) *
               multi_factor(e, Lattice::Base, nu, a, b, lam(lambda2, j), lam(lambda2, j - 1), j);
    };
    // J_N(q^z) peaks near z = min(0, N).
    auto centre = [&](int i, long b) {
        const auto j = static_cast<std::size_t>(i);
        const long order = nu[j] - b - lam(lambda, j - 1);
        return b - lam(lambda, j) + lam(lambda, j - 1) + std::min(0L, order);
    };
    ChainSum<Real> chain(static_cast<int>(d), 0, edge, policy, centre);
    auto s = chain(nu[d + 1]);
    IdentitySides<Real> out = sides(Real(0), s);
    out.lhs = s.value;
    out.rhs = lambda == lambda2 ? ipow(e.q(), nu[d + 1] + nu[0] - lambda[d - 1]) : Real(0);
    return out;
}

template <class Real>
IdentitySides<Real> multi_self_duality(SixJEngine<Real>& e, const MultiBesselParams& p) {
    IdentitySides<Real> out;
    out.lhs = multi_qbessel(e, p);
    out.rhs = multi_qbessel(e, MultiBesselParams{p.nu.hat(), p.lambda.hat(), p.x.hat()});
    return out;
}

template <class Real>
Real threenj_R(SixJEngine<Real>& e, const ThreeNJParams& p) {
    p.validate();
    const std::size_t k = p.r.size();
    Real out(1);
    for (std::size_t j = 1; j <= k; ++j) {
        const long s_prev = j == 1 ? p.n[0] : p.s[j - 2];
        const long r_next = j < k ? p.r[j] : p.n[k + 1];
        out *= e.R(p.x, s_prev, p.n[j], r_next, p.r[j - 1], p.s[j - 1]);
        if (out == 0) break;
    }
    return out;
}

double threenj_R(const ThreeNJParams& p, const QContext& ctx) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        SixJEngine<Real> e(ctx.q_as<Real>());
        return to_double(threenj_R(e, p));
    });
}

template <class Real>
Real threenj_S(SixJEngine<Real>& e, const ThreeNJParams& p) {
    p.validate();
    const std::size_t k = p.r.size();
    Real out(1);
    for (std::size_t j = 1; j <= k; ++j) {
        const long s_next = j < k ? p.s[j] : p.x;
        const long r_prev = j == 1 ? p.n[1] : p.r[j - 2];
        out *= e.R(s_next, p.n[0], r_prev, p.n[j + 1], p.r[j - 1], p.s[j - 1]);
        if (out == 0) break;
    }
    return out;
}

double threenj_S(const ThreeNJParams& p, const QContext& ctx) {
    return with_backend(ctx.backend(), [&](auto tag) {
        using Real = decltype(tag);
        SixJEngine<Real> e(ctx.q_as<Real>());
        return to_double(threenj_S(e, p));
    });
}

template <class Real>
IdentitySides<Real> threenj_factorization(SixJEngine<Real>& e, const ThreeNJParams& p, int k1) {
    p.validate();
    const int k = p.k();
    if (k1 < 1 || k1 >= k) throw DomainError("split point must satisfy 1 <= k1 < k");
    const auto& n = p.n.values();
    const auto& r = p.r.values();
    const auto& s = p.s.values();
    ThreeNJParams a, b;
    a.x = b.x = p.x;
    std::vector<long> na(n.begin(), n.begin() + k1 + 1);
    na.push_back(r[static_cast<std::size_t>(k1)]);
    a.n = MultiIndex(na);
    a.r = MultiIndex(std::vector<long>(r.begin(), r.begin() + k1));
    a.s = MultiIndex(std::vector<long>(s.begin(), s.begin() + k1));
    std::vector<long> nb{s[static_cast<std::size_t>(k1 - 1)]};
    nb.insert(nb.end(), n.begin() + k1 + 1, n.end());
    b.n = MultiIndex(nb);
    b.r = MultiIndex(std::vector<long>(r.begin() + k1, r.end()));
    b.s = MultiIndex(std::vector<long>(s.begin() + k1, s.end()));
    IdentitySides<Real> out;
    out.lhs = threenj_R(e, p);
    out.rhs = threenj_R(e, a) * threenj_R(e, b);
    return out;
}

template <class Real>
IdentitySides<Real> threenj_corollary(SixJEngine<Real>& e, const ThreeNJParams& p) {
    p.validate();
    const std::size_t k = p.r.size();
    IdentitySides<Real> out;
    out.lhs = threenj_R(e, p);
    const MultiBesselParams mp{nu_of(p.x, p.n), p.r, p.s};
    out.rhs = e.mq_pow(p.r[0] + p.s[k - 1] - p.n[0] - p.n[k + 1]) * multi_qbessel(e, mp, Lattice::Squared);
    return out;
}

template <class Real>
IdentitySides<Real> threenj_duality(SixJEngine<Real>& e, const ThreeNJParams& p) {
    IdentitySides<Real> out;
    out.lhs = threenj_R(e, p);
    out.rhs = threenj_R(e, ThreeNJParams{p.x, p.n.hat(), p.s.hat(), p.r.hat()});
    return out;
}

template <class Real>
IdentitySides<Real> threenj_orthogonality(SixJEngine<Real>& e, Comb comb, long x, const MultiIndex& n,
                                          const MultiIndex& s, const MultiIndex& s2, const TruncationPolicy& policy) {
    ThreeNJParams p{x, n, s, s};
    p.validate();
    if (s2.size() != s.size()) throw DomainError("s and s' must have the same length");
    const std::size_t k = s.size();
    typename ChainSum<Real>::Edge edge;
    typename ChainSum<Real>::Centre centre;
    long first = 0, last = 0;
    if (comb == Comb::R) {
        // Factor j couples r_j and r_{j+1} (r_{k+1} = n_{k+2}); chain variables a_i = r_i.
        edge = [&, k](int i, long a, long b) -> Real {
            if (i == 0) return Real(1);
            const auto j = static_cast<std::size_t>(i);
            const long sp = j == 1 ? n[0] : s[j - 2];
            const long sp2 = j == 1 ? n[0] : s2[j - 2];
            return e.R(x, sp, n[j], b, a, s[j - 1]) * e.R(x, sp2, n[j], b, a, s2[j - 1]);
        };
        centre = [&](int i, long b) {
            const auto j = static_cast<std::size_t>(i);
            const long sp = j == 1 ? n[0] : s[j - 2];
            return b + sp - s[j - 1] + std::min(0L, x - sp + n[j] - b);
        };
        last = n[k + 1];
    } else {
        // Factor j couples r_{j-1} and r_j (r_0 = n_2); chain variables a_i = r_{k+1-i}.
        edge = [&, k](int i, long a, long b) -> Real {
            if (i == 0) return Real(1);
            const std::size_t j = k + 1 - static_cast<std::size_t>(i);
            const long sn = j < k ? s[j] : x;
            const long sn2 = j < k ? s2[j] : x;
            return e.R(sn, n[0], b, n[j + 1], a, s[j - 1]) * e.R(sn2, n[0], b, n[j + 1], a, s2[j - 1]);
        };
        centre = [&, k](int i, long b) {
            const std::size_t j = k + 1 - static_cast<std::size_t>(i);
            const long sn = j < k ? s[j] : x;
            return n[0] + n[j + 1] - s[j - 1] + std::min(0L, sn - n[0] + b - n[j + 1]);
        };
        last = n[1];
    }
    ChainSum<Real> chain(static_cast<int>(k), first, edge, policy, centre);
    auto sum = chain(last);
    IdentitySides<Real> out = sides(Real(0), sum);
    out.lhs = sum.value;
    out.rhs = s == s2 ? Real(1) : Real(0);
    return out;
}

template <class Real>
IdentitySides<Real> multi_biedenharn_elliott(SixJEngine<Real>& e, const ThreeNJParams& p,
                                             const TruncationPolicy& policy) {
    p.validate();
    const std::size_t k = p.r.size();
    if (k < 2) throw DomainError("the multivariate Biedenharn-Elliott identity needs k >= 2");
    const auto& n = p.n;
    const auto& r = p.r;
    const auto& s = p.s;
    const long x = p.x;
    // Chain variables t_0 = n_2, t_1..t_{k-1}, t_k = r_1. Edge i couples t_i and t_{i+1}:
    // factor i+1 of S^{x,n}_{(t,r_1),s} times, for i+1 <= k-1, factor i+1 of R^{r_1,n'}_{r',t}.
    auto edge = [&, k](int i, long a, long b) -> Real {
        const std::size_t j = static_cast<std::size_t>(i) + 1;
        const long s_next = j < k ? s[j] : x;
        Real v = e.R(s_next, n[0], a, n[j + 1], b, s[j - 1]);
        if (j <= k - 1 && v != 0) {
            // R^{r_1, t_{j-1}, n'_j, r'_{j+1}}_{r'_j, t_j} with n'_j = n_{j+1}, r'_j = r_{j+1}, r'_k = n_{k+2}.
            const long rn = j < k - 1 ? r[j + 1] : n[k + 1];
            v *= e.R(r[0], a, n[j + 1], rn, r[j], b);
        }
        return v;
    };
    // ChainSum sums a_1 first with edge 0 = f(0, first, a_1); here edge 0 couples t_0 and t_1.
    ChainSum<Real> chain(static_cast<int>(k) - 1, n[1], [&](int i, long a, long b) { return edge(i, a, b); },
                         policy);
    return sides(threenj_R(e, p), chain(r[0]));
}

template <class Real>
IdentitySides<Real> multi_biedenharn_elliott_J(SixJEngine<Real>& e, const ThreeNJParams& p, AForm form,
                                               const TruncationPolicy& policy) {
    p.validate();
    const std::size_t k = p.r.size();
    if (k < 2) throw DomainError("the multivariate Biedenharn-Elliott identity needs k >= 2");
    const auto& n = p.n;
    const auto& r = p.r;
    const auto& s = p.s;
    const bool derived = form == AForm::Derived;
    const Real lhs = multi_qbessel(e, MultiBesselParams{nu_of(p.x, n), r, s});

    // Constant part of the exponent of -q^{1/2}; |t| and (derived) t_{k-1} are
    // distributed over the edges.
    const long e0 = s.abs_sum() - n.abs_sum() - static_cast<long>(k - 2) * n[0] - s[k - 1] + r[1];
    const Real pre = ipow(Real(-e.sqrtq_pow(1)), e0);
    const MultiIndex nu2 = nu_of(r[0], n.prime());  // length k+1, d = k-1
    const int sgn_n = derived ? -1 : 1;

    // Edge i couples t_i and t_{i+1} (t_0 = n_2, t_k = r_1): the A-factor j = i+1,
    // the factor j of J_{nu(r_1,n')}(r', t) for j <= k-1, and the powers of -q^{1/2}.
    auto edge = [&, k](int i, long a, long b) -> Real {
        const std::size_t j = static_cast<std::size_t>(i) + 1;
        const long s_next = j < k ? s[j] : p.x;
        Real v = e.J(static_cast<int>(s_next - n[0] + a + sgn_n * n[j + 1]), s[j - 1] + b - n[0] - n[j + 1]);
        if (j <= k - 1 && v != 0) {
            // x = r', lambda = t, x_{d+1} = nu2[k], lambda_0 = nu2[0] = n_2 = t_0.
            const long xj = r[j];
            const long xj1 = j < k - 1 ? r[j + 1] : nu2[k];
            v *= e.J(static_cast<int>(nu2[j] - xj1 - a), xj - xj1 + b - a);
            long pw = b;
            if (derived && j == k - 1) pw += b;
            v *= ipow(Real(-e.sqrtq_pow(1)), pw);
        }
        return v;
    };
    ChainSum<Real> chain(static_cast<int>(k) - 1, n[1], [&](int i, long a, long b) { return edge(i, a, b); },
                         policy);
    auto sum = chain(r[0]);
    sum.value *= pre;
    return sides(lhs, sum);
}

template <class Real>
double multi_be_k2_crosscheck(SixJEngine<Real>& e, const ThreeNJParams& p, const TruncationPolicy& policy) {
    p.validate();
    if (p.k() != 2) throw DomainError("the cross-check is defined for k = 2");
    const auto& n = p.n;
    const auto& r = p.r;
    const auto& s = p.s;
    const auto multi = multi_biedenharn_elliott(e, p, policy);
    SixJEngine<Real> eQ(Real(e.q() * e.q()));
    const long P = r[0] - n[0], Q = r[1] - s[0], R = n[3] - s[1];
    const long nu = p.x - n[0], mu1 = n[1] - r[1], mu2 = n[0] - s[0] + n[2] - n[3];
    const auto one = biedenharn_elliott_J(eQ, P, Q, R, nu, mu1, mu2, policy);
    const Real f = e.mq_pow(P - R);
    return std::max(to_double(abs(multi.lhs - f * one.lhs)), to_double(abs(multi.rhs - f * one.rhs)));
}

template <class Real>
IdentitySides<Real> s_composition(SixJEngine<Real>& e, const ThreeNJParams& p, const TruncationPolicy& policy) {
    p.validate();
    const std::size_t k = p.r.size();
    const long lo = policy.lo, hi = policy.hi;
    const long width = hi - lo + 1;
    // Enumerate Z^k on the window.
    std::vector<std::vector<long>> grid;
    std::size_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= static_cast<std::size_t>(width);
    grid.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::vector<long> v(k);
        std::size_t rem = idx;
        for (std::size_t i = 0; i < k; ++i) {
            v[i] = lo + static_cast<long>(rem % static_cast<std::size_t>(width));
            rem /= static_cast<std::size_t>(width);
        }
        grid.push_back(std::move(v));
    }
    // cur[s_j] after j transitions, starting from s_0 = r.
    std::map<std::vector<long>, Real> cur{{p.r.values(), Real(1)}};
    long terms = 0;
    for (std::size_t j = 0; j <= k; ++j) {
        const MultiIndex nj = rotated(p.n, static_cast<long>(j) + 1);
        std::map<std::vector<long>, Real> next;
        const bool final_step = j == k;
        for (const auto& [a, c] : cur) {
            if (c == 0) continue;
            auto step = [&](const std::vector<long>& b) {
                const Real v = c * threenj_S(e, ThreeNJParams{p.x, nj, MultiIndex(a), MultiIndex(b)});
                ++terms;
                if (v != 0) next[b] += v;
            };
            if (final_step)
                step(p.s.values());
            else
                for (const auto& b : grid) step(b);
        }
        cur = std::move(next);
    }
    IdentitySides<Real> out;
    out.lhs = threenj_S(e, ThreeNJParams{p.x, p.n, p.s, p.r});
    auto it = cur.find(p.s.values());
    out.rhs = it == cur.end() ? Real(0) : it->second;
    out.terms_used = terms;
    return out;
}

double multi_cg(long x, const MultiIndex& r, const MultiIndex& n, CGTable& cg) {
    const std::size_t k = r.size();
    if (n.size() != k + 2) throw DomainError("n must have length k+2");
    double out = 1;
    for (std::size_t j = 1; j <= k + 1; ++j) {
        const long a = j == 1 ? x : r[j - 2];
        const long b = j <= k ? r[j - 1] : n[k + 1];
        out *= cg(a, n[j - 1], b);
        if (out == 0) break;
    }
    return out;
}

IdentitySides<double> cg_expansion(SixJEngine<double>& e, CGTable& cg, long x, const MultiIndex& r,
                                   const MultiIndex& n, const TruncationPolicy& policy) {
    const std::size_t k = r.size();
    if (n.size() != k + 2) throw DomainError("n must have length k+2");
    const MultiIndex nh = n.hat();
    // sum over s of R^{x,n}_{r,s} C_{x,hat s,hat n}. R factor j couples s_{j-1}, s_j
    // (s_0 = n_1); C_{x,hat s,hat n} = C_{x,nh_1,s_k} prod_j C_{s_{k+1-j}, nh_{j+1}, s_{k-j}} with
    // s_0 = nh_{k+2} = n_1, so its factors also couple consecutive s. Chain a_i = s_i, a_0 = n_1, a_{k+1} = x.
    auto edge = [&, k](int i, long a, long b) -> double {
        const std::size_t j = static_cast<std::size_t>(i);
        if (j == k) return cg(b, nh[0], a);  // C_{x, nh_1, s_k}
        // R factor j+1: R^{x, s_j, n_{j+2}, r_{j+2}}_{r_{j+1}, s_{j+1}}
        const long r_next = j + 1 < k ? r[j + 1] : n[k + 1];
        double v = e.R(x, a, n[j + 1], r_next, r[j], b);
        if (v == 0) return 0;
        // C_{s_{j+1}, nh_{k+1-j}, s_j}: nh index k-j (0-based) is n_{j+2}.
        return v * cg(b, nh[k - j], a);
    };
    TruncationPolicy pol = policy;
    pol.lo = 0;
    // ChainSum uses edge(0, first, a_1) then edge(i, a_i, a_{i+1}); edge index i here is j.
    ChainSum<double> chain(static_cast<int>(k), n[0], [&](int i, long a, long b) { return edge(i, a, b); }, pol);
    return sides(multi_cg(x, r, n, cg), chain(x));
}

#define QB_INSTANTIATE(R)                                                                                       \
    template R multi_qbessel<R>(SixJEngine<R>&, const MultiBesselParams&, Lattice);                             \
    template IdentitySides<R> multi_orthogonality<R>(SixJEngine<R>&, const MultiIndex&, const MultiIndex&,      \
                                                     const MultiIndex&, const TruncationPolicy&);               \
    template IdentitySides<R> multi_self_duality<R>(SixJEngine<R>&, const MultiBesselParams&);                  \
    template R threenj_R<R>(SixJEngine<R>&, const ThreeNJParams&);                                              \
    template R threenj_S<R>(SixJEngine<R>&, const ThreeNJParams&);                                              \
    template IdentitySides<R> threenj_factorization<R>(SixJEngine<R>&, const ThreeNJParams&, int);              \
    template IdentitySides<R> threenj_corollary<R>(SixJEngine<R>&, const ThreeNJParams&);                       \
    template IdentitySides<R> threenj_duality<R>(SixJEngine<R>&, const ThreeNJParams&);                         \
    template IdentitySides<R> threenj_orthogonality<R>(SixJEngine<R>&, Comb, long, const MultiIndex&,           \
                                                       const MultiIndex&, const MultiIndex&,                    \
                                                       const TruncationPolicy&);                                \
    template IdentitySides<R> multi_biedenharn_elliott<R>(SixJEngine<R>&, const ThreeNJParams&,                 \
                                                          const TruncationPolicy&);                             \
    template IdentitySides<R> multi_biedenharn_elliott_J<R>(SixJEngine<R>&, const ThreeNJParams&, AForm,        \
                                                            const TruncationPolicy&);                           \
    template double multi_be_k2_crosscheck<R>(SixJEngine<R>&, const ThreeNJParams&, const TruncationPolicy&);   \
    template IdentitySides<R> s_composition<R>(SixJEngine<R>&, const ThreeNJParams&, const TruncationPolicy&);
QB_FOR_EACH_REAL(QB_INSTANTIATE)
#undef QB_INSTANTIATE

}  // namespace qb
