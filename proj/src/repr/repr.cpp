#include "qb/repr.hpp"

#include "qb/qfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace qb {

TruncatedFock::TruncatedFock(int n) : dim(n) {
    if (n < 2) throw DomainError("TruncatedFock needs N >= 2");
}

TruncatedFock TruncatedFock::scaled_for(double q, int base) {
    if (!(q > 0 && q < 1)) throw DomainError("q must lie in (0,1)");
    return TruncatedFock(static_cast<int>(std::ceil(base * std::log(0.5) / std::log(q))));
}

const char* generator_name(Generator g) {
    switch (g) {
        case Generator::Alpha: return "alpha";
        case Generator::Beta: return "beta";
        case Generator::Gamma: return "gamma";
        case Generator::Delta: return "delta";
    }
    return "?";
}

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::S12: return "12";
        case Scheme::S21: return "21";
        case Scheme::S1_23: return "1(23)";
        case Scheme::S12_3: return "(12)3";
    }
    return "?";
}

int scheme_rank(Scheme s) { return (s == Scheme::S12 || s == Scheme::S21) ? 2 : 3; }

namespace {

struct Hit {
    int index;
    double coef;
};

std::optional<Hit> act(Generator g, int n, double q, int N) {
    switch (g) {
        case Generator::Alpha:
            if (n == 0) return std::nullopt;
            return Hit{n - 1, std::sqrt(1 - std::pow(q, 2 * n))};
        case Generator::Beta: return Hit{n, -std::pow(q, n + 1)};
        case Generator::Gamma: return Hit{n, std::pow(q, n)};
        case Generator::Delta:
            if (n + 1 >= N) return std::nullopt;
            return Hit{n + 1, std::sqrt(1 - std::pow(q, 2 * n + 2))};
    }
    return std::nullopt;
}

std::vector<std::pair<Generator, Generator>> delta_pairs(Generator g) {
    using G = Generator;
    switch (g) {
        case G::Alpha: return {{G::Alpha, G::Alpha}, {G::Beta, G::Gamma}};
        case G::Beta: return {{G::Alpha, G::Beta}, {G::Beta, G::Delta}};
        case G::Gamma: return {{G::Gamma, G::Alpha}, {G::Delta, G::Gamma}};
        case G::Delta: return {{G::Delta, G::Delta}, {G::Gamma, G::Beta}};
    }
    return {};
}

}  // namespace

GenOperator pi0_matrix(Generator g, const TruncatedFock& fock, const QContext& ctx) {
    GenOperator op{g, Eigen::MatrixXd::Zero(fock.dim, fock.dim)};
    for (int n = 0; n < fock.dim; ++n) {
        if (auto h = act(g, n, ctx.q(), fock.dim)) op.matrix(h->index, n) = h->coef;
    }
    return op;
}

std::vector<RelationResidual> defining_relation_residuals(const TruncatedFock& fock, const QContext& ctx) {
    if (fock.dim < 4) throw DomainError("defining relations need N >= 4");
    const double q = ctx.q();
    const auto a = pi0_matrix(Generator::Alpha, fock, ctx).matrix;
    const auto b = pi0_matrix(Generator::Beta, fock, ctx).matrix;
    const auto c = pi0_matrix(Generator::Gamma, fock, ctx).matrix;
    const auto d = pi0_matrix(Generator::Delta, fock, ctx).matrix;
    const Eigen::MatrixXd one = Eigen::MatrixXd::Identity(fock.dim, fock.dim);
    const int m = fock.dim - 1;
    auto interior = [m](const Eigen::MatrixXd& r) { return r.topLeftCorner(m, m).cwiseAbs().maxCoeff(); };
    return {
        {"alpha beta - q beta alpha", interior(a * b - q * b * a)},
        {"alpha gamma - q gamma alpha", interior(a * c - q * c * a)},
        {"beta delta - q delta beta", interior(b * d - q * d * b)},
        {"gamma delta - q delta gamma", interior(c * d - q * d * c)},
        {"beta gamma - gamma beta", interior(b * c - c * b)},
        {"alpha delta - q beta gamma - 1", interior(a * d - q * b * c - one)},
        {"delta alpha - q^-1 beta gamma - 1", interior(d * a - b * c / q - one)},
    };
}

double check_defining_relations(const TruncatedFock& fock, const QContext& ctx) {
    double worst = 0;
    for (const auto& r : defining_relation_residuals(fock, ctx)) worst = std::max(worst, r.residual);
    return worst;
}

double cg_coefficient(long x, long m, long n, const QContext& ctx) {
    if (x < 0 || m < 0 || n < 0) return 0.0;
    const double Q = ctx.q() * ctx.q();
    const long deg = std::min(m, n);
    const double a = std::pow(Q, std::abs(n - m));
    return wall_orthonormal<double>(static_cast<int>(deg), x, a, Q);
}

double CGTable::operator()(long x, long m, long n) {
    if (x < 0 || m < 0 || n < 0) return 0.0;
    const std::array<long, 3> key{x, m, n};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double v = cg_coefficient(x, m, n, ctx_);
    cache_.emplace(key, v);
    return v;
}

double CoupledVector::norm() const {
    double s = 0;
    for (const auto& [k, v] : coeffs) s += v * v;
    return std::sqrt(s);
}

double CoupledVector::coeff(const TensorKey& k) const {
    auto it = std::lower_bound(coeffs.begin(), coeffs.end(), k,
                               [](const auto& e, const TensorKey& key) { return e.first < key; });
    return (it != coeffs.end() && it->first == k) ? it->second : 0.0;
}

SparseVec CoupledVector::to_sparse() const { return SparseVec(coeffs.begin(), coeffs.end()); }

double inner(const CoupledVector& a, const CoupledVector& b) {
    double s = 0;
    auto i = a.coeffs.begin();
    auto j = b.coeffs.begin();
    while (i != a.coeffs.end() && j != b.coeffs.end()) {
        if (i->first < j->first) {
            ++i;
        } else if (j->first < i->first) {
            ++j;
        } else {
            s += i->second * j->second;
            ++i;
            ++j;
        }
    }
    return s;
}

CoupledVector coupled_vector(Scheme s, long x, long p, long r, const TruncatedFock& fock, CGTable& C) {
    if (x < 0) throw DomainError("coupled vectors need x >= 0");
    CoupledVector v;
    v.scheme = s;
    v.x = x;
    v.p = p;
    v.r = scheme_rank(s) == 3 ? r : 0;
    const long N = fock.dim;
    auto push = [&](long i, long j, long k, double c) {
        if (c != 0.0) v.coeffs.push_back({TensorKey{int(i), int(j), int(k)}, c});
    };
    switch (s) {
        case Scheme::S12:
        case Scheme::S21: {
            const long pp = s == Scheme::S12 ? p : -p;
            for (long m = 0; m < N; ++m) {
                const long n = m + pp;
                if (n >= 0 && n < N) push(m, n, 0, C(x, m, n));
            }
            break;
        }
        case Scheme::S1_23:
            // C_{x,n,n+p} C_{n+p,m,k} e_n e_m e_k with n - m + k = x - r
            for (long n = 0; n < N; ++n) {
                const double c1 = C(x, n, n + p);
                if (c1 == 0.0) continue;
                for (long m = 0; m < N; ++m) {
                    const long k = x - r - n + m;
                    if (k >= 0 && k < N) push(n, m, k, c1 * C(n + p, m, k));
                }
            }
            break;
        case Scheme::S12_3:
            // C_{x,k-p,k} C_{k-p,n,m} e_n e_m e_k with n - m + k = x - r
            for (long k = 0; k < N; ++k) {
                const double c1 = C(x, k - p, k);
                if (c1 == 0.0) continue;
                for (long n = 0; n < N; ++n) {
                    const long m = n + k - x + r;
                    if (m >= 0 && m < N) push(n, m, k, c1 * C(k - p, n, m));
                }
            }
            break;
    }
    std::sort(v.coeffs.begin(), v.coeffs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

CoupledVector coupled_vector(Scheme s, long x, long p, long r, const TruncatedFock& fock, const QContext& ctx) {
    CGTable C(ctx);
    return coupled_vector(s, x, p, r, fock, C);
}

TensorElement coproduct(Generator g) {
    TensorElement el;
    el.rank = 2;
    for (auto [a, b] : delta_pairs(g)) el.words.push_back({1.0, {a, b, Generator::Gamma}});
    return el;
}

TensorElement coproduct_1_23(Generator g) {
    TensorElement el;
    el.rank = 3;
    for (auto [a, b] : delta_pairs(g))
        for (auto [c, d] : delta_pairs(b)) el.words.push_back({1.0, {a, c, d}});
    return el;
}

TensorElement coproduct_12_3(Generator g) {
    TensorElement el;
    el.rank = 3;
    for (auto [a, b] : delta_pairs(g))
        for (auto [c, d] : delta_pairs(a)) el.words.push_back({1.0, {c, d, b}});
    return el;
}

TensorElement scheme_element(Scheme s, Generator g) {
    switch (s) {
        case Scheme::S12: return coproduct(g);
        case Scheme::S21: {
            // sigma Delta(g) sigma
            TensorElement el = coproduct(g);
            for (auto& w : el.words) std::swap(w.g[0], w.g[1]);
            return el;
        }
        case Scheme::S1_23: return coproduct_1_23(g);
        case Scheme::S12_3: return coproduct_12_3(g);
    }
    return {};
}

SparseVec apply(const TensorElement& el, const SparseVec& v, const TruncatedFock& fock, const QContext& ctx) {
    SparseVec out;
    const double q = ctx.q();
    for (const auto& [key, c] : v) {
        for (const auto& w : el.words) {
            TensorKey nk = key;
            double coef = c * w.coef;
            bool alive = true;
            for (int f = 0; f < el.rank && alive; ++f) {
                auto h = act(w.g[f], key[f], q, fock.dim);
                if (!h) {
                    alive = false;
                } else {
                    nk[f] = h->index;
                    coef *= h->coef;
                }
            }
            if (alive) out[nk] += coef;
        }
    }
    return out;
}

SparseVec apply_gamma_gamma_star(Scheme s, const SparseVec& v, const TruncatedFock& fock, const QContext& ctx) {
    SparseVec w = apply(scheme_element(s, Generator::Gamma), apply(scheme_element(s, Generator::Beta), v, fock, ctx),
                        fock, ctx);
    for (auto& [k, c] : w) c *= -1.0 / ctx.q();
    return w;
}

double interior_max_diff(const SparseVec& a, const SparseVec& b, int rank, const TruncatedFock& fock) {
    auto inside = [&](const TensorKey& k) {
        for (int f = 0; f < rank; ++f)
            if (k[f] >= fock.dim - 1) return false;
        return true;
    };
    double worst = 0;
    for (const auto& [k, va] : a) {
        if (!inside(k)) continue;
        auto it = b.find(k);
        worst = std::max(worst, std::abs(va - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [k, vb] : b) {
        if (inside(k) && a.find(k) == a.end()) worst = std::max(worst, std::abs(vb));
    }
    return worst;
}

double eigen_residual(const CoupledVector& v, const TruncatedFock& fock, const QContext& ctx) {
    const SparseVec sv = v.to_sparse();
    SparseVec target = sv;
    const double ev = std::pow(ctx.q(), 2 * v.x);
    for (auto& [k, c] : target) c *= ev;
    return interior_max_diff(apply_gamma_gamma_star(v.scheme, sv, fock, ctx), target, scheme_rank(v.scheme), fock);
}

double action_table_residual(Scheme s, Generator g, long x, long p, long r, const TruncatedFock& fock,
                             CGTable& cg) {
    const QContext& ctx = cg.context();
    const double q = ctx.q();
    const CoupledVector v = coupled_vector(s, x, p, r, fock, cg);
    const SparseVec lhs = apply(scheme_element(s, g), v.to_sparse(), fock, ctx);
    long x2 = x, p2 = p;
    double coef = 0;
    switch (g) {
        case Generator::Alpha: coef = std::sqrt(1 - std::pow(q, 2 * x)); x2 = x - 1; break;
        case Generator::Beta: coef = -std::pow(q, x + 1); p2 = p + 1; break;
        case Generator::Gamma: coef = std::pow(q, x); p2 = p - 1; break;
        case Generator::Delta: coef = std::sqrt(1 - std::pow(q, 2 * x + 2)); x2 = x + 1; break;
    }
    SparseVec rhs;
    if (x2 >= 0) {
        rhs = coupled_vector(s, x2, p2, r, fock, cg).to_sparse();
        for (auto& [k, c] : rhs) c *= coef;
    }
    return interior_max_diff(lhs, rhs, scheme_rank(s), fock);
}

double coassociativity_residual(Generator g, const TruncatedFock& fock, const QContext& ctx) {
    const TensorElement left = coproduct_1_23(g);
    const TensorElement right = coproduct_12_3(g);
    double worst = 0;
    for (int i = 0; i < fock.dim; ++i)
        for (int j = 0; j < fock.dim; ++j)
            for (int k = 0; k < fock.dim; ++k) {
                const SparseVec e{{TensorKey{i, j, k}, 1.0}};
                worst = std::max(worst, interior_max_diff(apply(left, e, fock, ctx), apply(right, e, fock, ctx), 3, fock));
            }
    return worst;
}

double sixj_oracle(long x, long p1, long r1, long p2, long r2, const TruncatedFock& fock, CGTable& cg) {
    const CoupledVector a = coupled_vector(Scheme::S1_23, x, p1, r1, fock, cg);
    const CoupledVector b = coupled_vector(Scheme::S12_3, x, p2, r2, fock, cg);
    for (const auto* v : {&a, &b}) {
        const double nv = v->norm();
        if (nv < 1 - 1e-8) {
            std::ostringstream os;
            os << "coupled vector " << scheme_name(v->scheme) << " (x=" << v->x << ", p=" << v->p << ", r=" << v->r
               << ") has truncated norm " << nv << " at N=" << fock.dim;
            throw InsufficientTruncation(os.str());
        }
    }
    return inner(a, b);
}

double sixj_oracle(long x, long p1, long r1, long p2, long r2, const TruncatedFock& fock, const QContext& ctx) {
    CGTable cg(ctx);
    return sixj_oracle(x, p1, r1, p2, r2, fock, cg);
}

}  // namespace qb
