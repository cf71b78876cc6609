#pragma once

// Truncated matrix model of the representation pi_0 of A_q(SU(2)) on
// l^2(N), its two- and three-fold tensor products through the coproduct,
// Clebsch-Gordan coefficients, coupled eigenvectors and the inner-product
// 6j oracle. Everything here is double precision; the oracle only has to
// reach 1e-8.

#include "qb/qcore.hpp"

#include <Eigen/Dense>

#include <array>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qb {

struct TruncatedFock {
    int dim;
    explicit TruncatedFock(int n);
    // N = ceil(base * log 0.5 / log q), so that q^N matches 0.5^base.
    static TruncatedFock scaled_for(double q, int base = 60);
};

enum class Generator { Alpha, Beta, Gamma, Delta };
const char* generator_name(Generator g);

struct GenOperator {
    Generator tag;
    Eigen::MatrixXd matrix;
};

GenOperator pi0_matrix(Generator g, const TruncatedFock& fock, const QContext& ctx);

struct RelationResidual {
    std::string relation;
    double residual;
};

// Residuals of the seven defining relations, each restricted to rows and
// columns 0..N-2. Requires N >= 4.
std::vector<RelationResidual> defining_relation_residuals(const TruncatedFock& fock, const QContext& ctx);
double check_defining_relations(const TruncatedFock& fock, const QContext& ctx);

// C_{x,m,n}: the orthonormal Wall polynomial of degree min(m,n) at (q^2)^x
// with parameter q^{2|n-m|} in base q^2; zero if any index is negative.
double cg_coefficient(long x, long m, long n, const QContext& ctx);

// Memoised C_{x,m,n} for one q. Not thread-safe; build one per worker.
class CGTable {
public:
    explicit CGTable(const QContext& ctx) : ctx_(ctx) {}
    double operator()(long x, long m, long n);
    const QContext& context() const noexcept { return ctx_; }

private:
    QContext ctx_;
    std::map<std::array<long, 3>, double> cache_;
};

// ---------------------------------------------------------------------------
// Sparse tensors

using TensorKey = std::array<int, 3>;
using SparseVec = std::map<TensorKey, double>;

enum class Scheme { S12, S21, S1_23, S12_3 };
const char* scheme_name(Scheme s);
int scheme_rank(Scheme s);

struct CoupledVector {
    Scheme scheme = Scheme::S12;
    long x = 0, p = 0, r = 0;
    std::vector<std::pair<TensorKey, double>> coeffs;  // sorted by key

    double norm() const;
    double coeff(const TensorKey& k) const;
    SparseVec to_sparse() const;
};

double inner(const CoupledVector& a, const CoupledVector& b);

// Two-fold schemes ignore r. Requires x >= 0.
CoupledVector coupled_vector(Scheme s, long x, long p, long r, const TruncatedFock& fock, CGTable& cg);
CoupledVector coupled_vector(Scheme s, long x, long p, long r, const TruncatedFock& fock, const QContext& ctx);

// A sum of coefficient * (g_1 (x) ... (x) g_rank) terms.
struct TensorWord {
    double coef;
    std::array<Generator, 3> g;
};
struct TensorElement {
    int rank = 1;
    std::vector<TensorWord> words;
};

TensorElement coproduct(Generator g);       // Delta(g)
TensorElement coproduct_1_23(Generator g);  // (1 (x) Delta) Delta(g)
TensorElement coproduct_12_3(Generator g);  // (Delta (x) 1) Delta(g)
TensorElement scheme_element(Scheme s, Generator g);

// Applies a tensor element factorwise; components leaving [0, N) are dropped.
SparseVec apply(const TensorElement& el, const SparseVec& v, const TruncatedFock& fock, const QContext& ctx);

// gamma gamma^* = -q^{-1} gamma beta in the tensor representation of the scheme.
SparseVec apply_gamma_gamma_star(Scheme s, const SparseVec& v, const TruncatedFock& fock, const QContext& ctx);

// max |a - b| over keys whose every index is < N-1 (rank slots only).
double interior_max_diff(const SparseVec& a, const SparseVec& b, int rank, const TruncatedFock& fock);

// max interior |pi(gamma gamma^*) e - q^{2x} e|.
double eigen_residual(const CoupledVector& v, const TruncatedFock& fock, const QContext& ctx);

// Residual of one row of the generator action table, e.g.
// pi(alpha) e_{x,p,r} = sqrt(1-q^{2x}) e_{x-1,p,r}, for schemes 12, 1(23), (12)3.
double action_table_residual(Scheme s, Generator g, long x, long p, long r, const TruncatedFock& fock,
                             CGTable& cg);

// Applies pi_{1(23)}(g) and pi_{(12)3}(g) to every basis vector of a small
// three-fold truncated space and returns the largest interior difference.
double coassociativity_residual(Generator g, const TruncatedFock& fock, const QContext& ctx);

// <e^{1(23)}_{x,p1,r1}, e^{(12)3}_{x,p2,r2}>; throws InsufficientTruncation
// when either truncated norm is below 1 - 1e-8.
double sixj_oracle(long x, long p1, long r1, long p2, long r2, const TruncatedFock& fock, CGTable& cg);
double sixj_oracle(long x, long p1, long r1, long p2, long r2, const TruncatedFock& fock, const QContext& ctx);

}  // namespace qb
