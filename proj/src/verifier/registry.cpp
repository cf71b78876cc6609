#include "qb/verifier.hpp"

#include <cmath>
#include <limits>
#include <memory>

namespace qb::verify {

namespace {

using Params = std::map<std::string, double>;

long I(const Params& p, const std::string& k) { return std::lround(p.at(k)); }
double D(const Params& p, const std::string& k) { return p.at(k); }

// name1 .. name<len>, or name<first> .. when first != 1.
MultiIndex vec(const Params& p, const std::string& name, long len, long first = 1) {
    std::vector<long> v;
    for (long i = 0; i < len; ++i) v.push_back(I(p, name + std::to_string(first + i)));
    return MultiIndex(std::move(v));
}

template <class F>
auto by_precision(const EvalSettings& s, F&& f) {
    return with_backend(backend_for_digits(s.precision), std::forward<F>(f));
}

template <class Real>
Outcome from_sides(const IdentitySides<Real>& s) {
    Outcome o;
    o.residual = s.residual();
    o.est_error = s.est_error;
    o.converged = s.converged;
    o.detail = Json{{"lhs", to_double(s.lhs)}, {"rhs", to_double(s.rhs)}};
    return o;
}

double relative(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

// q-Bessel values memoised per worker thread, q and scalar type. A cached
// value is bit-identical to a fresh evaluation.
template <class Real>
SixJEngine<Real>& engine(double q) {
    thread_local std::map<double, std::unique_ptr<SixJEngine<Real>>> engines;
    auto& e = engines[q];
    if (!e) e = std::make_unique<SixJEngine<Real>>(from_double<Real>(q));
    return *e;
}

// CG coefficients memoised per worker thread and per q. The table is not
// thread-safe, and the values do not depend on which thread computed them.
CGTable& cg_table(double q) {
    thread_local std::map<double, std::unique_ptr<CGTable>> tables;
    auto& t = tables[q];
    if (!t) t = std::make_unique<CGTable>(QContext(q, 15));
    return *t;
}

std::vector<ParamSpec> ints(std::initializer_list<std::pair<const char*, double>> l) {
    std::vector<ParamSpec> out;
    for (const auto& [n, v] : l) out.push_back(ParamSpec{n, v, true});
    return out;
}

void add_vector(std::vector<ParamSpec>& ps, const std::string& name, long len, long first = 1) {
    for (long i = 0; i < len; ++i) ps.push_back(ParamSpec{name + std::to_string(first + i), 0, true});
}

void add_real(std::vector<ParamSpec>& ps, const std::string& name, double v) {
    ps.push_back(ParamSpec{name, v, false});
}

ThreeNJParams threenj_params(const Params& p) {
    const long k = I(p, "k");
    if (k < 1 || k > 3) throw DomainError("k must be 1, 2 or 3");
    return ThreeNJParams{I(p, "x"), vec(p, "n", k + 2), vec(p, "r", k), vec(p, "s", k)};
}

std::vector<ParamSpec> threenj_spec(std::vector<ParamSpec> head) {
    head.push_back(ParamSpec{"x", 0, true});
    add_vector(head, "n", 5);
    add_vector(head, "r", 3);
    add_vector(head, "s", 3);
    return head;
}

std::vector<Identity> build() {
    std::vector<Identity> r;

    {
        Identity id{"qpoch-recurrence",
                    "(a;q)_{n+1} = (a;q)_n (1 - a q^n) and (a;q)_inf = (a;q)_n (a q^n;q)_inf",
                    "absolute", 1e-15, ints({{"n", 0}}), {}};
        add_real(id.params, "a", 0.5);
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                const Real q = from_double<Real>(s.q), a = from_double<Real>(D(p, "a"));
                const long n = I(p, "n");
                if (n < 0) throw DomainError("n must be non-negative");
                const Real fin = qpoch_finite(a, q, n);
                const Real rec = abs(qpoch_finite(a, q, n + 1) - fin * (1 - a * ipow(q, n)));
                const auto inf = qpoch_infinite(a, q, s.policy);
                const auto tail = qpoch_infinite(Real(a * ipow(q, n)), q, s.policy);
                Outcome o;
                const Real split = abs(inf.value - fin * tail.value);
                o.residual = std::max(to_double(rec), to_double(split));
                o.est_error = inf.est_error + tail.est_error;
                o.converged = inf.converged && tail.converged;
                o.detail = Json{{"recurrence", to_double(rec)}, {"infinite_split", to_double(split)}};
                return o;
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"wall-consistency", "p_n(q^x;a;q): the 2phi1 form against the 2phi0 form", "relative", 1e-12,
                    ints({{"n", 0}, {"x", 0}}), {}};
        add_real(id.params, "a", 0.5);
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                const Real q = from_double<Real>(s.q), a = from_double<Real>(D(p, "a"));
                const int n = static_cast<int>(I(p, "n"));
                const long x = I(p, "x");
                if (n < 0 || x < 0) throw DomainError("n and x must be non-negative");
                const double f1 = to_double(wall_poly_2phi1(n, x, a, q));
                const double f0 = to_double(wall_poly_2phi0(n, x, a, q));
                Outcome o;
                o.residual = relative(f1, f0);
                o.detail = Json{{"two_phi_one", f1}, {"two_phi_zero", f0}};
                return o;
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"hankel-orthogonality", "sum_x J_nu(q^{x+m}) J_nu(q^{x+n}) q^x = delta_{mn} q^{-n}",
                    "absolute", 1e-8, ints({{"nu", 0}, {"m", 0}, {"n", 0}}), {}};
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                return from_sides(hankel_orthogonality(e, static_cast<int>(I(p, "nu")), I(p, "m"), I(p, "n"), s.policy));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"genfun",
                    "sum_m q^{-nu m/2} J_nu(x q^m) t^m/(q;q)_m = x^{nu/2} (q^{nu+1};q)_inf/(q,t;q)_inf "
                    "1phi1(t; q^{nu+1}; q, qx)",
                    "absolute", 1e-10, ints({{"nu", 1}}), {}};
        add_real(id.params, "x", 0.5);
        add_real(id.params, "t", 0.25);
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                return from_sides(genfun_sides<Real>(static_cast<int>(I(p, "nu")), from_double<Real>(D(p, "x")),
                                                     from_double<Real>(D(p, "t")), from_double<Real>(s.q), s.policy));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"wall-genfun",
                    "sum_m q^{-(nu-n)m/2} J_{nu-n}(x q^m) q^{m(nu+1)}/(q;q)_m = x^{(nu-n)/2} (qx;q)_inf/(q;q)_inf "
                    "p_n(q^nu; x; q)",
                    "absolute", 1e-10, ints({{"n", 1}, {"nu", 2}}), {}};
        add_real(id.params, "x", 0.25);
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                return from_sides(wall_genfun_sides<Real>(static_cast<int>(I(p, "n")), static_cast<int>(I(p, "nu")),
                                                          from_double<Real>(D(p, "x")), from_double<Real>(s.q),
                                                          s.policy));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"sixj-oracle",
                    "<e^{1(23)}_{x,p1,r1}, e^{(12)3}_{x,p2,r2}> on a truncated Fock space = "
                    "delta_{r1,r2} (-q)^{p1-p2} J_{r1}(q^{2(p1-p2)}; q^2)",
                    "absolute", 1e-8, ints({{"x", 0}, {"p1", 0}, {"r1", 0}, {"p2", 0}, {"r2", 0}, {"N", 60}}), {}};
        id.eval = [](const Params& p, const EvalSettings& s) {
            const QContext ctx(s.q, std::max(15, s.precision));
            const double closed = sixj_closed(I(p, "p1"), I(p, "r1"), I(p, "p2"), I(p, "r2"), ctx);
            const double oracle = sixj_oracle(I(p, "x"), I(p, "p1"), I(p, "r1"), I(p, "p2"), I(p, "r2"),
                                              TruncatedFock(static_cast<int>(I(p, "N"))), cg_table(s.q));
            Outcome o;
            o.residual = std::abs(closed - oracle);
            o.detail = Json{{"closed", closed}, {"oracle", oracle}};
            return o;
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"sixj-orthogonality", "sum_{p1,r1} R_{p1,r1;p2,r2} R_{p1,r1;p3,r3} = delta_{p2,p3} delta_{r2,r3}",
                    "absolute", 1e-8, ints({{"p2", 0}, {"r2", 0}, {"p3", 0}, {"r3", 0}}), {}};
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                return from_sides(sixj_orthogonality(e, I(p, "p2"), I(p, "r2"), I(p, "p3"), I(p, "r3"), s.policy));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"backcoupling",
                    "form 0: J_{r123}(q^{p1+p2}) = sum_p J_{r132}(q^{p+p1}) J_{r312}(q^{p+p2}) q^p; "
                    "form 1: R^{x,n1,n2,n3}_{p1,p2} = sum_p R^{x,n1,n3,n2}_{p1,p} R^{x,n3,n1,n2}_{p,p2}",
                    "absolute", 1e-8,
                    ints({{"x", 0}, {"n1", 0}, {"n2", 0}, {"n3", 0}, {"p1", 0}, {"p2", 0}, {"form", 0}}), {}};
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                const long x = I(p, "x"), n1 = I(p, "n1"), n2 = I(p, "n2"), n3 = I(p, "n3"), p1 = I(p, "p1"),
                           p2 = I(p, "p2");
                return from_sides(I(p, "form") == 0 ? backcoupling_J(e, x, n1, n2, n3, p1, p2, s.policy)
                                                    : backcoupling_R(e, x, n1, n2, n3, p1, p2, s.policy));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"biedenharn-elliott",
                    "J_{nu+mu1}(q^{P-Q}) J_{nu+mu2}(q^{Q-R}) = sum_mu A^{mu1,mu2,mu}_{P,Q,R} J_{nu+mu}(q^{P-R})",
                    "absolute", 1e-8, ints({{"P", 0}, {"Q", 0}, {"R", 0}, {"nu", 0}, {"mu1", 0}, {"mu2", 0}}), {}};
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                return from_sides(biedenharn_elliott_J(e, I(p, "P"), I(p, "Q"), I(p, "R"), I(p, "nu"), I(p, "mu1"),
                                                       I(p, "mu2"), s.policy));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"hexagon",
                    "form 0: sum_r R^{x,p1,n3,n4}_{p2,r} R^{r,n2,n1,n3}_{p3,p1} R^{x,p3,n2,n4}_{p4,r} = "
                    "sum_r R^{x,n1,n2,p2}_{r,p1} R^{r,n2,n4,n3}_{p2,p4} R^{x,n1,n3,p4}_{r,p3}; form 1: q-Bessel form",
                    "absolute", 1e-8, ints({{"x", 0}}), {}};
        add_vector(id.params, "n", 4);
        add_vector(id.params, "p", 4);
        id.params.push_back(ParamSpec{"form", 0, true});
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                HexagonLabels h;
                h.x = I(p, "x");
                for (std::size_t i = 0; i < 4; ++i) {
                    h.n[i] = I(p, "n" + std::to_string(i + 1));
                    h.p[i] = I(p, "p" + std::to_string(i + 1));
                }
                return from_sides(I(p, "form") == 0 ? hexagon_R(e, h, s.policy) : hexagon_J(e, h, s.policy));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"yang-baxter",
                    "R12(u,v) R13(u,w) R23(v,w) = R23(v,w) R13(u,w) R12(u,v) and R(u,v) unitary, on interior "
                    "coordinates of the window [lo, hi]",
                    "absolute", 1e-6, ints({{"u", 0}, {"v", 0}, {"w", 0}, {"lo", -10}, {"hi", 10}}), {}};
        id.eval = [](const Params& p, const EvalSettings& s) {
            const QContext ctx(s.q, std::max(15, s.precision));
            const auto rep = yang_baxter_adaptive(I(p, "u"), I(p, "v"), I(p, "w"), I(p, "lo"), I(p, "hi"), ctx);
            Outcome o;
            o.residual = std::max(rep.triple_residual, rep.unitarity_defect);
            o.detail = Json{{"triple_residual", rep.triple_residual},
                            {"unitarity_defect", rep.unitarity_defect},
                            {"interior", {rep.interior_lo, rep.interior_hi}}};
            return o;
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"qhankel-factorization",
                    "H_{r123} f = H_{r312} H_{r132} f on [out_lo, out_hi], f(x) = q^{x^2/2} (x + shift)", "absolute",
                    1e-8,
                    ints({{"x", 0}, {"n1", 0}, {"n2", 0}, {"n3", 0}, {"out_lo", -2}, {"out_hi", 2}, {"shift", 0}}),
                    {}};
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                return from_sides(qhankel_factorization(e, I(p, "x"), I(p, "n1"), I(p, "n2"), I(p, "n3"),
                                                        I(p, "out_lo"), I(p, "out_hi"), I(p, "shift"), s.policy));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"multi-orthogonality",
                    "sum_{x in Z^d} J_nu(x,l) J_nu(x,l') q^{x_1} = delta_{l,l'} q^{nu_{d+1}+nu_0-l_d}", "absolute",
                    1e-7, ints({{"d", 2}}), {}};
        add_vector(id.params, "nu", 5, 0);
        add_vector(id.params, "l", 3);
        add_vector(id.params, "lp", 3);
        id.eval = [](const Params& p, const EvalSettings& s) {
            const long d = I(p, "d");
            if (d < 1 || d > 3) throw DomainError("d must be 1, 2 or 3");
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                return from_sides(
                    multi_orthogonality(e, vec(p, "nu", d + 2, 0), vec(p, "l", d), vec(p, "lp", d), s.policy));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"multi-duality",
                    "kind 0: J_nu(x,l) = J_{hat nu}(hat l, hat x); kind 1: R^{x,n}_{r,s} = R^{x,hat n}_{hat s,hat r}",
                    "absolute", 1e-12, ints({{"kind", 0}, {"d", 2}}), {}};
        add_vector(id.params, "nu", 6, 0);
        add_vector(id.params, "x", 4);
        add_vector(id.params, "l", 4);
        id.params = threenj_spec(std::move(id.params));
        id.params.insert(id.params.begin() + 2, ParamSpec{"k", 2, true});
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                if (I(p, "kind") == 0) {
                    const long d = I(p, "d");
                    if (d < 1 || d > 4) throw DomainError("d must be between 1 and 4");
                    return from_sides(
                        multi_self_duality(e, MultiBesselParams{vec(p, "nu", d + 2, 0), vec(p, "x", d), vec(p, "l", d)}));
                }
                return from_sides(threenj_duality(e, threenj_params(p)));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"threenj-product",
                    "kind 0: R^{x,n}_{r,s} splits at k1 into two smaller 3nj-symbols; kind 1: sum_r R^{x,n}_{r,s} "
                    "R^{x,n}_{r,s'} = delta_{s,s'}",
                    "absolute", 1e-10, {}, {}};
        id.params = threenj_spec(ints({{"kind", 0}, {"k", 2}, {"k1", 1}}));
        add_vector(id.params, "sp", 3);
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                const auto t = threenj_params(p);
                if (I(p, "kind") == 0) return from_sides(threenj_factorization(e, t, static_cast<int>(I(p, "k1"))));
                return from_sides(threenj_orthogonality(e, Comb::R, t.x, t.n, t.s, vec(p, "sp", t.k()), s.policy));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"threenj-corollary",
                    "R^{x,n}_{r,s} = (-q)^{r_1+s_k-n_1-n_{k+2}} J_{nu(x,n)}(r, s; q^2)", "absolute", 1e-10, {}, {}};
        id.params = threenj_spec(ints({{"k", 2}}));
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                return from_sides(threenj_corollary(e, threenj_params(p)));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"s-lemma",
                    "S^{x,n}_{r,s} as the product of 6j-symbols is a unitary change of basis: sum_r S^{x,n}_{r,s} "
                    "S^{x,n}_{r,s'} = delta_{s,s'}",
                    "absolute", 1e-7, {}, {}};
        id.params = threenj_spec(ints({{"k", 2}}));
        add_vector(id.params, "sp", 3);
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                const auto t = threenj_params(p);
                return from_sides(threenj_orthogonality(e, Comb::S, t.x, t.n, t.s, vec(p, "sp", t.k()), s.policy));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"multi-be",
                    "form 0: R^{x,n}_{r,s} = sum_{t in Z^{k-1}} S^{x,n}_{(t,r_1),s} R^{r_1,n'}_{r',t} (at k = 2 "
                    "also matched against the one-variable identity); form 1: q-Bessel form with the derived "
                    "coefficient; form 2: with the printed coefficient",
                    "absolute", 1e-6, {}, {}};
        id.params = threenj_spec(ints({{"k", 2}, {"form", 0}}));
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                const auto t = threenj_params(p);
                if (t.k() < 2) throw DomainError("the multivariate Biedenharn-Elliott identity needs k >= 2");
                const long form = I(p, "form");
                if (form != 0)
                    return from_sides(
                        multi_biedenharn_elliott_J(e, t, form == 1 ? AForm::Derived : AForm::Printed, s.policy));
                Outcome o = from_sides(multi_biedenharn_elliott(e, t, s.policy));
                if (t.k() == 2) {
                    const double cross = multi_be_k2_crosscheck(e, t, s.policy);
                    o.detail["k2_crosscheck"] = cross;
                    o.residual = std::max(o.residual, cross);
                }
                return o;
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"s-composition",
                    "S^{x,n}_{s,r} = composition of k+1 transitions through the rotated label vectors, summed over "
                    "s_1..s_k in [lo, hi]^k",
                    "absolute", 1e-6, {}, {}};
        id.params = threenj_spec(ints({{"k", 2}, {"lo", -12}, {"hi", 20}}));
        id.eval = [](const Params& p, const EvalSettings& s) {
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                auto& e = engine<Real>(s.q);
                auto pol = TruncationPolicy::fixed_window(I(p, "lo"), I(p, "hi"), s.policy.tail_tol);
                pol.max_terms = s.policy.max_terms;
                return from_sides(s_composition(e, threenj_params(p), pol));
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"cg-expansion", "C_{x,r,n} = sum_s R^{x,n}_{r,s} C_{x,hat s,hat n}", "absolute", 1e-7,
                    ints({{"k", 1}, {"x", 0}}), {}};
        add_vector(id.params, "r", 3);
        add_vector(id.params, "n", 5);
        id.eval = [](const Params& p, const EvalSettings& s) {
            const long k = I(p, "k");
            if (k < 1 || k > 3) throw DomainError("k must be 1, 2 or 3");
            auto& e = engine<double>(s.q);
            return from_sides(cg_expansion(e, cg_table(s.q), I(p, "x"), vec(p, "r", k), vec(p, "n", k + 2), s.policy));
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"aw-symmetry", "p_n(x; a,b,c,d | q) is unchanged when parameters i and j are swapped",
                    "relative", 1e-10, ints({{"n", 3}}), {}};
        add_real(id.params, "x", 1.3);
        add_real(id.params, "a", 0.2);
        add_real(id.params, "b", -0.3);
        add_real(id.params, "c", 0.4);
        add_real(id.params, "d", 0.1);
        id.params.push_back(ParamSpec{"i", 0, true});
        id.params.push_back(ParamSpec{"j", 1, true});
        id.eval = [](const Params& p, const EvalSettings& s) {
            const long i = I(p, "i"), j = I(p, "j");
            if (i < 0 || i > 3 || j < 0 || j > 3) throw DomainError("i and j must lie in 0..3");
            return by_precision(s, [&](auto tag) {
                using Real = decltype(tag);
                std::array<int, 4> perm{0, 1, 2, 3};
                std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
                const std::array<Real, 4> abcd{from_double<Real>(D(p, "a")), from_double<Real>(D(p, "b")),
                                               from_double<Real>(D(p, "c")), from_double<Real>(D(p, "d"))};
                const auto sd = aw_symmetry<Real>(I(p, "n"), from_double<Real>(D(p, "x")), abcd, perm,
                                                  from_double<Real>(s.q));
                Outcome o = from_sides(sd);
                const Real scale = std::max(abs(sd.lhs), abs(sd.rhs));
                o.residual = scale == 0 ? 0.0 : to_double(Real(abs(sd.lhs - sd.rhs) / scale));
                return o;
            });
        };
        r.push_back(std::move(id));
    }
    {
        Identity id{"aw-limit",
                    "P_d(l+m; x(m); alpha(m) | q) / C_m -> (q;q)_inf^d (prefactor) J_nu(x, Lambda): relative error "
                    "at m = m_max, with errors strictly decreasing from m = 3",
                    "relative", 1e-2, ints({{"d", 1}}), {}};
        add_vector(id.params, "l", 2);
        add_vector(id.params, "nu", 4, 0);
        add_vector(id.params, "x", 2);
        id.params.push_back(ParamSpec{"m_max", 8, true});
        id.params.push_back(ParamSpec{"form", 0, true});
        id.eval = [](const Params& p, const EvalSettings& s) {
            const long d = I(p, "d");
            if (d < 1 || d > 2) throw DomainError("d must be 1 or 2");
            LimitSchedule sch;
            sch.lambda = vec(p, "l", d);
            sch.nu = vec(p, "nu", d + 2, 0);
            sch.x = vec(p, "x", d);
            sch.form = I(p, "form") == 0 ? LimitForm::Corrected : LimitForm::Printed;
            sch.m_values.clear();
            for (long m = 1; m <= I(p, "m_max"); ++m) {
                bool ok = true;
                for (long l : sch.lambda.values()) ok = ok && l + m >= 0;
                if (ok) sch.m_values.push_back(m);
            }
            if (sch.m_values.empty()) throw DegreeNegative("no m in 1..m_max makes lambda + m non-negative");
            const auto rep = limit_check(sch, QContext(s.q, std::max(15, s.precision)));
            Outcome o;
            const double last = rep.error_at(sch.m_values.back());
            o.residual = last < 0 ? std::numeric_limits<double>::quiet_NaN() : last;
            o.converged = rep.decreasing_from(3);
            Json errs = Json::array();
            for (const auto& pt : rep.points) errs.push_back(pt.pole ? Json(nullptr) : Json(pt.relative_error));
            o.detail = Json{{"target", rep.target},
                            {"fitted_constant", rep.fitted_constant},
                            {"onset", rep.onset},
                            {"digits", rep.digits},
                            {"errors", errs}};
            return o;
        };
        r.push_back(std::move(id));
    }
    return r;
}

}  // namespace

const std::vector<Identity>& registry() {
    static const std::vector<Identity> r = build();
    return r;
}

const Identity& find_identity(const std::string& id) {
    for (const auto& i : registry())
        if (i.id == id) return i;
    throw PlanInvalid("unknown identity '" + id + "'");
}

}  // namespace qb::verify
