// Acceptance runner: evaluates the numbered acceptance criteria and prints one
// PASS or FAIL line per criterion.
//
//   acceptance                 all criteria
//   acceptance --criterion 5   one criterion
//
// Exit status 0 when every selected criterion passes, 1 otherwise.

#include "qb/repr.hpp"
#include "qb/verifier.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#ifndef QB_PLAN_DIR
#define QB_PLAN_DIR "plans"
#endif

namespace {

using namespace qb;
using namespace qb::verify;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string plan_dir = QB_PLAN_DIR;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(3) << v;
    return os.str();
}

// One campaign with a single grid point.
Json point(const std::string& id, const std::vector<std::pair<std::string, long>>& labels, double q, double tol) {
    Json grid = Json::object();
    for (const auto& [k, v] : labels) grid[k] = v;
    return Json{{"identity", id}, {"grid", grid}, {"q", q}, {"tol", tol}};
}

Report run(const Json& campaigns) { return run_campaign(parse_plan(Json{{"campaigns", campaigns}})); }

Report run_file(const std::string& name) { return run_campaign(load_plan(plan_dir + "/" + name)); }

std::string tally(const Summary::Entry& e) {
    return std::to_string(e.passed) + "/" + std::to_string(e.total) + " pass, max residual " + fmt(e.max_residual);
}

// Appends indexed labels name1..name<len> drawn uniformly from [lo, hi].
void draw(std::vector<std::pair<std::string, long>>& out, std::mt19937& rng, const std::string& name, int len,
          int lo, int hi, int first = 1) {
    std::uniform_int_distribution<int> d(lo, hi);
    for (int i = 0; i < len; ++i) out.emplace_back(name + std::to_string(first + i), d(rng));
}

std::vector<std::pair<std::string, long>> random_3nj(std::mt19937& rng, int k) {
    std::vector<std::pair<std::string, long>> l{{"k", k}, {"x", std::uniform_int_distribution<int>(-2, 2)(rng)}};
    draw(l, rng, "n", k + 2, -2, 2);
    draw(l, rng, "r", k, -2, 2);
    draw(l, rng, "s", k, -2, 2);
    return l;
}

Verdict criterion1() {
    const auto r = run_file("sixj_oracle.json");
    return {r.all_passed(), "closed form against the Fock-space inner product: " + tally(r.summary.all)};
}

Verdict criterion2() {
    const auto r = run_file("hankel_orthogonality.json");
    return {r.all_passed(), "q-Hankel orthogonality: " + tally(r.summary.all)};
}

Verdict criterion3() {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> d(-2, 2);
    Json c = Json::array();
    for (int i = 0; i < 100; ++i) {
        std::vector<std::pair<std::string, long>> l;
        for (const char* k : {"x", "n1", "n2", "n3", "p1", "p2"}) l.emplace_back(k, d(rng));
        l.emplace_back("form", i % 2);
        c.push_back(point("backcoupling", l, 0.5, 1e-8));
    }
    for (int i = 0; i < 100; ++i) {
        std::vector<std::pair<std::string, long>> l;
        for (const char* k : {"P", "Q", "R", "nu", "mu1", "mu2"}) l.emplace_back(k, d(rng));
        c.push_back(point("biedenharn-elliott", l, 0.5, 1e-8));
    }
    for (int i = 0; i < 100; ++i) {
        std::vector<std::pair<std::string, long>> l{{"x", d(rng)}};
        draw(l, rng, "n", 4, -2, 2);
        draw(l, rng, "p", 4, -2, 2);
        l.emplace_back("form", i % 2);
        c.push_back(point("hexagon", l, 0.5, 1e-8));
    }
    const auto r = run(c);
    std::string detail;
    for (const auto& [id, e] : r.summary.by_identity) detail += id + " " + tally(e) + "; ";
    return {r.all_passed(), detail};
}

Verdict criterion4() {
    const auto r = run_file("yang_baxter.json");
    double tri = 0, uni = 0;
    for (const auto& c : r.cases) {
        if (!c.error.empty()) continue;
        tri = std::max(tri, c.detail["triple_residual"].get<double>());
        uni = std::max(uni, c.detail["unitarity_defect"].get<double>());
    }
    return {r.all_passed(),
            tally(r.summary.all) + "; max unitarity defect " + fmt(uni) + ", max triple-product residual " + fmt(tri)};
}

Verdict criterion5() {
    const auto r = run_file("multi_orthogonality.json");
    Summary::Entry d2, d3;
    for (const auto& c : r.cases) {
        const long d = std::lround(c.params.front().second);
        auto& e = d == 2 ? d2 : d3;
        ++e.total;
        ++(c.pass ? e.passed : e.failed);
        e.max_residual = std::max(e.max_residual, std::isfinite(c.residual) ? c.residual : INFINITY);
    }
    return {r.all_passed(), "d=2 " + tally(d2) + "; d=3 " + tally(d3)};
}

Verdict criterion6() {
    std::mt19937 rng(66);
    Json c = Json::array();
    for (int i = 0; i < 100; ++i) {
        const int d = 1 + i % 4;
        std::vector<std::pair<std::string, long>> l{{"kind", 0}, {"d", d}};
        draw(l, rng, "nu", d + 2, -3, 3, 0);
        draw(l, rng, "x", d, -3, 3);
        draw(l, rng, "l", d, -3, 3);
        c.push_back(point("multi-duality", l, 0.5, 1e-12));
    }
    for (int i = 0; i < 60; ++i) {
        auto l = random_3nj(rng, 1 + i % 3);
        l.insert(l.begin(), {"kind", 1});
        c.push_back(point("multi-duality", l, 0.5, 1e-12));
    }
    const auto r = run(c);
    return {r.all_passed(), "self-duality and 3nj duality: " + tally(r.summary.all)};
}

Verdict criterion7() {
    std::mt19937 rng(77);
    Json c = Json::array();
    for (int k = 1; k <= 3; ++k)
        for (int i = 0; i < 50; ++i) c.push_back(point("threenj-corollary", random_3nj(rng, k), 0.5, 1e-10));
    const auto r = run(c);
    return {r.all_passed(), "3nj-symbol against the prefactored q-Bessel function: " + tally(r.summary.all)};
}

Verdict criterion8() {
    std::mt19937 rng(88);
    Json c = Json::array();
    for (int k = 2; k <= 3; ++k)
        for (int i = 0; i < 20; ++i) c.push_back(point("multi-be", random_3nj(rng, k), 0.5, k == 2 ? 1e-7 : 1e-6));
    const auto r = run(c);
    double cross = 0;
    bool cross_ok = true;
    for (const auto& cs : r.cases) {
        if (!cs.detail.contains("k2_crosscheck")) continue;
        const double v = cs.detail["k2_crosscheck"].get<double>();
        cross = std::max(cross, v);
        cross_ok = cross_ok && v < 1e-8;
    }
    return {r.all_passed() && cross_ok,
            "S-form " + tally(r.summary.all) + "; k=2 one-variable cross-match max " + fmt(cross)};
}

Verdict criterion9() {
    const auto r = run_file("aw_limit.json");
    std::string detail;
    for (const auto& c : r.cases) {
        detail += "d=" + std::to_string(std::lround(c.params.front().second)) + ": error at m=8 " + fmt(c.residual) +
                  (c.converged ? ", decreasing from m=3" : ", not decreasing from m=3") + "; ";
    }
    return {r.all_passed(), detail};
}

Verdict criterion10() {
    double rel = 0, eig = 0;
    for (double q : {0.3, 0.5, 0.7}) {
        const QContext ctx(q);
        rel = std::max(rel, check_defining_relations(TruncatedFock(10), ctx));
    }
    const QContext ctx(0.5);
    const TruncatedFock f(60);
    CGTable cg(ctx);
    for (Scheme s : {Scheme::S12, Scheme::S21, Scheme::S1_23, Scheme::S12_3})
        for (long x = 0; x <= 2; ++x)
            for (long p = -3; p <= 3; ++p)
                for (long r = -3; r <= 3; ++r) {
                    if ((s == Scheme::S12 || s == Scheme::S21) && r != 0) continue;
                    eig = std::max(eig, eigen_residual(coupled_vector(s, x, p, r, f, cg), f, ctx));
                }
    return {rel < 1e-13 && eig < 1e-8,
            "defining relations at N=10 " + fmt(rel) + "; coupled-vector eigen-residual at N=60 " + fmt(eig)};
}

Verdict criterion11() {
    const Json plan = Json::parse(R"({"campaigns": [
        {"identity": "hankel-orthogonality", "grid": {"nu": [-1, 1], "m": [-2, 2], "n": [-2, 2]}, "q": [0.3, 0.5]},
        {"identity": "sixj-oracle", "grid": {"x": [0, 1], "p1": [-2, 2], "p2": [-2, 2]}, "q": 0.5},
        {"identity": "multi-be", "grid": {"k": 2, "x": [0, 1], "n2": [-1, 1]}, "q": 0.5},
        {"identity": "aw-limit", "grid": {"d": 1}, "q": 0.5},
        {"identity": "backcoupling", "grid": {"p1": [-1, 1]}, "q": 0.5}
    ]})");
    auto text = [&](int jobs) {
        std::ostringstream os;
        write_report(os, run_campaign(parse_plan(plan), jobs), false);
        return os.str();
    };
    const std::string a = text(1), b = text(1), c = text(3);
    return {a == b && a == c, std::to_string(std::count(a.begin(), a.end(), '\n')) +
                                  " report lines; repeated run " + (a == b ? "identical" : "differs") +
                                  ", three workers " + (a == c ? "identical" : "differs")};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
    {"6j oracle equivalence", criterion1},
    {"q-Hankel orthogonality", criterion2},
    {"backcoupling, Biedenharn-Elliott and hexagon", criterion3},
    {"Yang-Baxter", criterion4},
    {"multivariate orthogonality", criterion5},
    {"self-duality and 3nj duality", criterion6},
    {"corollary bridge", criterion7},
    {"multivariate Biedenharn-Elliott", criterion8},
    {"Askey-Wilson limit", criterion9},
    {"defining relations and coupled vectors", criterion10},
    {"determinism", criterion11},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "Run only this criterion (1-11)")->check(CLI::Range(1, 11));
    app.add_option("--plans", plan_dir, "Directory holding the plan files");
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && v.pass;
        std::cout << "criterion " << i + 1 << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
                  << fmt(secs) << " s): " << v.detail << std::endl;
    }
    return all ? 0 : 1;
}
