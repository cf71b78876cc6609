// qbverify: command-line front end to the campaign engine.
//
//   qbverify list
//   qbverify verify plan.json [--jobs 4] [--out report.jsonl]
//   qbverify eval hexagon --param x=1 --param n2=-1 --q 0.5
//
// Exit status: 0 when every case passes, 1 when any case fails, 2 when the
// plan or the command line is invalid.

#include "qb/verifier.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace qb;
using namespace qb::verify;

struct Flags {
    std::optional<double> tol;
    std::optional<long> max_terms;
    std::string window;
    std::optional<int> precision;
    int jobs = 1;
    std::string out;
    bool no_timing = false;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--tol", f.tol, "Pass threshold for every case");
    sub->add_option("--max-terms", f.max_terms, "Term budget for each series")->check(CLI::PositiveNumber);
    sub->add_option("--window", f.window, "Fixed bilateral window lo:hi (turns adaptive extension off)");
    sub->add_option("--precision", f.precision, "Working precision in decimal digits")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", f.out, "Write the report here instead of standard output");
    sub->add_flag("--no-timing", f.no_timing, "Omit wall_ms from case lines");
}

Overrides overrides(const Flags& f) {
    Overrides o;
    o.tol = f.tol;
    o.max_terms = f.max_terms;
    o.precision = f.precision;
    if (!f.window.empty()) {
        const auto colon = f.window.find(':');
        if (colon == std::string::npos) throw PlanInvalid("--window expects lo:hi");
        try {
            std::size_t used_lo = 0, used_hi = 0;
            const std::string lo = f.window.substr(0, colon), hi = f.window.substr(colon + 1);
            o.window = std::make_pair(std::stol(lo, &used_lo), std::stol(hi, &used_hi));
            if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::logic_error&) {
            throw PlanInvalid("--window expects integers lo:hi");
        }
    }
    return o;
}

int emit(const Report& r, const Flags& f) {
    if (f.out.empty()) {
        write_report(std::cout, r, !f.no_timing);
    } else {
        std::ofstream file(f.out);
        if (!file) {
            std::cerr << "qbverify: cannot write '" << f.out << "'\n";
            return 2;
        }
        write_report(file, r, !f.no_timing);
    }
    return r.all_passed() ? 0 : 1;
}

Json plan_for_eval(const std::string& id, const std::vector<std::string>& assignments, double q) {
    Json grid = Json::object();
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0) throw PlanInvalid("--param expects name=value, got '" + a + "'");
        double v = 0;
        try {
            std::size_t used = 0;
            v = std::stod(a.substr(eq + 1), &used);
            if (used != a.size() - eq - 1) throw std::invalid_argument("trailing characters");
        } catch (const std::logic_error&) {
            throw PlanInvalid("--param value for '" + a.substr(0, eq) + "' is not a number");
        }
        grid[a.substr(0, eq)] = v;
    }
    // A case with every parameter at its default still needs a grid entry.
    if (grid.empty()) {
        const Identity& ident = find_identity(id);
        if (!ident.params.empty()) grid[ident.params.front().name] = ident.params.front().fallback;
    }
    return Json{{"identity", id}, {"grid", grid}, {"q", q}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification campaigns for q-Bessel coupling identities"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List identity ids with their statements and parameters");

    Flags vf;
    std::string plan_path;
    auto* verify = app.add_subcommand("verify", "Run every case of a JSON plan");
    verify->add_option("plan", plan_path, "Plan file")->required();
    add_flags(verify, vf);

    Flags ef;
    std::string eval_id;
    std::vector<std::string> eval_params;
    double eval_q = 0.5;
    auto* eval = app.add_subcommand("eval", "Evaluate one identity at one parameter assignment");
    eval->add_option("identity", eval_id, "Identity id")->required();
    eval->add_option("--param", eval_params, "name=value (repeatable)");
    eval->add_option("--q", eval_q, "Base q in (0, 1)");
    add_flags(eval, ef);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& id : registry()) {
                std::cout << id.id << "\n    " << id.statement << "\n    residual: " << id.residual_kind
                          << ", default tol " << id.default_tol << "\n    params:";
                for (const auto& p : id.params)
                    std::cout << ' ' << p.name << '=' << p.fallback << (p.integer ? "" : " (real)");
                std::cout << '\n';
            }
            return 0;
        }
        if (verify->parsed()) {
            const auto plan = load_plan(plan_path, overrides(vf));
            return emit(run_campaign(plan, vf.jobs), vf);
        }
        const auto plan = parse_plan(plan_for_eval(eval_id, eval_params, eval_q), overrides(ef));
        return emit(run_campaign(plan, 1), ef);
    } catch (const PlanInvalid& e) {
        std::cerr << "qbverify: invalid plan: " << e.what() << '\n';
        return 2;
    }
}
