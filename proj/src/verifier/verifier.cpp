#include "qb/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

namespace qb::verify {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::vector<double> axis_values(const ParamSpec& spec, const Json& v) {
    auto check = [&](double x) {
        if (!std::isfinite(x)) throw PlanInvalid("grid value for '" + spec.name + "' is not finite");
        if (spec.integer && x != std::round(x))
            throw PlanInvalid("grid value for integer parameter '" + spec.name + "' is not an integer");
        return x;
    };
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(check(v.get<double>()));
    } else if (v.is_object()) {
        if (!v.contains("values") || !v["values"].is_array())
            throw PlanInvalid("grid entry for '" + spec.name + "' needs a \"values\" array");
        for (const auto& e : v["values"]) {
            if (!e.is_number()) throw PlanInvalid("non-numeric grid value for '" + spec.name + "'");
            out.push_back(check(e.get<double>()));
        }
    } else if (v.is_array()) {
        // [lo, hi] is an inclusive integer range; real parameters take a list
        // of values instead.
        for (const auto& e : v)
            if (!e.is_number()) throw PlanInvalid("non-numeric grid value for '" + spec.name + "'");
        if (!spec.integer) {
            for (const auto& e : v) out.push_back(check(e.get<double>()));
        } else {
            if (v.size() != 2) throw PlanInvalid("integer range for '" + spec.name + "' must be [lo, hi]");
            const long lo = std::lround(check(v[0].get<double>())), hi = std::lround(check(v[1].get<double>()));
            for (long i = lo; i <= hi; ++i) out.push_back(static_cast<double>(i));
        }
    } else {
        throw PlanInvalid("grid entry for '" + spec.name + "' must be a number, [lo, hi] or {\"values\": [...]}");
    }
    if (out.empty()) throw PlanInvalid("grid axis '" + spec.name + "' is empty");
    return out;
}

double number(const Json& j, const char* key) {
    if (!j[key].is_number()) throw PlanInvalid(std::string("'") + key + "' must be a number");
    return j[key].get<double>();
}

Campaign parse_campaign(const Json& j, const Overrides& o) {
    if (!j.is_object()) throw PlanInvalid("a campaign must be a JSON object");
    if (!j.contains("identity") || !j["identity"].is_string()) throw PlanInvalid("campaign needs an \"identity\" string");
    const Identity& id = find_identity(j["identity"].get<std::string>());

    Campaign c;
    c.identity = id.id;
    if (!j.contains("grid") || !j["grid"].is_object() || j["grid"].empty())
        throw PlanInvalid("campaign for '" + id.id + "' needs a non-empty \"grid\" object");
    const Json& grid = j["grid"];
    for (const auto& [name, _] : grid.items()) {
        const bool known =
            std::any_of(id.params.begin(), id.params.end(), [&](const ParamSpec& p) { return p.name == name; });
        if (!known) throw PlanInvalid("identity '" + id.id + "' has no parameter '" + name + "'");
    }
    for (const auto& spec : id.params) {
        if (grid.contains(spec.name))
            c.grid.push_back(GridAxis{spec.name, axis_values(spec, grid[spec.name])});
        else
            c.grid.push_back(GridAxis{spec.name, {spec.fallback}});
    }

    if (!j.contains("q")) throw PlanInvalid("campaign needs \"q\"");
    if (j["q"].is_number()) {
        c.q_values.push_back(j["q"].get<double>());
    } else if (j["q"].is_array()) {
        for (const auto& e : j["q"]) {
            if (!e.is_number()) throw PlanInvalid("q values must be numbers");
            c.q_values.push_back(e.get<double>());
        }
    } else {
        throw PlanInvalid("\"q\" must be a number or a list of numbers");
    }
    if (c.q_values.empty()) throw PlanInvalid("q list is empty");
    for (double q : c.q_values)
        if (!(q > 0 && q < 1)) throw PlanInvalid("q must lie in (0, 1)");

    c.tol = j.contains("tol") ? number(j, "tol") : id.default_tol;
    if (j.contains("precision")) c.settings.precision = static_cast<int>(number(j, "precision"));

    TruncationPolicy& pol = c.settings.policy;
    if (j.contains("truncation")) {
        const Json& t = j["truncation"];
        if (!t.is_object()) throw PlanInvalid("\"truncation\" must be an object");
        if (t.contains("max_terms")) pol.max_terms = static_cast<long>(number(t, "max_terms"));
        if (t.contains("tail_tol")) pol.tail_tol = number(t, "tail_tol");
        if (t.contains("adaptive")) {
            if (!t["adaptive"].is_boolean()) throw PlanInvalid("\"adaptive\" must be a boolean");
            pol.adaptive = t["adaptive"].get<bool>();
        }
        if (t.contains("window")) {
            const Json& w = t["window"];
            if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer())
                throw PlanInvalid("\"window\" must be [lo, hi] with integer ends");
            pol.lo = w[0].get<long>();
            pol.hi = w[1].get<long>();
        }
    }

    if (o.tol) c.tol = *o.tol;
    if (o.precision) c.settings.precision = *o.precision;
    if (o.max_terms) pol.max_terms = *o.max_terms;
    if (o.window) {
        pol.lo = o.window->first;
        pol.hi = o.window->second;
        pol.adaptive = false;
    }

    if (!(c.tol >= 0)) throw PlanInvalid("tolerance must be non-negative");
    if (c.settings.precision < 1) throw PlanInvalid("precision must be positive");
    try {
        pol.validate();
    } catch (const QError& e) {
        throw PlanInvalid(std::string("truncation policy: ") + e.what());
    }
    return c;
}

struct Job {
    const Campaign* campaign;
    double q;
    Assignment params;
};

std::vector<Job> expand(const CampaignPlan& plan) {
    std::vector<Job> jobs;
    for (const auto& c : plan.campaigns) {
        for (double q : c.q_values) {
            std::vector<std::size_t> idx(c.grid.size(), 0);
            for (bool done = false; !done;) {
                Assignment a;
                for (std::size_t i = 0; i < c.grid.size(); ++i) a.emplace_back(c.grid[i].name, c.grid[i].values[idx[i]]);
                jobs.push_back(Job{&c, q, std::move(a)});
                done = true;
                for (std::size_t i = c.grid.size(); i-- > 0;) {
                    if (++idx[i] < c.grid[i].values.size()) {
                        done = false;
                        break;
                    }
                    idx[i] = 0;
                }
            }
        }
    }
    return jobs;
}

}  // namespace

Json CaseResult::to_json(bool with_time) const {
    Json p = Json::object();
    for (const auto& [k, v] : params) {
        if (v == std::round(v) && std::abs(v) < 1e15)
            p[k] = static_cast<long>(v);
        else
            p[k] = v;
    }
    Json j{{"identity", identity},
           {"params", p},
           {"q", q},
           {"tol", tol},
           {"residual", number_or_null(residual)},
           {"est_error", number_or_null(est_error)},
           {"converged", converged},
           {"pass", pass},
           {"error", error.empty() ? Json(nullptr) : Json(error)},
           {"detail", detail}};
    if (with_time) j["wall_ms"] = wall_ms;
    return j;
}

std::size_t Campaign::size() const {
    std::size_t n = q_values.size();
    for (const auto& a : grid) n *= a.values.size();
    return n;
}

CampaignPlan parse_plan(const Json& j, const Overrides& o) {
    CampaignPlan plan;
    if (j.is_object() && j.contains("campaigns")) {
        if (!j["campaigns"].is_array() || j["campaigns"].empty())
            throw PlanInvalid("\"campaigns\" must be a non-empty list");
        for (const auto& c : j["campaigns"]) plan.campaigns.push_back(parse_campaign(c, o));
    } else {
        plan.campaigns.push_back(parse_campaign(j, o));
    }
    return plan;
}

CampaignPlan load_plan(const std::string& path, const Overrides& o) {
    std::ifstream in(path);
    if (!in) throw PlanInvalid("cannot open plan file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw PlanInvalid(std::string("plan is not valid JSON: ") + e.what());
    }
    return parse_plan(j, o);
}

CaseResult eval_single(const std::string& identity, const Assignment& params, const EvalSettings& settings,
                       double tol) {
    const Identity& id = find_identity(identity);
    if (!(settings.q > 0 && settings.q < 1)) throw PlanInvalid("q must lie in (0, 1)");

    std::map<std::string, double> values;
    for (const auto& spec : id.params) values[spec.name] = spec.fallback;
    for (const auto& [k, v] : params) {
        auto it = values.find(k);
        if (it == values.end()) throw PlanInvalid("identity '" + identity + "' has no parameter '" + k + "'");
        it->second = v;
    }

    CaseResult r;
    r.identity = identity;
    for (const auto& spec : id.params) r.params.emplace_back(spec.name, values[spec.name]);
    r.q = settings.q;
    r.tol = tol;

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome o = id.eval(values, settings);
        r.residual = o.residual;
        r.est_error = o.est_error;
        r.converged = o.converged;
        r.detail = o.detail;
        r.pass = std::isfinite(o.residual) && o.residual < tol && o.converged;
    } catch (const std::exception& e) {
        r.residual = std::numeric_limits<double>::quiet_NaN();
        r.converged = false;
        r.pass = false;
        r.error = e.what();
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

Json Summary::to_json() const {
    auto entry = [](const Entry& e) {
        return Json{{"total", e.total}, {"passed", e.passed}, {"failed", e.failed}, {"max_residual", e.max_residual}};
    };
    Json j = entry(all);
    Json b = Json::object();
    for (const auto& [id, e] : by_identity) b[id] = entry(e);
    j["identity_breakdown"] = b;
    return j;
}

Report run_campaign(const CampaignPlan& plan, int jobs) {
    const auto work = expand(plan);
    Report rep;
    rep.cases.resize(work.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < work.size();) {
            const Job& jb = work[i];
            EvalSettings s = jb.campaign->settings;
            s.q = jb.q;
            rep.cases[i] = eval_single(jb.campaign->identity, jb.params, s, jb.campaign->tol);
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(work.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& c : rep.cases) {
        for (Summary::Entry* e : {&rep.summary.all, &rep.summary.by_identity[c.identity]}) {
            ++e->total;
            ++(c.pass ? e->passed : e->failed);
            // A case without a residual counts as infinitely bad.
            const double res = std::isfinite(c.residual) ? c.residual : std::numeric_limits<double>::infinity();
            e->max_residual = std::max(e->max_residual, res);
        }
    }
    return rep;
}

void write_report(std::ostream& out, const Report& r, bool with_time) {
    for (const auto& c : r.cases) out << c.to_json(with_time).dump() << '\n';
    // Non-finite numbers are written as null.
    const Json s = r.summary.to_json();
    out << s.dump() << '\n';
}

}  // namespace qb::verify
