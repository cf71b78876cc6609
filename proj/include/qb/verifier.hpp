#pragma once

// Campaign engine: named identities, parameter grids, JSON plans and
// JSON-lines reports.

#include "qb/askey_wilson.hpp"

#include <json.hpp>

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qb::verify {

using Json = nlohmann::ordered_json;

// Parameter values are stored as doubles; integer parameters must hold
// integral values.
using Assignment = std::vector<std::pair<std::string, double>>;

struct ParamSpec {
    std::string name;
    double fallback = 0;
    bool integer = true;
};

struct EvalSettings {
    double q = 0.5;
    int precision = 30;
    TruncationPolicy policy;
};

struct Outcome {
    double residual = 0;
    double est_error = 0;
    bool converged = true;
    Json detail = Json::object();
};

struct Identity {
    std::string id;
    std::string statement;       // what is compared, in formula form
    std::string residual_kind;   // "absolute" or "relative"
    double default_tol = 1e-8;
    std::vector<ParamSpec> params;
    std::function<Outcome(const std::map<std::string, double>&, const EvalSettings&)> eval;
};

// All identities, in a fixed order.
const std::vector<Identity>& registry();
// Throws PlanInvalid for an unknown id.
const Identity& find_identity(const std::string& id);

// pass is residual < tol and converged. The comparison is strict, so a zero
// tolerance fails every case.
struct CaseResult {
    std::string identity;
    Assignment params;
    double q = 0;
    double tol = 0;
    double residual = 0;
    double est_error = 0;
    bool converged = false;
    bool pass = false;
    std::string error;  // empty unless evaluation threw
    Json detail = Json::object();
    double wall_ms = 0;

    Json to_json(bool with_time = true) const;
};

struct GridAxis {
    std::string name;
    std::vector<double> values;
};

struct Campaign {
    std::string identity;
    std::vector<GridAxis> grid;  // in the identity's parameter order
    std::vector<double> q_values;
    double tol = 0;
    EvalSettings settings;

    // Grid points in row-major order (last axis fastest), q outermost.
    std::size_t size() const;
};

struct CampaignPlan {
    std::vector<Campaign> campaigns;
};

// Overrides applied on top of a plan (command-line flags).
struct Overrides {
    std::optional<double> tol;
    std::optional<long> max_terms;
    std::optional<std::pair<long, long>> window;
    std::optional<int> precision;
};

// Accepts one campaign object or {"campaigns": [...]}. A campaign object has
//   "identity": id,
//   "grid": {name: [lo, hi] | {"values": [...]} | number, ...}  (non-empty),
//   "q": number or [numbers],
//   optional "tol", "precision",
//   optional "truncation": {"max_terms", "tail_tol", "window": [lo, hi], "adaptive"}.
// Throws PlanInvalid.
CampaignPlan parse_plan(const Json& j, const Overrides& o = {});
CampaignPlan load_plan(const std::string& path, const Overrides& o = {});

CaseResult eval_single(const std::string& identity, const Assignment& params, const EvalSettings& settings,
                       double tol);

struct Summary {
    struct Entry {
        long total = 0, passed = 0, failed = 0;
        double max_residual = 0;
    };
    Entry all;
    std::map<std::string, Entry> by_identity;
    Json to_json() const;
};

struct Report {
    std::vector<CaseResult> cases;
    Summary summary;
    bool all_passed() const { return summary.all.failed == 0; }
};

// Evaluates every case on `jobs` worker threads. Results keep plan order.
Report run_campaign(const CampaignPlan& plan, int jobs = 1);

// JSON lines: one per case, then the summary object.
void write_report(std::ostream& out, const Report& r, bool with_time = true);

}  // namespace qb::verify
