#pragma once

// The claims catalog: every reference result ships as a scenario pairing a
// rule with an axiom, a scope, a run mode and the expected verdict. The
// harness runs scenarios individually or as a full report.

#include <optional>
#include <string>
#include <vector>

#include "rgf/axioms.hpp"

namespace rgf {

struct Scenario {
    enum class Kind {
        Exhaustive,  // full scan of the (n, m) profile space
        Sampled,     // seeded outer sampling; inner quantifiers stay complete
        Directed,    // recheck a concrete embedded witness, never a search
        Implication, // regret-free => strategy-proof over seeded tops-only rules
    };

    std::string id;
    RuleSpec spec;
    Axiom axiom = Axiom::RegretFree;
    Kind kind = Kind::Exhaustive;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    bool expect_violated = false;
    std::optional<Witness> directed;
    std::string claim;

    std::string mode_string() const;
};

const std::vector<Scenario>& scenario_catalog();
const Scenario& find_scenario(const std::string& id);

struct ScenarioResult {
    std::string id;
    std::string rule;
    std::string axiom;
    int n = 0, m = 0;
    std::string mode;
    bool expect_violated = false;
    bool got_violated = false;
    bool match = false;
    std::string coverage;
    double elapsed_ms = 0.0;
};

ScenarioResult run_scenario(const Scenario& scenario, const EngineOptions& opts = {});
ScenarioResult run_scenario(const std::string& id, const EngineOptions& opts = {});
std::vector<ScenarioResult> run_all_scenarios(const EngineOptions& opts = {});

// Representative rules at a scope; used for cross-checking engine backends
// and the strategy-proof => regret-free containment.
std::vector<RuleSpec> rule_catalog(int n, int m);

struct SummaryRow {
    std::string family;
    std::string condition;
    std::string claim;
    std::vector<std::string> scenario_ids;
    int confirmed = 0;   // matching scenarios
    int total = 0;       // scenarios backing the row
    std::string status;  // CONFIRMED / MISMATCH / NOT RUN
};

std::vector<SummaryRow> summary_table(const std::vector<ScenarioResult>& results);

std::string report_to_tsv(const std::vector<ScenarioResult>& results);
std::string report_to_json(const std::vector<ScenarioResult>& results);
std::string summary_to_text(const std::vector<SummaryRow>& rows);

}  // namespace rgf
