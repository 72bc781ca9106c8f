// rgf: tally elections, check axioms, reproduce the claims catalog, and
// manage witness files and outcome-table caches.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "rgf/repro.hpp"
#include "rgf/textio.hpp"

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitViolated = 10;
constexpr int kExitError = 2;

int resolve_workers(int flag_value) {
    if (const char* env = std::getenv("RGF_WORKERS")) {
        try {
            return std::max(0, std::stoi(env));
        } catch (const std::exception&) {
            throw rgf::DomainError("RGF_WORKERS must be an integer");
        }
    }
    return flag_value;
}

rgf::Mode parse_mode(const std::string& text) {
    if (text.empty() || text == "exhaustive") return rgf::Mode::exhaustive();
    if (text.rfind("sample:", 0) == 0) {
        const std::string rest = text.substr(7);
        const size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw rgf::DomainError("sample mode wants sample:COUNT:SEED");
        return rgf::Mode::sampled(std::stoull(rest.substr(0, colon)),
                                  std::stoull(rest.substr(colon + 1)));
    }
    throw rgf::DomainError("unknown mode '" + text + "' (want exhaustive or sample:COUNT:SEED)");
}

std::string label_of(rgf::Alt a, const std::vector<std::string>& labels) {
    return a < labels.size() ? labels[a] : rgf::default_label(a);
}

void explain_tally(const rgf::RuleSpec& spec, const rgf::Profile& profile,
                   const std::vector<std::string>& labels) {
    using namespace rgf;
    std::string stage;
    const std::vector<Alt> winners = first_stage_winners(spec, profile, &stage);
    if (const auto* s = spec.as<MaxminSpec>()) {
        (void)s;
        for (Alt x = 0; x < profile.m; ++x)
            std::cout << "  mp(" << label_of(x, labels)
                      << ") = " << minimal_position(profile, x) << "\n";
    } else if (const auto* s2 = spec.as<ScoringSpec>()) {
        for (Alt x = 0; x < profile.m; ++x) {
            const Rational r = score(profile, x, s2->scores);
            std::cout << "  score(" << label_of(x, labels) << ") = " << r.numerator();
            if (r.denominator() != 1) std::cout << "/" << r.denominator();
            std::cout << "\n";
        }
    } else if (const auto* s3 = spec.as<CondorcetSpec>()) {
        if (auto cw = condorcet_winner(profile))
            std::cout << "  condorcet winner: " << label_of(*cw, labels) << "\n";
        else
            std::cout << "  no condorcet winner\n";
        for (Alt x = 0; x < profile.m; ++x) {
            switch (s3->variant) {
                case CondorcetVariant::Simpson:
                    std::cout << "  simpson(" << label_of(x, labels)
                              << ") = " << simpson_score(profile, x) << "\n";
                    break;
                case CondorcetVariant::Copeland:
                    std::cout << "  copeland(" << label_of(x, labels)
                              << ") = " << copeland_score(profile, x) << "\n";
                    break;
                case CondorcetVariant::Young:
                    std::cout << "  young(" << label_of(x, labels)
                              << ") = " << young_score(profile, x) << "\n";
                    break;
                case CondorcetVariant::Dodgson:
                    std::cout << "  dodgson(" << label_of(x, labels)
                              << ") = " << dodgson_score(profile, x) << "\n";
                    break;
                default:
                    break;
            }
        }
    } else if (const auto* s4 = spec.as<SuccessiveEliminationSpec>()) {
        const PairwiseTally t = pairwise_tally(profile);
        Alt survivor = s4->agenda[0];
        std::vector<int> pos(profile.m);
        for (size_t i = 0; i < s4->agenda.size(); ++i) pos[s4->agenda[i]] = int(i);
        for (size_t round = 1; round < s4->agenda.size(); ++round) {
            const Alt ch = s4->agenda[round];
            const int fw = t.count(survivor, ch), bw = t.count(ch, survivor);
            const Alt next =
                bw > fw ? ch : (bw == fw && pos[ch] < pos[survivor] ? ch : survivor);
            std::cout << "  round " << round << ": " << label_of(survivor, labels) << " vs "
                      << label_of(ch, labels) << " (" << fw << ":" << bw << ") -> "
                      << label_of(next, labels) << "\n";
            survivor = next;
        }
    } else if (spec.as<Remark4x3Spec>()) {
        if (auto cw = condorcet_winner(profile))
            std::cout << "  condorcet winner: " << label_of(*cw, labels) << "\n";
        for (Alt x = 0; x < profile.m; ++x)
            std::cout << "  bottom(" << label_of(x, labels)
                      << ") = " << bottom_count(profile, x) << "\n";
    }
    std::cout << "  " << stage << ": {";
    for (size_t i = 0; i < winners.size(); ++i)
        std::cout << (i ? "," : "") << label_of(winners[i], labels);
    std::cout << "}\n";
}

int cmd_tally(const std::string& rule_path, const std::string& profile_path, bool explain) {
    const rgf::NamedProfile np = rgf::parse_profile(rgf::read_file(profile_path));
    const rgf::RuleSpec spec = rgf::parse_rule_config(
        rgf::read_file(rule_path), np.profile.n(), np.profile.m, np.labels);
    const rgf::Alt winner = rgf::evaluate(spec, np.profile);
    if (explain) explain_tally(spec, np.profile, np.labels);
    std::cout << label_of(winner, np.labels) << "\n";
    return kExitHolds;
}

int cmd_axiom(const std::string& rule_path, const std::string& axiom_name_str, int n, int m,
              const std::string& mode_str, const std::string& json_out, int workers) {
    const std::vector<std::string> labels = rgf::default_labels(m);
    const rgf::RuleSpec spec =
        rgf::parse_rule_config(rgf::read_file(rule_path), n, m, labels);
    const rgf::Axiom axiom = rgf::axiom_from_name(axiom_name_str);
    rgf::EngineOptions opts;
    opts.workers = workers;
    const rgf::Verdict verdict = rgf::check_axiom(spec, axiom, parse_mode(mode_str), opts);
    std::cout << axiom_name(axiom) << " " << (verdict.violated ? "VIOLATED" : "HOLDS")
              << " [" << verdict.coverage.to_string() << "]";
    if (verdict.dictator) std::cout << " dictator=" << *verdict.dictator;
    std::cout << "\n";
    if (!json_out.empty())
        rgf::write_file(json_out, rgf::verdict_to_json(spec, axiom, verdict, labels));
    return verdict.violated ? kExitViolated : kExitHolds;
}

int cmd_recheck(const std::string& witness_path, int workers) {
    const rgf::ParsedWitness pw = rgf::witness_from_json(rgf::read_file(witness_path));
    rgf::EngineOptions opts;
    opts.workers = workers;
    const bool valid = rgf::recheck(pw.spec, pw.witness, opts);
    std::cout << "witness " << (valid ? "VALID" : "INVALID") << "\n";
    return valid ? kExitHolds : kExitViolated;
}

void print_result(const rgf::ScenarioResult& r) {
    std::cout << r.id << ": " << (r.match ? "MATCH" : "MISMATCH") << " (expected "
              << (r.expect_violated ? "violated" : "holds") << ", got "
              << (r.got_violated ? "violated" : "holds") << ", " << r.coverage << ", ";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", r.elapsed_ms);
    std::cout << buf << " ms)\n";
}

int cmd_reproduce(const std::string& scenario_id, bool all, const std::string& report_path,
                  const std::string& json_path, int workers) {
    rgf::EngineOptions opts;
    opts.workers = workers;
    if (!all) {
        const rgf::ScenarioResult r = rgf::run_scenario(scenario_id, opts);
        print_result(r);
        return r.match ? kExitHolds : kExitViolated;
    }
    std::vector<rgf::ScenarioResult> results;
    bool ok = true;
    for (const rgf::Scenario& s : rgf::scenario_catalog()) {
        results.push_back(rgf::run_scenario(s, opts));
        print_result(results.back());
        ok = ok && results.back().match;
    }
    std::cout << "\n" << rgf::summary_to_text(rgf::summary_table(results));
    std::cout << (ok ? "ALL MATCH" : "MISMATCHES PRESENT") << " (" << results.size()
              << " scenarios)\n";
    if (!report_path.empty()) rgf::write_file(report_path, rgf::report_to_tsv(results));
    if (!json_path.empty()) rgf::write_file(json_path, rgf::report_to_json(results));
    return ok ? kExitHolds : kExitViolated;
}

int cmd_table(const std::string& action, const std::string& rule_path, int n, int m,
              const std::string& file, int workers) {
    const std::vector<std::string> labels = rgf::default_labels(m);
    const rgf::RuleSpec spec =
        rgf::parse_rule_config(rgf::read_file(rule_path), n, m, labels);
    rgf::EngineOptions opts;
    opts.workers = workers;
    if (action == "build") {
        const rgf::OutcomeTable table = rgf::build_outcome_table(spec, opts);
        rgf::save_outcome_table(table, file);
        std::cout << "table written: " << table.outcomes.size() << " entries\n";
        return kExitHolds;
    }
    if (action == "verify") {
        const auto cached = rgf::load_outcome_table(spec, file);
        if (!cached) {
            std::cout << "table INVALID (missing, corrupt, or rule hash mismatch)\n";
            return kExitViolated;
        }
        const rgf::OutcomeTable fresh = rgf::build_outcome_table(spec, opts);
        const bool same = fresh.outcomes == cached->outcomes;
        std::cout << "table " << (same ? "VALID" : "STALE") << " ("
                  << cached->outcomes.size() << " entries)\n";
        return same ? kExitHolds : kExitViolated;
    }
    throw rgf::DomainError("table action must be build or verify");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"voting rules, axiom checks and the claims catalog"};
    app.require_subcommand(1);

    std::string rule_path, profile_path, axiom_str, mode_str = "exhaustive";
    std::string json_out, witness_path, scenario_id, report_path, table_file, table_action;
    int n = 0, m = 0, workers = 0;
    bool explain = false, all = false;

    CLI::App* tally = app.add_subcommand("tally", "evaluate a rule on a profile");
    tally->add_option("--rule", rule_path, "rule config file")->required();
    tally->add_option("--profile", profile_path, "profile file")->required();
    tally->add_flag("--explain", explain, "print intermediate winner sets");

    CLI::App* axiom = app.add_subcommand("axiom", "check an axiom or recheck a witness");
    axiom->add_option("--rule", rule_path, "rule config file");
    axiom->add_option("--axiom", axiom_str, "axiom name");
    axiom->add_option("--n", n, "agent count");
    axiom->add_option("--m", m, "alternative count");
    axiom->add_option("--mode", mode_str, "exhaustive | sample:COUNT:SEED");
    axiom->add_option("--json", json_out, "write the verdict (and witness) as JSON");
    axiom->add_option("--recheck", witness_path, "validate a witness JSON file");
    axiom->add_option("--workers", workers, "worker threads (0 = auto)");

    CLI::App* reproduce = app.add_subcommand("reproduce", "run the claims catalog");
    reproduce->add_option("--scenario", scenario_id, "scenario id");
    reproduce->add_flag("--all", all, "run every scenario");
    reproduce->add_option("--report", report_path, "write a TSV report");
    reproduce->add_option("--json", json_out, "write a JSON report");
    reproduce->add_option("--workers", workers, "worker threads (0 = auto)");

    CLI::App* table = app.add_subcommand("table", "build or verify an outcome-table cache");
    table->add_option("action", table_action, "build | verify")->required();
    table->add_option("--rule", rule_path, "rule config file")->required();
    table->add_option("--n", n, "agent count")->required();
    table->add_option("--m", m, "alternative count")->required();
    table->add_option("--file", table_file, "cache file path")->required();
    table->add_option("--workers", workers, "worker threads (0 = auto)");

    CLI11_PARSE(app, argc, argv);

    try {
        workers = resolve_workers(workers);
        if (tally->parsed()) return cmd_tally(rule_path, profile_path, explain);
        if (axiom->parsed()) {
            if (!witness_path.empty()) return cmd_recheck(witness_path, workers);
            if (rule_path.empty() || axiom_str.empty() || n <= 0 || m <= 0)
                throw rgf::DomainError(
                    "axiom needs --rule, --axiom, --n and --m (or --recheck FILE)");
            return cmd_axiom(rule_path, axiom_str, n, m, mode_str, json_out, workers);
        }
        if (reproduce->parsed()) {
            if (!all && scenario_id.empty())
                throw rgf::DomainError("reproduce needs --scenario ID or --all");
            return cmd_reproduce(scenario_id, all, report_path, json_out, workers);
        }
        if (table->parsed())
            return cmd_table(table_action, rule_path, n, m, table_file, workers);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
