#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rgf/repro.hpp"

using namespace rgf;

TEST_CASE("catalog shape") {
    const auto& catalog = scenario_catalog();
    CHECK(catalog.size() >= 40);
    std::set<std::string> ids;
    for (const Scenario& s : catalog) {
        CHECK(ids.insert(s.id).second);
        CHECK_NOTHROW(s.spec.validate());
        CHECK_FALSE(s.claim.empty());
        if (s.kind == Scenario::Kind::Directed) CHECK(s.directed.has_value());
    }
    CHECK(find_scenario("T1-neg-2x4").expect_violated);
    CHECK_FALSE(find_scenario("Remark-4x3").expect_violated);
    CHECK_FALSE(find_scenario("T1-pos-3x4").expect_violated);
    CHECK(find_scenario("T8-directed").kind == Scenario::Kind::Directed);
    CHECK_THROWS_AS(find_scenario("T0-unknown"), DomainError);
}

TEST_CASE("selected scenarios run and match") {
    for (const char* id :
         {"T8-directed", "T1-pos-2x3", "T1-neg-2x4", "T3-directed-borda", "T5-directed",
          "T6-directed-simpson", "T7-se-neutral", "T9-maxtop-rftt", "Remark-4x3",
          "C1-emv-majority-sp-3x2"}) {
        const ScenarioResult r = run_scenario(id);
        CHECK_MESSAGE(r.match, id << ": expected " << r.expect_violated << " got "
                                  << r.got_violated);
        CHECK(r.elapsed_ms >= 0.0);
    }
}

TEST_CASE("directed scenarios never search") {
    const Scenario& s = find_scenario("T8-directed");
    CHECK(s.mode_string() == "directed");
    const ScenarioResult r = run_scenario(s);
    CHECK(r.coverage == "directed");
    CHECK(r.match);
}

TEST_CASE("rule catalog is valid per scope") {
    for (auto [n, m] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{4, 3}, std::pair{3, 2}}) {
        const auto rules = rule_catalog(n, m);
        CHECK(rules.size() >= 10);
        std::set<std::string> names;
        for (const RuleSpec& r : rules) {
            CHECK(r.n == n);
            CHECK(r.m == m);
            CHECK_NOTHROW(r.validate());
            CHECK(names.insert(r.canonical()).second);
        }
    }
    // scope-locked families appear exactly where they are defined
    bool has_remark = false;
    for (const RuleSpec& r : rule_catalog(4, 3)) has_remark |= bool(r.as<Remark4x3Spec>());
    CHECK(has_remark);
    for (const RuleSpec& r : rule_catalog(3, 3)) CHECK_FALSE(r.as<Remark4x3Spec>());
}

TEST_CASE("summary table aggregates scenario results") {
    std::vector<ScenarioResult> results;
    results.push_back(run_scenario("T1-pos-2x3"));
    results.push_back(run_scenario("T1-neg-2x4"));
    const auto rows = summary_table(results);
    REQUIRE_FALSE(rows.empty());
    bool found = false;
    for (const SummaryRow& row : rows)
        if (row.family == "A-maxmin") {
            found = true;
            CHECK(row.total == 5);
            CHECK(row.confirmed == 2);
            CHECK(row.status == "PARTIAL");
        }
    CHECK(found);

    const std::string tsv = report_to_tsv(results);
    CHECK(tsv.find("T1-neg-2x4") != std::string::npos);
    CHECK(tsv.find("violated") != std::string::npos);
    const std::string json = report_to_json(results);
    CHECK(json.find("\"version\": \"rgf/1\"") != std::string::npos);
}
