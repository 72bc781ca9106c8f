#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <mutex>
#include <set>

#include "rgf/axioms.hpp"
#include "rgf/engine.hpp"

using namespace rgf;

namespace {

std::vector<Alt> alpha(int m) {
    std::vector<Alt> order(m);
    for (int a = 0; a < m; ++a) order[a] = Alt(a);
    return order;
}

RuleSpec a_borda(int n, int m) {
    return RuleSpec(n, m, ScoringSpec{ScoreVector::borda(m), TieBreak::fixed_order(alpha(m))});
}

}  // namespace

TEST_CASE("encode and decode are inverse bijections") {
    const ProfileEnumeration space(2, 3);
    for (std::uint64_t code = 0; code < space.size(); ++code)
        CHECK(encode(decode(2, 3, code)) == code);
    // the all-first-preference profile encodes to 0
    const Profile first(3, std::vector<Preference>(2, Preference({0, 1, 2})));
    CHECK(encode(first) == 0);
    // injectivity over the 216 profiles at (3,3)
    std::set<std::uint64_t> seen;
    for (const Profile& p : enumerate_profiles(3, 3)) seen.insert(encode(p));
    CHECK(seen.size() == 216);
}

TEST_CASE("outcome tables agree with direct evaluation") {
    const RuleSpec rule = a_borda(2, 3);
    const OutcomeTable table = build_outcome_table(rule);
    REQUIRE(table.outcomes.size() == 36);
    for (std::uint8_t v : table.outcomes) CHECK(v < 3);
    // a unanimous profile maps to its top
    const Profile unanimous(3, std::vector<Preference>(2, Preference({1, 0, 2})));
    CHECK(table.at(encode(unanimous)) == 1);

    const RuleSpec rule33 = a_borda(3, 3);
    const OutcomeTable t33 = build_outcome_table(rule33);
    const ProfileEnumeration space(3, 3);
    for (std::uint64_t code = 0; code < space.size(); ++code)
        CHECK(t33.at(code) == evaluate(rule33, space.at(code)));
}

TEST_CASE("outcome table respects the memory budget") {
    EngineOptions opts;
    opts.table_budget = 10;
    CHECK_THROWS_AS(build_outcome_table(a_borda(2, 3), opts), SpaceTooLargeError);
}

TEST_CASE("table cache round trips and invalidates on rule mismatch") {
    const RuleSpec rule = a_borda(2, 3);
    const OutcomeTable table = build_outcome_table(rule);
    const std::string path = "rgf_test_table.bin";
    save_outcome_table(table, path);
    const auto loaded = load_outcome_table(rule, path);
    REQUIRE(loaded.has_value());
    CHECK(loaded->outcomes == table.outcomes);
    // a different rule invalidates the cache via the spec hash
    const RuleSpec other(2, 3, ScoringSpec{ScoreVector::plurality(3),
                                           TieBreak::fixed_order(alpha(3))});
    CHECK_FALSE(load_outcome_table(other, path).has_value());
    CHECK_FALSE(load_outcome_table(rule, "missing_file.bin").has_value());
    std::remove(path.c_str());
}

TEST_CASE("evaluator falls back to direct evaluation") {
    EngineOptions opts;
    opts.disable_table = true;
    const Evaluator direct(a_borda(2, 3), opts);
    const Evaluator tabled(a_borda(2, 3));
    CHECK_FALSE(direct.table_backed());
    CHECK(tabled.table_backed());
    for (std::uint64_t code = 0; code < 36; ++code) CHECK(direct(code) == tabled(code));
}

TEST_CASE("sampled profiles are deterministic and uniform") {
    const auto a = sampled_profile_codes(2, 3, 100, 42);
    const auto b = sampled_profile_codes(2, 3, 100, 42);
    CHECK(a == b);
    CHECK(sampled_profile_codes(2, 3, 100, 43) != a);
    CHECK(sampled_profile_codes(2, 3, 0, 1).empty());

    // chi-square sanity: 60k single-agent draws at m=3, each ranking ~10k
    const auto draws = sampled_profile_codes(1, 3, 60000, 1234);
    int counts[6] = {0, 0, 0, 0, 0, 0};
    for (std::uint64_t code : draws) ++counts[code];
    for (int c : counts) {
        CHECK(c > 9500);
        CHECK(c < 10500);
    }

    const auto profiles = sampled_profiles(2, 3, 5, 7);
    CHECK(profiles.size() == 5);
    for (const Profile& p : profiles) CHECK(encode(p) == sampled_profile_codes(2, 3, 5, 7)[&p - profiles.data()]);
}

TEST_CASE("parallel_chunks covers the range exactly once") {
    for (int workers : {1, 2, 5}) {
        std::vector<int> hits(1000, 0);
        std::mutex mu;
        parallel_chunks(1000, workers, [&](std::uint64_t b, std::uint64_t e) {
            std::lock_guard<std::mutex> lock(mu);
            for (std::uint64_t i = b; i < e; ++i) ++hits[i];
        });
        for (int h : hits) CHECK(h == 1);
    }
}

TEST_CASE("verdicts and witnesses are identical across backends and workers") {
    const std::vector<RuleSpec> rules = {
        a_borda(2, 3),
        RuleSpec(2, 3, MaxminSpec{TieBreak::fixed_order(alpha(3))}),
        RuleSpec(2, 3, CondorcetSpec{CondorcetVariant::Simpson, TieBreak::by_agent(1)}),
        RuleSpec(2, 3, SuccessiveEliminationSpec{alpha(3)}),
    };
    for (const RuleSpec& rule : rules)
        for (Axiom axiom : {Axiom::StrategyProof, Axiom::RegretFree, Axiom::Anonymous}) {
            EngineOptions base;
            base.workers = 1;
            const Verdict reference = check_axiom(rule, axiom, Mode::exhaustive(), base);
            for (int workers : {2, 4}) {
                for (bool disable_table : {false, true}) {
                    EngineOptions opts;
                    opts.workers = workers;
                    opts.disable_table = disable_table;
                    const Verdict v = check_axiom(rule, axiom, Mode::exhaustive(), opts);
                    CHECK(v.violated == reference.violated);
                    if (reference.witness) {
                        REQUIRE(v.witness.has_value());
                        const auto* rw = std::get_if<DeviationWitness>(&reference.witness->body);
                        const auto* vw = std::get_if<DeviationWitness>(&v.witness->body);
                        if (rw && vw) {
                            CHECK(rw->profile == vw->profile);
                            CHECK(rw->agent == vw->agent);
                            CHECK(rw->misreport == vw->misreport);
                        }
                    }
                }
            }
        }
}
