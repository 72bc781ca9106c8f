#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "rgf/axioms.hpp"
#include "rgf/repro.hpp"

using namespace rgf;

namespace {

Preference pr(const std::string& s) {
    std::vector<Alt> order;
    for (char c : s)
        if (c != '>') order.push_back(Alt(c - 'a'));
    return Preference(order);
}

Profile prof(int m, const std::vector<std::string>& rows) {
    std::vector<Preference> prefs;
    for (const auto& r : rows) prefs.push_back(pr(r));
    return Profile(m, std::move(prefs));
}

std::vector<Alt> alpha(int m) {
    std::vector<Alt> order(m);
    for (int a = 0; a < m; ++a) order[a] = Alt(a);
    return order;
}

RuleSpec a_scoring(int n, int m, ScoreVector sv) {
    return RuleSpec(n, m, ScoringSpec{std::move(sv), TieBreak::fixed_order(alpha(m))});
}
RuleSpec a_maxmin(int n, int m) {
    return RuleSpec(n, m, MaxminSpec{TieBreak::fixed_order(alpha(m))});
}
RuleSpec n_maxmin(int n, int m) {
    return RuleSpec(n, m, MaxminSpec{TieBreak::by_agent(1)});
}

const Alt A = 0, B = 1, C = 2;

}  // namespace

TEST_CASE("strategy-proofness") {
    CHECK(check_strategy_proof(RuleSpec(3, 3, DictatorshipSpec{2}), Mode::exhaustive())
              .holds());
    const RuleSpec emv(3, 2, ExtendedMajoritySpec{Committee::majority(3), 0, 1});
    CHECK(check_strategy_proof(emv, Mode::exhaustive()).holds());
    const Verdict v = check_strategy_proof(a_scoring(2, 3, ScoreVector::borda(3)),
                                           Mode::exhaustive());
    REQUIRE(v.violated);
    REQUIRE(v.witness.has_value());
    CHECK(recheck(a_scoring(2, 3, ScoreVector::borda(3)), *v.witness));
}

TEST_CASE("regret-free truth-telling") {
    CHECK(check_regret_free(n_maxmin(2, 3), Mode::exhaustive()).holds());
    CHECK(check_regret_free(RuleSpec(3, 3, DictatorshipSpec{1}), Mode::exhaustive())
              .holds());
    const Verdict v = check_regret_free(a_maxmin(2, 4), Mode::exhaustive());
    REQUIRE(v.violated);
    REQUIRE(v.witness.has_value());
    CHECK(recheck(a_maxmin(2, 4), *v.witness));

    // a tampered witness (misreport replaced by the truthful report) fails
    Witness tampered = *v.witness;
    auto& d = std::get<DeviationWitness>(tampered.body);
    d.misreport = d.profile.agent(d.agent);
    CHECK_FALSE(recheck(a_maxmin(2, 4), tampered));
}

TEST_CASE("regret-free witnesses are the first in enumeration order") {
    const Verdict v = check_regret_free(a_maxmin(2, 4), Mode::exhaustive());
    const auto& w = std::get<DeviationWitness>(v.witness->body);
    const std::uint64_t code = encode(w.profile);
    // nothing earlier: rerunning from scratch with a single worker agrees
    EngineOptions opts;
    opts.workers = 1;
    const Verdict v1 = check_regret_free(a_maxmin(2, 4), Mode::exhaustive(), opts);
    const auto& w1 = std::get<DeviationWitness>(v1.witness->body);
    CHECK(encode(w1.profile) == code);
    CHECK(w1.agent == w.agent);
    CHECK(w1.misreport == w.misreport);
}

TEST_CASE("tops-only") {
    const RuleSpec plur(3, 3,
                        ScoringSpec{ScoreVector::plurality(3), TieBreak::fixed_order(alpha(3))});
    CHECK(check_tops_only(plur, Mode::exhaustive()).holds());

    const Verdict v = check_tops_only(a_scoring(2, 3, ScoreVector::borda(3)),
                                      Mode::exhaustive());
    REQUIRE(v.violated);
    CHECK(recheck(a_scoring(2, 3, ScoreVector::borda(3)), *v.witness));
    // the documented example pair also certifies the violation
    Witness manual{Axiom::TopsOnly,
                   ProfilePairWitness{prof(3, {"abc", "bac"}), prof(3, {"abc", "bca"})}};
    CHECK(recheck(a_scoring(2, 3, ScoreVector::borda(3)), manual));

    // with two alternatives every rule is tops-only
    CHECK(check_tops_only(a_scoring(3, 2, ScoreVector::borda(2)), Mode::exhaustive())
              .holds());
    CHECK(check_tops_only(RuleSpec(2, 2, MaxminSpec{TieBreak::by_agent(1)}),
                          Mode::exhaustive())
              .holds());
}

TEST_CASE("monotonicity") {
    CHECK(check_monotone(RuleSpec(3, 3, CondorcetSpec{CondorcetVariant::Simpson,
                                                      TieBreak::fixed_order(alpha(3))}),
                         Mode::exhaustive())
              .holds());
    CHECK(check_monotone(RuleSpec(2, 4, ConstantSpec{A}), Mode::exhaustive()).holds());

    // the five-agent, four-alternative witness rechecks
    const RuleSpec se(5, 4, SuccessiveEliminationSpec{alpha(4)});
    Witness w{Axiom::Monotone,
              DeviationWitness{prof(4, {"abdc", "acdb", "cdab", "cbda", "dbac"}), 1,
                               pr("badc")}};
    CHECK(recheck(se, w));
    // outcome d sits at rank 2 for agent 1; a transformation that touches
    // the frozen positions is rejected
    Witness frozen{Axiom::Monotone,
                   DeviationWitness{prof(4, {"abdc", "acdb", "cdab", "cbda", "dbac"}), 1,
                                    pr("bacd")}};
    CHECK_FALSE(recheck(se, frozen));
}

TEST_CASE("maskin monotonicity") {
    CHECK(check_maskin_monotone(RuleSpec(3, 3, DictatorshipSpec{1}), Mode::exhaustive())
              .holds());
    CHECK(check_maskin_monotone(RuleSpec(3, 3, ConstantSpec{B}), Mode::exhaustive())
              .holds());
    for (CondorcetVariant v : {CondorcetVariant::Simpson, CondorcetVariant::Black}) {
        const RuleSpec rule(3, 3, CondorcetSpec{v, TieBreak::fixed_order(alpha(3))});
        const Verdict verdict = check_maskin_monotone(rule, Mode::exhaustive());
        REQUIRE(verdict.violated);
        CHECK(recheck(rule, *verdict.witness));
    }
}

TEST_CASE("monotone violations imply maskin violations") {
    // our transformation set is contained in Maskin's
    for (int n : {2, 3})
        for (const RuleSpec& rule : rule_catalog(n, 4)) {
            if (rule.as<CondorcetSpec>() &&
                rule.as<CondorcetSpec>()->variant == CondorcetVariant::Dodgson)
                continue;  // slow at m=4; covered elsewhere
            const Verdict mono = check_monotone(rule, Mode::exhaustive());
            if (mono.violated)
                CHECK(check_maskin_monotone(rule, Mode::exhaustive()).violated);
        }
}

TEST_CASE("condorcet consistency") {
    CHECK(check_condorcet_consistent(RuleSpec(3, 3, SuccessiveEliminationSpec{alpha(3)}),
                                     Mode::exhaustive())
              .holds());
    CHECK(check_condorcet_consistent(RuleSpec(3, 3, CondorcetSpec{CondorcetVariant::Simpson,
                                                                  TieBreak::fixed_order(alpha(3))}),
                                     Mode::exhaustive())
              .holds());
    const RuleSpec plur(3, 3,
                        ScoringSpec{ScoreVector::plurality(3), TieBreak::fixed_order(alpha(3))});
    const Verdict v = check_condorcet_consistent(plur, Mode::exhaustive());
    REQUIRE(v.violated);
    CHECK(recheck(plur, *v.witness));
    // the documented witness profile: b is the Condorcet winner, the
    // plurality tie-break picks a
    Witness manual{Axiom::CondorcetConsistent,
                   ProfileWitness{prof(3, {"abc", "bac", "cba"})}};
    CHECK(recheck(plur, manual));
}

TEST_CASE("simple axioms") {
    CHECK(check_simple_axiom(a_maxmin(2, 3), Axiom::Anonymous, Mode::exhaustive()).holds());
    CHECK(check_simple_axiom(n_maxmin(2, 3), Axiom::Neutral, Mode::exhaustive()).holds());
    const Verdict anon = check_simple_axiom(n_maxmin(2, 3), Axiom::Anonymous,
                                            Mode::exhaustive());
    REQUIRE(anon.violated);
    CHECK(recheck(n_maxmin(2, 3), *anon.witness));

    const RuleSpec constant(2, 3, ConstantSpec{A});
    const Verdict eff = check_simple_axiom(constant, Axiom::Efficient, Mode::exhaustive());
    REQUIRE(eff.violated);
    CHECK(recheck(constant, *eff.witness));
    // the documented unanimous-b profile certifies the violation directly
    Witness manual{Axiom::Efficient,
                   DominatedOutcomeWitness{prof(3, {"bac", "bca"}), B}};
    CHECK(recheck(constant, manual));

    const Verdict unan = check_simple_axiom(constant, Axiom::Unanimous, Mode::exhaustive());
    CHECK(unan.violated);
    CHECK(recheck(constant, *unan.witness));
    CHECK(check_simple_axiom(a_maxmin(2, 3), Axiom::Unanimous, Mode::exhaustive()).holds());
}

TEST_CASE("dictatorial detection") {
    const Verdict dict = check_simple_axiom(RuleSpec(3, 3, DictatorshipSpec{2}),
                                            Axiom::Dictatorial, Mode::exhaustive());
    CHECK(dict.holds());
    CHECK(dict.dictator == 2);
    const Verdict not_dict = check_simple_axiom(a_scoring(2, 3, ScoreVector::borda(3)),
                                                Axiom::Dictatorial, Mode::exhaustive());
    REQUIRE(not_dict.violated);
    CHECK(recheck(a_scoring(2, 3, ScoreVector::borda(3)), *not_dict.witness));
}

TEST_CASE("strategy-proof implies regret-free across the catalog") {
    for (auto [n, m] : {std::pair{2, 3}, std::pair{3, 3}}) {
        for (const RuleSpec& rule : rule_catalog(n, m)) {
            const Verdict sp = check_strategy_proof(rule, Mode::exhaustive());
            if (sp.holds())
                CHECK_MESSAGE(check_regret_free(rule, Mode::exhaustive()).holds(),
                              rule.name());
        }
    }
}

TEST_CASE("regret-free implies strategy-proof for tops-only rules") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const RuleSpec rule(2, 3, TopsRandomSpec{seed});
        const Verdict rftt = check_regret_free(rule, Mode::exhaustive());
        if (rftt.holds())
            CHECK_MESSAGE(check_strategy_proof(rule, Mode::exhaustive()).holds(),
                          "seed " << seed);
    }
}

TEST_CASE("violated verdicts carry witnesses that recheck") {
    // fuzz the checker/recheck agreement across the catalog
    for (const RuleSpec& rule : rule_catalog(3, 3)) {
        for (Axiom axiom : {Axiom::StrategyProof, Axiom::RegretFree, Axiom::TopsOnly,
                            Axiom::MaskinMonotone, Axiom::CondorcetConsistent,
                            Axiom::Efficient, Axiom::Unanimous, Axiom::Anonymous,
                            Axiom::Neutral, Axiom::Dictatorial}) {
            const Verdict v = check_axiom(rule, axiom, Mode::exhaustive());
            if (v.violated) {
                REQUIRE(v.witness.has_value());
                CHECK_MESSAGE(recheck(rule, *v.witness),
                              rule.name() << " / " << axiom_name(axiom));
            }
        }
    }
}

TEST_CASE("sampled mode is seed-reproducible and labels its coverage") {
    const RuleSpec rule = a_scoring(3, 3, ScoreVector::borda(3));
    const Mode mode = Mode::sampled(40, 99);
    const Verdict v1 = check_regret_free(rule, mode);
    const Verdict v2 = check_regret_free(rule, mode);
    CHECK(v1.coverage.kind == Mode::Kind::Sampled);
    CHECK(v1.coverage.samples == 40);
    CHECK(v1.coverage.seed == 99);
    CHECK(v1.violated == v2.violated);
    if (v1.witness) {
        const auto& a = std::get<DeviationWitness>(v1.witness->body);
        const auto& b = std::get<DeviationWitness>(v2.witness->body);
        CHECK(a.profile == b.profile);
        CHECK(a.agent == b.agent);
        CHECK(a.misreport == b.misreport);
    }
    // a violation found by sampling also rechecks
    if (v1.violated) CHECK(recheck(rule, *v1.witness));
}

TEST_CASE("exhaustive mode refuses oversized spaces") {
    CHECK_THROWS_WITH_AS(check_regret_free(a_maxmin(3, 7), Mode::exhaustive()),
                         doctest::Contains("space too large"), SpaceTooLargeError);
    EngineOptions tight;
    tight.exhaustive_budget = 10;
    CHECK_THROWS_AS(check_strategy_proof(a_maxmin(2, 3), Mode::exhaustive(), tight),
                    SpaceTooLargeError);
}

TEST_CASE("score-class reduction agrees with the direct inner scan") {
    EngineOptions classed;
    classed.force_scoring_classes = true;
    const std::vector<RuleSpec> rules = {
        a_scoring(3, 3, ScoreVector::borda(3)),
        a_scoring(3, 3, ScoreVector::plurality(3)),
        a_scoring(2, 4, ScoreVector::negative_plurality(4)),
        a_scoring(3, 4, ScoreVector::k_approval(4, 2)),
    };
    for (const RuleSpec& rule : rules) {
        const Verdict direct = check_regret_free(rule, Mode::exhaustive());
        const Verdict reduced = check_regret_free(rule, Mode::exhaustive(), classed);
        CHECK(direct.violated == reduced.violated);
        if (direct.witness) {
            const auto& a = std::get<DeviationWitness>(direct.witness->body);
            const auto& b = std::get<DeviationWitness>(reduced.witness->body);
            CHECK_MESSAGE(a.profile == b.profile, rule.name());
            CHECK(a.agent == b.agent);
            CHECK(a.misreport == b.misreport);
            // cross-validate: each path's witness rechecks under the other
            CHECK(recheck(rule, *direct.witness, classed));
            CHECK(recheck(rule, *reduced.witness));
        }
    }
}

namespace {

// Test-only oracle: the definitions as literal quantifier nests over
// materialized profiles, sharing nothing with the engine's code paths.
bool oracle_strategy_proof(const RuleSpec& spec) {
    const auto prefs = enumerate_preferences(spec.m);
    for (const Profile& p : enumerate_profiles(spec.n, spec.m))
        for (int i = 1; i <= spec.n; ++i)
            for (const Preference& lie : prefs) {
                Profile q = p;
                q.prefs[i - 1] = lie;
                if (p.agent(i).prefers(evaluate(spec, q), evaluate(spec, p))) return false;
            }
    return true;
}

bool oracle_regret_free(const RuleSpec& spec) {
    const auto prefs = enumerate_preferences(spec.m);
    for (const Profile& p : enumerate_profiles(spec.n, spec.m)) {
        const Alt truth_outcome = evaluate(spec, p);
        for (int i = 1; i <= spec.n; ++i)
            for (const Preference& lie : prefs) {
                Profile q = p;
                q.prefs[i - 1] = lie;
                if (!p.agent(i).prefers(evaluate(spec, q), truth_outcome)) continue;
                bool exists_regretting_counterfactual = false;
                for (const Profile& r : enumerate_profiles(spec.n, spec.m)) {
                    Profile truthful = r, deviated = r;
                    truthful.prefs[i - 1] = p.prefs[i - 1];
                    deviated.prefs[i - 1] = lie;
                    if (evaluate(spec, truthful) != truth_outcome) continue;
                    if (p.agent(i).prefers(evaluate(spec, truthful),
                                           evaluate(spec, deviated))) {
                        exists_regretting_counterfactual = true;
                        break;
                    }
                }
                if (!exists_regretting_counterfactual) return false;
            }
    }
    return true;
}

}  // namespace

TEST_CASE("checkers agree with the literal-definition oracle at n=2, m=3") {
    std::vector<RuleSpec> rules = rule_catalog(2, 3);
    rules.push_back(a_maxmin(2, 3));
    for (const RuleSpec& rule : rules) {
        CHECK_MESSAGE(check_strategy_proof(rule, Mode::exhaustive()).holds() ==
                          oracle_strategy_proof(rule),
                      rule.name());
        CHECK_MESSAGE(check_regret_free(rule, Mode::exhaustive()).holds() ==
                          oracle_regret_free(rule),
                      rule.name());
    }
}

TEST_CASE("score-class reduction is validated by literal evaluation at m=7") {
    // The generic inner scan is infeasible at n=3, m=7; the engine relies on
    // quantifiers factoring through score-contribution classes. Validate the
    // two load-bearing facts with the plain evaluator:
    //   (1) substituting a ballot for one with the same contribution vector
    //       never changes the outcome, and
    //   (2) every profitable deviation of the 5-approval rule (reported
    //       regret-free by the sampled scenario) has a blocking
    //       counterfactual among class-representative subprofiles.
    const RuleSpec rule(3, 7, ScoringSpec{ScoreVector::k_approval(7, 5),
                                          TieBreak::fixed_order(std::vector<Alt>{
                                              0, 1, 2, 3, 4, 5, 6})});
    const ScoreVector& sv = rule.as<ScoringSpec>()->scores;
    const PrefUniverse& U = PrefUniverse::get(7);

    auto contribution = [&](const Preference& q) {
        std::array<std::int64_t, 7> v{};
        for (Alt a = 0; a < 7; ++a) v[a] = sv.weight_at_rank(q.rank_of(a));
        return v;
    };
    std::map<std::array<std::int64_t, 7>, int> reps;
    for (int q = 0; q < U.count(); ++q) reps.emplace(contribution(U.pref(q)), q);
    REQUIRE(reps.size() == 21);  // one class per bottom pair

    // (1) same contribution vector, same outcome
    const auto profiles = sampled_profiles(3, 7, 40, 123);
    const auto substitutes = sampled_profile_codes(1, 7, 40, 321);
    for (size_t t = 0; t < profiles.size(); ++t) {
        const Profile& p = profiles[t];
        const Preference sub = U.pref(int(substitutes[t]));
        const int slot = int(t % 3);
        if (contribution(p.prefs[slot]) != contribution(sub)) continue;
        Profile q = p;
        q.prefs[slot] = sub;
        CHECK(evaluate(rule, p) == evaluate(rule, q));
    }

    // (2) complete blocker search over representative subprofiles
    int profitable = 0;
    for (const Profile& p : profiles) {
        const Alt outcome = evaluate(rule, p);
        if (profitable >= 60) break;
        for (int i = 1; i <= 3; ++i) {
            for (int d2 = 0; d2 < U.count(); d2 += 113) {
                Profile dev = p;
                dev.prefs[i - 1] = U.pref(d2);
                if (!p.agent(i).prefers(evaluate(rule, dev), outcome)) continue;
                ++profitable;
                bool blocked = false;
                for (auto it1 = reps.begin(); it1 != reps.end() && !blocked; ++it1)
                    for (auto it2 = reps.begin(); it2 != reps.end() && !blocked; ++it2) {
                        Profile truthful = p, deviated = dev;
                        int slot2 = 0;
                        for (int j = 0; j < 3; ++j) {
                            if (j == i - 1) continue;
                            const Preference& rep =
                                U.pref(slot2 == 0 ? it1->second : it2->second);
                            truthful.prefs[j] = rep;
                            deviated.prefs[j] = rep;
                            ++slot2;
                        }
                        if (evaluate(rule, truthful) != outcome) continue;
                        if (p.agent(i).prefers(evaluate(rule, truthful),
                                               evaluate(rule, deviated)))
                            blocked = true;
                    }
                CHECK_MESSAGE(blocked, "profitable deviation with no blocker");
            }
        }
    }
    CHECK(profitable > 10);  // the probe exercised real profitable deviations
}

TEST_CASE("axiom names round trip") {
    for (Axiom a : {Axiom::StrategyProof, Axiom::RegretFree, Axiom::TopsOnly,
                    Axiom::Monotone, Axiom::MaskinMonotone, Axiom::CondorcetConsistent,
                    Axiom::Efficient, Axiom::Unanimous, Axiom::Anonymous, Axiom::Neutral,
                    Axiom::Dictatorial})
        CHECK(axiom_from_name(axiom_name(a)) == a);
    CHECK_THROWS_AS(axiom_from_name("sincerity"), DomainError);
}
