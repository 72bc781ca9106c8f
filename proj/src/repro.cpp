#include "rgf/repro.hpp"

#include <chrono>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>

namespace rgf {

namespace {

// Fixture shorthand: "bac" is the ranking b > a > c over letter-indexed
// alternatives ('>' separators are accepted and ignored).
Preference pr(const std::string& s) {
    std::vector<Alt> order;
    for (char c : s)
        if (c != '>' && c != ' ') order.push_back(Alt(c - 'a'));
    return Preference(order);
}

Profile prof(int m, const std::vector<std::string>& rows) {
    std::vector<Preference> prefs;
    prefs.reserve(rows.size());
    for (const std::string& r : rows) prefs.push_back(pr(r));
    return Profile(m, std::move(prefs));
}

std::vector<Alt> alpha(int m) {
    std::vector<Alt> order(m);
    for (int a = 0; a < m; ++a) order[a] = Alt(a);
    return order;
}

RuleSpec a_maxmin(int n, int m) {
    return RuleSpec(n, m, MaxminSpec{TieBreak::fixed_order(alpha(m))});
}
RuleSpec n_maxmin(int n, int m, int agent = 1) {
    return RuleSpec(n, m, MaxminSpec{TieBreak::by_agent(agent)});
}
RuleSpec star_maxmin(int n, int m, const std::vector<bool>& star) {
    return RuleSpec(n, m, MaxminSpec{TieBreak::star_relation(m, star)});
}
RuleSpec a_scoring(int n, int m, ScoreVector sv) {
    return RuleSpec(n, m, ScoringSpec{std::move(sv), TieBreak::fixed_order(alpha(m))});
}
RuleSpec n_scoring(int n, int m, ScoreVector sv, int agent = 1) {
    return RuleSpec(n, m, ScoringSpec{std::move(sv), TieBreak::by_agent(agent)});
}
RuleSpec a_condorcet(int n, int m, CondorcetVariant v) {
    return RuleSpec(n, m, CondorcetSpec{v, TieBreak::fixed_order(alpha(m))});
}
RuleSpec n_condorcet(int n, int m, CondorcetVariant v, int agent = 1) {
    return RuleSpec(n, m, CondorcetSpec{v, TieBreak::by_agent(agent)});
}
RuleSpec succ_elim(int n, int m, std::vector<Alt> agenda) {
    return RuleSpec(n, m, SuccessiveEliminationSpec{std::move(agenda)});
}
RuleSpec dictatorship(int n, int m, int agent) {
    return RuleSpec(n, m, DictatorshipSpec{agent});
}

Witness deviation(Axiom axiom, Profile p, int agent, Preference misreport) {
    return Witness{axiom, DeviationWitness{std::move(p), agent, std::move(misreport)}};
}

struct CatalogBuilder {
    std::vector<Scenario> out;

    void add(Scenario s) { out.push_back(std::move(s)); }

    void exhaustive(std::string id, RuleSpec spec, Axiom axiom, bool violated,
                    std::string claim) {
        add(Scenario{std::move(id), std::move(spec), axiom, Scenario::Kind::Exhaustive, 0, 0,
                     violated, std::nullopt, std::move(claim)});
    }
    void sampled(std::string id, RuleSpec spec, Axiom axiom, std::uint64_t samples,
                 std::uint64_t seed, bool violated, std::string claim) {
        add(Scenario{std::move(id), std::move(spec), axiom, Scenario::Kind::Sampled, samples,
                     seed, violated, std::nullopt, std::move(claim)});
    }
    void directed(std::string id, RuleSpec spec, Witness w, std::string claim) {
        add(Scenario{std::move(id), std::move(spec), w.axiom, Scenario::Kind::Directed, 0, 0,
                     true, std::move(w), std::move(claim)});
    }
};

std::vector<Scenario> build_catalog() {
    CatalogBuilder c;

    // Maxmin rules: the anonymous version is regret-free exactly when
    // n >= m-1 or n divides m-1; the neutral version always is.
    c.exhaustive("T1-pos-2x3", a_maxmin(2, 3), Axiom::RegretFree, false,
                 "A-maxmin is regret-free at n=2, m=3 (n >= m-1)");
    c.exhaustive("T1-pos-3x3", a_maxmin(3, 3), Axiom::RegretFree, false,
                 "A-maxmin is regret-free at n=3, m=3 (n >= m-1)");
    c.exhaustive("T1-pos-3x4", a_maxmin(3, 4), Axiom::RegretFree, false,
                 "A-maxmin is regret-free at n=3, m=4 (n >= m-1)");
    c.exhaustive("T1-pos-2x5", a_maxmin(2, 5), Axiom::RegretFree, false,
                 "A-maxmin is regret-free at n=2, m=5 (n divides m-1)");
    c.exhaustive("T1-neg-2x4", a_maxmin(2, 4), Axiom::RegretFree, true,
                 "A-maxmin admits a regretted manipulation at n=2, m=4");
    c.exhaustive("T1-nmaxmin-2x3", n_maxmin(2, 3), Axiom::RegretFree, false,
                 "N-maxmin is regret-free at n=2, m=3");
    c.exhaustive("T1-nmaxmin-2x4", n_maxmin(2, 4), Axiom::RegretFree, false,
                 "N-maxmin is regret-free at n=2, m=4");
    c.exhaustive("T1-nmaxmin-3x3", n_maxmin(3, 3), Axiom::RegretFree, false,
                 "N-maxmin is regret-free at n=3, m=3");
    c.exhaustive("T1-nmaxmin-4x3", n_maxmin(4, 3), Axiom::RegretFree, false,
                 "N-maxmin is regret-free at n=4, m=3");

    // Negative plurality (k* = 1): anonymous regret-free iff n >= m-1.
    c.exhaustive("T2-pos-2x3", a_scoring(2, 3, ScoreVector::negative_plurality(3)),
                 Axiom::RegretFree, false,
                 "A-negative-plurality is regret-free at n=2, m=3");
    c.exhaustive("T2-pos-3x3", a_scoring(3, 3, ScoreVector::negative_plurality(3)),
                 Axiom::RegretFree, false,
                 "A-negative-plurality is regret-free at n=3, m=3");
    c.exhaustive("T2-neg-2x4", a_scoring(2, 4, ScoreVector::negative_plurality(4)),
                 Axiom::RegretFree, true,
                 "A-negative-plurality admits a regretted manipulation at n=2, m=4");
    c.exhaustive("T2-neg-2x5", a_scoring(2, 5, ScoreVector::negative_plurality(5)),
                 Axiom::RegretFree, true,
                 "A-negative-plurality admits a regretted manipulation at n=2, m=5");
    c.exhaustive("T2-nneg-2x4", n_scoring(2, 4, ScoreVector::negative_plurality(4)),
                 Axiom::RegretFree, false,
                 "N-negative-plurality is regret-free at n=2, m=4");
    c.exhaustive("T2-nneg-3x3", n_scoring(3, 3, ScoreVector::negative_plurality(3)),
                 Axiom::RegretFree, false,
                 "N-negative-plurality is regret-free at n=3, m=3");

    // Scoring rules with k* = m-1 are never regret-free (n > 2).
    c.exhaustive("T3-aborda-3x3", a_scoring(3, 3, ScoreVector::borda(3)), Axiom::RegretFree,
                 true, "A-Borda admits a regretted manipulation at n=3, m=3");
    c.exhaustive("T3-nborda-3x3", n_scoring(3, 3, ScoreVector::borda(3)), Axiom::RegretFree,
                 true, "N-Borda admits a regretted manipulation at n=3, m=3");
    c.exhaustive("T3-aplur-3x3", a_scoring(3, 3, ScoreVector::plurality(3)),
                 Axiom::RegretFree, true,
                 "A-plurality admits a regretted manipulation at n=3, m=3");
    c.exhaustive("T3-adowdall-3x3", a_scoring(3, 3, ScoreVector::dowdall(3)),
                 Axiom::RegretFree, true,
                 "A-Dowdall admits a regretted manipulation at n=3, m=3");
    c.directed("T3-directed-borda", a_scoring(3, 3, ScoreVector::borda(3)),
               deviation(Axiom::RegretFree, prof(3, {"acb", "cba", "bac"}), 2, pr("bca")),
               "agent 2 regrets truth-telling under A-Borda by swapping b and c");
    c.directed("T3-directed-plurality", a_scoring(3, 3, ScoreVector::plurality(3)),
               deviation(Axiom::RegretFree, prof(3, {"acb", "cba", "bac"}), 2, pr("bca")),
               "agent 2 regrets truth-telling under A-plurality by swapping b and c");

    // Approval with 1 < k* < m-1 and k*n < m: regret-free iff k*n = m-1.
    c.sampled("T4-pos-3x7-sampled", a_scoring(3, 7, ScoreVector::k_approval(7, 5)),
              Axiom::RegretFree, 5000, 7, false,
              "A-5-approval at n=3, m=7 (k*n = m-1): no violation over 5000 sampled "
              "profiles");
    c.directed(
        "T4-neg-directed-3x8", a_scoring(3, 8, ScoreVector::k_approval(8, 6)),
        deviation(Axiom::RegretFree,
                  prof(8, {"bcdefahg", "bacdefgh", "bacdefgh"}), 1, pr("bcdefhag")),
        "agent 1 regrets truth-telling under A-6-approval at n=3, m=8 (k*n < m-1)");

    // Approval with k*n >= m and s_{k*-1} = s_{k*}: never regret-free.
    c.exhaustive("T5-a2approval-3x4", a_scoring(3, 4, ScoreVector::k_approval(4, 2)),
                 Axiom::RegretFree, true,
                 "A-2-approval admits a regretted manipulation at n=3, m=4");
    c.exhaustive("T5-n2approval-3x4", n_scoring(3, 4, ScoreVector::k_approval(4, 2)),
                 Axiom::RegretFree, true,
                 "N-2-approval admits a regretted manipulation at n=3, m=4");
    c.directed("T5-directed", a_scoring(3, 4, ScoreVector::k_approval(4, 2)),
               deviation(Axiom::RegretFree, prof(4, {"abcd", "cdba", "abdc"}), 2, pr("cbda")),
               "agent 2 regrets truth-telling under A-2-approval at n=3, m=4");

    // The six classical Condorcet consistent rules: monotone, and not
    // regret-free, in both tie-break regimes.
    for (CondorcetVariant v :
         {CondorcetVariant::Simpson, CondorcetVariant::Copeland, CondorcetVariant::Young,
          CondorcetVariant::Dodgson, CondorcetVariant::Fishburn, CondorcetVariant::Black}) {
        const std::string name = to_string(v);
        c.exhaustive("T6-a" + name + "-monotone-3x3", a_condorcet(3, 3, v), Axiom::Monotone,
                     false, "A-" + name + " is monotone at n=3, m=3");
        c.exhaustive("T6-n" + name + "-monotone-3x3", n_condorcet(3, 3, v), Axiom::Monotone,
                     false, "N-" + name + " is monotone at n=3, m=3");
        c.exhaustive("T6-a" + name + "-rftt-3x3", a_condorcet(3, 3, v), Axiom::RegretFree,
                     true, "A-" + name + " admits a regretted manipulation at n=3, m=3");
        c.exhaustive("T6-n" + name + "-rftt-3x3", n_condorcet(3, 3, v), Axiom::RegretFree,
                     true, "N-" + name + " admits a regretted manipulation at n=3, m=3");
    }
    c.directed("T6-directed-simpson", a_condorcet(4, 3, CondorcetVariant::Simpson),
               deviation(Axiom::RegretFree, prof(3, {"bac", "cba", "cba", "acb"}), 1,
                         pr("abc")),
               "agent 1 regrets truth-telling under A-Simpson at n=4, m=3");
    c.directed("T6-directed-copeland", a_condorcet(4, 3, CondorcetVariant::Copeland),
               deviation(Axiom::RegretFree, prof(3, {"bac", "cab", "cba", "acb"}), 1,
                         pr("abc")),
               "agent 1 regrets truth-telling under A-Copeland at n=4, m=3");

    // The n=4, m=3 exception: Condorcet consistent, monotone and regret-free.
    {
        RuleSpec remark(4, 3, Remark4x3Spec{alpha(3)});
        c.exhaustive("Remark-4x3", remark, Axiom::RegretFree, false,
                     "the bottom-count rule at n=4, m=3 is regret-free");
        c.exhaustive("Remark-4x3-condorcet", remark, Axiom::CondorcetConsistent, false,
                     "the bottom-count rule at n=4, m=3 is Condorcet consistent");
        c.exhaustive("Remark-4x3-monotone", remark, Axiom::Monotone, false,
                     "the bottom-count rule at n=4, m=3 is monotone");
    }

    // Successive elimination: Condorcet consistent, not monotone, not
    // regret-free.
    c.exhaustive("T8-se-3x3", succ_elim(3, 3, alpha(3)), Axiom::RegretFree, true,
                 "successive elimination admits a regretted manipulation at n=3, m=3");
    c.directed("T8-directed", succ_elim(3, 3, alpha(3)),
               deviation(Axiom::RegretFree, prof(3, {"abc", "cab", "bca"}), 1, pr("bac")),
               "agent 1 regrets truth-telling under successive elimination at n=3, m=3");
    c.directed("T8-monotone-directed", succ_elim(5, 4, alpha(4)),
               deviation(Axiom::Monotone,
                         prof(4, {"abdc", "acdb", "cdab", "cbda", "dbac"}), 1, pr("badc")),
               "successive elimination violates monotonicity at n=5, m=4");
    c.exhaustive("T8-se-condorcet-3x3", succ_elim(3, 3, alpha(3)),
                 Axiom::CondorcetConsistent, false,
                 "successive elimination is Condorcet consistent at n=3, m=3");

    // Characterization at n=2, m=3: regret-free + neutral rules.
    for (int agent = 1; agent <= 2; ++agent) {
        const std::string tag = std::to_string(agent);
        c.exhaustive("T7-nmaxmin" + tag + "-rftt", n_maxmin(2, 3, agent), Axiom::RegretFree,
                     false, "N-maxmin (agent " + tag + ") is regret-free at n=2, m=3");
        c.exhaustive("T7-nmaxmin" + tag + "-neutral", n_maxmin(2, 3, agent), Axiom::Neutral,
                     false, "N-maxmin (agent " + tag + ") is neutral at n=2, m=3");
        c.exhaustive("T7-nnegplur" + tag + "-rftt",
                     n_scoring(2, 3, ScoreVector::negative_plurality(3), agent),
                     Axiom::RegretFree, false,
                     "N-negative-plurality (agent " + tag + ") is regret-free at n=2, m=3");
        c.exhaustive("T7-nnegplur" + tag + "-neutral",
                     n_scoring(2, 3, ScoreVector::negative_plurality(3), agent),
                     Axiom::Neutral, false,
                     "N-negative-plurality (agent " + tag + ") is neutral at n=2, m=3");
        c.exhaustive("T7-dict" + tag + "-rftt", dictatorship(2, 3, agent), Axiom::RegretFree,
                     false, "dictatorship (agent " + tag + ") is regret-free at n=2, m=3");
        c.exhaustive("T7-dict" + tag + "-neutral", dictatorship(2, 3, agent), Axiom::Neutral,
                     false, "dictatorship (agent " + tag + ") is neutral at n=2, m=3");
    }
    c.exhaustive("T7-se-neutral", succ_elim(2, 3, alpha(3)), Axiom::Neutral, true,
                 "successive elimination is not neutral at n=2, m=3");
    c.exhaustive("T7-bottom1-neutral", RuleSpec(2, 3, BottomAgentSpec{1}), Axiom::Neutral,
                 false, "the bottom-of-agent-1 rule is neutral at n=2, m=3");
    c.exhaustive("T7-bottom1-rftt", RuleSpec(2, 3, BottomAgentSpec{1}), Axiom::RegretFree,
                 true, "the bottom-of-agent-1 rule is not regret-free at n=2, m=3");

    // Characterization at n=2, m=3: regret-free + efficient + anonymous.
    for (int rel = 0; rel < 8; ++rel) {
        std::vector<bool> star(9, false);
        auto set_pair = [&](Alt a, Alt b, bool a_beats) {
            if (a_beats)
                star[a * 3 + b] = true;
            else
                star[b * 3 + a] = true;
        };
        set_pair(0, 1, rel & 1);
        set_pair(0, 2, rel & 2);
        set_pair(1, 2, rel & 4);
        const std::string tag = std::to_string(rel);
        const RuleSpec rule = star_maxmin(2, 3, star);
        c.exhaustive("T9-star" + tag + "-rftt", rule, Axiom::RegretFree, false,
                     "star-maxmin relation #" + tag + " is regret-free at n=2, m=3");
        c.exhaustive("T9-star" + tag + "-efficient", rule, Axiom::Efficient, false,
                     "star-maxmin relation #" + tag + " is efficient at n=2, m=3");
        c.exhaustive("T9-star" + tag + "-anonymous", rule, Axiom::Anonymous, false,
                     "star-maxmin relation #" + tag + " is anonymous at n=2, m=3");
    }
    {
        const std::vector<Preference> orders = enumerate_preferences(3);
        for (size_t k = 0; k < orders.size(); ++k) {
            const std::string tag = std::to_string(k);
            const RuleSpec rule = succ_elim(2, 3, orders[k].ranking());
            c.exhaustive("T9-se" + tag + "-rftt", rule, Axiom::RegretFree, false,
                         "successive elimination agenda #" + tag +
                             " is regret-free at n=2, m=3");
            c.exhaustive("T9-se" + tag + "-efficient", rule, Axiom::Efficient, false,
                         "successive elimination agenda #" + tag +
                             " is efficient at n=2, m=3");
            c.exhaustive("T9-se" + tag + "-anonymous", rule, Axiom::Anonymous, false,
                         "successive elimination agenda #" + tag +
                             " is anonymous at n=2, m=3");
        }
    }
    {
        const RuleSpec constant(2, 3, ConstantSpec{0});
        c.exhaustive("T9-constant-rftt", constant, Axiom::RegretFree, false,
                     "the constant rule is regret-free at n=2, m=3");
        c.exhaustive("T9-constant-anonymous", constant, Axiom::Anonymous, false,
                     "the constant rule is anonymous at n=2, m=3");
        c.exhaustive("T9-constant-efficient", constant, Axiom::Efficient, true,
                     "the constant rule is not efficient at n=2, m=3");
        const RuleSpec dict = dictatorship(2, 3, 1);
        c.exhaustive("T9-dict-rftt", dict, Axiom::RegretFree, false,
                     "dictatorship is regret-free at n=2, m=3");
        c.exhaustive("T9-dict-efficient", dict, Axiom::Efficient, false,
                     "dictatorship is efficient at n=2, m=3");
        c.exhaustive("T9-dict-anonymous", dict, Axiom::Anonymous, true,
                     "dictatorship is not anonymous at n=2, m=3");
        const RuleSpec maxtop(2, 3, MaxTopSpec{alpha(3)});
        c.exhaustive("T9-maxtop-efficient", maxtop, Axiom::Efficient, false,
                     "the max-top rule is efficient at n=2, m=3");
        c.exhaustive("T9-maxtop-anonymous", maxtop, Axiom::Anonymous, false,
                     "the max-top rule is anonymous at n=2, m=3");
        c.exhaustive("T9-maxtop-rftt", maxtop, Axiom::RegretFree, true,
                     "the max-top rule is not regret-free at n=2, m=3");
    }

    // Two alternatives: extended majority voting is strategy-proof and
    // regret-free.
    {
        const RuleSpec majority(3, 2,
                                ExtendedMajoritySpec{Committee::majority(3), 0, 1});
        c.exhaustive("C1-emv-majority-sp-3x2", majority, Axiom::StrategyProof, false,
                     "majority voting is strategy-proof at n=3, m=2");
        c.exhaustive("C1-emv-majority-rftt-3x2", majority, Axiom::RegretFree, false,
                     "majority voting is regret-free at n=3, m=2");
        const RuleSpec veto(3, 2,
                            ExtendedMajoritySpec{
                                Committee::from_minimal(3, {0b111u}), 0, 1});
        c.exhaustive("C1-emv-veto-rftt-3x2", veto, Axiom::RegretFree, false,
                     "unanimity-committee voting is regret-free at n=3, m=2");
    }

    // Seeded tops-only rules: regret-free implies strategy-proof.
    c.add(Scenario{"P1-topsonly-3x3", RuleSpec(3, 3, TopsRandomSpec{0}),
                   Axiom::RegretFree, Scenario::Kind::Implication, 200, 0, false,
                   std::nullopt,
                   "over 200 seeded tops-only rules at n=3, m=3, regret-free "
                   "truth-telling and strategy-proofness coincide"});

    return c.out;
}

}  // namespace

std::string Scenario::mode_string() const {
    switch (kind) {
        case Kind::Exhaustive: return "exhaustive";
        case Kind::Sampled:
            return "sampled(" + std::to_string(samples) + "," + std::to_string(seed) + ")";
        case Kind::Directed: return "directed";
        case Kind::Implication:
            return "implication(" + std::to_string(samples) + " rules)";
    }
    return "?";
}

const std::vector<Scenario>& scenario_catalog() {
    static const std::vector<Scenario> catalog = build_catalog();
    return catalog;
}

const Scenario& find_scenario(const std::string& id) {
    for (const Scenario& s : scenario_catalog())
        if (s.id == id) return s;
    throw DomainError("unknown scenario id: " + id);
}

ScenarioResult run_scenario(const Scenario& s, const EngineOptions& opts) {
    ScenarioResult r;
    r.id = s.id;
    r.rule = s.spec.name();
    r.axiom = axiom_name(s.axiom);
    r.n = s.spec.n;
    r.m = s.spec.m;
    r.mode = s.mode_string();
    r.expect_violated = s.expect_violated;
    const auto start = std::chrono::steady_clock::now();
    switch (s.kind) {
        case Scenario::Kind::Exhaustive:
        case Scenario::Kind::Sampled: {
            const Mode mode = s.kind == Scenario::Kind::Exhaustive
                                  ? Mode::exhaustive()
                                  : Mode::sampled(s.samples, s.seed);
            const Verdict v = check_axiom(s.spec, s.axiom, mode, opts);
            r.got_violated = v.violated;
            r.coverage = v.coverage.to_string();
            break;
        }
        case Scenario::Kind::Directed: {
            r.got_violated = recheck(s.spec, *s.directed, opts);
            r.coverage = "directed";
            break;
        }
        case Scenario::Kind::Implication: {
            // For tops-only rules the two properties coincide, so assert
            // equality per sample; this can never pass vacuously.
            bool diverged = false;
            for (std::uint64_t k = 1; k <= s.samples && !diverged; ++k) {
                const RuleSpec rule(s.spec.n, s.spec.m, TopsRandomSpec{s.seed + k});
                const Verdict rftt = check_regret_free(rule, Mode::exhaustive(), opts);
                const Verdict sp = check_strategy_proof(rule, Mode::exhaustive(), opts);
                if (rftt.violated != sp.violated) diverged = true;
            }
            r.got_violated = diverged;
            r.coverage = "exhaustive per rule, " + std::to_string(s.samples) + " rules";
            break;
        }
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    r.match = (r.got_violated == r.expect_violated);
    return r;
}

ScenarioResult run_scenario(const std::string& id, const EngineOptions& opts) {
    return run_scenario(find_scenario(id), opts);
}

std::vector<ScenarioResult> run_all_scenarios(const EngineOptions& opts) {
    std::vector<ScenarioResult> results;
    for (const Scenario& s : scenario_catalog()) results.push_back(run_scenario(s, opts));
    return results;
}

std::vector<RuleSpec> rule_catalog(int n, int m) {
    std::vector<RuleSpec> rules;
    rules.push_back(a_maxmin(n, m));
    rules.push_back(n_maxmin(n, m));
    if (m >= 2) {
        rules.push_back(a_scoring(n, m, ScoreVector::borda(m)));
        rules.push_back(n_scoring(n, m, ScoreVector::borda(m)));
        rules.push_back(a_scoring(n, m, ScoreVector::plurality(m)));
        rules.push_back(a_scoring(n, m, ScoreVector::dowdall(m)));
    }
    if (m >= 3) {
        rules.push_back(a_scoring(n, m, ScoreVector::negative_plurality(m)));
        rules.push_back(n_scoring(n, m, ScoreVector::negative_plurality(m)));
    }
    for (CondorcetVariant v :
         {CondorcetVariant::Simpson, CondorcetVariant::Copeland, CondorcetVariant::Young,
          CondorcetVariant::Dodgson, CondorcetVariant::Fishburn, CondorcetVariant::Black})
        rules.push_back(a_condorcet(n, m, v));
    rules.push_back(n_condorcet(n, m, CondorcetVariant::Simpson));
    rules.push_back(n_condorcet(n, m, CondorcetVariant::Copeland));
    rules.push_back(succ_elim(n, m, alpha(m)));
    rules.push_back(dictatorship(n, m, 1));
    rules.push_back(RuleSpec(n, m, ConstantSpec{0}));
    rules.push_back(RuleSpec(n, m, MaxTopSpec{alpha(m)}));
    rules.push_back(RuleSpec(n, m, BottomAgentSpec{1}));
    rules.push_back(RuleSpec(n, m, TopsRandomSpec{42}));
    if (n == 4 && m == 3) rules.push_back(RuleSpec(n, m, Remark4x3Spec{alpha(3)}));
    if (m == 2)
        rules.push_back(RuleSpec(n, m, ExtendedMajoritySpec{Committee::majority(n), 0, 1}));
    return rules;
}

namespace {

struct RowSpec {
    const char* family;
    const char* condition;
    const char* claim;
    std::vector<const char*> prefixes;
};

const std::vector<RowSpec>& summary_rows() {
    static const std::vector<RowSpec> rows = {
        {"two alternatives", "extended majority voting",
         "strategy-proof and regret-free", {"C1-"}},
        {"tops-only rules", "seeded samples at n=3, m=3",
         "regret-free implies strategy-proof", {"P1-"}},
        {"A-maxmin", "n >= m-1 or n | m-1", "regret-free exactly on the condition",
         {"T1-pos-", "T1-neg-"}},
        {"N-maxmin", "", "all regret-free", {"T1-nmaxmin-"}},
        {"A-scoring, k*=1", "n >= m-1", "regret-free exactly on the condition",
         {"T2-pos-", "T2-neg-"}},
        {"N-scoring, k*=1", "", "all regret-free", {"T2-nneg-"}},
        {"A-scoring, 1<k*<m-1, k*n<m", "k*n = m-1",
         "regret-free exactly on the condition", {"T4-"}},
        {"scoring, k*n>=m, s_{k*-1}=s_{k*}", "", "none regret-free", {"T5-"}},
        {"scoring, k*=m-1", "Borda, plurality, Dowdall", "none regret-free", {"T3-"}},
        {"Condorcet consistent + monotone", "Simpson/Copeland/Young/Dodgson/Fishburn/Black",
         "all monotone, none regret-free", {"T6-"}},
        {"successive elimination", "", "Condorcet consistent but not regret-free",
         {"T8-"}},
        {"n=4, m=3 exception", "bottom-count rule",
         "Condorcet consistent, monotone and regret-free", {"Remark-"}},
        {"characterization n=2, m=3", "regret-free + neutral",
         "N-maxmin rules and dictatorships", {"T7-"}},
        {"characterization n=2, m=3", "regret-free + efficient + anonymous",
         "star-maxmin rules and successive elimination", {"T9-"}},
    };
    return rows;
}

}  // namespace

std::vector<SummaryRow> summary_table(const std::vector<ScenarioResult>& results) {
    std::map<std::string, const ScenarioResult*> by_id;
    for (const ScenarioResult& r : results) by_id[r.id] = &r;
    std::vector<SummaryRow> out;
    for (const RowSpec& row : summary_rows()) {
        SummaryRow s;
        s.family = row.family;
        s.condition = row.condition;
        s.claim = row.claim;
        for (const Scenario& sc : scenario_catalog())
            for (const char* prefix : row.prefixes)
                if (sc.id.rfind(prefix, 0) == 0) {
                    s.scenario_ids.push_back(sc.id);
                    ++s.total;
                    auto it = by_id.find(sc.id);
                    if (it != by_id.end() && it->second->match) ++s.confirmed;
                    break;
                }
        if (s.total == 0)
            s.status = "NOT RUN";
        else if (s.confirmed == s.total)
            s.status = "CONFIRMED";
        else {
            bool all_present = true;
            for (const std::string& id : s.scenario_ids)
                if (!by_id.count(id)) all_present = false;
            s.status = all_present ? "MISMATCH" : "PARTIAL";
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string report_to_tsv(const std::vector<ScenarioResult>& results) {
    std::ostringstream os;
    os << "id\trule\taxiom\tn\tm\tmode\texpected\tgot\tmatch\tcoverage\telapsed_ms\n";
    for (const ScenarioResult& r : results) {
        os << r.id << "\t" << r.rule << "\t" << r.axiom << "\t" << r.n << "\t" << r.m
           << "\t" << r.mode << "\t" << (r.expect_violated ? "violated" : "holds") << "\t"
           << (r.got_violated ? "violated" : "holds") << "\t"
           << (r.match ? "true" : "false") << "\t" << r.coverage << "\t";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", r.elapsed_ms);
        os << buf << "\n";
    }
    return os.str();
}

std::string report_to_json(const std::vector<ScenarioResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ScenarioResult& r : results)
        arr.push_back({{"id", r.id},
                       {"rule", r.rule},
                       {"axiom", r.axiom},
                       {"n", r.n},
                       {"m", r.m},
                       {"mode", r.mode},
                       {"expected", r.expect_violated ? "violated" : "holds"},
                       {"got", r.got_violated ? "violated" : "holds"},
                       {"match", r.match},
                       {"coverage", r.coverage},
                       {"elapsed_ms", r.elapsed_ms}});
    nlohmann::json j{{"version", "rgf/1"}, {"kind", "report"}, {"results", arr}};
    return j.dump(2) + "\n";
}

std::string summary_to_text(const std::vector<SummaryRow>& rows) {
    std::ostringstream os;
    os << "family\tcondition\tclaim\tstatus\tscenarios\n";
    for (const SummaryRow& r : rows)
        os << r.family << "\t" << r.condition << "\t" << r.claim << "\t" << r.status << " ("
           << r.confirmed << "/" << r.total << ")\t" << r.total << "\n";
    return os.str();
}

}  // namespace rgf
