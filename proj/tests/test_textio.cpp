#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rgf/textio.hpp"

using namespace rgf;

TEST_CASE("parse_profile basics") {
    const NamedProfile np = parse_profile("1: a>b>c\n1: b>c>a\n1: c>a>b\n");
    CHECK(np.profile.n() == 3);
    CHECK(np.profile.m == 3);
    CHECK(np.labels == std::vector<std::string>{"a", "b", "c"});
    CHECK(np.profile.agent(1).top() == 0);
    CHECK(np.profile.agent(2).top() == 1);

    const NamedProfile two = parse_profile("2: a>b>c\n");
    CHECK(two.profile.n() == 2);
    CHECK(two.profile.prefs[0] == two.profile.prefs[1]);

    // multiplicity prefix is optional
    CHECK(parse_profile("a>b\nb>a\n").profile.n() == 2);
}

TEST_CASE("parse_profile header and comments") {
    const NamedProfile np =
        parse_profile("# taken from a report\nalternatives: x,y,z\n1: x > y > z\n");
    CHECK(np.labels == std::vector<std::string>{"x", "y", "z"});
    CHECK(np.profile.agent(1).top() == 0);
    // without a header, labels are sorted
    const NamedProfile sorted = parse_profile("1: z>x>y\n");
    CHECK(sorted.labels == std::vector<std::string>{"x", "y", "z"});
    CHECK(sorted.profile.agent(1).top() == 2);
}

TEST_CASE("parse_profile error paths carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_profile("1: a>a>c\n"), doctest::Contains("line 1"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_profile("alternatives: a,b\n1: a>c\n"),
                         doctest::Contains("unknown alternative"), ParseError);
    CHECK_THROWS_WITH_AS(parse_profile("0: a>b\n"), doctest::Contains("multiplicity"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_profile("1: a>b\n1: a>b>c\n"), doctest::Contains("line 1"),
                         ParseError);  // the short ballot is the flagged one
    CHECK_THROWS_AS(parse_profile("# nothing\n"), ParseError);
}

TEST_CASE("profile render/parse round trip") {
    std::mt19937_64 rng(5);
    const auto prefs = enumerate_preferences(4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Preference> rows;
        for (int i = 0; i < 3; ++i) rows.push_back(prefs[rng() % prefs.size()]);
        const Profile p(4, rows);
        const NamedProfile back = parse_profile(render_profile(p, default_labels(4)));
        CHECK(back.profile == p);
    }
}

TEST_CASE("rule config parsing covers every family") {
    const auto labels = default_labels(4);
    CHECK(parse_rule_config("family=maxmin\ntiebreak=order:a,b,c,d\n", 2, 4, labels)
              .name() == "A-maxmin(order:a,b,c,d)");
    CHECK(parse_rule_config("family=maxmin\ntiebreak=agent:2\n", 2, 4, labels).name() ==
          "N-maxmin(agent:2)");
    CHECK(parse_rule_config("family = scoring\nscores = 0,0,1,1\ntiebreak = order:a,b,c,d\n",
                            3, 4, labels)
              .name() == "A-scoring(0,0,1,1;order:a,b,c,d)");
    CHECK(parse_rule_config("family=scoring\nscores=dowdall\ntiebreak=agent:1\n", 3, 4,
                            labels)
              .name() == "N-scoring(1/4,1/3,1/2,1;agent:1)");
    // explicit p/q tokens parse to the same exact rationals
    CHECK(parse_rule_config("family=scoring\nscores=1/4,1/3,1/2,1\ntiebreak=agent:1\n", 3,
                            4, labels)
              .as<ScoringSpec>()
              ->scores == ScoreVector::dowdall(4));
    CHECK(parse_rule_config("family=scoring\nscores=approval:2\ntiebreak=order:a,b,c,d\n",
                            3, 4, labels)
              .as<ScoringSpec>()
              ->scores.k_star() == 2);
    CHECK(parse_rule_config("family=condorcet\nvariant=young\ntiebreak=order:a,b,c,d\n", 3,
                            4, labels)
              .name() == "A-young(order:a,b,c,d)");
    CHECK(parse_rule_config("family=successive-elimination\norder=b,a,c,d\n", 3, 4, labels)
              .name() == "successive-elimination(b,a,c,d)");
    CHECK(parse_rule_config("family=dictatorship\nagent=2\n", 3, 4, labels).name() ==
          "dictatorship(agent:2)");
    CHECK(parse_rule_config("family=constant\nalternative=c\n", 3, 4, labels).name() ==
          "constant(c)");
    CHECK(parse_rule_config("family=maxtop\norder=a,b,c,d\n", 3, 4, labels).name() ==
          "maxtop(order:a,b,c,d)");
    CHECK(parse_rule_config("family=bottom-agent\nagent=1\n", 3, 4, labels).name() ==
          "bottom-agent(agent:1)");
    CHECK(parse_rule_config("family=tops-random\nseed=7\n", 3, 4, labels).name() ==
          "tops-random(seed:7)");
    CHECK(parse_rule_config("family=remark4x3\norder=a,b,c\n", 4, 3, default_labels(3))
              .name() == "remark4x3(order:a,b,c)");
    const RuleSpec emv = parse_rule_config(
        "family=extended-majority\nx=a\ny=b\ncommittee=1,2;1,3;2,3\n", 3, 2,
        default_labels(2));
    CHECK(emv.as<ExtendedMajoritySpec>()->committee.is_winning(0b011));
    const RuleSpec star = parse_rule_config(
        "family=maxmin\ntiebreak=relation:a>b,b>c,c>a\n", 2, 3, default_labels(3));
    CHECK(star.as<MaxminSpec>()->tiebreak.star_beats(2, 0));
}

TEST_CASE("rule config diagnostics") {
    const auto labels = default_labels(3);
    CHECK_THROWS_WITH_AS(parse_rule_config("family=maxmin\n", 2, 3, labels),
                         doctest::Contains("tiebreak"), ParseError);
    CHECK_THROWS_WITH_AS(parse_rule_config("tiebreak=order:a,b,c\n", 2, 3, labels),
                         doctest::Contains("family"), ParseError);
    CHECK_THROWS_WITH_AS(parse_rule_config("family=maxmin\nbad line\n", 2, 3, labels),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(parse_rule_config("family=flux-capacitor\n", 2, 3, labels), ParseError);
    CHECK_THROWS_AS(
        parse_rule_config("family=maxmin\ntiebreak=order:a,b\n", 2, 3, labels), ParseError);
    CHECK_THROWS_AS(
        parse_rule_config("family=maxmin\ntiebreak=relation:a>b\n", 2, 3, labels),
        ParseError);
    CHECK_THROWS_AS(parse_rule_config("family=scoring\nscores=1,1,1\ntiebreak=agent:1\n", 2,
                                      3, labels),
                    ParseError);
    // star relations demand two agents; rejected at config level
    CHECK_THROWS_AS(parse_rule_config("family=maxmin\ntiebreak=relation:a>b,b>c,c>a\n", 3,
                                      3, labels),
                    ParseError);
}

TEST_CASE("render_rule_config round trips") {
    const auto labels = default_labels(3);
    for (const char* cfg :
         {"family=maxmin\ntiebreak=order:a,b,c\n", "family=scoring\nscores=1,2,3\ntiebreak=agent:1\n",
          "family=successive-elimination\norder=c,a,b\n",
          "family=condorcet\nvariant=black\ntiebreak=order:a,b,c\n"}) {
        const RuleSpec spec = parse_rule_config(cfg, 2, 3, labels);
        const RuleSpec again = parse_rule_config(render_rule_config(spec), 2, 3, labels);
        CHECK(spec.canonical() == again.canonical());
    }
}

TEST_CASE("witness JSON round trips and rechecks") {
    const auto labels = default_labels(4);
    const RuleSpec rule(2, 4, MaxminSpec{TieBreak::fixed_order(
                                   std::vector<Alt>{0, 1, 2, 3})});
    const Verdict v = check_regret_free(rule, Mode::exhaustive());
    REQUIRE(v.violated);
    const std::string doc = verdict_to_json(rule, Axiom::RegretFree, v, labels);
    CHECK(doc.find("\"version\": \"rgf/1\"") != std::string::npos);

    const ParsedWitness pw = witness_from_json(doc);
    CHECK(pw.spec.canonical() == rule.canonical());
    CHECK(recheck(pw.spec, pw.witness));

    // tamper with the document: the misreport becomes the truthful report
    const auto& w = std::get<DeviationWitness>(v.witness->body);
    Verdict tampered = v;
    auto& tw = std::get<DeviationWitness>(tampered.witness->body);
    tw.misreport = w.profile.agent(w.agent);
    const ParsedWitness pt =
        witness_from_json(verdict_to_json(rule, Axiom::RegretFree, tampered, labels));
    CHECK_FALSE(recheck(pt.spec, pt.witness));
}

TEST_CASE("witness JSON covers the non-deviation kinds") {
    const RuleSpec nmaxmin(2, 3, MaxminSpec{TieBreak::by_agent(1)});
    const Verdict anon =
        check_simple_axiom(nmaxmin, Axiom::Anonymous, Mode::exhaustive());
    REQUIRE(anon.violated);
    const ParsedWitness pa = witness_from_json(
        verdict_to_json(nmaxmin, Axiom::Anonymous, anon, default_labels(3)));
    CHECK(recheck(pa.spec, pa.witness));

    const RuleSpec se(2, 3, SuccessiveEliminationSpec{std::vector<Alt>{0, 1, 2}});
    const Verdict neut = check_simple_axiom(se, Axiom::Neutral, Mode::exhaustive());
    REQUIRE(neut.violated);
    const ParsedWitness pn =
        witness_from_json(verdict_to_json(se, Axiom::Neutral, neut, default_labels(3)));
    CHECK(recheck(pn.spec, pn.witness));

    const RuleSpec constant(2, 3, ConstantSpec{0});
    const Verdict eff = check_simple_axiom(constant, Axiom::Efficient, Mode::exhaustive());
    REQUIRE(eff.violated);
    const ParsedWitness pe = witness_from_json(
        verdict_to_json(constant, Axiom::Efficient, eff, default_labels(3)));
    CHECK(recheck(pe.spec, pe.witness));
}

TEST_CASE("witness JSON rejects malformed documents") {
    CHECK_THROWS_AS(witness_from_json("not json"), ParseError);
    CHECK_THROWS_WITH_AS(witness_from_json("{\"version\": \"rgf/0\"}"),
                         doctest::Contains("rgf/1"), ParseError);
    CHECK_THROWS_AS(witness_from_json("{\"version\": \"rgf/1\"}"), ParseError);
}
