#pragma once

// Decision procedures for the axioms over a finite (n, m) scope. Each
// checker returns Holds with a coverage annotation or Violated with a
// self-contained, re-checkable witness. Violated witnesses are always the
// first violation in the fixed enumeration order (profile, then agent,
// then misreport), independent of the worker count.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rgf/engine.hpp"

namespace rgf {

enum class Axiom {
    StrategyProof,
    RegretFree,
    TopsOnly,
    Monotone,
    MaskinMonotone,
    CondorcetConsistent,
    Efficient,
    Unanimous,
    Anonymous,
    Neutral,
    Dictatorial,
};

const char* axiom_name(Axiom a);
Axiom axiom_from_name(const std::string& name);
bool is_simple_axiom(Axiom a);  // efficient/unanimous/anonymous/neutral/dictatorial

struct Mode {
    enum class Kind { Exhaustive, Sampled };
    Kind kind = Kind::Exhaustive;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    static Mode exhaustive() { return {}; }
    static Mode sampled(std::uint64_t samples, std::uint64_t seed) {
        return {Kind::Sampled, samples, seed};
    }
};

struct Coverage {
    Mode::Kind kind = Mode::Kind::Exhaustive;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    std::string to_string() const;
};

// A profile, a deviating agent and their misreport. Serves the
// manipulation-style axioms; for regret-free violations it additionally
// asserts that every outcome-consistent counterfactual left the deviator
// weakly better off (recheck re-runs that inner quantifier in full).
struct DeviationWitness {
    Profile profile;
    int agent = 0;  // 1-based
    Preference misreport;
};

struct ProfilePairWitness {  // tops-only: equal tops, different outcomes
    Profile profile;
    Profile other;
};

struct AgentPermutationWitness {
    Profile profile;
    std::vector<int> perm;  // 0-based mapping; result agent i holds pref perm[i]
};

struct AlternativePermutationWitness {
    Profile profile;
    std::vector<Alt> perm;  // perm[x] = image of x
};

struct DominatedOutcomeWitness {  // efficiency: dominator beats f(P) for all
    Profile profile;
    Alt dominator = 0;
};

struct ProfileWitness {  // unanimity / Condorcet consistency
    Profile profile;
};

struct NoDictatorWitness {  // one counterexample profile per agent
    std::vector<Profile> counterexamples;
};

struct Witness {
    Axiom axiom = Axiom::StrategyProof;
    std::variant<DeviationWitness, ProfilePairWitness, AgentPermutationWitness,
                 AlternativePermutationWitness, DominatedOutcomeWitness,
                 ProfileWitness, NoDictatorWitness>
        body;
};

struct Verdict {
    bool violated = false;
    Coverage coverage;
    std::optional<Witness> witness;
    std::optional<int> dictator;  // set when dictatorial holds

    bool holds() const { return !violated; }
};

Verdict check_strategy_proof(const RuleSpec& spec, const Mode& mode,
                             const EngineOptions& opts = {});
Verdict check_regret_free(const RuleSpec& spec, const Mode& mode,
                          const EngineOptions& opts = {});
Verdict check_tops_only(const RuleSpec& spec, const Mode& mode,
                        const EngineOptions& opts = {});
Verdict check_monotone(const RuleSpec& spec, const Mode& mode,
                       const EngineOptions& opts = {});
Verdict check_maskin_monotone(const RuleSpec& spec, const Mode& mode,
                              const EngineOptions& opts = {});
Verdict check_condorcet_consistent(const RuleSpec& spec, const Mode& mode,
                                   const EngineOptions& opts = {});
Verdict check_simple_axiom(const RuleSpec& spec, Axiom axiom, const Mode& mode,
                           const EngineOptions& opts = {});

Verdict check_axiom(const RuleSpec& spec, Axiom axiom, const Mode& mode,
                    const EngineOptions& opts = {});

// Re-evaluates the witness's defining quantifiers from scratch; true iff
// the witness certifies a genuine violation for this rule.
bool recheck(const RuleSpec& spec, const Witness& witness,
             const EngineOptions& opts = {});

}  // namespace rgf
