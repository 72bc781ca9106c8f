#pragma once

// Every voting-rule family behind one declarative RuleSpec and one
// evaluator, plus the intermediate scoring functions each family defines.

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rgf/prefcore.hpp"

namespace rgf {

using Rational = boost::rational<long long>;

// Second-stage tie-breaking over a winner set.
struct TieBreak {
    enum class Kind { FixedOrder, Agent, StarRelation };

    Kind kind = Kind::FixedOrder;
    std::vector<Alt> order;  // FixedOrder: best-first strict order on X
    int agent = 0;           // Agent: 1-based index
    // StarRelation: star[a*star_m+b] true iff a beats b; antisymmetric,
    // complete, not necessarily transitive. Only legal where winner sets
    // have size <= 2.
    std::vector<bool> star;
    int star_m = 0;

    static TieBreak fixed_order(std::vector<Alt> order);
    static TieBreak by_agent(int agent_one_based);
    static TieBreak star_relation(int m, std::vector<bool> beats_matrix);

    void validate(int n, int m) const;
    bool star_beats(Alt a, Alt b) const;
    std::string to_string() const;
};

// Weakly increasing scores s_1 <= ... <= s_m (bottom to top), s_1 < s_m.
// Scores are exact rationals; an integer re-scaling with the same argmax
// is kept for evaluation.
class ScoreVector {
  public:
    ScoreVector() = default;
    explicit ScoreVector(std::vector<Rational> bottom_to_top);

    int m() const { return int(s_.size()); }
    const std::vector<Rational>& scores() const { return s_; }
    const std::vector<std::int64_t>& weights() const { return w_; }
    std::int64_t weight_at_rank(int rank) const { return w_[rank - 1]; }

    // Highest position whose score is below the maximum.
    int k_star() const;

    static ScoreVector borda(int m);
    static ScoreVector plurality(int m);
    static ScoreVector negative_plurality(int m);
    static ScoreVector dowdall(int m);
    static ScoreVector k_approval(int m, int k);

    bool operator==(const ScoreVector&) const = default;
    std::string to_string() const;

  private:
    std::vector<Rational> s_;
    std::vector<std::int64_t> w_;
};

// Upward-closed family of winning coalitions over agents 1..n.
class Committee {
  public:
    Committee() = default;
    // Coalitions as bitmasks (bit i-1 = agent i). Validates upward closure.
    Committee(int n, std::vector<bool> winning_by_mask);
    static Committee from_minimal(int n, const std::vector<std::uint32_t>& minimal);
    static Committee majority(int n);

    int n() const { return n_; }
    bool is_winning(std::uint32_t mask) const { return winning_[mask]; }
    std::vector<std::uint32_t> minimal_coalitions() const;

    bool operator==(const Committee&) const = default;

  private:
    int n_ = 0;
    std::vector<bool> winning_;
};

enum class CondorcetVariant { Simpson, Copeland, Young, Dodgson, Fishburn, Black };

const char* to_string(CondorcetVariant v);

// --- rule families -------------------------------------------------------

struct ExtendedMajoritySpec {  // two alternatives; only tops are read
    Committee committee;       // winning coalitions for x
    Alt x = 0, y = 1;
};
struct MaxminSpec {
    TieBreak tiebreak;
};
struct ScoringSpec {
    ScoreVector scores;
    TieBreak tiebreak;
};
struct CondorcetSpec {
    CondorcetVariant variant = CondorcetVariant::Simpson;
    TieBreak tiebreak;
};
struct SuccessiveEliminationSpec {
    std::vector<Alt> agenda;  // best-first; doubles as pairwise tie-breaker
};
struct DictatorshipSpec {
    int agent = 1;
};
struct ConstantSpec {
    Alt alt = 0;
};
struct Remark4x3Spec {  // Condorcet winner, else bottom-count minimizers
    std::vector<Alt> order;
};
struct MaxTopSpec {  // best reported top under a fixed order
    std::vector<Alt> order;
};
struct BottomAgentSpec {  // always the bottom of one agent
    int agent = 1;
};
struct TopsRandomSpec {  // deterministic pseudo-random function of the tops
    std::uint64_t seed = 0;
};

using RuleBody =
    std::variant<ExtendedMajoritySpec, MaxminSpec, ScoringSpec, CondorcetSpec,
                 SuccessiveEliminationSpec, DictatorshipSpec, ConstantSpec,
                 Remark4x3Spec, MaxTopSpec, BottomAgentSpec, TopsRandomSpec>;

struct RuleSpec {
    int n = 0;
    int m = 0;
    RuleBody body;

    RuleSpec() = default;
    RuleSpec(int n_agents, int m_alts, RuleBody b);

    void validate() const;
    std::string name() const;       // short human-readable description
    std::string canonical() const;  // stable serialization used for hashing
    std::uint64_t hash() const;     // FNV-1a over canonical()

    template <class T>
    const T* as() const {
        return std::get_if<T>(&body);
    }
};

// --- intermediate winner-set functions ------------------------------------

int minimal_position(const Profile& profile, Alt x);
std::vector<Alt> maxmin_winners(const Profile& profile);

Rational score(const Profile& profile, Alt x, const ScoreVector& sv);
std::vector<Alt> scoring_winners(const Profile& profile, const ScoreVector& sv);

std::optional<Alt> condorcet_winner(const Profile& profile);
std::optional<Alt> condorcet_winner(const PairwiseTally& tally);
std::vector<Alt> weak_condorcet_winners(const Profile& profile);

int simpson_score(const Profile& profile, Alt a);
int copeland_score(const Profile& profile, Alt a);

inline constexpr int kYoungSubsetGuard = 20;
int young_score(const Profile& profile, Alt a);

inline constexpr std::uint64_t kDodgsonSearchBudget = std::uint64_t(1) << 22;
int dodgson_score(const Profile& profile, Alt a);

std::vector<Alt> fishburn_maximals(const Profile& profile);
std::vector<Alt> black_winners(const Profile& profile);
std::vector<Alt> condorcet_variant_winners(CondorcetVariant v, const Profile& profile);

Alt successive_elimination_winner(const std::vector<Alt>& agenda,
                                  const Profile& profile);

Alt extended_majority_winner(const Committee& committee, Alt x, Alt y,
                             const Profile& profile);

int bottom_count(const Profile& profile, Alt x);

Alt break_tie(const std::vector<Alt>& candidates, const TieBreak& tb,
              const Profile& profile);

// The rule itself: deterministic and total over valid profiles.
Alt evaluate(const RuleSpec& spec, const Profile& profile);

// Winner set of the rule's first stage, plus a tag naming it (used by
// --explain and by tests). Families without a winner-set stage return
// the singleton outcome.
std::vector<Alt> first_stage_winners(const RuleSpec& spec, const Profile& profile,
                                     std::string* stage_name = nullptr);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rgf
