#pragma once

// Performance substrate: outcome-table precomputation, profile encoding,
// sampled iteration and the parallel execution contract. Outcome tables are
// immutable after build and shared read-only across workers.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rgf/rules.hpp"

namespace rgf {

struct EngineOptions {
    int workers = 0;  // 0 = available parallelism
    std::uint64_t table_budget = std::uint64_t(1) << 26;          // table entries
    std::uint64_t exhaustive_budget = 2'000'000;                  // outer profiles
    std::uint64_t enumeration_budget = kDefaultProfileBudget;     // (m!)^n guard
    // Above this inner-subprofile-space size, regret-free checks on
    // fixed-order scoring rules switch to the score-class reduction.
    std::uint64_t direct_inner_budget = std::uint64_t(1) << 16;
    bool force_scoring_classes = false;  // test knob
    bool disable_table = false;          // test knob: force direct evaluation

    int effective_workers() const;
};

std::uint64_t encode(const Profile& profile);
Profile decode(int n, int m, std::uint64_t code);

// Dense memo of evaluate() over the whole profile space, indexed by
// mixed-radix profile code (agent-major, lexicographic preference order).
struct OutcomeTable {
    RuleSpec spec;
    std::vector<std::uint8_t> outcomes;

    Alt at(std::uint64_t code) const { return outcomes[code]; }
};

OutcomeTable build_outcome_table(const RuleSpec& spec, const EngineOptions& opts = {});

// On-disk cache: "RGF1" magic, n, m, rule-spec hash, then raw outcome
// bytes; all integers little-endian. Loading re-validates the hash.
void save_outcome_table(const OutcomeTable& table, const std::string& path);
std::optional<OutcomeTable> load_outcome_table(const RuleSpec& spec,
                                               const std::string& path);

// Rule evaluation service: table lookups when the space fits the budget,
// direct evaluation otherwise. Immutable and shareable across workers.
class Evaluator {
  public:
    Evaluator(RuleSpec spec, const EngineOptions& opts = {});

    const RuleSpec& spec() const { return spec_; }
    const ProfileEnumeration& space() const { return space_; }
    bool table_backed() const { return table_.has_value(); }

    Alt operator()(std::uint64_t code) const {
        return table_ ? table_->outcomes[code] : evaluate(spec_, space_.at(code));
    }

  private:
    RuleSpec spec_;
    ProfileEnumeration space_;
    std::optional<OutcomeTable> table_;
};

// Deterministic uniform profile codes: per-agent uniform ranking draws from
// a splitmix64 stream. Identical sequence for identical (n, m, count, seed).
std::vector<std::uint64_t> sampled_profile_codes(int n, int m, std::uint64_t count,
                                                 std::uint64_t seed);
std::vector<Profile> sampled_profiles(int n, int m, std::uint64_t count,
                                      std::uint64_t seed);

// Runs fn(begin, end) over contiguous chunks of [0, total) on `workers`
// threads. Chunk boundaries are independent of the worker count.
void parallel_chunks(std::uint64_t total, int workers,
                     const std::function<void(std::uint64_t, std::uint64_t)>& fn);

}  // namespace rgf
