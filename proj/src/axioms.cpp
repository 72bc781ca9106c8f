#include "rgf/axioms.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace rgf {

const char* axiom_name(Axiom a) {
    switch (a) {
        case Axiom::StrategyProof: return "strategy-proof";
        case Axiom::RegretFree: return "regret-free";
        case Axiom::TopsOnly: return "tops-only";
        case Axiom::Monotone: return "monotone";
        case Axiom::MaskinMonotone: return "maskin-monotone";
        case Axiom::CondorcetConsistent: return "condorcet-consistent";
        case Axiom::Efficient: return "efficient";
        case Axiom::Unanimous: return "unanimous";
        case Axiom::Anonymous: return "anonymous";
        case Axiom::Neutral: return "neutral";
        case Axiom::Dictatorial: return "dictatorial";
    }
    return "?";
}

Axiom axiom_from_name(const std::string& name) {
    static const std::map<std::string, Axiom> table = {
        {"strategy-proof", Axiom::StrategyProof},
        {"regret-free", Axiom::RegretFree},
        {"tops-only", Axiom::TopsOnly},
        {"monotone", Axiom::Monotone},
        {"maskin-monotone", Axiom::MaskinMonotone},
        {"condorcet-consistent", Axiom::CondorcetConsistent},
        {"efficient", Axiom::Efficient},
        {"unanimous", Axiom::Unanimous},
        {"anonymous", Axiom::Anonymous},
        {"neutral", Axiom::Neutral},
        {"dictatorial", Axiom::Dictatorial},
    };
    auto it = table.find(name);
    if (it == table.end()) throw DomainError("unknown axiom: " + name);
    return it->second;
}

bool is_simple_axiom(Axiom a) {
    return a == Axiom::Efficient || a == Axiom::Unanimous || a == Axiom::Anonymous ||
           a == Axiom::Neutral || a == Axiom::Dictatorial;
}

std::string Coverage::to_string() const {
    if (kind == Mode::Kind::Exhaustive) return "exhaustive";
    return "sampled(" + std::to_string(samples) + "," + std::to_string(seed) + ")";
}

namespace {

// --- shared checker context -------------------------------------------------

struct Ctx {
    RuleSpec spec;
    EngineOptions opts;
    Mode mode;
    Evaluator eval;
    const PrefUniverse& U;
    int n, m, count;
    std::vector<std::uint64_t> samples;  // outer codes in sampled mode

    Ctx(const RuleSpec& s, const Mode& md, const EngineOptions& o)
        : spec(s), opts(o), mode(md), eval(s, o), U(PrefUniverse::get(s.m)),
          n(s.n), m(s.m), count(int(factorial(s.m))) {
        if (mode.kind == Mode::Kind::Exhaustive) {
            if (eval.space().size() > opts.exhaustive_budget)
                throw SpaceTooLargeError(
                    "space too large: exhaustive mode scans (m!)^n profiles beyond the "
                    "configured budget; use sampled mode");
        } else {
            samples = sampled_profile_codes(n, m, mode.samples, mode.seed);
        }
    }

    std::uint64_t outer_size() const {
        return mode.kind == Mode::Kind::Exhaustive ? eval.space().size()
                                                   : std::uint64_t(samples.size());
    }
    std::uint64_t outer_code(std::uint64_t t) const {
        return mode.kind == Mode::Kind::Exhaustive ? t : samples[t];
    }
    Coverage coverage() const { return Coverage{mode.kind, mode.samples, mode.seed}; }

    Verdict holds() const { return Verdict{false, coverage(), std::nullopt, std::nullopt}; }
    Verdict violated(Witness w) const {
        return Verdict{true, coverage(), std::move(w), std::nullopt};
    }
};

// Searches outer indices [0, T); make_step() builds one stateful step
// functor per worker. Result is the witness with the smallest index,
// identical for every worker count.
template <typename W, typename MakeStep>
std::optional<W> parallel_first(std::uint64_t T, int workers, MakeStep&& make_step) {
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    std::mutex mu;
    std::optional<W> result;
    auto run = [&] {
        auto step = make_step();
        for (;;) {
            const std::uint64_t t = next.fetch_add(1);
            if (t >= T || t > best.load(std::memory_order_acquire)) break;
            if (std::optional<W> w = step(t)) {
                std::lock_guard<std::mutex> lock(mu);
                if (t < best.load(std::memory_order_acquire)) {
                    best.store(t, std::memory_order_release);
                    result = std::move(*w);
                }
            }
        }
    };
    const int w = std::max(1, workers);
    if (w == 1 || T <= 1) {
        run();
    } else {
        std::vector<std::thread> threads;
        for (int i = 0; i < w; ++i) threads.emplace_back(run);
        for (std::thread& th : threads) th.join();
    }
    return result;
}

// Iterates the (m!)^(n-1) profile codes where 1-based agent i reports
// digit di; stops early when fn returns false.
template <typename Fn>
void for_each_subprofile(const ProfileEnumeration& sp, int n, int count, int i,
                         int di, Fn&& fn) {
    std::vector<std::uint64_t> strides;
    for (int j = 1; j <= n; ++j)
        if (j != i) strides.push_back(sp.stride(j));
    std::uint64_t total = 1;
    for (size_t k = 0; k < strides.size(); ++k) total *= std::uint64_t(count);
    const std::uint64_t fixed = std::uint64_t(di) * sp.stride(i);
    for (std::uint64_t s = 0; s < total; ++s) {
        std::uint64_t code = fixed, rem = s;
        for (size_t k = strides.size(); k-- > 0;) {
            code += (rem % count) * strides[k];
            rem /= count;
        }
        if (!fn(code)) return;
    }
}

std::uint64_t subspace_size(int count, int n) {
    std::uint64_t total = 1;
    for (int k = 1; k < n; ++k) {
        if (total > (std::numeric_limits<std::uint64_t>::max() / 2) / std::uint64_t(count))
            return std::numeric_limits<std::uint64_t>::max();
        total *= std::uint64_t(count);
    }
    return total;
}

std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Witness deviation_witness(Axiom axiom, const Ctx& ctx, std::uint64_t code, int agent,
                          int misreport_digit) {
    return Witness{axiom, DeviationWitness{ctx.eval.space().at(code), agent,
                                           ctx.U.pref(misreport_digit)}};
}

// --- score-class reduction for fixed-order scoring rules --------------------
//
// Two ballots with equal per-alternative score contributions are
// interchangeable inside any profile, so quantifiers over subprofiles
// factor through contribution classes (each class is nonempty). This makes
// the regret-free inner scan feasible when (m!)^(n-1) is out of reach.

struct ScoringClasses {
    int m = 0, count = 0, classes = 0;
    std::vector<int> class_of;                       // per preference index
    std::vector<std::array<std::int64_t, 8>> rep;    // contribution per class
    std::vector<int> min_index;                      // first member per class
    std::array<int, 8> order_pos{};                  // tie-break rank per alt

    ScoringClasses(const ScoringSpec& sc, int m_alts) : m(m_alts) {
        const PrefUniverse& U = PrefUniverse::get(m);
        count = U.count();
        for (int pos = 0; pos < m; ++pos) order_pos[sc.tiebreak.order[pos]] = pos;
        std::map<std::array<std::int64_t, 8>, int> ids;
        class_of.resize(count);
        for (int q = 0; q < count; ++q) {
            std::array<std::int64_t, 8> v{};
            for (Alt a = 0; a < m; ++a) v[a] = sc.scores.weight_at_rank(U.rank(q, a));
            auto [it, inserted] = ids.emplace(v, classes);
            if (inserted) {
                rep.push_back(v);
                min_index.push_back(q);
                ++classes;
            }
            class_of[q] = it->second;
        }
    }

    Alt argmax(const std::array<std::int64_t, 8>& sum) const {
        Alt best = 0;
        bool have = false;
        for (Alt a = 0; a < m; ++a) {
            if (!have || sum[a] > sum[best] ||
                (sum[a] == sum[best] && order_pos[a] < order_pos[best])) {
                best = a;
                have = true;
            }
        }
        return best;
    }
};

// Outcome sets over all outcome-consistent subprofiles, per
// (true-ballot class, observed outcome, misreport class).
class ClassedRegretTable {
  public:
    ClassedRegretTable(const ScoringClasses& cls, int n) : cls_(cls) {
        const int C = cls.classes;
        const std::uint64_t tuples = subspace_size(C, n);
        if (tuples > (std::uint64_t(1) << 27))
            throw SpaceTooLargeError(
                "space too large: score-class tuple space exceeds the budget");
        masks_.assign(size_t(C) * cls.m * C, 0);
        std::vector<Alt> out(C);
        std::vector<int> tup(n - 1, 0);
        for (std::uint64_t s = 0; s < tuples; ++s) {
            std::array<std::int64_t, 8> sum{};
            std::uint64_t rem = s;
            for (int k = 0; k < n - 1; ++k) {
                const int c = int(rem % C);
                rem /= C;
                for (Alt a = 0; a < cls.m; ++a) sum[a] += cls.rep[c][a];
            }
            for (int c = 0; c < C; ++c) {
                std::array<std::int64_t, 8> total = sum;
                for (Alt a = 0; a < cls.m; ++a) total[a] += cls.rep[c][a];
                out[c] = cls.argmax(total);
            }
            for (int ct = 0; ct < C; ++ct) {
                const size_t base = (size_t(ct) * cls.m + out[ct]) * C;
                for (int c2 = 0; c2 < C; ++c2) masks_[base + c2] |= std::uint8_t(1u << out[c2]);
            }
        }
    }

    // Bitmask of outcomes reachable under misreport class c2 across
    // subprofiles consistent with (true class ct, observed outcome w).
    std::uint8_t outcomes(int ct, Alt w, int c2) const {
        return masks_[(size_t(ct) * cls_.m + w) * cls_.classes + c2];
    }

  private:
    const ScoringClasses& cls_;
    std::vector<std::uint8_t> masks_;
};

bool use_scoring_classes(const Ctx& ctx) {
    const ScoringSpec* sc = ctx.spec.as<ScoringSpec>();
    if (!sc || sc->tiebreak.kind != TieBreak::Kind::FixedOrder) return false;
    if (ctx.opts.force_scoring_classes) return true;
    return subspace_size(ctx.count, ctx.n) > ctx.opts.direct_inner_budget;
}

std::optional<Witness> classed_regret_step(const Ctx& ctx, const ScoringClasses& cls,
                                           const ClassedRegretTable& table,
                                           std::uint64_t code) {
    const ProfileEnumeration& sp = ctx.eval.space();
    std::vector<int> digits(ctx.n);
    std::array<std::int64_t, 8> total{};
    for (int i = 1; i <= ctx.n; ++i) {
        digits[i - 1] = sp.digit(code, i);
        for (Alt a = 0; a < ctx.m; ++a) total[a] += cls.rep[cls.class_of[digits[i - 1]]][a];
    }
    const Alt w = cls.argmax(total);
    for (int i = 1; i <= ctx.n; ++i) {
        const int di = digits[i - 1];
        std::array<std::int64_t, 8> base = total;
        for (Alt a = 0; a < ctx.m; ++a) base[a] -= cls.rep[cls.class_of[di]][a];
        const int rank_w = ctx.U.rank(di, w);
        int best_misreport = -1;
        for (int c2 = 0; c2 < cls.classes; ++c2) {
            std::array<std::int64_t, 8> dev = base;
            for (Alt a = 0; a < ctx.m; ++a) dev[a] += cls.rep[c2][a];
            const Alt g = cls.argmax(dev);
            if (ctx.U.rank(di, g) <= rank_w) continue;  // not profitable
            const std::uint8_t mask = table.outcomes(cls.class_of[di], w, c2);
            bool blocked = false;
            for (Alt z = 0; z < ctx.m && !blocked; ++z)
                if ((mask >> z) & 1u)
                    if (rank_w > ctx.U.rank(di, z)) blocked = true;
            if (blocked) continue;
            int candidate = cls.min_index[c2];
            if (best_misreport < 0 || candidate < best_misreport) best_misreport = candidate;
        }
        if (best_misreport >= 0)
            return deviation_witness(Axiom::RegretFree, ctx, code, i, best_misreport);
    }
    return std::nullopt;
}

// --- generic manipulation-style scans ----------------------------------------

std::optional<Witness> strategy_proof_step(const Ctx& ctx, std::uint64_t code) {
    const ProfileEnumeration& sp = ctx.eval.space();
    const Alt w = ctx.eval(code);
    for (int i = 1; i <= ctx.n; ++i) {
        const int di = sp.digit(code, i);
        const int rank_w = ctx.U.rank(di, w);
        for (int d2 = 0; d2 < ctx.count; ++d2) {
            if (d2 == di) continue;
            const Alt g = ctx.eval(sp.with_digit(code, i, d2));
            if (ctx.U.rank(di, g) > rank_w)
                return deviation_witness(Axiom::StrategyProof, ctx, code, i, d2);
        }
    }
    return std::nullopt;
}

// Tri-state memo of the inner quantifier, keyed by (agent, true ballot,
// observed outcome, misreport); the key fully determines the scan.
struct RegretMemo {
    int count, m;
    std::vector<std::int8_t> state;  // -1 unknown, 0 unblocked, 1 blocked
    RegretMemo(int n, int count_, int m_)
        : count(count_), m(m_), state(size_t(n) * count_ * m_ * count_, -1) {}
    std::int8_t& at(int i, int di, Alt w, int d2) {
        return state[((size_t(i - 1) * count + di) * m + w) * count + d2];
    }
};

bool regret_blocked(const Ctx& ctx, RegretMemo& memo, int i, int di, Alt w, int d2) {
    std::int8_t& cell = memo.at(i, di, w, d2);
    if (cell >= 0) return cell == 1;
    const ProfileEnumeration& sp = ctx.eval.space();
    const int rank_w = ctx.U.rank(di, w);
    bool blocked = false;
    for_each_subprofile(sp, ctx.n, ctx.count, i, di, [&](std::uint64_t q) {
        if (ctx.eval(q) == w) {
            const Alt g = ctx.eval(sp.with_digit(q, i, d2));
            if (rank_w > ctx.U.rank(di, g)) {
                blocked = true;
                return false;
            }
        }
        return true;
    });
    cell = blocked ? 1 : 0;
    return blocked;
}

std::optional<Witness> regret_free_step(const Ctx& ctx, RegretMemo& memo,
                                        std::uint64_t code) {
    const ProfileEnumeration& sp = ctx.eval.space();
    const Alt w = ctx.eval(code);
    for (int i = 1; i <= ctx.n; ++i) {
        const int di = sp.digit(code, i);
        const int rank_w = ctx.U.rank(di, w);
        for (int d2 = 0; d2 < ctx.count; ++d2) {
            if (d2 == di) continue;
            const Alt g = ctx.eval(sp.with_digit(code, i, d2));
            if (ctx.U.rank(di, g) <= rank_w) continue;  // not profitable
            if (!regret_blocked(ctx, memo, i, di, w, d2))
                return deviation_witness(Axiom::RegretFree, ctx, code, i, d2);
        }
    }
    return std::nullopt;
}

bool is_monotonic_transformation(const PrefUniverse& U, int /*m*/, int from, int to,
                                 int frozen_up_to_rank) {
    const Preference& a = U.pref(from);
    const Preference& b = U.pref(to);
    for (int r = 1; r <= frozen_up_to_rank; ++r)
        if (a.alternative_at(r) != b.alternative_at(r)) return false;
    return true;
}

bool is_maskin_transformation(const PrefUniverse& U, int m, int from, int to, Alt a) {
    // Everything above a under the new ballot was above a under the old one.
    const int new_rank = U.rank(to, a);
    for (Alt x = 0; x < m; ++x)
        if (U.rank(to, x) > new_rank && U.rank(from, x) <= U.rank(from, a)) return false;
    return true;
}

std::optional<Witness> monotone_step(const Ctx& ctx, std::uint64_t code) {
    const ProfileEnumeration& sp = ctx.eval.space();
    const Alt w = ctx.eval(code);
    for (int i = 1; i <= ctx.n; ++i) {
        const int di = sp.digit(code, i);
        const int rank_w = ctx.U.rank(di, w);
        if (rank_w == 1) continue;  // nothing below the outcome to promote
        for (int d2 = 0; d2 < ctx.count; ++d2) {
            if (d2 == di || !is_monotonic_transformation(ctx.U, ctx.m, di, d2, rank_w))
                continue;
            const Alt b = ctx.eval(sp.with_digit(code, i, d2));
            if (b != w && rank_w > ctx.U.rank(di, b))
                return deviation_witness(Axiom::Monotone, ctx, code, i, d2);
        }
    }
    return std::nullopt;
}

std::optional<Witness> maskin_step(const Ctx& ctx, std::uint64_t code) {
    const ProfileEnumeration& sp = ctx.eval.space();
    const Alt w = ctx.eval(code);
    for (int i = 1; i <= ctx.n; ++i) {
        const int di = sp.digit(code, i);
        for (int d2 = 0; d2 < ctx.count; ++d2) {
            if (d2 == di || !is_maskin_transformation(ctx.U, ctx.m, di, d2, w)) continue;
            if (ctx.eval(sp.with_digit(code, i, d2)) != w)
                return deviation_witness(Axiom::MaskinMonotone, ctx, code, i, d2);
        }
    }
    return std::nullopt;
}

std::optional<Witness> condorcet_step(const Ctx& ctx, std::uint64_t code) {
    const Profile p = ctx.eval.space().at(code);
    const std::optional<Alt> cw = condorcet_winner(p);
    if (cw && ctx.eval(code) != *cw)
        return Witness{Axiom::CondorcetConsistent, ProfileWitness{p}};
    return std::nullopt;
}

std::optional<Witness> efficient_step(const Ctx& ctx, std::uint64_t code) {
    const ProfileEnumeration& sp = ctx.eval.space();
    const Alt w = ctx.eval(code);
    for (Alt y = 0; y < ctx.m; ++y) {
        if (y == w) continue;
        bool dominates = true;
        for (int i = 1; i <= ctx.n && dominates; ++i) {
            const int di = sp.digit(code, i);
            if (ctx.U.rank(di, y) < ctx.U.rank(di, w)) dominates = false;
        }
        if (dominates)
            return Witness{Axiom::Efficient, DominatedOutcomeWitness{sp.at(code), y}};
    }
    return std::nullopt;
}

std::optional<Witness> unanimous_step(const Ctx& ctx, std::uint64_t code) {
    const ProfileEnumeration& sp = ctx.eval.space();
    const Alt top = ctx.U.top(sp.digit(code, 1));
    for (int i = 2; i <= ctx.n; ++i)
        if (ctx.U.top(sp.digit(code, i)) != top) return std::nullopt;
    if (ctx.eval(code) != top)
        return Witness{Axiom::Unanimous, ProfileWitness{sp.at(code)}};
    return std::nullopt;
}

std::optional<Witness> anonymous_step(const Ctx& ctx,
                                      const std::vector<std::vector<int>>& perms,
                                      std::uint64_t code) {
    const ProfileEnumeration& sp = ctx.eval.space();
    const Alt w = ctx.eval(code);
    std::vector<int> digits(ctx.n);
    for (int i = 1; i <= ctx.n; ++i) digits[i - 1] = sp.digit(code, i);
    for (const std::vector<int>& pi : perms) {
        std::uint64_t permuted = 0;
        for (int i = 0; i < ctx.n; ++i)
            permuted += std::uint64_t(digits[pi[i]]) * sp.stride(i + 1);
        if (permuted == code) continue;
        if (ctx.eval(permuted) != w)
            return Witness{Axiom::Anonymous, AgentPermutationWitness{sp.at(code), pi}};
    }
    return std::nullopt;
}

std::optional<Witness> neutral_step(const Ctx& ctx,
                                    const std::vector<std::vector<int>>& perms,
                                    std::uint64_t code) {
    const ProfileEnumeration& sp = ctx.eval.space();
    const Profile p = sp.at(code);
    const Alt w = ctx.eval(code);
    for (const std::vector<int>& pi_int : perms) {
        std::vector<Alt> pi(pi_int.begin(), pi_int.end());
        std::vector<Preference> prefs;
        prefs.reserve(ctx.n);
        for (const Preference& q : p.prefs) prefs.push_back(permute_alternatives(pi, q));
        const Profile permuted(ctx.m, std::move(prefs));
        if (ctx.eval(sp.index_of(permuted)) != pi[w])
            return Witness{Axiom::Neutral, AlternativePermutationWitness{p, pi}};
    }
    return std::nullopt;
}

Verdict run_per_profile_axiom(
    const Ctx& ctx,
    const std::function<std::optional<Witness>(std::uint64_t)>& step) {
    auto found = parallel_first<Witness>(
        ctx.outer_size(), ctx.opts.effective_workers(), [&] {
            return [&](std::uint64_t t) { return step(ctx.outer_code(t)); };
        });
    if (found) return ctx.violated(std::move(*found));
    return ctx.holds();
}

}  // namespace

// --- public checkers ---------------------------------------------------------

Verdict check_strategy_proof(const RuleSpec& spec, const Mode& mode,
                             const EngineOptions& opts) {
    Ctx ctx(spec, mode, opts);
    return run_per_profile_axiom(
        ctx, [&](std::uint64_t code) { return strategy_proof_step(ctx, code); });
}

Verdict check_regret_free(const RuleSpec& spec, const Mode& mode,
                          const EngineOptions& opts) {
    Ctx ctx(spec, mode, opts);
    if (use_scoring_classes(ctx)) {
        const ScoringClasses cls(*ctx.spec.as<ScoringSpec>(), ctx.m);
        const ClassedRegretTable table(cls, ctx.n);
        return run_per_profile_axiom(ctx, [&](std::uint64_t code) {
            return classed_regret_step(ctx, cls, table, code);
        });
    }
    if (subspace_size(ctx.count, ctx.n) > ctx.opts.direct_inner_budget)
        throw SpaceTooLargeError(
            "space too large: the (m!)^(n-1) inner subprofile scan exceeds the budget");
    auto found = parallel_first<Witness>(
        ctx.outer_size(), ctx.opts.effective_workers(), [&] {
            auto memo = std::make_shared<RegretMemo>(ctx.n, ctx.count, ctx.m);
            return [&ctx, memo](std::uint64_t t) {
                return regret_free_step(ctx, *memo, ctx.outer_code(t));
            };
        });
    if (found) return ctx.violated(std::move(*found));
    return ctx.holds();
}

Verdict check_tops_only(const RuleSpec& spec, const Mode& mode,
                        const EngineOptions& opts) {
    Ctx ctx(spec, mode, opts);
    const ProfileEnumeration& sp = ctx.eval.space();
    if (mode.kind == Mode::Kind::Exhaustive) {
        // Single pass, grouped by top vector; first conflict in code order.
        std::map<std::uint64_t, std::uint64_t> first_seen;
        for (std::uint64_t code = 0; code < sp.size(); ++code) {
            std::uint64_t key = 0;
            for (int i = 1; i <= ctx.n; ++i)
                key = key * ctx.m + ctx.U.top(sp.digit(code, i));
            auto [it, inserted] = first_seen.emplace(key, code);
            if (!inserted && ctx.eval(it->second) != ctx.eval(code))
                return ctx.violated(Witness{
                    Axiom::TopsOnly, ProfilePairWitness{sp.at(it->second), sp.at(code)}});
        }
        return ctx.holds();
    }
    // Sampled outer profile; the matching-tops scan stays exhaustive.
    std::vector<std::vector<int>> by_top(ctx.m);
    for (int q = 0; q < ctx.count; ++q) by_top[ctx.U.top(q)].push_back(q);
    std::uint64_t inner = 1;
    for (int i = 0; i < ctx.n; ++i) inner *= std::uint64_t(by_top[0].size());
    if (inner > ctx.opts.direct_inner_budget)
        throw SpaceTooLargeError(
            "space too large: the matching-tops scan exceeds the budget");
    return run_per_profile_axiom(ctx, [&](std::uint64_t code) -> std::optional<Witness> {
        const Alt w = ctx.eval(code);
        std::vector<const std::vector<int>*> lists;
        for (int i = 1; i <= ctx.n; ++i)
            lists.push_back(&by_top[ctx.U.top(sp.digit(code, i))]);
        std::uint64_t total = 1;
        for (auto* l : lists) total *= std::uint64_t(l->size());
        for (std::uint64_t s = 0; s < total; ++s) {
            std::uint64_t rem = s, other = 0;
            for (int i = ctx.n; i-- > 0;) {
                other += std::uint64_t((*lists[i])[rem % lists[i]->size()]) * sp.stride(i + 1);
                rem /= lists[i]->size();
            }
            if (other != code && ctx.eval(other) != w)
                return Witness{Axiom::TopsOnly,
                               ProfilePairWitness{sp.at(code), sp.at(other)}};
        }
        return std::nullopt;
    });
}

Verdict check_monotone(const RuleSpec& spec, const Mode& mode,
                       const EngineOptions& opts) {
    Ctx ctx(spec, mode, opts);
    return run_per_profile_axiom(
        ctx, [&](std::uint64_t code) { return monotone_step(ctx, code); });
}

Verdict check_maskin_monotone(const RuleSpec& spec, const Mode& mode,
                              const EngineOptions& opts) {
    Ctx ctx(spec, mode, opts);
    return run_per_profile_axiom(
        ctx, [&](std::uint64_t code) { return maskin_step(ctx, code); });
}

Verdict check_condorcet_consistent(const RuleSpec& spec, const Mode& mode,
                                   const EngineOptions& opts) {
    Ctx ctx(spec, mode, opts);
    return run_per_profile_axiom(
        ctx, [&](std::uint64_t code) { return condorcet_step(ctx, code); });
}

Verdict check_simple_axiom(const RuleSpec& spec, Axiom axiom, const Mode& mode,
                           const EngineOptions& opts) {
    Ctx ctx(spec, mode, opts);
    switch (axiom) {
        case Axiom::Efficient:
            return run_per_profile_axiom(
                ctx, [&](std::uint64_t code) { return efficient_step(ctx, code); });
        case Axiom::Unanimous:
            return run_per_profile_axiom(
                ctx, [&](std::uint64_t code) { return unanimous_step(ctx, code); });
        case Axiom::Anonymous: {
            if (ctx.n > 8) throw SpaceTooLargeError("space too large: n! agent permutations");
            const auto perms = all_permutations(ctx.n);
            return run_per_profile_axiom(ctx, [&](std::uint64_t code) {
                return anonymous_step(ctx, perms, code);
            });
        }
        case Axiom::Neutral: {
            const auto perms = all_permutations(ctx.m);
            return run_per_profile_axiom(ctx, [&](std::uint64_t code) {
                return neutral_step(ctx, perms, code);
            });
        }
        case Axiom::Dictatorial: {
            NoDictatorWitness counterexamples;
            for (int i = 1; i <= ctx.n; ++i) {
                auto bad = parallel_first<std::uint64_t>(
                    ctx.outer_size(), ctx.opts.effective_workers(), [&] {
                        return [&ctx, i](std::uint64_t t) -> std::optional<std::uint64_t> {
                            const std::uint64_t code = ctx.outer_code(t);
                            const Alt top =
                                ctx.U.top(ctx.eval.space().digit(code, i));
                            if (ctx.eval(code) != top) return code;
                            return std::nullopt;
                        };
                    });
                if (!bad) {
                    Verdict v = ctx.holds();
                    v.dictator = i;
                    return v;
                }
                counterexamples.counterexamples.push_back(ctx.eval.space().at(*bad));
            }
            return ctx.violated(Witness{Axiom::Dictatorial, std::move(counterexamples)});
        }
        default:
            throw DomainError("not a simple axiom");
    }
}

Verdict check_axiom(const RuleSpec& spec, Axiom axiom, const Mode& mode,
                    const EngineOptions& opts) {
    switch (axiom) {
        case Axiom::StrategyProof: return check_strategy_proof(spec, mode, opts);
        case Axiom::RegretFree: return check_regret_free(spec, mode, opts);
        case Axiom::TopsOnly: return check_tops_only(spec, mode, opts);
        case Axiom::Monotone: return check_monotone(spec, mode, opts);
        case Axiom::MaskinMonotone: return check_maskin_monotone(spec, mode, opts);
        case Axiom::CondorcetConsistent: return check_condorcet_consistent(spec, mode, opts);
        default: return check_simple_axiom(spec, axiom, mode, opts);
    }
}

// --- recheck -------------------------------------------------------------------

namespace {

struct RecheckVisitor {
    const RuleSpec& spec;
    const EngineOptions& opts;
    Axiom axiom;

    bool shape_ok(const Profile& p) const {
        return p.n() == spec.n && p.m == spec.m;
    }

    bool operator()(const DeviationWitness& w) const {
        if (!shape_ok(w.profile) || w.agent < 1 || w.agent > spec.n ||
            w.misreport.m() != spec.m)
            throw DomainError("witness does not match the rule's shape");
        const PrefUniverse& U = PrefUniverse::get(spec.m);
        const int i = w.agent;
        const int di = U.index_of(w.profile.agent(i));
        const int d2 = U.index_of(w.misreport);
        if (d2 == di) return false;
        Profile deviated_profile = w.profile;
        deviated_profile.prefs[i - 1] = w.misreport;
        const Alt outcome = evaluate(spec, w.profile);
        const Alt deviated = evaluate(spec, deviated_profile);
        const int rank_w = U.rank(di, outcome);
        switch (axiom) {
            case Axiom::StrategyProof:
                return U.rank(di, deviated) > rank_w;
            case Axiom::Monotone:
                return is_monotonic_transformation(U, spec.m, di, d2, rank_w) &&
                       deviated != outcome && rank_w > U.rank(di, deviated);
            case Axiom::MaskinMonotone:
                return is_maskin_transformation(U, spec.m, di, d2, outcome) &&
                       deviated != outcome;
            case Axiom::RegretFree: {
                if (U.rank(di, deviated) <= rank_w) return false;  // not profitable
                const int count = U.count();
                const ScoringSpec* sc = spec.as<ScoringSpec>();
                const bool classed =
                    sc && sc->tiebreak.kind == TieBreak::Kind::FixedOrder &&
                    (opts.force_scoring_classes ||
                     subspace_size(count, spec.n) > opts.direct_inner_budget);
                if (classed) {
                    const ScoringClasses cls(*sc, spec.m);
                    const ClassedRegretTable table(cls, spec.n);
                    const std::uint8_t mask =
                        table.outcomes(cls.class_of[di], outcome, cls.class_of[d2]);
                    for (Alt z = 0; z < spec.m; ++z)
                        if ((mask >> z) & 1u)
                            if (rank_w > U.rank(di, z)) return false;
                    return true;
                }
                if (subspace_size(count, spec.n) > opts.direct_inner_budget)
                    throw SpaceTooLargeError(
                        "space too large: regret-free recheck inner scan");
                Evaluator eval(spec, opts);
                const ProfileEnumeration& sp = eval.space();
                bool safe_everywhere = true;
                for_each_subprofile(sp, spec.n, count, i, di, [&](std::uint64_t q) {
                    if (eval(q) == outcome) {
                        const Alt g = eval(sp.with_digit(q, i, d2));
                        if (rank_w > U.rank(di, g)) {
                            safe_everywhere = false;
                            return false;
                        }
                    }
                    return true;
                });
                return safe_everywhere;
            }
            default:
                throw DomainError("deviation witness for a non-deviation axiom");
        }
    }

    bool operator()(const ProfilePairWitness& w) const {
        if (axiom != Axiom::TopsOnly) throw DomainError("profile-pair witness mismatch");
        if (!shape_ok(w.profile) || !shape_ok(w.other))
            throw DomainError("witness does not match the rule's shape");
        for (int i = 1; i <= spec.n; ++i)
            if (w.profile.agent(i).top() != w.other.agent(i).top()) return false;
        return evaluate(spec, w.profile) != evaluate(spec, w.other);
    }

    bool operator()(const AgentPermutationWitness& w) const {
        if (axiom != Axiom::Anonymous) throw DomainError("agent-permutation witness mismatch");
        if (!shape_ok(w.profile)) throw DomainError("witness does not match the rule's shape");
        const Profile permuted = permute_agents(w.perm, w.profile);
        return evaluate(spec, w.profile) != evaluate(spec, permuted);
    }

    bool operator()(const AlternativePermutationWitness& w) const {
        if (axiom != Axiom::Neutral) throw DomainError("alternative-permutation witness mismatch");
        if (!shape_ok(w.profile)) throw DomainError("witness does not match the rule's shape");
        std::vector<Preference> prefs;
        for (const Preference& q : w.profile.prefs)
            prefs.push_back(permute_alternatives(w.perm, q));
        const Profile permuted(spec.m, std::move(prefs));
        return w.perm[evaluate(spec, w.profile)] != evaluate(spec, permuted);
    }

    bool operator()(const DominatedOutcomeWitness& w) const {
        if (axiom != Axiom::Efficient) throw DomainError("dominated-outcome witness mismatch");
        if (!shape_ok(w.profile)) throw DomainError("witness does not match the rule's shape");
        const Alt outcome = evaluate(spec, w.profile);
        if (w.dominator >= spec.m || w.dominator == outcome) return false;
        for (const Preference& p : w.profile.prefs)
            if (!p.prefers(w.dominator, outcome)) return false;
        return true;
    }

    bool operator()(const ProfileWitness& w) const {
        if (!shape_ok(w.profile)) throw DomainError("witness does not match the rule's shape");
        const Alt outcome = evaluate(spec, w.profile);
        if (axiom == Axiom::Unanimous) {
            const Alt top = w.profile.agent(1).top();
            for (const Preference& p : w.profile.prefs)
                if (p.top() != top) return false;
            return outcome != top;
        }
        if (axiom == Axiom::CondorcetConsistent) {
            const std::optional<Alt> cw = condorcet_winner(w.profile);
            return cw && outcome != *cw;
        }
        throw DomainError("profile witness for an unexpected axiom");
    }

    bool operator()(const NoDictatorWitness& w) const {
        if (axiom != Axiom::Dictatorial) throw DomainError("no-dictator witness mismatch");
        if (int(w.counterexamples.size()) != spec.n)
            throw DomainError("no-dictator witness needs one counterexample per agent");
        for (int i = 1; i <= spec.n; ++i) {
            const Profile& p = w.counterexamples[i - 1];
            if (!shape_ok(p)) throw DomainError("witness does not match the rule's shape");
            if (evaluate(spec, p) == p.agent(i).top()) return false;
        }
        return true;
    }
};

}  // namespace

bool recheck(const RuleSpec& spec, const Witness& witness, const EngineOptions& opts) {
    spec.validate();
    return std::visit(RecheckVisitor{spec, opts, witness.axiom}, witness.body);
}

}  // namespace rgf
