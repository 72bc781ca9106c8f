#include "rgf/rules.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace rgf {

// --- TieBreak --------------------------------------------------------------

TieBreak TieBreak::fixed_order(std::vector<Alt> order) {
    TieBreak tb;
    tb.kind = Kind::FixedOrder;
    tb.order = std::move(order);
    return tb;
}

TieBreak TieBreak::by_agent(int agent_one_based) {
    TieBreak tb;
    tb.kind = Kind::Agent;
    tb.agent = agent_one_based;
    return tb;
}

TieBreak TieBreak::star_relation(int m, std::vector<bool> beats_matrix) {
    TieBreak tb;
    tb.kind = Kind::StarRelation;
    tb.star = std::move(beats_matrix);
    tb.star_m = m;
    if (int(tb.star.size()) != m * m)
        throw DomainError("star relation matrix must be m x m");
    return tb;
}

void TieBreak::validate(int n, int m) const {
    switch (kind) {
        case Kind::FixedOrder: {
            std::vector<bool> seen(m, false);
            if (int(order.size()) != m)
                throw DomainError("tie-break order must rank every alternative");
            for (Alt a : order) {
                if (a >= m || seen[a]) throw DomainError("tie-break order is not a strict order on X");
                seen[a] = true;
            }
            break;
        }
        case Kind::Agent:
            if (agent < 1 || agent > n) throw DomainError("tie-break agent index out of 1..n");
            break;
        case Kind::StarRelation: {
            if (star_m != m || int(star.size()) != m * m)
                throw DomainError("star relation matrix must be m x m");
            for (int a = 0; a < m; ++a) {
                if (star[a * m + a]) throw DomainError("star relation must be irreflexive");
                for (int b = a + 1; b < m; ++b)
                    if (star[a * m + b] == star[b * m + a])
                        throw DomainError("star relation must be antisymmetric and complete");
            }
            break;
        }
    }
}

bool TieBreak::star_beats(Alt a, Alt b) const {
    return star[int(a) * star_m + int(b)];
}

std::string TieBreak::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::FixedOrder: {
            os << "order:";
            for (size_t i = 0; i < order.size(); ++i)
                os << (i ? "," : "") << default_label(order[i]);
            break;
        }
        case Kind::Agent:
            os << "agent:" << agent;
            break;
        case Kind::StarRelation: {
            const int m = star_m;
            os << "relation:";
            bool first = true;
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b) {
                    if (!first) os << ",";
                    first = false;
                    if (star[a * m + b])
                        os << default_label(Alt(a)) << ">" << default_label(Alt(b));
                    else
                        os << default_label(Alt(b)) << ">" << default_label(Alt(a));
                }
            break;
        }
    }
    return os.str();
}

// --- ScoreVector ------------------------------------------------------------

ScoreVector::ScoreVector(std::vector<Rational> bottom_to_top) : s_(std::move(bottom_to_top)) {
    const int m = int(s_.size());
    if (m < 2 || m > kMaxAlternatives)
        throw DomainError("score vector must have between 2 and 8 entries");
    for (int k = 1; k < m; ++k)
        if (s_[k] < s_[k - 1]) throw DomainError("scores must be weakly increasing");
    if (s_[0] == s_[m - 1]) throw DomainError("scores must satisfy s_1 < s_m");
    // Integer weights with the same argmax: clear denominators.
    long long lcm = 1;
    for (const Rational& r : s_) lcm = std::lcm(lcm, r.denominator());
    w_.reserve(m);
    for (const Rational& r : s_) w_.push_back(r.numerator() * (lcm / r.denominator()));
}

int ScoreVector::k_star() const {
    for (int k = m() - 1; k >= 1; --k)
        if (s_[k - 1] < s_[k]) return k;
    throw ContractError("score vector without a k*");  // unreachable: s_1 < s_m
}

ScoreVector ScoreVector::borda(int m) {
    std::vector<Rational> s;
    for (int k = 1; k <= m; ++k) s.emplace_back(k);
    return ScoreVector(std::move(s));
}

ScoreVector ScoreVector::plurality(int m) { return k_approval(m, 1); }

ScoreVector ScoreVector::negative_plurality(int m) { return k_approval(m, m - 1); }

ScoreVector ScoreVector::dowdall(int m) {
    std::vector<Rational> s;
    for (int k = 1; k <= m; ++k) s.emplace_back(1, m - k + 1);
    return ScoreVector(std::move(s));
}

ScoreVector ScoreVector::k_approval(int m, int k) {
    if (k < 1 || k > m - 1) throw DomainError("k-approval needs 1 <= k <= m-1");
    std::vector<Rational> s(m, Rational(0));
    for (int pos = m - k + 1; pos <= m; ++pos) s[pos - 1] = Rational(1);
    return ScoreVector(std::move(s));
}

std::string ScoreVector::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < s_.size(); ++i) {
        if (i) os << ",";
        os << s_[i].numerator();
        if (s_[i].denominator() != 1) os << "/" << s_[i].denominator();
    }
    return os.str();
}

// --- Committee ---------------------------------------------------------------

Committee::Committee(int n, std::vector<bool> winning_by_mask)
    : n_(n), winning_(std::move(winning_by_mask)) {
    if (n < 1 || n > 16) throw DomainError("committee supports 1..16 agents");
    if (winning_.size() != (size_t(1) << n))
        throw DomainError("committee needs one entry per coalition");
    for (std::uint32_t s = 0; s < winning_.size(); ++s) {
        if (!winning_[s]) continue;
        for (int i = 0; i < n; ++i) {
            const std::uint32_t t = s | (1u << i);
            if (!winning_[t])
                throw DomainError("committee is not upward closed");
        }
    }
}

Committee Committee::from_minimal(int n, const std::vector<std::uint32_t>& minimal) {
    if (n < 1 || n > 16) throw DomainError("committee supports 1..16 agents");
    std::vector<bool> win(size_t(1) << n, false);
    for (std::uint32_t base : minimal) {
        if (base >= win.size()) throw DomainError("coalition mentions an unknown agent");
        for (std::uint32_t s = 0; s < win.size(); ++s)
            if ((s & base) == base) win[s] = true;
    }
    return Committee(n, std::move(win));
}

Committee Committee::majority(int n) {
    std::vector<bool> win(size_t(1) << n, false);
    for (std::uint32_t s = 0; s < win.size(); ++s)
        win[s] = 2 * std::popcount(s) > n;
    return Committee(n, std::move(win));
}

std::vector<std::uint32_t> Committee::minimal_coalitions() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 0; s < winning_.size(); ++s) {
        if (!winning_[s]) continue;
        bool minimal = true;
        for (int i = 0; i < n_ && minimal; ++i)
            if ((s >> i) & 1u)
                if (winning_[s & ~(1u << i)]) minimal = false;
        if (minimal) out.push_back(s);
    }
    return out;
}

const char* to_string(CondorcetVariant v) {
    switch (v) {
        case CondorcetVariant::Simpson: return "simpson";
        case CondorcetVariant::Copeland: return "copeland";
        case CondorcetVariant::Young: return "young";
        case CondorcetVariant::Dodgson: return "dodgson";
        case CondorcetVariant::Fishburn: return "fishburn";
        case CondorcetVariant::Black: return "black";
    }
    return "?";
}

// --- RuleSpec ----------------------------------------------------------------

RuleSpec::RuleSpec(int n_agents, int m_alts, RuleBody b)
    : n(n_agents), m(m_alts), body(std::move(b)) {
    validate();
}

namespace {

void validate_order(const std::vector<Alt>& order, int m, const char* what) {
    std::vector<bool> seen(m, false);
    if (int(order.size()) != m) throw DomainError(what);
    for (Alt a : order) {
        if (a >= m || seen[a]) throw DomainError(what);
        seen[a] = true;
    }
}

struct ValidateVisitor {
    int n, m;
    void operator()(const ExtendedMajoritySpec& s) const {
        if (m != 2) throw DomainError("extended majority voting is defined on two alternatives");
        if (s.committee.n() != n) throw DomainError("committee agent count mismatch");
        if (s.x >= m || s.y >= m || s.x == s.y)
            throw DomainError("extended majority needs two distinct alternatives");
    }
    void operator()(const MaxminSpec& s) const {
        s.tiebreak.validate(n, m);
        if (s.tiebreak.kind == TieBreak::Kind::StarRelation && n != 2)
            throw DomainError("star-relation tie-break is only legal with two agents");
    }
    void operator()(const ScoringSpec& s) const {
        if (s.scores.m() != m) throw DomainError("score vector length must equal m");
        s.tiebreak.validate(n, m);
        if (s.tiebreak.kind == TieBreak::Kind::StarRelation && n != 2)
            throw DomainError("star-relation tie-break is only legal with two agents");
    }
    void operator()(const CondorcetSpec& s) const {
        s.tiebreak.validate(n, m);
        if (s.tiebreak.kind == TieBreak::Kind::StarRelation)
            throw DomainError("star-relation tie-break is only legal for maxmin/scoring");
    }
    void operator()(const SuccessiveEliminationSpec& s) const {
        validate_order(s.agenda, m, "successive elimination agenda must be a strict order on X");
    }
    void operator()(const DictatorshipSpec& s) const {
        if (s.agent < 1 || s.agent > n) throw DomainError("dictator index out of 1..n");
    }
    void operator()(const ConstantSpec& s) const {
        if (s.alt >= m) throw DomainError("constant alternative out of range");
    }
    void operator()(const Remark4x3Spec& s) const {
        if (n != 4 || m != 3) throw DomainError("remark4x3 is only defined at n=4, m=3");
        validate_order(s.order, m, "remark4x3 order must be a strict order on X");
    }
    void operator()(const MaxTopSpec& s) const {
        validate_order(s.order, m, "maxtop order must be a strict order on X");
    }
    void operator()(const BottomAgentSpec& s) const {
        if (s.agent < 1 || s.agent > n) throw DomainError("bottom-agent index out of 1..n");
    }
    void operator()(const TopsRandomSpec&) const {}
};

struct NameVisitor {
    std::string operator()(const ExtendedMajoritySpec& s) const {
        std::ostringstream os;
        os << "extended-majority(x=" << default_label(s.x) << ",y=" << default_label(s.y) << ")";
        return os.str();
    }
    std::string operator()(const MaxminSpec& s) const {
        return (s.tiebreak.kind == TieBreak::Kind::Agent ? "N-maxmin(" : "A-maxmin(") +
               s.tiebreak.to_string() + ")";
    }
    std::string operator()(const ScoringSpec& s) const {
        return (s.tiebreak.kind == TieBreak::Kind::Agent ? "N-scoring(" : "A-scoring(") +
               s.scores.to_string() + ";" + s.tiebreak.to_string() + ")";
    }
    std::string operator()(const CondorcetSpec& s) const {
        return (s.tiebreak.kind == TieBreak::Kind::Agent ? std::string("N-") : std::string("A-")) +
               rgf::to_string(s.variant) + "(" + s.tiebreak.to_string() + ")";
    }
    std::string operator()(const SuccessiveEliminationSpec& s) const {
        std::string out = "successive-elimination(";
        for (size_t i = 0; i < s.agenda.size(); ++i)
            out += std::string(i ? "," : "") + default_label(s.agenda[i]);
        return out + ")";
    }
    std::string operator()(const DictatorshipSpec& s) const {
        return "dictatorship(agent:" + std::to_string(s.agent) + ")";
    }
    std::string operator()(const ConstantSpec& s) const {
        return "constant(" + default_label(s.alt) + ")";
    }
    std::string operator()(const Remark4x3Spec& s) const {
        std::string out = "remark4x3(order:";
        for (size_t i = 0; i < s.order.size(); ++i)
            out += std::string(i ? "," : "") + default_label(s.order[i]);
        return out + ")";
    }
    std::string operator()(const MaxTopSpec& s) const {
        std::string out = "maxtop(order:";
        for (size_t i = 0; i < s.order.size(); ++i)
            out += std::string(i ? "," : "") + default_label(s.order[i]);
        return out + ")";
    }
    std::string operator()(const BottomAgentSpec& s) const {
        return "bottom-agent(agent:" + std::to_string(s.agent) + ")";
    }
    std::string operator()(const TopsRandomSpec& s) const {
        return "tops-random(seed:" + std::to_string(s.seed) + ")";
    }
};

struct CanonicalVisitor {
    std::string operator()(const ExtendedMajoritySpec& s) const {
        std::ostringstream os;
        os << "family=extended-majority\nx=" << default_label(s.x)
           << "\ny=" << default_label(s.y) << "\ncommittee=";
        const auto minimal = s.committee.minimal_coalitions();
        for (size_t i = 0; i < minimal.size(); ++i) {
            if (i) os << ";";
            bool first = true;
            for (int a = 0; a < s.committee.n(); ++a)
                if ((minimal[i] >> a) & 1u) {
                    os << (first ? "" : ",") << (a + 1);
                    first = false;
                }
        }
        return os.str();
    }
    std::string operator()(const MaxminSpec& s) const {
        return "family=maxmin\ntiebreak=" + s.tiebreak.to_string();
    }
    std::string operator()(const ScoringSpec& s) const {
        return "family=scoring\nscores=" + s.scores.to_string() +
               "\ntiebreak=" + s.tiebreak.to_string();
    }
    std::string operator()(const CondorcetSpec& s) const {
        return std::string("family=condorcet\nvariant=") + rgf::to_string(s.variant) +
               "\ntiebreak=" + s.tiebreak.to_string();
    }
    std::string operator()(const SuccessiveEliminationSpec& s) const {
        std::string out = "family=successive-elimination\norder=";
        for (size_t i = 0; i < s.agenda.size(); ++i)
            out += std::string(i ? "," : "") + default_label(s.agenda[i]);
        return out;
    }
    std::string operator()(const DictatorshipSpec& s) const {
        return "family=dictatorship\nagent=" + std::to_string(s.agent);
    }
    std::string operator()(const ConstantSpec& s) const {
        return "family=constant\nalternative=" + default_label(s.alt);
    }
    std::string operator()(const Remark4x3Spec& s) const {
        std::string out = "family=remark4x3\norder=";
        for (size_t i = 0; i < s.order.size(); ++i)
            out += std::string(i ? "," : "") + default_label(s.order[i]);
        return out;
    }
    std::string operator()(const MaxTopSpec& s) const {
        std::string out = "family=maxtop\norder=";
        for (size_t i = 0; i < s.order.size(); ++i)
            out += std::string(i ? "," : "") + default_label(s.order[i]);
        return out;
    }
    std::string operator()(const BottomAgentSpec& s) const {
        return "family=bottom-agent\nagent=" + std::to_string(s.agent);
    }
    std::string operator()(const TopsRandomSpec& s) const {
        return "family=tops-random\nseed=" + std::to_string(s.seed);
    }
};

}  // namespace

void RuleSpec::validate() const {
    if (n < 1) throw DomainError("rule needs at least one agent");
    if (m < 1 || m > kMaxAlternatives)
        throw DomainError("rule needs between 1 and 8 alternatives");
    std::visit(ValidateVisitor{n, m}, body);
}

std::string RuleSpec::name() const { return std::visit(NameVisitor{}, body); }

std::string RuleSpec::canonical() const {
    return "n=" + std::to_string(n) + "\nm=" + std::to_string(m) + "\n" +
           std::visit(CanonicalVisitor{}, body);
}

std::uint64_t RuleSpec::hash() const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// --- winner-set functions ------------------------------------------------

int minimal_position(const Profile& profile, Alt x) {
    int mp = profile.m + 1;
    for (const Preference& p : profile.prefs) mp = std::min(mp, p.rank_of(x));
    return mp;
}

std::vector<Alt> maxmin_winners(const Profile& profile) {
    int best = 0;
    std::vector<Alt> winners;
    for (Alt x = 0; x < profile.m; ++x) {
        const int mp = minimal_position(profile, x);
        if (mp > best) {
            best = mp;
            winners.clear();
        }
        if (mp == best) winners.push_back(x);
    }
    return winners;
}

Rational score(const Profile& profile, Alt x, const ScoreVector& sv) {
    if (sv.m() != profile.m) throw DomainError("score vector length must equal m");
    Rational total(0);
    for (const Preference& p : profile.prefs) total += sv.scores()[p.rank_of(x) - 1];
    return total;
}

std::vector<Alt> scoring_winners(const Profile& profile, const ScoreVector& sv) {
    if (sv.m() != profile.m) throw DomainError("score vector length must equal m");
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    std::vector<Alt> winners;
    for (Alt x = 0; x < profile.m; ++x) {
        std::int64_t s = 0;
        for (const Preference& p : profile.prefs) s += sv.weight_at_rank(p.rank_of(x));
        if (s > best) {
            best = s;
            winners.clear();
        }
        if (s == best) winners.push_back(x);
    }
    return winners;
}

std::optional<Alt> condorcet_winner(const PairwiseTally& t) {
    for (Alt a = 0; a < t.m(); ++a) {
        bool wins_all = true;
        for (Alt b = 0; b < t.m() && wins_all; ++b)
            if (b != a && !t.beats(a, b)) wins_all = false;
        if (wins_all) return a;
    }
    return std::nullopt;
}

std::optional<Alt> condorcet_winner(const Profile& profile) {
    return condorcet_winner(pairwise_tally(profile));
}

std::vector<Alt> weak_condorcet_winners(const Profile& profile) {
    const PairwiseTally t = pairwise_tally(profile);
    std::vector<Alt> out;
    for (Alt a = 0; a < t.m(); ++a) {
        bool ok = true;
        for (Alt b = 0; b < t.m() && ok; ++b)
            if (b != a && t.count(a, b) < t.count(b, a)) ok = false;
        if (ok) out.push_back(a);
    }
    return out;
}

int simpson_score(const Profile& profile, Alt a) {
    const PairwiseTally t = pairwise_tally(profile);
    int best = profile.n();
    for (Alt b = 0; b < profile.m; ++b)
        if (b != a) best = std::min(best, t.count(a, b));
    return best;
}

int copeland_score(const Profile& profile, Alt a) {
    const PairwiseTally t = pairwise_tally(profile);
    int s = 0;
    for (Alt b = 0; b < profile.m; ++b) {
        if (b == a) continue;
        if (t.beats(a, b)) ++s;
        if (t.beats(b, a)) --s;
    }
    return s;
}

int young_score(const Profile& profile, Alt a) {
    const int n = profile.n();
    if (n > kYoungSubsetGuard)
        throw SpaceTooLargeError("space too large: Young score enumerates 2^n voter subsets");
    // supporters[b] = bitmask of agents preferring a to b
    std::vector<std::uint32_t> supporters(profile.m, 0);
    for (int i = 0; i < n; ++i)
        for (Alt b = 0; b < profile.m; ++b)
            if (b != a && profile.prefs[i].prefers(a, b)) supporters[b] |= (1u << i);
    int best = 0;
    for (std::uint32_t sub = 0; sub < (1u << n); ++sub) {
        const int size = std::popcount(sub);
        if (size <= best) continue;
        bool ok = true;
        for (Alt b = 0; b < profile.m && ok; ++b)
            if (b != a && 2 * std::popcount(sub & supporters[b]) < size) ok = false;
        if (ok) best = size;
    }
    return best;
}

namespace {

bool ties_or_beats_all(const Profile& profile, Alt a) {
    const PairwiseTally t = pairwise_tally(profile);
    for (Alt b = 0; b < profile.m; ++b)
        if (b != a && t.count(a, b) < t.count(b, a)) return false;
    return true;
}

}  // namespace

int dodgson_score(const Profile& profile, Alt a) {
    // Breadth-first search over profiles reachable by adjacent transpositions;
    // depth of the first profile where a ties or beats every alternative.
    if (ties_or_beats_all(profile, a)) return 0;
    const ProfileEnumeration space(profile.n(), profile.m, kDodgsonSearchBudget);
    std::unordered_set<std::uint64_t> visited;
    std::deque<std::pair<std::uint64_t, int>> queue;
    const std::uint64_t start = space.index_of(profile);
    visited.insert(start);
    queue.emplace_back(start, 0);
    const PrefUniverse& u = PrefUniverse::get(profile.m);
    while (!queue.empty()) {
        const auto [code, swaps] = queue.front();
        queue.pop_front();
        if (visited.size() > kDodgsonSearchBudget)
            throw SpaceTooLargeError("space too large: Dodgson search budget exceeded");
        const Profile p = space.at(code);
        for (int i = 1; i <= profile.n(); ++i) {
            std::vector<Alt> order = p.agent(i).ranking();
            for (size_t pos = 0; pos + 1 < order.size(); ++pos) {
                std::swap(order[pos], order[pos + 1]);
                const int digit = u.index_of(Preference(order));
                const std::uint64_t next = space.with_digit(code, i, digit);
                std::swap(order[pos], order[pos + 1]);
                if (!visited.insert(next).second) continue;
                Profile q = space.at(next);
                if (ties_or_beats_all(q, a)) return swaps + 1;
                queue.emplace_back(next, swaps + 1);
            }
        }
    }
    throw ContractError("Dodgson search exhausted the profile space");  // unreachable
}

std::vector<Alt> fishburn_maximals(const Profile& profile) {
    const PairwiseTally t = pairwise_tally(profile);
    const int m = profile.m;
    auto fp = [&](Alt a, Alt b) {
        // a F_P b: every alternative beating a beats b, and some alternative
        // beating b is weakly tied-or-beaten by a.
        for (Alt x = 0; x < m; ++x)
            if (t.beats(x, a) && !t.beats(x, b)) return false;
        for (Alt w = 0; w < m; ++w)
            if (t.beats(w, b) && t.count(a, w) >= t.count(w, a)) return true;
        return false;
    };
    std::vector<Alt> out;
    for (Alt a = 0; a < m; ++a) {
        bool dominated = false;
        for (Alt b = 0; b < m && !dominated; ++b)
            if (b != a && fp(b, a)) dominated = true;
        if (!dominated) out.push_back(a);
    }
    return out;
}

std::vector<Alt> black_winners(const Profile& profile) {
    if (auto cw = condorcet_winner(profile)) return {*cw};
    return scoring_winners(profile, ScoreVector::borda(profile.m));
}

std::vector<Alt> condorcet_variant_winners(CondorcetVariant v, const Profile& profile) {
    auto argmax = [&](auto&& score_fn) {
        int best = std::numeric_limits<int>::min();
        std::vector<Alt> winners;
        for (Alt a = 0; a < profile.m; ++a) {
            const int s = score_fn(a);
            if (s > best) {
                best = s;
                winners.clear();
            }
            if (s == best) winners.push_back(a);
        }
        return winners;
    };
    switch (v) {
        case CondorcetVariant::Simpson:
            return argmax([&](Alt a) { return simpson_score(profile, a); });
        case CondorcetVariant::Copeland:
            return argmax([&](Alt a) { return copeland_score(profile, a); });
        case CondorcetVariant::Young:
            return argmax([&](Alt a) { return young_score(profile, a); });
        case CondorcetVariant::Dodgson:
            return argmax([&](Alt a) { return -dodgson_score(profile, a); });
        case CondorcetVariant::Fishburn:
            return fishburn_maximals(profile);
        case CondorcetVariant::Black:
            return black_winners(profile);
    }
    throw ContractError("unknown Condorcet variant");
}

Alt successive_elimination_winner(const std::vector<Alt>& agenda, const Profile& profile) {
    validate_order(agenda, profile.m, "agenda must be a strict order on X");
    const PairwiseTally t = pairwise_tally(profile);
    std::vector<int> agenda_pos(profile.m);
    for (size_t i = 0; i < agenda.size(); ++i) agenda_pos[agenda[i]] = int(i);
    Alt survivor = agenda[0];
    for (size_t round = 1; round < agenda.size(); ++round) {
        const Alt challenger = agenda[round];
        const int forward = t.count(survivor, challenger);
        const int backward = t.count(challenger, survivor);
        if (backward > forward)
            survivor = challenger;
        else if (backward == forward && agenda_pos[challenger] < agenda_pos[survivor])
            survivor = challenger;  // agenda order breaks pairwise ties
    }
    return survivor;
}

Alt extended_majority_winner(const Committee& committee, Alt x, Alt y,
                             const Profile& profile) {
    if (committee.n() != profile.n()) throw DomainError("committee agent count mismatch");
    std::uint32_t mask = 0;
    for (int i = 0; i < profile.n(); ++i)
        if (profile.prefs[i].top() == x) mask |= (1u << i);
    return committee.is_winning(mask) ? x : y;
}

int bottom_count(const Profile& profile, Alt x) {
    int c = 0;
    for (const Preference& p : profile.prefs)
        if (p.bottom() == x) ++c;
    return c;
}

Alt break_tie(const std::vector<Alt>& candidates, const TieBreak& tb,
              const Profile& profile) {
    if (candidates.empty()) throw ContractError("tie-break over an empty candidate set");
    if (candidates.size() == 1) return candidates[0];
    switch (tb.kind) {
        case TieBreak::Kind::FixedOrder:
            for (Alt a : tb.order)
                if (std::find(candidates.begin(), candidates.end(), a) != candidates.end())
                    return a;
            throw ContractError("tie-break order misses every candidate");
        case TieBreak::Kind::Agent: {
            const Preference& p = profile.agent(tb.agent);
            Alt best = candidates[0];
            for (Alt a : candidates)
                if (p.prefers(a, best)) best = a;
            return best;
        }
        case TieBreak::Kind::StarRelation:
            if (candidates.size() > 2)
                throw ContractError(
                    "star-relation tie-break applied to more than two candidates");
            return tb.star_beats(candidates[0], candidates[1]) ? candidates[0]
                                                               : candidates[1];
    }
    throw ContractError("unknown tie-break kind");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

namespace {

Alt tops_random_outcome(const TopsRandomSpec& s, const Profile& profile) {
    std::uint64_t h = splitmix64(s.seed);
    for (const Preference& p : profile.prefs) h = splitmix64(h ^ (p.top() + 1));
    return Alt(h % std::uint64_t(profile.m));
}

std::vector<Alt> remark4x3_pool(const Remark4x3Spec&, const Profile& profile) {
    int best = profile.n() + 1;
    std::vector<Alt> minimizers;
    for (Alt x = 0; x < profile.m; ++x) {
        const int c = bottom_count(profile, x);
        if (c < best) {
            best = c;
            minimizers.clear();
        }
        if (c == best) minimizers.push_back(x);
    }
    // Keep minimizers preferred by at least two agents to every other minimizer;
    // fall back to all minimizers when that filter empties.
    std::vector<Alt> filtered;
    for (Alt x : minimizers) {
        bool ok = true;
        for (Alt y : minimizers) {
            if (y == x) continue;
            int pref_count = 0;
            for (const Preference& p : profile.prefs)
                if (p.prefers(x, y)) ++pref_count;
            if (pref_count < 2) {
                ok = false;
                break;
            }
        }
        if (ok) filtered.push_back(x);
    }
    return filtered.empty() ? minimizers : filtered;
}

struct StageResult {
    std::vector<Alt> winners;
    std::string stage;
    bool tie_breakable;  // false: winners already resolved to the outcome
};

struct StageVisitor {
    const RuleSpec& spec;
    const Profile& profile;

    StageResult operator()(const ExtendedMajoritySpec& s) const {
        return {{extended_majority_winner(s.committee, s.x, s.y, profile)},
                "extended-majority", false};
    }
    StageResult operator()(const MaxminSpec&) const {
        return {maxmin_winners(profile), "maxmin-winners", true};
    }
    StageResult operator()(const ScoringSpec& s) const {
        return {scoring_winners(profile, s.scores), "scoring-winners", true};
    }
    StageResult operator()(const CondorcetSpec& s) const {
        if (auto cw = condorcet_winner(profile)) return {{*cw}, "condorcet-winner", false};
        return {condorcet_variant_winners(s.variant, profile),
                std::string(to_string(s.variant)) + "-winners", true};
    }
    StageResult operator()(const SuccessiveEliminationSpec& s) const {
        return {{successive_elimination_winner(s.agenda, profile)},
                "successive-elimination", false};
    }
    StageResult operator()(const DictatorshipSpec& s) const {
        return {{profile.agent(s.agent).top()}, "dictator-top", false};
    }
    StageResult operator()(const ConstantSpec& s) const {
        return {{s.alt}, "constant", false};
    }
    StageResult operator()(const Remark4x3Spec& s) const {
        if (auto cw = condorcet_winner(profile)) return {{*cw}, "condorcet-winner", false};
        return {remark4x3_pool(s, profile), "bottom-count-minimizers", true};
    }
    StageResult operator()(const MaxTopSpec&) const {
        std::vector<Alt> tops;
        for (const Preference& p : profile.prefs)
            if (std::find(tops.begin(), tops.end(), p.top()) == tops.end())
                tops.push_back(p.top());
        return {tops, "reported-tops", true};
    }
    StageResult operator()(const BottomAgentSpec& s) const {
        return {{profile.agent(s.agent).bottom()}, "agent-bottom", false};
    }
    StageResult operator()(const TopsRandomSpec& s) const {
        return {{tops_random_outcome(s, profile)}, "tops-random", false};
    }
};

std::optional<TieBreak> tiebreak_of(const RuleSpec& spec) {
    if (auto* s = spec.as<MaxminSpec>()) return s->tiebreak;
    if (auto* s = spec.as<ScoringSpec>()) return s->tiebreak;
    if (auto* s = spec.as<CondorcetSpec>()) return s->tiebreak;
    if (auto* s = spec.as<Remark4x3Spec>()) return TieBreak::fixed_order(s->order);
    if (auto* s = spec.as<MaxTopSpec>()) return TieBreak::fixed_order(s->order);
    return std::nullopt;
}

}  // namespace

std::vector<Alt> first_stage_winners(const RuleSpec& spec, const Profile& profile,
                                     std::string* stage_name) {
    const StageResult r = std::visit(StageVisitor{spec, profile}, spec.body);
    if (stage_name) *stage_name = r.stage;
    return r.winners;
}

Alt evaluate(const RuleSpec& spec, const Profile& profile) {
    if (spec.n != profile.n() || spec.m != profile.m)
        throw DomainError("rule and profile disagree on n or m");
    const StageResult r = std::visit(StageVisitor{spec, profile}, spec.body);
    if (!r.tie_breakable || r.winners.size() == 1) return r.winners.at(0);
    const std::optional<TieBreak> tb = tiebreak_of(spec);
    if (!tb) throw ContractError("rule family with a winner set but no tie-break");
    return break_tie(r.winners, *tb, profile);
}

}  // namespace rgf
