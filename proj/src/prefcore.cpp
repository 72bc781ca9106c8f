#include "rgf/prefcore.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace rgf {

std::string default_label(Alt a) {
    return std::string(1, char('a' + a));
}

std::vector<std::string> default_labels(int m) {
    std::vector<std::string> out;
    out.reserve(m);
    for (int a = 0; a < m; ++a) out.push_back(default_label(Alt(a)));
    return out;
}

Preference::Preference(const std::vector<Alt>& best_to_worst) {
    const int m = static_cast<int>(best_to_worst.size());
    if (m < 1 || m > kMaxAlternatives)
        throw DomainError("preference must rank between 1 and 8 alternatives");
    m_ = std::uint8_t(m);
    std::array<bool, kMaxAlternatives> seen{};
    for (int pos = 0; pos < m; ++pos) {
        Alt x = best_to_worst[pos];
        if (x >= m) throw DomainError("alternative index out of range in ranking");
        if (seen[x]) throw DomainError("duplicate alternative in ranking");
        seen[x] = true;
        order_[pos] = x;
        rank_[x] = std::uint8_t(m - pos);  // best position has rank m
    }
}

Preference::Preference(std::initializer_list<Alt> best_to_worst)
    : Preference(std::vector<Alt>(best_to_worst)) {}

void Preference::check_alt(Alt x) const {
    if (x >= m_) throw DomainError("alternative index out of range");
}

int Preference::rank_of(Alt x) const {
    check_alt(x);
    return rank_[x];
}

Alt Preference::alternative_at(int rank) const {
    if (rank < 1 || rank > m_) throw DomainError("rank out of range");
    return order_[m_ - rank];
}

bool Preference::prefers(Alt x, Alt y) const {
    check_alt(x);
    check_alt(y);
    return rank_[x] > rank_[y];
}

bool Preference::weakly_prefers(Alt x, Alt y) const {
    return x == y || prefers(x, y);
}

std::vector<Alt> Preference::ranking() const {
    return std::vector<Alt>(order_.begin(), order_.begin() + m_);
}

bool Preference::operator==(const Preference& other) const {
    return m_ == other.m_ &&
           std::equal(order_.begin(), order_.begin() + m_, other.order_.begin());
}

bool Preference::operator<(const Preference& other) const {
    return std::lexicographical_compare(order_.begin(), order_.begin() + m_,
                                        other.order_.begin(),
                                        other.order_.begin() + other.m_);
}

std::string Preference::to_string(const std::vector<std::string>& labels) const {
    std::ostringstream os;
    for (int pos = 0; pos < m_; ++pos) {
        if (pos) os << ">";
        Alt x = order_[pos];
        os << (x < labels.size() ? labels[x] : default_label(x));
    }
    return os.str();
}

Profile::Profile(int m_count, std::vector<Preference> agent_prefs)
    : m(m_count), prefs(std::move(agent_prefs)) {
    if (prefs.empty()) throw DomainError("profile needs at least one agent");
    for (const Preference& p : prefs)
        if (p.m() != m) throw DomainError("profile mixes alternative counts");
}

const Preference& Profile::agent(int i_one_based) const {
    if (i_one_based < 1 || i_one_based > n())
        throw DomainError("agent index out of range");
    return prefs[i_one_based - 1];
}

PairwiseTally::PairwiseTally(int m, int n) : m_(m), n_(n) {
    if (m < 1 || m > kMaxAlternatives) throw DomainError("bad alternative count");
}

PairwiseTally pairwise_tally(const Profile& profile) {
    PairwiseTally t(profile.m, profile.n());
    for (const Preference& p : profile.prefs) {
        const std::vector<Alt> order = p.ranking();
        for (size_t i = 0; i < order.size(); ++i)
            for (size_t j = i + 1; j < order.size(); ++j)
                t.add(order[i], order[j]);
    }
    return t;
}

namespace {

void check_bijection(size_t domain, const std::vector<size_t>& images,
                     const char* what) {
    std::vector<bool> seen(domain, false);
    if (images.size() != domain) throw DomainError(what);
    for (size_t v : images) {
        if (v >= domain || seen[v]) throw DomainError(what);
        seen[v] = true;
    }
}

}  // namespace

Preference permute_alternatives(const std::vector<Alt>& pi, const Preference& pref) {
    std::vector<size_t> images(pi.begin(), pi.end());
    check_bijection(size_t(pref.m()), images, "alternative permutation is not a bijection");
    std::vector<Alt> order = pref.ranking();
    for (Alt& x : order) x = pi[x];
    return Preference(order);
}

Profile permute_agents(const std::vector<int>& pi, const Profile& profile) {
    std::vector<size_t> images(pi.begin(), pi.end());
    check_bijection(size_t(profile.n()), images, "agent permutation is not a bijection");
    std::vector<Preference> prefs(profile.n());
    for (int i = 0; i < profile.n(); ++i) prefs[i] = profile.prefs[pi[i]];
    return Profile(profile.m, std::move(prefs));
}

std::uint64_t factorial(int m) {
    std::uint64_t f = 1;
    for (int k = 2; k <= m; ++k) f *= std::uint64_t(k);
    return f;
}

PrefUniverse::PrefUniverse(int m) : m_(m) {
    count_ = int(factorial(m));
    prefs_.reserve(count_);
    rank_tbl_.resize(size_t(count_) * m);
    top_.resize(count_);
    bottom_.resize(count_);
    std::vector<Alt> order(m);
    std::iota(order.begin(), order.end(), Alt(0));
    int idx = 0;
    do {
        Preference p(order);
        for (int a = 0; a < m; ++a)
            rank_tbl_[size_t(idx) * m + a] = std::uint8_t(p.rank_of(Alt(a)));
        top_[idx] = p.top();
        bottom_[idx] = p.bottom();
        prefs_.push_back(std::move(p));
        ++idx;
    } while (std::next_permutation(order.begin(), order.end()));
}

const PrefUniverse& PrefUniverse::get(int m) {
    if (m < 1 || m > kMaxAlternatives)
        throw DomainError("alternative count must be between 1 and 8");
    static std::mutex mu;
    static std::array<const PrefUniverse*, kMaxAlternatives + 1> cache{};
    std::lock_guard<std::mutex> lock(mu);
    if (!cache[m]) cache[m] = new PrefUniverse(m);
    return *cache[m];
}

int PrefUniverse::index_of(const Preference& p) const {
    if (p.m() != m_) throw DomainError("preference has wrong alternative count");
    // Lehmer code over the best-to-worst sequence.
    const std::vector<Alt> order = p.ranking();
    int idx = 0;
    for (int i = 0; i < m_; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < m_; ++j)
            if (order[j] < order[i]) ++smaller;
        idx = idx * (m_ - i) + smaller;
    }
    return idx;
}

std::vector<Preference> enumerate_preferences(int m) {
    const PrefUniverse& u = PrefUniverse::get(m);
    std::vector<Preference> out;
    out.reserve(u.count());
    for (int i = 0; i < u.count(); ++i) out.push_back(u.pref(i));
    return out;
}

ProfileEnumeration::ProfileEnumeration(int n, int m, std::uint64_t budget)
    : n_(n), m_(m) {
    if (n < 1) throw DomainError("profile space needs at least one agent");
    if (m < 1 || m > kMaxAlternatives)
        throw DomainError("alternative count must be between 1 and 8");
    const std::uint64_t base = factorial(m);
    size_ = 1;
    for (int i = 0; i < n; ++i) {
        if (size_ > budget / base)
            throw SpaceTooLargeError(
                "space too large: (m!)^n exceeds the enumeration budget; "
                "use sampled mode");
        size_ *= base;
    }
    strides_.resize(n);
    std::uint64_t s = 1;
    for (int i = n - 1; i >= 0; --i) {
        strides_[i] = s;
        s *= base;
    }
}

Profile ProfileEnumeration::at(std::uint64_t code) const {
    if (code >= size_) throw DomainError("profile code out of range");
    const PrefUniverse& u = PrefUniverse::get(m_);
    std::vector<Preference> prefs(n_);
    for (int i = 0; i < n_; ++i)
        prefs[i] = u.pref(int((code / strides_[i]) % std::uint64_t(u.count())));
    return Profile(m_, std::move(prefs));
}

std::uint64_t ProfileEnumeration::index_of(const Profile& profile) const {
    if (profile.n() != n_ || profile.m != m_)
        throw DomainError("profile shape does not match enumeration");
    const PrefUniverse& u = PrefUniverse::get(m_);
    std::uint64_t code = 0;
    for (int i = 0; i < n_; ++i)
        code += strides_[i] * std::uint64_t(u.index_of(profile.prefs[i]));
    return code;
}

int ProfileEnumeration::digit(std::uint64_t code, int agent_one_based) const {
    return int((code / strides_[agent_one_based - 1]) % factorial(m_));
}

std::uint64_t ProfileEnumeration::stride(int agent_one_based) const {
    return strides_[agent_one_based - 1];
}

std::uint64_t ProfileEnumeration::with_digit(std::uint64_t code, int agent_one_based,
                                             int digit) const {
    const std::uint64_t s = strides_[agent_one_based - 1];
    const int old = this->digit(code, agent_one_based);
    return code - std::uint64_t(old) * s + std::uint64_t(digit) * s;
}

ProfileEnumeration enumerate_profiles(int n, int m, std::uint64_t budget) {
    return ProfileEnumeration(n, m, budget);
}

}  // namespace rgf
