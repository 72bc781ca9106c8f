#pragma once

// Strict preferences, profiles, pairwise tallies and enumeration of the
// preference/profile spaces. Positions are 1-indexed from the bottom:
// rank 1 is an agent's worst alternative, rank m the best.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgf {

using Alt = std::uint8_t;

inline constexpr int kMaxAlternatives = 8;

// Invalid arguments (bad alternative index, malformed ranking, ...).
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A requested search/enumeration space exceeds its configured budget.
class SpaceTooLargeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A contract between components was broken (rule misconfiguration).
class ContractError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

std::string default_label(Alt a);
std::vector<std::string> default_labels(int m);

// A strict total order over m alternatives, stored best-to-worst.
class Preference {
  public:
    Preference() = default;
    explicit Preference(const std::vector<Alt>& best_to_worst);
    Preference(std::initializer_list<Alt> best_to_worst);

    int m() const { return m_; }

    // Position counted from the bottom: 1 = worst, m = best.
    int rank_of(Alt x) const;
    Alt alternative_at(int rank) const;

    Alt top() const { return order_[0]; }
    Alt bottom() const { return order_[m_ - 1]; }

    bool prefers(Alt x, Alt y) const;         // strict: x above y
    bool weakly_prefers(Alt x, Alt y) const;  // x above y, or x == y

    std::vector<Alt> ranking() const;  // best-to-worst copy

    bool operator==(const Preference& other) const;
    bool operator<(const Preference& other) const;  // lex on best-to-worst

    std::string to_string(const std::vector<std::string>& labels = {}) const;

  private:
    std::uint8_t m_ = 0;
    std::array<Alt, kMaxAlternatives> order_{};  // order_[0] = best
    std::array<std::uint8_t, kMaxAlternatives> rank_{};

    void check_alt(Alt x) const;
};

// An ordered list of n preferences over a common alternative set.
// Agent order is significant; public agent indices are 1-based.
struct Profile {
    int m = 0;
    std::vector<Preference> prefs;

    Profile() = default;
    Profile(int m_count, std::vector<Preference> agent_prefs);

    int n() const { return static_cast<int>(prefs.size()); }
    const Preference& agent(int i_one_based) const;

    bool operator==(const Profile& other) const = default;
};

// counts (a,b) = number of agents ranking a above b; diagonal is 0.
class PairwiseTally {
  public:
    PairwiseTally(int m, int n);
    int m() const { return m_; }
    int n() const { return n_; }
    int count(Alt a, Alt b) const { return counts_[idx(a, b)]; }
    bool beats(Alt a, Alt b) const { return count(a, b) > count(b, a); }
    void add(Alt a, Alt b) { ++counts_[idx(a, b)]; }

  private:
    int m_, n_;
    std::array<int, kMaxAlternatives * kMaxAlternatives> counts_{};
    int idx(Alt a, Alt b) const { return int(a) * m_ + int(b); }
};

PairwiseTally pairwise_tally(const Profile& profile);

// pi[x] = image of alternative x; pi must be a bijection on 0..m-1.
Preference permute_alternatives(const std::vector<Alt>& pi, const Preference& pref);

// Result agent i holds the preference of agent pi[i] (0-based mapping).
Profile permute_agents(const std::vector<int>& pi, const Profile& profile);

// All m! preferences in lexicographic best-to-worst order, with O(1)
// rank lookups by preference index. Immutable and shared; safe to use
// from concurrent workers.
class PrefUniverse {
  public:
    static const PrefUniverse& get(int m);

    int m() const { return m_; }
    int count() const { return count_; }

    const Preference& pref(int idx) const { return prefs_[idx]; }
    int index_of(const Preference& p) const;  // Lehmer rank, O(m^2)

    int rank(int idx, Alt x) const { return rank_tbl_[idx * m_ + x]; }
    Alt top(int idx) const { return top_[idx]; }
    Alt bottom(int idx) const { return bottom_[idx]; }

  private:
    explicit PrefUniverse(int m);
    int m_;
    int count_;
    std::vector<Preference> prefs_;
    std::vector<std::uint8_t> rank_tbl_;
    std::vector<Alt> top_, bottom_;
};

// All m! preferences in lexicographic order. Refuses m > 8.
std::vector<Preference> enumerate_preferences(int m);

std::uint64_t factorial(int m);

inline constexpr std::uint64_t kDefaultProfileBudget = std::uint64_t(1) << 31;

// The (m!)^n profile space in odometer order (last agent varies fastest).
// Profiles are materialized on demand; the enumeration itself is a
// stateless factory of independent cursors.
class ProfileEnumeration {
  public:
    ProfileEnumeration(int n, int m, std::uint64_t budget = kDefaultProfileBudget);

    std::uint64_t size() const { return size_; }
    int n() const { return n_; }
    int m() const { return m_; }

    Profile at(std::uint64_t code) const;
    std::uint64_t index_of(const Profile& profile) const;

    // Digit (preference index) of a 1-based agent inside a profile code.
    int digit(std::uint64_t code, int agent_one_based) const;
    std::uint64_t stride(int agent_one_based) const;
    std::uint64_t with_digit(std::uint64_t code, int agent_one_based, int digit) const;

    class iterator {
      public:
        iterator(const ProfileEnumeration* e, std::uint64_t i) : e_(e), i_(i) {}
        Profile operator*() const { return e_->at(i_); }
        iterator& operator++() { ++i_; return *this; }
        bool operator!=(const iterator& o) const { return i_ != o.i_; }

      private:
        const ProfileEnumeration* e_;
        std::uint64_t i_;
    };
    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(this, size_); }

  private:
    int n_, m_;
    std::uint64_t size_;
    std::vector<std::uint64_t> strides_;  // per agent, agent-major
};

ProfileEnumeration enumerate_profiles(int n, int m,
                                      std::uint64_t budget = kDefaultProfileBudget);

}  // namespace rgf
