#pragma once

// External file formats: profile text, rule config (key=value), and the
// "rgf/1" JSON documents for witnesses, verdicts and reports.

#include <string>
#include <vector>

#include "rgf/axioms.hpp"

namespace rgf {

// Malformed input file; message carries a line number where possible.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct NamedProfile {
    Profile profile;
    std::vector<std::string> labels;  // index -> label
};

// Profile text: optional "alternatives: a,b,c" header, '#' comments, and
// ballot lines "k: x1 > x2 > ... > xm" (multiplicity k >= 1, default 1).
// Without a header, labels are indexed in sorted order.
NamedProfile parse_profile(const std::string& text);
std::string render_profile(const Profile& profile,
                           const std::vector<std::string>& labels);

int label_index(const std::vector<std::string>& labels, const std::string& token);

// Rule config: key=value lines (family, variant, scores, tiebreak, order,
// committee, agent, alternative, x, y, seed), '#' comments.
RuleSpec parse_rule_config(const std::string& text, int n, int m,
                           const std::vector<std::string>& labels);
std::string render_rule_config(const RuleSpec& spec);

inline constexpr const char* kFormatVersion = "rgf/1";

std::string verdict_to_json(const RuleSpec& spec, Axiom axiom, const Verdict& verdict,
                            const std::vector<std::string>& labels);

struct ParsedWitness {
    RuleSpec spec;
    Witness witness;
    std::vector<std::string> labels;
};

// Accepts any rgf/1 document carrying rule + axiom + witness.
ParsedWitness witness_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace rgf
