#include "rgf/textio.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace rgf {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            return false;
    return true;
}

struct Ballot {
    int line;
    int multiplicity;
    std::vector<std::string> names;  // best-to-worst
};

}  // namespace

int label_index(const std::vector<std::string>& labels, const std::string& token) {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == token) return int(i);
    throw ParseError("unknown alternative label: " + token);
}

NamedProfile parse_profile(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::vector<std::string> header;
    std::vector<Ballot> ballots;
    while (std::getline(in, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.rfind("alternatives:", 0) == 0) {
            if (!ballots.empty() || !header.empty())
                fail(lineno, "alternatives header must appear once, before ballots");
            for (const std::string& name : split(line.substr(13), ',')) {
                if (!valid_label(name)) fail(lineno, "bad alternative label '" + name + "'");
                if (std::find(header.begin(), header.end(), name) != header.end())
                    fail(lineno, "duplicate alternative label '" + name + "'");
                header.push_back(name);
            }
            continue;
        }
        Ballot b{lineno, 1, {}};
        std::string body = line;
        const size_t colon = line.find(':');
        if (colon != std::string::npos) {
            const std::string mult = trim(line.substr(0, colon));
            try {
                size_t used = 0;
                b.multiplicity = std::stoi(mult, &used);
                if (used != mult.size()) throw std::invalid_argument(mult);
            } catch (const std::exception&) {
                fail(lineno, "bad ballot multiplicity '" + mult + "'");
            }
            if (b.multiplicity < 1) fail(lineno, "ballot multiplicity must be at least 1");
            body = trim(line.substr(colon + 1));
        }
        for (const std::string& name : split(body, '>')) {
            if (!valid_label(name)) fail(lineno, "bad alternative label '" + name + "'");
            if (std::find(b.names.begin(), b.names.end(), name) != b.names.end())
                fail(lineno, "duplicate alternative '" + name + "' in ballot");
            b.names.push_back(name);
        }
        ballots.push_back(std::move(b));
    }
    if (ballots.empty()) throw ParseError("profile file contains no ballots");

    std::vector<std::string> labels = header;
    if (labels.empty()) {
        std::set<std::string> seen;
        for (const Ballot& b : ballots) seen.insert(b.names.begin(), b.names.end());
        labels.assign(seen.begin(), seen.end());  // sorted order
    }
    const int m = int(labels.size());
    if (m < 1 || m > kMaxAlternatives)
        throw ParseError("profiles support between 1 and 8 alternatives");

    std::vector<Preference> prefs;
    for (const Ballot& b : ballots) {
        if (int(b.names.size()) != m)
            fail(b.line, "ballot must rank all " + std::to_string(m) + " alternatives");
        std::vector<Alt> order;
        std::vector<bool> seen(m, false);
        for (const std::string& name : b.names) {
            auto it = std::find(labels.begin(), labels.end(), name);
            if (it == labels.end()) fail(b.line, "unknown alternative label '" + name + "'");
            const int idx = int(it - labels.begin());
            if (seen[idx]) fail(b.line, "duplicate alternative '" + name + "' in ballot");
            seen[idx] = true;
            order.push_back(Alt(idx));
        }
        const Preference p(order);
        for (int k = 0; k < b.multiplicity; ++k) prefs.push_back(p);
    }
    return NamedProfile{Profile(m, std::move(prefs)), std::move(labels)};
}

std::string render_profile(const Profile& profile, const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "alternatives: ";
    for (int a = 0; a < profile.m; ++a)
        os << (a ? "," : "") << (a < int(labels.size()) ? labels[a] : default_label(Alt(a)));
    os << "\n";
    for (const Preference& p : profile.prefs) {
        os << "1: ";
        const std::vector<Alt> order = p.ranking();
        for (size_t i = 0; i < order.size(); ++i) {
            os << (i ? " > " : "");
            os << (order[i] < labels.size() ? labels[order[i]] : default_label(order[i]));
        }
        os << "\n";
    }
    return os.str();
}

namespace {

Rational parse_rational(const std::string& tok) {
    const size_t slash = tok.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(tok));
        return Rational(std::stoll(tok.substr(0, slash)), std::stoll(tok.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("bad rational score '" + tok + "'");
    }
}

ScoreVector parse_scores(const std::string& value, int m) {
    if (value == "borda") return ScoreVector::borda(m);
    if (value == "plurality") return ScoreVector::plurality(m);
    if (value == "negative-plurality") return ScoreVector::negative_plurality(m);
    if (value == "dowdall") return ScoreVector::dowdall(m);
    if (value.rfind("approval:", 0) == 0)
        return ScoreVector::k_approval(m, std::stoi(value.substr(9)));
    std::vector<Rational> s;
    for (const std::string& tok : split(value, ',')) s.push_back(parse_rational(tok));
    return ScoreVector(std::move(s));
}

std::vector<Alt> parse_alt_list(const std::string& value,
                                const std::vector<std::string>& labels) {
    std::vector<Alt> out;
    for (const std::string& tok : split(value, ','))
        out.push_back(Alt(label_index(labels, tok)));
    return out;
}

TieBreak parse_tiebreak(const std::string& value, int m,
                        const std::vector<std::string>& labels) {
    if (value.rfind("order:", 0) == 0)
        return TieBreak::fixed_order(parse_alt_list(value.substr(6), labels));
    if (value.rfind("agent:", 0) == 0) return TieBreak::by_agent(std::stoi(value.substr(6)));
    if (value.rfind("relation:", 0) == 0) {
        std::vector<bool> star(m * m, false);
        std::vector<bool> covered(m * m, false);
        for (const std::string& pair : split(value.substr(9), ',')) {
            const std::vector<std::string> sides = split(pair, '>');
            if (sides.size() != 2) throw ParseError("bad relation pair '" + pair + "'");
            const int a = label_index(labels, sides[0]);
            const int b = label_index(labels, sides[1]);
            if (a == b || covered[a * m + b])
                throw ParseError("relation pair repeated or reflexive: '" + pair + "'");
            covered[a * m + b] = covered[b * m + a] = true;
            star[a * m + b] = true;
        }
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                if (!covered[a * m + b])
                    throw ParseError("relation misses the pair " + labels[a] + "," + labels[b]);
        return TieBreak::star_relation(m, std::move(star));
    }
    throw ParseError("bad tiebreak '" + value + "' (want order:/agent:/relation:)");
}

Committee parse_committee(const std::string& value, int n) {
    std::vector<std::uint32_t> minimal;
    for (const std::string& coalition : split(value, ';')) {
        std::uint32_t mask = 0;
        for (const std::string& tok : split(coalition, ',')) {
            int agent = 0;
            try {
                agent = std::stoi(tok);
            } catch (const std::exception&) {
                throw ParseError("bad agent index '" + tok + "' in committee");
            }
            if (agent < 1 || agent > n)
                throw ParseError("committee agent index out of 1..n: " + tok);
            mask |= (1u << (agent - 1));
        }
        minimal.push_back(mask);
    }
    return Committee::from_minimal(n, minimal);
}

CondorcetVariant parse_variant(const std::string& value) {
    for (CondorcetVariant v :
         {CondorcetVariant::Simpson, CondorcetVariant::Copeland, CondorcetVariant::Young,
          CondorcetVariant::Dodgson, CondorcetVariant::Fishburn, CondorcetVariant::Black})
        if (value == to_string(v)) return v;
    throw ParseError("unknown Condorcet variant '" + value + "'");
}

}  // namespace

RuleSpec parse_rule_config(const std::string& text, int n, int m,
                           const std::vector<std::string>& labels) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::map<std::string, std::string> kv;
    while (std::getline(in, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (kv.count(key)) fail(lineno, "duplicate key '" + key + "'");
        kv[key] = value;
    }
    if (!kv.count("family")) throw ParseError("rule config misses 'family'");

    auto require = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ParseError("rule config misses '" + std::string(key) + "' for family " +
                             kv["family"]);
        return it->second;
    };

    const std::string family = kv["family"];
    try {
        if (family == "maxmin")
            return RuleSpec(n, m, MaxminSpec{parse_tiebreak(require("tiebreak"), m, labels)});
        if (family == "scoring")
            return RuleSpec(n, m,
                            ScoringSpec{parse_scores(require("scores"), m),
                                        parse_tiebreak(require("tiebreak"), m, labels)});
        if (family == "condorcet")
            return RuleSpec(n, m,
                            CondorcetSpec{parse_variant(require("variant")),
                                          parse_tiebreak(require("tiebreak"), m, labels)});
        if (family == "successive-elimination")
            return RuleSpec(n, m,
                            SuccessiveEliminationSpec{parse_alt_list(require("order"), labels)});
        if (family == "extended-majority")
            return RuleSpec(n, m,
                            ExtendedMajoritySpec{parse_committee(require("committee"), n),
                                                 Alt(label_index(labels, require("x"))),
                                                 Alt(label_index(labels, require("y")))});
        if (family == "dictatorship")
            return RuleSpec(n, m, DictatorshipSpec{std::stoi(require("agent"))});
        if (family == "constant")
            return RuleSpec(n, m,
                            ConstantSpec{Alt(label_index(labels, require("alternative")))});
        if (family == "remark4x3")
            return RuleSpec(n, m, Remark4x3Spec{parse_alt_list(require("order"), labels)});
        if (family == "maxtop")
            return RuleSpec(n, m, MaxTopSpec{parse_alt_list(require("order"), labels)});
        if (family == "bottom-agent")
            return RuleSpec(n, m, BottomAgentSpec{std::stoi(require("agent"))});
        if (family == "tops-random")
            return RuleSpec(n, m, TopsRandomSpec{std::stoull(require("seed"))});
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid rule config: ") + e.what());
    }
    throw ParseError("unknown rule family '" + family + "'");
}

std::string render_rule_config(const RuleSpec& spec) {
    // canonical() already is the key=value form, minus the scope line.
    const std::string c = spec.canonical();
    std::istringstream in(c);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("n=", 0) != 0 && line.rfind("m=", 0) != 0) out << line << "\n";
    return out.str();
}

namespace {

json rule_to_json(const RuleSpec& spec) {
    json j = json::object();
    std::istringstream in(render_rule_config(spec));
    std::string line;
    while (std::getline(in, line)) {
        const size_t eq = line.find('=');
        if (eq != std::string::npos) j[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return j;
}

// Rule objects inside JSON documents are always letter-coded (the
// canonical form); the document's labels apply to profile rankings only.
RuleSpec rule_from_json(const json& j, int n, int m) {
    std::ostringstream os;
    for (auto it = j.begin(); it != j.end(); ++it)
        os << it.key() << "=" << it.value().get<std::string>() << "\n";
    return parse_rule_config(os.str(), n, m, default_labels(m));
}

json ranking_to_json(const Preference& p, const std::vector<std::string>& labels) {
    json arr = json::array();
    for (Alt a : p.ranking())
        arr.push_back(a < labels.size() ? labels[a] : default_label(a));
    return arr;
}

json profile_to_json(const Profile& p, const std::vector<std::string>& labels) {
    json arr = json::array();
    for (const Preference& q : p.prefs) arr.push_back(ranking_to_json(q, labels));
    return arr;
}

Preference ranking_from_json(const json& arr, const std::vector<std::string>& labels) {
    std::vector<Alt> order;
    for (const auto& tok : arr)
        order.push_back(Alt(label_index(labels, tok.get<std::string>())));
    return Preference(order);
}

Profile profile_from_json(const json& arr, int m, const std::vector<std::string>& labels) {
    std::vector<Preference> prefs;
    for (const auto& row : arr) prefs.push_back(ranking_from_json(row, labels));
    return Profile(m, std::move(prefs));
}

struct WitnessJsonVisitor {
    const std::vector<std::string>& labels;

    json operator()(const DeviationWitness& w) const {
        return {{"type", "deviation"},
                {"profile", profile_to_json(w.profile, labels)},
                {"agent", w.agent},
                {"misreport", ranking_to_json(w.misreport, labels)}};
    }
    json operator()(const ProfilePairWitness& w) const {
        return {{"type", "profile-pair"},
                {"profile", profile_to_json(w.profile, labels)},
                {"other", profile_to_json(w.other, labels)}};
    }
    json operator()(const AgentPermutationWitness& w) const {
        json perm = json::array();
        for (int v : w.perm) perm.push_back(v + 1);  // 1-based on disk
        return {{"type", "agent-permutation"},
                {"profile", profile_to_json(w.profile, labels)},
                {"permutation", perm}};
    }
    json operator()(const AlternativePermutationWitness& w) const {
        json perm = json::array();
        for (Alt v : w.perm)
            perm.push_back(v < labels.size() ? labels[v] : default_label(v));
        return {{"type", "alternative-permutation"},
                {"profile", profile_to_json(w.profile, labels)},
                {"permutation", perm}};
    }
    json operator()(const DominatedOutcomeWitness& w) const {
        return {{"type", "dominated-outcome"},
                {"profile", profile_to_json(w.profile, labels)},
                {"dominator",
                 w.dominator < labels.size() ? labels[w.dominator]
                                             : default_label(w.dominator)}};
    }
    json operator()(const ProfileWitness& w) const {
        return {{"type", "profile"}, {"profile", profile_to_json(w.profile, labels)}};
    }
    json operator()(const NoDictatorWitness& w) const {
        json arr = json::array();
        for (const Profile& p : w.counterexamples) arr.push_back(profile_to_json(p, labels));
        return {{"type", "no-dictator"}, {"counterexamples", arr}};
    }
};

}  // namespace

std::string verdict_to_json(const RuleSpec& spec, Axiom axiom, const Verdict& verdict,
                            const std::vector<std::string>& labels) {
    json j{{"version", kFormatVersion},
           {"kind", "verdict"},
           {"axiom", axiom_name(axiom)},
           {"n", spec.n},
           {"m", spec.m},
           {"labels", labels.empty() ? default_labels(spec.m) : labels},
           {"rule", rule_to_json(spec)},
           {"status", verdict.violated ? "violated" : "holds"},
           {"coverage",
            json{{"kind", verdict.coverage.kind == Mode::Kind::Exhaustive ? "exhaustive"
                                                                          : "sampled"},
                 {"samples", verdict.coverage.samples},
                 {"seed", verdict.coverage.seed}}}};
    if (verdict.dictator) j["dictator"] = *verdict.dictator;
    if (verdict.witness) {
        const std::vector<std::string> use =
            labels.empty() ? default_labels(spec.m) : labels;
        j["witness"] = std::visit(WitnessJsonVisitor{use}, verdict.witness->body);
    }
    return j.dump(2) + "\n";
}

ParsedWitness witness_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad witness JSON: ") + e.what());
    }
    if (!j.contains("version") || j["version"] != kFormatVersion)
        throw ParseError("witness JSON must declare version rgf/1");
    if (!j.contains("witness")) throw ParseError("document carries no witness");
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    std::vector<std::string> labels = j.contains("labels")
                                          ? j["labels"].get<std::vector<std::string>>()
                                          : default_labels(m);
    if (int(labels.size()) != m) throw ParseError("labels array must have m entries");
    RuleSpec spec = rule_from_json(j.at("rule"), n, m);
    const json& w = j.at("witness");
    const Axiom axiom = axiom_from_name(j.at("axiom").get<std::string>());
    const std::string type = w.at("type").get<std::string>();
    Witness witness;
    witness.axiom = axiom;
    if (type == "deviation") {
        witness.body = DeviationWitness{profile_from_json(w.at("profile"), m, labels),
                                        w.at("agent").get<int>(),
                                        ranking_from_json(w.at("misreport"), labels)};
    } else if (type == "profile-pair") {
        witness.body = ProfilePairWitness{profile_from_json(w.at("profile"), m, labels),
                                          profile_from_json(w.at("other"), m, labels)};
    } else if (type == "agent-permutation") {
        std::vector<int> perm;
        for (const auto& v : w.at("permutation")) perm.push_back(v.get<int>() - 1);
        witness.body =
            AgentPermutationWitness{profile_from_json(w.at("profile"), m, labels), perm};
    } else if (type == "alternative-permutation") {
        std::vector<Alt> perm;
        for (const auto& v : w.at("permutation"))
            perm.push_back(Alt(label_index(labels, v.get<std::string>())));
        witness.body = AlternativePermutationWitness{
            profile_from_json(w.at("profile"), m, labels), perm};
    } else if (type == "dominated-outcome") {
        witness.body = DominatedOutcomeWitness{
            profile_from_json(w.at("profile"), m, labels),
            Alt(label_index(labels, w.at("dominator").get<std::string>()))};
    } else if (type == "profile") {
        witness.body = ProfileWitness{profile_from_json(w.at("profile"), m, labels)};
    } else if (type == "no-dictator") {
        NoDictatorWitness nd;
        for (const auto& p : w.at("counterexamples"))
            nd.counterexamples.push_back(profile_from_json(p, m, labels));
        witness.body = std::move(nd);
    } else {
        throw ParseError("unknown witness type '" + type + "'");
    }
    return ParsedWitness{std::move(spec), std::move(witness), std::move(labels)};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace rgf
