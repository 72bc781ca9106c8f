// Python bindings over the text-level surface: the same profile, rule
// config and JSON formats the CLI speaks.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rgf/repro.hpp"
#include "rgf/textio.hpp"

namespace py = pybind11;

namespace {

std::pair<rgf::RuleSpec, rgf::NamedProfile> load(const std::string& rule_text,
                                                 const std::string& profile_text) {
    rgf::NamedProfile np = rgf::parse_profile(profile_text);
    rgf::RuleSpec spec =
        rgf::parse_rule_config(rule_text, np.profile.n(), np.profile.m, np.labels);
    return {std::move(spec), std::move(np)};
}

std::string tally(const std::string& rule_text, const std::string& profile_text) {
    auto [spec, np] = load(rule_text, profile_text);
    const rgf::Alt w = rgf::evaluate(spec, np.profile);
    return w < np.labels.size() ? np.labels[w] : rgf::default_label(w);
}

py::dict verdict_dict(const rgf::RuleSpec& spec, rgf::Axiom axiom,
                      const rgf::Verdict& v) {
    py::dict d;
    d["axiom"] = rgf::axiom_name(axiom);
    d["status"] = v.violated ? "violated" : "holds";
    d["coverage"] = v.coverage.to_string();
    if (v.dictator) d["dictator"] = *v.dictator;
    d["json"] = rgf::verdict_to_json(spec, axiom, v, rgf::default_labels(spec.m));
    return d;
}

py::dict check_axiom_py(const std::string& rule_text, const std::string& axiom,
                        int n, int m, const std::string& mode, int workers) {
    const std::vector<std::string> labels = rgf::default_labels(m);
    const rgf::RuleSpec spec = rgf::parse_rule_config(rule_text, n, m, labels);
    rgf::EngineOptions opts;
    opts.workers = workers;
    rgf::Mode md = rgf::Mode::exhaustive();
    if (!mode.empty() && mode != "exhaustive") {
        if (mode.rfind("sample:", 0) != 0)
            throw rgf::DomainError("mode must be exhaustive or sample:COUNT:SEED");
        const std::string rest = mode.substr(7);
        const size_t colon = rest.find(':');
        md = rgf::Mode::sampled(std::stoull(rest.substr(0, colon)),
                                std::stoull(rest.substr(colon + 1)));
    }
    const rgf::Verdict v =
        rgf::check_axiom(spec, rgf::axiom_from_name(axiom), md, opts);
    return verdict_dict(spec, rgf::axiom_from_name(axiom), v);
}

bool recheck_py(const std::string& witness_json) {
    const rgf::ParsedWitness pw = rgf::witness_from_json(witness_json);
    return rgf::recheck(pw.spec, pw.witness);
}

py::dict result_dict(const rgf::ScenarioResult& r) {
    py::dict d;
    d["id"] = r.id;
    d["rule"] = r.rule;
    d["axiom"] = r.axiom;
    d["n"] = r.n;
    d["m"] = r.m;
    d["mode"] = r.mode;
    d["expected"] = r.expect_violated ? "violated" : "holds";
    d["got"] = r.got_violated ? "violated" : "holds";
    d["match"] = r.match;
    d["coverage"] = r.coverage;
    d["elapsed_ms"] = r.elapsed_ms;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "voting rules, axiom checks and the claims catalog";

    mod.def("tally", &tally, py::arg("rule"), py::arg("profile"),
            "Evaluate a rule config on a profile; returns the winner label.");
    mod.def("check_axiom", &check_axiom_py, py::arg("rule"), py::arg("axiom"),
            py::arg("n"), py::arg("m"), py::arg("mode") = "exhaustive",
            py::arg("workers") = 0,
            "Check an axiom; returns a dict with status/coverage/witness JSON.");
    mod.def("recheck", &recheck_py, py::arg("witness_json"),
            "Re-validate a witness JSON document.");
    mod.def("scenario_ids", [] {
        std::vector<std::string> ids;
        for (const rgf::Scenario& s : rgf::scenario_catalog()) ids.push_back(s.id);
        return ids;
    });
    mod.def("run_scenario", [](const std::string& id, int workers) {
        rgf::EngineOptions opts;
        opts.workers = workers;
        return result_dict(rgf::run_scenario(id, opts));
    }, py::arg("id"), py::arg("workers") = 0);
    mod.def("score_vector", [](const std::string& name, int m) {
        const std::vector<std::string> labels = rgf::default_labels(m);
        return rgf::parse_rule_config("family=scoring\nscores=" + name +
                                          "\ntiebreak=order:" + [&] {
                                              std::string s;
                                              for (int a = 0; a < m; ++a)
                                                  s += (a ? "," : "") + labels[a];
                                              return s;
                                          }(),
                                      2, m, labels)
            .name();
    }, py::arg("name"), py::arg("m"), "Expand a named score vector; returns the rule name.");
    mod.attr("__version__") = "0.1.0";
}
