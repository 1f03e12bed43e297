#include "weylforge/report.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

#include "weylforge/decomp.hpp"
#include "weylforge/error.hpp"
#include "weylforge/jantzen.hpp"

namespace weylforge::report {

namespace {

CharForm form_from_string(const std::string& s) {
    for (CharForm f : {CharForm::Weight, CharForm::Nabla, CharForm::Simple, CharForm::Chi})
        if (to_string(f) == s) return f;
    throw Error(ErrorCode::InvalidInput, "unknown character form '" + s + "'");
}

json pairs_json(const RootSystem& sys, const std::map<Weight, std::int64_t>& m) {
    std::vector<Weight> ws;
    for (const auto& [w, c] : m) ws.push_back(w);
    sys.sort_canonical(ws);
    json out = json::array();
    for (const auto& w : ws) out.push_back(json::array({weight_json(w), m.at(w)}));
    return out;
}

std::map<Weight, std::int64_t> pairs_from_json(const RootSystem& sys, const json& j) {
    std::map<Weight, std::int64_t> m;
    for (const auto& e : j) m[weight_from_json(sys, e.at(0))] = e.at(1).get<std::int64_t>();
    return m;
}

std::string coords_text(const json& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i].get<std::int64_t>());
    return s + ")";
}

std::string csv_field(const std::string& s) { return s.find(',') == std::string::npos ? s : "\"" + s + "\""; }

json outcome_json(const RootSystem& sys, const BranchOutcome& o) {
    json layers = json::array();
    for (const auto& [w, ls] : o.layers) layers.push_back(json::array({weight_json(w), ls}));
    json filtration = nullptr;
    if (o.filtration) {
        json cert = json::array();
        for (const auto& [w, m] : o.filtration->certificate) cert.push_back(json::array({weight_json(w), m}));
        json obs = nullptr;
        if (o.filtration->obstruction)
            obs = json::array({weight_json(o.filtration->obstruction->first), o.filtration->obstruction->second});
        filtration = {{"certificate", cert}, {"obstruction", obs}};
    }
    return {{"label", o.label},
            {"branches", o.branches},
            {"relevant", pairs_json(sys, o.relevant)},
            {"layers", layers},
            {"hom", character_json(sys, o.hom)},
            {"filtration", filtration},
            {"kind", to_string(o.kind)},
            {"witness", o.witness ? weight_json(*o.witness) : json(nullptr)},
            {"coefficient", o.coefficient ? json(*o.coefficient) : json(nullptr)},
            {"detail", o.detail}};
}

BranchOutcome outcome_from_json(const RootSystem& sys, const json& j) {
    BranchOutcome o;
    o.label = j.at("label").get<std::string>();
    o.branches = j.at("branches").get<std::vector<std::size_t>>();
    o.relevant = pairs_from_json(sys, j.at("relevant"));
    for (const auto& e : j.at("layers")) o.layers[weight_from_json(sys, e.at(0))] = e.at(1).get<std::vector<int>>();
    o.hom = character_from_json(sys, j.at("hom"));
    if (!j.at("filtration").is_null()) {
        FiltrationOutcome f;
        for (const auto& e : j.at("filtration").at("certificate"))
            f.certificate.emplace_back(weight_from_json(sys, e.at(0)), e.at(1).get<std::int64_t>());
        const auto& obs = j.at("filtration").at("obstruction");
        if (!obs.is_null()) f.obstruction = std::make_pair(weight_from_json(sys, obs.at(0)), obs.at(1).get<std::int64_t>());
        o.filtration = std::move(f);
    }
    o.kind = obstruction_kind_from_string(j.at("kind").get<std::string>());
    if (!j.at("witness").is_null()) o.witness = weight_from_json(sys, j.at("witness"));
    if (!j.at("coefficient").is_null()) o.coefficient = j.at("coefficient").get<std::int64_t>();
    o.detail = j.at("detail").get<std::string>();
    return o;
}

std::string character_text(const json& c) {
    if (c.at("terms").empty()) return "0";
    const std::string form = c.at("form").get<std::string>();
    std::string head = form == "simple" ? "ch L" : form == "nabla" ? "ch nabla" : form == "chi" ? "chi" : "e";
    std::string s;
    bool first = true;
    for (const auto& t : c.at("terms")) {
        std::int64_t m = t.at(1).get<std::int64_t>();
        s += first ? (m < 0 ? "-" : "") : (m < 0 ? " - " : " + ");
        if (std::abs(m) != 1) s += std::to_string(std::abs(m)) + "*";
        s += head + coords_text(t.at(0));
        first = false;
    }
    return s;
}

}  // namespace

json Report::to_json() const {
    return {{"schema_version", schema_version},
            {"system", system},
            {"p", p},
            {"command", command},
            {"inputs", inputs},
            {"branches", branches},
            {"outcome", outcome},
            {"timings_ms", timings_ms}};
}

Report Report::from_json(const json& j) {
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion)
        throw Error(ErrorCode::InvalidInput, "report schema version " + std::to_string(r.schema_version));
    r.system = j.at("system").get<std::string>();
    r.p = j.at("p").get<std::int64_t>();
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.branches = j.at("branches");
    r.outcome = j.at("outcome");
    r.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
    return r;
}

json weight_json(const Weight& w) { return w.to_vector(); }

Weight weight_from_json(const RootSystem& sys, const json& j) {
    auto v = j.get<std::vector<std::int64_t>>();
    if (static_cast<int>(v.size()) != sys.rank())
        throw Error(ErrorCode::InvalidInput, "weight of length " + std::to_string(v.size()) + " for " + sys.name());
    return sys.weight(v);
}

json character_json(const RootSystem& sys, const VirtualCharacter& c) {
    json terms = json::array();
    for (const auto& [w, m] : c.canonical_terms(sys)) terms.push_back(json::array({weight_json(w), m}));
    return {{"form", std::string(to_string(c.form()))}, {"terms", terms}};
}

VirtualCharacter character_from_json(const RootSystem& sys, const json& j) {
    VirtualCharacter c(sys.id(), form_from_string(j.at("form").get<std::string>()));
    for (const auto& t : j.at("terms")) c.add(weight_from_json(sys, t.at(0)), t.at(1).get<std::int64_t>());
    return c;
}

json verdict_json(const ScenarioVerdict& v) {
    auto sys = parse_system(v.system);
    json outcomes = json::array();
    for (const auto& o : v.outcomes) outcomes.push_back(outcome_json(*sys, o));
    const Verdict expected = expected_verdict(v.id);
    return {{"id", v.id},
            {"system", v.system},
            {"p", v.p},
            {"method", v.method},
            {"fixture_dependent", v.fixture_dependent},
            {"label", v.fixture_dependent ? "FIXTURE-DEPENDENT" : "SELF-CONTAINED"},
            {"fixtures_used", v.fixtures_used},
            {"branches_examined", v.branches_examined},
            {"outcomes", outcomes},
            {"checks", v.checks},
            {"overall", to_string(v.overall)},
            {"expected", to_string(expected)},
            {"matches", v.overall == expected}};
}

ScenarioVerdict verdict_from_json(const json& j) {
    ScenarioVerdict v;
    v.id = j.at("id").get<std::string>();
    v.system = j.at("system").get<std::string>();
    auto sys = parse_system(v.system);
    v.p = j.at("p").get<std::int64_t>();
    v.method = j.at("method").get<std::string>();
    v.fixture_dependent = j.at("fixture_dependent").get<bool>();
    v.fixtures_used = j.at("fixtures_used").get<std::vector<std::string>>();
    v.branches_examined = j.at("branches_examined").get<std::size_t>();
    for (const auto& o : j.at("outcomes")) v.outcomes.push_back(outcome_from_json(*sys, o));
    v.checks = j.at("checks").get<std::vector<std::string>>();
    v.overall = verdict_from_string(j.at("overall").get<std::string>());
    return v;
}

Report jsf_report(const RootSystem& sys, std::int64_t p, const Weight& lambda, bool simple_basis,
                  const Fixtures* fixtures) {
    Report r;
    r.system = sys.name();
    r.p = p;
    r.command = "jsf";
    r.inputs = {{"lambda", weight_json(lambda)}, {"basis", simple_basis ? "simple" : "chi"}};
    const ChiSum sum = jsf(sys, lambda, p);
    if (!simple_basis) {
        r.outcome = {{"basis", "chi"},
                     {"character", character_json(sys, sum.character())},
                     {"text", sum.empty() ? "0 (empty sum)" : sum.to_string()}};
        return r;
    }
    auto bs = solve_decomposition(sys, lambda, p, fixtures);
    std::set<std::string> distinct;
    for (const auto& b : bs.branches) distinct.insert(b.entry(lambda).jsf_simple.to_string(sys));
    if (distinct.size() > 1)
        throw Error(ErrorCode::MissingDecompositionData,
                    std::to_string(bs.branches.size()) + " branches give " + std::to_string(distinct.size()) +
                        " different simple-basis sums for " + lambda.to_string());
    for (std::size_t i = 0; i < bs.branches.size(); ++i) {
        const auto& a = bs.branches[i].entry(lambda).jsf_simple;
        r.branches.push_back({{"index", i},
                              {"character", character_json(sys, a)},
                              {"text", a.empty() ? "0 (empty sum)" : a.to_string(sys)}});
    }
    r.outcome = {{"basis", "simple"},
                 {"branch_count", bs.branches.size()},
                 {"character", r.branches[0]["character"]},
                 {"text", r.branches[0]["text"]}};
    return r;
}

json decomp_classes(const RootSystem& sys, const DecompositionBranchSet& bs) {
    std::set<Weight> in_px;
    for (const auto& b : bs.branches)
        for (const auto& [mu, m] : b.column) {
            bool divisible = mu != bs.lambda;
            for (int i = 0; i < sys.rank(); ++i) divisible = divisible && mu[i] % bs.p == 0;
            if (divisible) in_px.insert(mu);
        }
    std::vector<Weight> at(in_px.begin(), in_px.end());
    sys.sort_canonical(at);
    json classes = json::array();
    for (const auto& [key, idx] : bs.group_by(at)) {
        json k = json::array();
        for (std::size_t i = 0; i < at.size(); ++i) k.push_back(json::array({weight_json(at[i]), key[i]}));
        classes.push_back({{"factors", k}, {"branches", idx}});
    }
    json weights = json::array();
    for (const auto& w : at) weights.push_back(weight_json(w));
    return {{"weights", weights}, {"classes", classes}};
}

Report decomp_report(const RootSystem& sys, std::int64_t p, const Weight& lambda, const Fixtures* fixtures) {
    Report r;
    r.system = sys.name();
    r.p = p;
    r.command = "decomp";
    r.inputs = {{"lambda", weight_json(lambda)}};
    auto bs = solve_decomposition(sys, lambda, p, fixtures);
    for (std::size_t i = 0; i < bs.branches.size(); ++i) {
        const auto& b = bs.branches[i];
        json prov = json::array();
        std::vector<Weight> ws;
        for (const auto& [w, m] : b.column) ws.push_back(w);
        sys.sort_canonical(ws);
        for (const auto& w : ws) prov.push_back(json::array({weight_json(w), b.entry(w).provenance}));
        r.branches.push_back({{"index", i},
                              {"column", pairs_json(sys, b.column)},
                              {"jsf_simple", character_json(sys, b.entry(lambda).jsf_simple)},
                              {"provenance", prov}});
    }
    r.outcome = {{"branch_count", bs.branches.size()},
                 {"unique", bs.unique()},
                 {"constraints", bs.constraints},
                 {"classes_in_pX", decomp_classes(sys, bs)}};
    return r;
}

Report verify_report(const std::vector<ScenarioVerdict>& verdicts) {
    Report r;
    r.command = "verify";
    json ids = json::array(), scen = json::array();
    bool all = true;
    for (const auto& v : verdicts) {
        ids.push_back(v.id);
        auto j = verdict_json(v);
        all = all && j["matches"].get<bool>();
        scen.push_back(std::move(j));
    }
    if (verdicts.size() == 1) {
        r.system = verdicts[0].system;
        r.p = verdicts[0].p;
    } else {
        r.system = "*";
    }
    r.inputs = {{"scenarios", ids}};
    r.outcome = {{"scenarios", scen}, {"all_match", all}};
    return r;
}

Report levi_report(const LeviSubsystem& L, const Weight& lambda) {
    Report r;
    r.system = L.ambient->name();
    r.command = "levi";
    json J = json::array();
    for (int j : L.J) J.push_back(j + 1);
    json map = json::array();
    for (int j : L.to_ambient) map.push_back(j + 1);
    r.inputs = {{"J", J}, {"restrict_nabla", weight_json(lambda)}};
    const auto res = restrict_character(L, nabla_character(*L.ambient, lambda));
    r.outcome = {{"levi_system", L.levi->name()},
                 {"index_map", map},
                 {"restricted_weight", weight_json(L.restrict_weight(lambda))},
                 {"character", character_json(*L.levi, res)},
                 {"dimension", dimension(*L.levi, res)},
                 {"matches_native_nabla", res == nabla_character(*L.levi, L.restrict_weight(lambda))}};
    return r;
}

Report propagate_report(const RootSystem& ambient, const std::optional<std::string>& base) {
    Report r;
    r.system = ambient.name();
    r.command = "propagate";
    r.inputs = {{"ambient", ambient.name()}, {"base", base ? json(*base) : json(nullptr)}};
    auto rows = base ? levi_propagation(*base, ambient) : propagation_table(ambient);
    json out = json::array();
    for (const auto& row : rows)
        out.push_back({{"item", row.item},
                       {"system", row.family},
                       {"p", row.p},
                       {"pattern", row.pattern_string()},
                       {"allowed", row.pattern},
                       {"J", row.J},
                       {"bases", row.bases}});
    if (rows.size() == 1) r.p = rows[0].p;
    r.outcome = {{"rows", out}};
    return r;
}

std::string to_text(const Report& r, bool all_branches) {
    std::ostringstream os;
    const auto& o = r.outcome;
    if (r.command == "jsf") {
        os << "jsf " << r.system << " p=" << r.p << " lambda=" << coords_text(r.inputs["lambda"])
           << " basis=" << r.inputs["basis"].get<std::string>() << "\n";
        if (o.contains("text")) {
            os << o["text"].get<std::string>() << "\n";
        } else {
            for (const auto& b : r.branches)
                os << "branch " << b["index"].get<std::size_t>() << ": " << b["text"].get<std::string>() << "\n";
        }
    } else if (r.command == "decomp") {
        os << "decomp " << r.system << " p=" << r.p << " lambda=" << coords_text(r.inputs["lambda"]) << "\n";
        os << o["branch_count"].get<std::size_t>() << " branch(es)\n";
        const auto& cl = o["classes_in_pX"];
        if (r.branches.size() > 1) {
            os << cl["classes"].size() << " class(es) by factors in pX:\n";
            for (const auto& c : cl["classes"]) {
                os << " ";
                for (const auto& f : c["factors"])
                    os << " [L" << coords_text(f[0]) << "]=" << f[1].get<std::int64_t>();
                if (c["factors"].empty()) os << " (no factors in pX)";
                os << " : " << c["branches"].size() << " branch(es)\n";
            }
        }
        if (all_branches || r.branches.size() == 1) {
            for (const auto& b : r.branches) {
                os << "branch " << b["index"].get<std::size_t>() << ":\n";
                for (std::size_t i = 0; i < b["column"].size(); ++i)
                    os << "  L" << coords_text(b["column"][i][0]) << " : " << b["column"][i][1].get<std::int64_t>()
                       << "   [" << b["provenance"][i][1].get<std::string>() << "]\n";
                os << "  sum formula: " << character_text(b["jsf_simple"]) << "\n";
            }
        }
    } else if (r.command == "verify") {
        for (const auto& s : o["scenarios"]) {
            os << "scenario " << s["id"].get<std::string>() << "  " << s["system"].get<std::string>()
               << " p=" << s["p"].get<std::int64_t>() << "  [" << s["label"].get<std::string>() << "]\n";
            os << "  method: " << s["method"].get<std::string>() << "\n";
            os << "  branches examined: " << s["branches_examined"].get<std::size_t>() << "\n";
            for (const auto& f : s["fixtures_used"]) os << "  fixture: " << f.get<std::string>() << "\n";
            for (const auto& c : s["checks"]) os << "  check: " << c.get<std::string>() << "\n";
            for (const auto& b : s["outcomes"]) {
                os << "  - " << b["label"].get<std::string>() << " (" << b["branches"].size() << " branch(es)): ";
                const auto kind = b["kind"].get<std::string>();
                if (kind == "none") {
                    os << "not obstructed";
                } else {
                    os << "obstructed [" << kind << "]";
                    if (!b["witness"].is_null()) os << " at " << coords_text(b["witness"]);
                }
                os << "\n      Hom = " << character_text(b["hom"]) << "\n      " << b["detail"].get<std::string>()
                   << "\n";
            }
            os << "  verdict: " << s["overall"].get<std::string>() << " (expected " << s["expected"].get<std::string>()
               << ")\n";
        }
        os << (o["all_match"].get<bool>() ? "all verdicts match" : "VERDICT MISMATCH") << "\n";
    } else if (r.command == "levi") {
        os << "levi " << r.system << " J=" << r.inputs["J"].dump() << " -> " << o["levi_system"].get<std::string>()
           << " (index map " << o["index_map"].dump() << ")\n";
        os << "restricted nabla" << coords_text(r.inputs["restrict_nabla"]) << " -> weight "
           << coords_text(o["restricted_weight"]) << ", dimension " << o["dimension"].get<std::int64_t>() << "\n";
        for (const auto& t : o["character"]["terms"])
            os << "  " << coords_text(t[0]) << " : " << t[1].get<std::int64_t>() << "\n";
        os << "equals native nabla" << coords_text(o["restricted_weight"]) << ": "
           << (o["matches_native_nabla"].get<bool>() ? "yes" : "no") << "\n";
    } else if (r.command == "propagate") {
        for (const auto& row : o["rows"]) {
            std::string bases;
            for (const auto& b : row["bases"]) bases += (bases.empty() ? "" : ",") + b.get<std::string>();
            os << row["system"].get<std::string>() << "  p=" << row["p"].get<std::int64_t>() << "  "
               << row["pattern"].get<std::string>() << "  J=" << row["J"].dump() << "  from " << bases << "\n";
        }
    }
    return os.str();
}

std::string to_csv(const Report& r) {
    std::ostringstream os;
    auto rows = [&](const json& c, const std::string& prefix) {
        for (const auto& t : c["terms"])
            os << prefix << csv_field(coords_text(t[0])) << "," << t[1].get<std::int64_t>() << "\n";
    };
    if (r.command == "jsf") {
        const std::string basis = r.inputs["basis"].get<std::string>();
        if (r.outcome.contains("character")) {
            os << "weight," << basis << "\n";
            rows(r.outcome["character"], "");
        } else {
            os << "branch,weight," << basis << "\n";
            for (const auto& b : r.branches) rows(b["character"], std::to_string(b["index"].get<std::size_t>()) + ",");
        }
    } else if (r.command == "decomp") {
        os << "branch,weight,multiplicity\n";
        for (const auto& b : r.branches)
            for (const auto& t : b["column"])
                os << b["index"].get<std::size_t>() << "," << csv_field(coords_text(t[0])) << ","
                   << t[1].get<std::int64_t>() << "\n";
    } else if (r.command == "levi") {
        os << "weight,weight_multiplicity\n";
        rows(r.outcome["character"], "");
    } else {
        throw Error(ErrorCode::InvalidInput, "no CSV form for " + r.command);
    }
    return os.str();
}

}  // namespace weylforge::report
