#include "weylforge/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <mutex>

#include "json.hpp"
#include "weylforge/error.hpp"

#ifndef WEYLFORGE_FIXTURE_PATH
#define WEYLFORGE_FIXTURE_PATH "fixtures/literature.json"
#endif

namespace weylforge {

namespace {

std::mutex path_mu;
std::string& path_slot() {
    static std::string p = WEYLFORGE_FIXTURE_PATH;
    return p;
}

std::vector<std::string> string_list(const nlohmann::json& j) {
    if (j.is_string()) return {j.get<std::string>()};
    return j.get<std::vector<std::string>>();
}

}  // namespace

bool FixtureEntry::applies_to(const RootSystem& sys, std::int64_t prime) const {
    return prime == p && std::find(systems.begin(), systems.end(), sys.name()) != systems.end();
}

Weight parse_symbolic_weight(const RootSystem& sys, const std::string& text) {
    Weight w = sys.zero();
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty() || s == "0") return w;
    std::size_t i = 0;
    int sign = 1;
    if (s[0] == '-') {
        sign = -1;
        ++i;
    } else if (s[0] == '+') {
        ++i;
    }
    auto fail = [&] { throw Error(ErrorCode::InvalidInput, "cannot parse weight '" + text + "'"); };
    while (i < s.size()) {
        std::int64_t coef = 0;
        bool has_coef = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            coef = coef * 10 + (s[i++] - '0');
            has_coef = true;
        }
        if (!has_coef) coef = 1;
        if (s.compare(i, 3, "rho") == 0) {
            w += sys.rho().scaled(sign * coef);
            i += 3;
        } else if (i < s.size() && s[i] == 'w') {
            ++i;
            int idx = 0;
            bool has_idx = false;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                idx = idx * 10 + (s[i++] - '0');
                has_idx = true;
            }
            if (!has_idx || idx < 1 || idx > sys.rank()) fail();
            w[idx - 1] += sign * coef;
        } else if (has_coef && (i == s.size() || s[i] == '+' || s[i] == '-') && coef == 0) {
            // a literal 0 term
        } else {
            fail();
        }
        if (i == s.size()) break;
        if (s[i] == '+') sign = 1;
        else if (s[i] == '-') sign = -1;
        else fail();
        ++i;
        if (i == s.size()) fail();
    }
    return w;
}

Fixtures Fixtures::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MissingDecompositionData, "cannot open fixture file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::InvalidInput, "fixture file " + path + " is not valid JSON: " + e.what());
    }
    Fixtures f;
    try {
        f.schema_version_ = j.at("schema_version").get<int>();
        if (f.schema_version_ != 1)
            throw Error(ErrorCode::InvalidInput, "unsupported fixture schema " + std::to_string(f.schema_version_));
        f.fixture_version_ = j.at("fixture_version").get<std::string>();
        for (const auto& e : j.at("entries")) {
            FixtureEntry x;
            x.id = e.at("id").get<std::string>();
            x.systems = string_list(e.contains("systems") ? e.at("systems") : e.at("system"));
            x.p = e.at("p").get<std::int64_t>();
            x.kind = e.at("kind").get<std::string>();
            x.source = e.at("source").get<std::string>();
            const auto& pl = e.at("payload");
            if (x.kind == "simple-character") {
                x.highest_weight = pl.at("highest_weight").get<std::string>();
                for (const auto& t : pl.at("dominant_multiplicities"))
                    x.dominant_multiplicities.emplace_back(t.at(0).get<std::string>(), t.at(1).get<std::int64_t>());
            } else if (x.kind == "ext-datum") {
                x.ext_lambda = pl.at("lambda").get<std::string>();
                x.ext_mu = pl.at("mu").get<std::string>();
                x.ext_target = pl.at("target").get<std::string>();
                x.ext_submodules = string_list(pl.at("simple_submodules"));
            } else if (x.kind == "socle-datum" || x.kind == "head-datum") {
                x.module = pl.at("module").get<std::string>();
                x.highest_weight = pl.at("highest_weight").get<std::string>();
                x.constituents = string_list(pl.at("constituents"));
            } else {
                throw Error(ErrorCode::InvalidInput, "unknown fixture kind '" + x.kind + "' in " + x.id);
            }
            f.entries_.push_back(std::move(x));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, "malformed fixture file " + path + ": " + e.what());
    }
    return f;
}

const std::string& Fixtures::default_path() {
    std::lock_guard lock(path_mu);
    return path_slot();
}

void Fixtures::set_default_path(const std::string& path) {
    std::lock_guard lock(path_mu);
    path_slot() = path;
}

Fixtures Fixtures::load_default() { return load(default_path()); }

std::optional<std::pair<VirtualCharacter, std::string>> Fixtures::simple_character(const RootSystem& sys,
                                                                                   std::int64_t p,
                                                                                   const Weight& lambda) const {
    for (const auto& e : entries_) {
        if (e.kind != "simple-character" || !e.applies_to(sys, p)) continue;
        if (parse_symbolic_weight(sys, e.highest_weight) != lambda) continue;
        VirtualCharacter c(sys.id(), CharForm::Weight);
        for (const auto& [w, m] : e.dominant_multiplicities) c.add(parse_symbolic_weight(sys, w), m);
        return std::make_pair(c, e.id);
    }
    return std::nullopt;
}

std::optional<std::pair<std::vector<Weight>, std::string>> Fixtures::constituents(const RootSystem& sys,
                                                                                 std::int64_t p,
                                                                                 const std::string& kind,
                                                                                 const std::string& module,
                                                                                 const Weight& lambda) const {
    for (const auto& e : entries_) {
        if (e.kind != kind || e.module != module || !e.applies_to(sys, p)) continue;
        if (parse_symbolic_weight(sys, e.highest_weight) != lambda) continue;
        std::vector<Weight> out;
        for (const auto& c : e.constituents) out.push_back(parse_symbolic_weight(sys, c));
        return std::make_pair(out, e.id);
    }
    return std::nullopt;
}

std::vector<Fixtures::Ext> Fixtures::ext_data(const RootSystem& sys, std::int64_t p) const {
    std::vector<Ext> out;
    for (const auto& e : entries_) {
        if (e.kind != "ext-datum" || !e.applies_to(sys, p)) continue;
        Ext x{parse_symbolic_weight(sys, e.ext_lambda), parse_symbolic_weight(sys, e.ext_mu), e.ext_target, {}, e.id,
              e.source};
        for (const auto& s : e.ext_submodules) x.submodules.push_back(parse_symbolic_weight(sys, s));
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace weylforge
