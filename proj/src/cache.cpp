#include "weylforge/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace weylforge::cache {

namespace {

std::string key_string(const RootSystem& sys, std::int64_t p, std::string_view kind, const Weight& key) {
    std::ostringstream os;
    os << sys.name() << '|' << p << '|' << kind << '|' << key.to_string();
    return os.str();
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace

std::optional<std::filesystem::path> directory() {
    const char* env = std::getenv("WEYLFORGE_CACHE_DIR");
    if (!env || !*env) return std::nullopt;
    return std::filesystem::path(env);
}

std::optional<std::map<Weight, std::int64_t>> load(const RootSystem& sys, std::int64_t p, std::string_view kind,
                                                   const Weight& key) {
    auto dir = directory();
    if (!dir) return std::nullopt;
    const std::string ks = key_string(sys, p, kind, key);
    std::ifstream in(*dir / (fnv1a_hex(ks) + ".json"));
    if (!in) return std::nullopt;
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.at("schema_version") != kSchemaVersion || j.at("engine_version") != kEngineVersion) return std::nullopt;
        if (j.at("key") != ks) return std::nullopt;
        std::map<Weight, std::int64_t> out;
        for (const auto& t : j.at("terms")) {
            auto coords = t.at(0).get<std::vector<std::int64_t>>();
            out[sys.weight(coords)] = t.at(1).get<std::int64_t>();
        }
        return out;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void store(const RootSystem& sys, std::int64_t p, std::string_view kind, const Weight& key,
           const std::map<Weight, std::int64_t>& value) {
    auto dir = directory();
    if (!dir) return;
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    const std::string ks = key_string(sys, p, kind, key);
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["engine_version"] = kEngineVersion;
    j["key"] = ks;
    j["terms"] = nlohmann::json::array();
    for (const auto& [w, c] : value) j["terms"].push_back({w.to_vector(), c});
    // Write then rename so concurrent readers never see a partial file.
    const auto final_path = *dir / (fnv1a_hex(ks) + ".json");
    auto tmp = final_path;
    tmp += ".tmp" + std::to_string(reinterpret_cast<std::uintptr_t>(&j));
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump();
    }
    std::filesystem::rename(tmp, final_path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace weylforge::cache
