#pragma once

// Optional on-disk memo for expensive characters. Enabled only when
// WEYLFORGE_CACHE_DIR is set; files carry a version header and anything
// written by a different schema or engine version is ignored.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string_view>

#include "weylforge/rootsys.hpp"

namespace weylforge::cache {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kEngineVersion = "0.3.0";

std::optional<std::filesystem::path> directory();

std::optional<std::map<Weight, std::int64_t>> load(const RootSystem& sys, std::int64_t p, std::string_view kind,
                                                   const Weight& key);
void store(const RootSystem& sys, std::int64_t p, std::string_view kind, const Weight& key,
           const std::map<Weight, std::int64_t>& value);

}  // namespace weylforge::cache
