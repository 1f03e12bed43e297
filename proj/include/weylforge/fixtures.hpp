#pragma once

// Read-only literature data that the character computations cannot derive:
// simple characters, G_1-extension data, socles and heads of particular
// modules. Every entry names its source.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weylforge/charalg.hpp"

namespace weylforge {

struct FixtureEntry {
    std::string id;
    std::vector<std::string> systems;  // e.g. {"B3"} or {"B3","B4","B5","B6"}
    std::int64_t p = 0;
    std::string kind;  // simple-character | ext-datum | socle-datum | head-datum
    std::string source;

    // simple-character
    std::string highest_weight;
    std::vector<std::pair<std::string, std::int64_t>> dominant_multiplicities;
    // ext-datum: Ext^1_{G_1}(L(lambda), Y(mu))^(-1) contains L(nu) for each listed nu
    std::string ext_lambda, ext_mu, ext_target;  // target: "simple" or "nabla"
    std::vector<std::string> ext_submodules;
    // socle-datum / head-datum: module ("weyl" | "induced") of the given highest weight
    std::string module;
    std::vector<std::string> constituents;

    bool applies_to(const RootSystem& sys, std::int64_t prime) const;
};

class Fixtures {
public:
    Fixtures() = default;
    static Fixtures load(const std::string& path);
    static Fixtures load_default();  // --fixtures override, else the built-in path
    static const std::string& default_path();
    static void set_default_path(const std::string& path);

    int schema_version() const noexcept { return schema_version_; }
    const std::string& fixture_version() const noexcept { return fixture_version_; }
    const std::vector<FixtureEntry>& entries() const noexcept { return entries_; }

    std::optional<std::pair<VirtualCharacter, std::string>> simple_character(const RootSystem& sys, std::int64_t p,
                                                                             const Weight& lambda) const;
    // Socle (kind socle-datum) or head (kind head-datum) of the given module.
    std::optional<std::pair<std::vector<Weight>, std::string>> constituents(const RootSystem& sys, std::int64_t p,
                                                                           const std::string& kind,
                                                                           const std::string& module,
                                                                           const Weight& lambda) const;
    struct Ext {
        Weight lambda, mu;
        std::string target;
        std::vector<Weight> submodules;
        std::string id, source;
    };
    std::vector<Ext> ext_data(const RootSystem& sys, std::int64_t p) const;

private:
    int schema_version_ = 0;
    std::string fixture_version_;
    std::vector<FixtureEntry> entries_;
};

// "0", "w2", "2w1+w3", "rho-w1" in the fundamental-weight basis of sys.
Weight parse_symbolic_weight(const RootSystem& sys, const std::string& text);

}  // namespace weylforge
