#include <chrono>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "weylforge/decomp.hpp"
#include "weylforge/error.hpp"
#include "weylforge/report.hpp"

using namespace weylforge;
using report::Report;

namespace {

enum Exit { kOk = 0, kUsage = 2, kMissingData = 3, kExplosion = 4, kMismatch = 5 };

struct Common {
    std::string system;
    std::int64_t p = 0;
    std::string lambda;
    std::string format = "text";
    std::string basis_in = "omega";
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
    return out;
}

std::int64_t parse_int(const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidInput, "not an integer: '" + s + "'");
    }
    if (used != s.size()) throw Error(ErrorCode::InvalidInput, "not an integer: '" + s + "'");
    return v;
}

// Doubled value of "3", "-1/2" or "1.5".
std::int64_t parse_doubled(const std::string& s) {
    if (auto slash = s.find('/'); slash != std::string::npos) {
        if (s.substr(slash + 1) != "2") throw Error(ErrorCode::InvalidInput, "only halves allowed: '" + s + "'");
        return parse_int(s.substr(0, slash));
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        const std::string frac = s.substr(dot + 1);
        if (frac != "5" && frac != "0") throw Error(ErrorCode::InvalidInput, "only halves allowed: '" + s + "'");
        const std::string whole = s.substr(0, dot);
        const bool neg = !whole.empty() && whole[0] == '-';
        const std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
        const std::int64_t half = frac == "5" ? 1 : 0;
        return 2 * w + (neg ? -half : half);
    }
    return 2 * parse_int(s);
}

Weight parse_weight(const RootSystem& sys, const std::string& text, const std::string& basis_in) {
    const auto parts = split_csv(text);
    if (static_cast<int>(parts.size()) != sys.rank())
        throw Error(ErrorCode::InvalidInput, sys.name() + " weights need " + std::to_string(sys.rank()) + " coordinates");
    if (basis_in == "omega") {
        std::vector<std::int64_t> c;
        for (const auto& s : parts) c.push_back(parse_int(s));
        return sys.weight(c);
    }
    if (basis_in != "epsilon") throw Error(ErrorCode::InvalidInput, "--basis-in must be omega or epsilon");
    if (sys.family() != Family::B && sys.family() != Family::C && sys.family() != Family::D)
        throw Error(ErrorCode::InvalidInput, "epsilon coordinates are accepted for B, C and D only");
    EpsilonCoords e;
    for (const auto& s : parts) e.doubled.push_back(parse_doubled(s));
    return epsilon_to_omega(sys, e);
}

std::int64_t require_prime(std::int64_t p) {
    bool prime = p >= 2;
    for (std::int64_t d = 2; prime && d * d <= p; ++d) prime = p % d != 0;
    if (!prime) throw Error(ErrorCode::InvalidInput, "p=" + std::to_string(p) + " is not a prime");
    return p;
}

void emit(const Report& r, const std::string& format, bool all_branches = false) {
    if (format == "json") {
        std::cout << r.to_json().dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << report::to_csv(r);
    } else {
        std::cout << report::to_text(r, all_branches);
    }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int exit_code(const Error& e) {
    switch (e.code()) {
        case ErrorCode::MissingDecompositionData: return kMissingData;
        case ErrorCode::BranchExplosion: return kExplosion;
        default: return kUsage;
    }
}

void add_common(CLI::App* cmd, Common& c, bool with_prime, bool with_lambda) {
    cmd->add_option("--system", c.system, "root system, e.g. C3")->required();
    if (with_prime) cmd->add_option("--p", c.p, "prime")->required();
    if (with_lambda) cmd->add_option("--lambda", c.lambda, "comma-separated coordinates")->required();
    cmd->add_option("--basis-in", c.basis_in, "coordinates of --lambda")->check(CLI::IsMember({"omega", "epsilon"}));
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weylforge: exact characters, Jantzen sums and decomposition data for reductive groups"};
    app.require_subcommand(1);
    std::string fixture_path;
    app.add_option("--fixtures", fixture_path, "literature fixture file");

    Common jc, dc, lc;
    std::string basis = "chi";
    auto* jsf_cmd = app.add_subcommand("jsf", "Jantzen sum formula of Delta(lambda)");
    add_common(jsf_cmd, jc, true, true);
    jsf_cmd->add_option("--basis", basis, "chi or simple")->check(CLI::IsMember({"chi", "simple"}));

    bool show_branches = false;
    auto* dec_cmd = app.add_subcommand("decomp", "decomposition numbers of Delta(lambda)");
    add_common(dec_cmd, dc, true, true);
    dec_cmd->add_flag("--branches", show_branches, "print every branch table");

    std::string scenario, vformat = "text";
    int n = 4;
    bool all = false;
    unsigned jobs = 1;
    auto* ver_cmd = app.add_subcommand("verify", "run obstruction scenarios");
    ver_cmd->add_option("--scenario", scenario, "scenario id");
    ver_cmd->add_option("--n", n, "rank for Bn_prop")->check(CLI::Range(3, 8));
    ver_cmd->add_flag("--all", all, "run every scenario");
    ver_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 64u));
    ver_cmd->add_option("--format", vformat, "output format")->check(CLI::IsMember({"text", "json"}));

    std::string J, restrict_nabla;
    auto* levi_cmd = app.add_subcommand("levi", "restrict nabla(lambda) to a Levi subsystem");
    add_common(levi_cmd, lc, false, false);
    levi_cmd->add_option("--J", J, "comma-separated simple root indices (1-based)")->required();
    levi_cmd->add_option("--restrict-nabla", restrict_nabla, "highest weight")->required();

    std::string base, ambient, pformat = "text";
    auto* prop_cmd = app.add_subcommand("propagate", "Levi propagation rows");
    prop_cmd->add_option("--base", base, "base case id");
    prop_cmd->add_option("--ambient", ambient, "ambient system, e.g. F4")->required();
    prop_cmd->add_option("--format", pformat, "output format")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (!fixture_path.empty()) Fixtures::set_default_path(fixture_path);
        const Fixtures fixtures = Fixtures::load_default();

        if (jsf_cmd->parsed()) {
            auto sys = parse_system(jc.system);
            auto r = report::jsf_report(*sys, require_prime(jc.p), parse_weight(*sys, jc.lambda, jc.basis_in),
                                        basis == "simple", &fixtures);
            r.timings_ms["total"] = ms_since(t0);
            emit(r, jc.format);
            return kOk;
        }
        if (dec_cmd->parsed()) {
            auto sys = parse_system(dc.system);
            auto r = report::decomp_report(*sys, require_prime(dc.p), parse_weight(*sys, dc.lambda, dc.basis_in),
                                           &fixtures);
            r.timings_ms["total"] = ms_since(t0);
            emit(r, dc.format, show_branches);
            return kOk;
        }
        if (ver_cmd->parsed()) {
            std::vector<std::string> ids;
            if (all) {
                for (const auto& id : scenario_ids())
                    ids.push_back(id == "Bn_prop" ? "Bn_prop(" + std::to_string(n) + ")" : id);
            } else if (!scenario.empty()) {
                ids.push_back(scenario == "Bn_prop" ? "Bn_prop(" + std::to_string(n) + ")" : scenario);
            } else {
                std::cerr << "verify: give --scenario <id> or --all\n";
                return kUsage;
            }
            for (const auto& id : ids) expected_verdict(id);

            std::vector<ScenarioVerdict> verdicts(ids.size());
            std::vector<double> times(ids.size());
            for (std::size_t start = 0; start < ids.size(); start += jobs) {
                std::vector<std::future<void>> running;
                for (std::size_t i = start; i < std::min(ids.size(), start + jobs); ++i)
                    running.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, [&, i] {
                        const auto s0 = std::chrono::steady_clock::now();
                        verdicts[i] = tmc_scenario(ids[i], fixtures);
                        times[i] = ms_since(s0);
                    }));
                for (auto& f : running) f.get();
            }
            auto r = report::verify_report(verdicts);
            for (std::size_t i = 0; i < ids.size(); ++i) r.timings_ms[ids[i]] = times[i];
            r.timings_ms["total"] = ms_since(t0);
            emit(r, vformat);
            return r.outcome["all_match"].get<bool>() ? kOk : kMismatch;
        }
        if (levi_cmd->parsed()) {
            auto sys = parse_system(lc.system);
            std::vector<int> idx;
            for (const auto& s : split_csv(J)) {
                const auto v = parse_int(s);
                if (v < 1 || v > sys->rank()) throw Error(ErrorCode::InvalidInput, "J index " + s + " out of range");
                idx.push_back(static_cast<int>(v - 1));
            }
            auto L = levi_subsystem(*sys, idx);
            auto r = report::levi_report(L, parse_weight(*sys, restrict_nabla, lc.basis_in));
            r.timings_ms["total"] = ms_since(t0);
            emit(r, lc.format);
            return kOk;
        }
        if (prop_cmd->parsed()) {
            auto sys = parse_system(ambient);
            auto r = report::propagate_report(*sys, base.empty() ? std::nullopt : std::optional<std::string>(base));
            r.timings_ms["total"] = ms_since(t0);
            emit(r, pformat);
            return kOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
