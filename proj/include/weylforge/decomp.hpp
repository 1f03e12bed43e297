#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "weylforge/charalg.hpp"
#include "weylforge/fixtures.hpp"
#include "weylforge/jantzen.hpp"

namespace weylforge {

// lambda = lambda0 + p^r lambda1 with lambda0 restricted.
std::pair<Weight, Weight> steinberg_split(const Weight& lambda, std::int64_t p, int r = 1);

struct SimpleEntry {
    std::map<Weight, std::int64_t> column;  // [Delta(mu) : L(nu)]
    VirtualCharacter simple;                // ch L(mu), weight form
    VirtualCharacter jsf_simple;            // sum formula in the simple basis
    std::string provenance;
};

// One consistent assignment of columns and simple characters, closed downward:
// every weight in a stored column has its own entry.
using World = std::map<Weight, std::shared_ptr<const SimpleEntry>>;

struct DecompositionBranch {
    std::map<Weight, std::int64_t> column;
    World world;

    const SimpleEntry& entry(const Weight& mu) const;  // MissingDecompositionData if absent
    const VirtualCharacter& simple(const Weight& mu) const { return entry(mu).simple; }
    ColumnFn column_fn() const;
    BasisFn simple_fn() const;
};

struct DecompositionBranchSet {
    SystemId system = 0;
    std::int64_t p = 0;
    Weight lambda;
    std::vector<DecompositionBranch> branches;
    std::vector<std::string> constraints;

    bool unique() const noexcept { return branches.size() == 1; }
    // Branch indices keyed by their column entries at the given weights.
    std::map<std::vector<std::int64_t>, std::vector<std::size_t>> group_by(const std::vector<Weight>& at) const;
};

struct SolverOptions {
    std::size_t branch_cap = 64;
    const Fixtures* fixtures = nullptr;
};

class DecompositionSolver {
public:
    DecompositionSolver(const RootSystem& sys, std::int64_t p, SolverOptions opts = {});

    const RootSystem& system() const noexcept { return *sys_; }
    std::int64_t prime() const noexcept { return p_; }

    DecompositionBranchSet solve(const Weight& lambda);
    // Worlds containing entries for every listed weight at once.
    std::vector<World> solve_joint(const std::vector<Weight>& weights);
    const std::vector<std::string>& constraints() const noexcept { return constraints_; }

private:
    const std::vector<World>& closure(const Weight& mu);
    std::vector<World> extend(const World& w, const Weight& mu);
    std::vector<World> compute(const Weight& mu);
    void finish_from_character(const World& w, const Weight& mu, const VirtualCharacter& simple,
                               const std::string& provenance, std::vector<World>& out);
    void note(const std::string& s);
    void guard(std::size_t n, const Weight& mu) const;

    const RootSystem* sys_;
    std::int64_t p_;
    SolverOptions opts_;
    std::map<Weight, std::vector<World>> memo_;
    std::vector<std::string> constraints_;
};

DecompositionBranchSet solve_decomposition(const RootSystem& sys, const Weight& lambda, std::int64_t p,
                                           const Fixtures* fixtures = nullptr);

// ch L(lambda) in the given branch; Steinberg's product for non-restricted lambda.
VirtualCharacter simple_character(const RootSystem& sys, const Weight& lambda, std::int64_t p,
                                  const DecompositionBranch& branch);

// Rewrites a weight-form character in the simple basis of the given world.
Expansion simple_expand(const RootSystem& sys, const VirtualCharacter& c, const World& world);

}  // namespace weylforge
