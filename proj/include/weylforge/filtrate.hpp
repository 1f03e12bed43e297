#pragma once

// Good-filtration certificates, Hom characters over the first Frobenius
// kernel, candidate windows for socle arguments and the scenario verdicts
// built from them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weylforge/charalg.hpp"
#include "weylforge/decomp.hpp"
#include "weylforge/fixtures.hpp"

namespace weylforge {

enum class FiltrationBasis { Nabla, NablaPR };

struct FiltrationOutcome {
    std::vector<std::pair<Weight, std::int64_t>> certificate;  // canonical order; empty on obstruction
    std::optional<std::pair<Weight, std::int64_t>> obstruction;

    bool good() const noexcept { return !obstruction.has_value(); }
    std::string to_string(const RootSystem& sys) const;
};

// ch L(mu0) (x) ch nabla(mu1)^(r) for mu = mu0 + p^r mu1.
VirtualCharacter nabla_pr_character(const RootSystem& sys, const Weight& mu, std::int64_t p, int r,
                                    const BasisFn& simple);

// Greedy unitriangular expansion of c (weight form, or simple form when `simple`
// is given) in the chosen basis. The first negative coefficient in processing
// order is the obstruction.
FiltrationOutcome good_filtration_test(const RootSystem& sys, const VirtualCharacter& c, FiltrationBasis basis,
                                       std::int64_t p, int r, const BasisFn& simple,
                                       bool reverse_tiebreak = false);

// Untwisted character of Hom_{G_r}(Q_r(sigma), M), in the simple basis, from
// the composition factors of M.
VirtualCharacter hom_character(const RootSystem& sys, const std::map<Weight, std::int64_t>& factors,
                               const Weight& sigma, std::int64_t p, int r = 1);

// Dominant gamma with floor <= p*gamma <= bound, optionally linked to target.
std::vector<Weight> candidate_gammas(const RootSystem& sys, std::int64_t p, const Weight& bound,
                                     const std::optional<Weight>& link_target = std::nullopt,
                                     const std::optional<Weight>& floor = std::nullopt);

// lambda + p*omega_i == mu + alpha_i and <lambda, alpha_i^vee> == 0 (i is 0-based).
bool second_method_predicate(const RootSystem& sys, const Weight& lambda, const Weight& mu, int i, std::int64_t p);

// All ways to place `copies` composition factors into Jantzen layers >= 1 whose
// indices sum to `total`, as nondecreasing layer lists.
std::vector<std::vector<int>> layer_splits(std::int64_t total, std::int64_t copies);

enum class Verdict { ObstructedAllBranches, Consistent, Mixed };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

enum class ObstructionKind { None, Numeric, LayerOrder, Head, Socle };
std::string to_string(ObstructionKind k);
ObstructionKind obstruction_kind_from_string(const std::string& s);

struct BranchOutcome {
    std::string label;
    std::vector<std::size_t> branches;                  // solver branch indices covered
    std::map<Weight, std::int64_t> relevant;            // column entries the outcome depends on
    std::map<Weight, std::vector<int>> layers;          // Jantzen layers of those factors
    VirtualCharacter hom{0, CharForm::Simple};
    std::optional<FiltrationOutcome> filtration;
    ObstructionKind kind = ObstructionKind::None;
    std::optional<Weight> witness;
    std::optional<std::int64_t> coefficient;
    std::string detail;

    bool obstructed() const noexcept { return kind != ObstructionKind::None; }
};

struct ScenarioVerdict {
    std::string id;
    std::string system;
    std::int64_t p = 0;
    std::string method;
    bool fixture_dependent = false;
    std::vector<std::string> fixtures_used;
    std::size_t branches_examined = 0;
    std::vector<BranchOutcome> outcomes;
    std::vector<std::string> checks;  // passed preconditions and logged derived data
    Verdict overall = Verdict::Consistent;
};

// Ids: B3p2, C3p3, C3p3_second, D4p2, G2p2, Bn_prop (n in 3..8, also "Bn_prop(5)").
ScenarioVerdict tmc_scenario(const std::string& id, const Fixtures& fixtures, int n = 4);
std::vector<std::string> scenario_ids();
// Expected verdict for each scenario.
Verdict expected_verdict(const std::string& id);

}  // namespace weylforge
