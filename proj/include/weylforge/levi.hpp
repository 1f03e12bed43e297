#pragma once

// Levi subsystems, restriction of characters to them, and the bookkeeping
// that lifts low-rank counterexamples to larger rank.

#include <cstdint>
#include <string>
#include <vector>

#include "weylforge/charalg.hpp"
#include "weylforge/fixtures.hpp"
#include "weylforge/rootsys.hpp"

namespace weylforge {

struct LeviSubsystem {
    SystemPtr ambient;
    std::vector<int> J;           // ambient simple indices, 0-based, ascending
    SystemPtr levi;               // standalone system of the type of Phi_J
    std::vector<int> to_ambient;  // levi simple index -> ambient simple index

    // (<lambda, alpha_{to_ambient[k]}^vee>)_k
    Weight restrict_weight(const Weight& lambda) const;
    // True iff lambda - mu lies in N.J.
    bool in_levi_cone(const Weight& lambda, const Weight& mu) const;
};

// Identifies the type of Phi_J. An order-preserving match is preferred; otherwise
// the lexicographically first relabeling of the first matching family wins.
// NoEmbedding for empty or disconnected J.
LeviSubsystem levi_subsystem(const RootSystem& sys, std::vector<int> J);

// Keeps the weights lambda - nu (nu in N.J) of c, lambda the unique dominance-maximal
// support weight, and rewrites them for the Levi system.
VirtualCharacter restrict_character(const LeviSubsystem& L, const VirtualCharacter& c);

bool restrict_tensor_check(const LeviSubsystem& L, const Weight& lambda, const Weight& mu);

// [nabla(lambda) : nabla^(p,r)(mu)] on both sides; false when they differ.
// NoCertificate when a side is obstructed; CRITICAL in the message when only the
// Levi side is. Simple characters come from the solver and must be unique.
bool jq_levi_multiplicity_check(const LeviSubsystem& L, const Weight& lambda, const Weight& mu, std::int64_t p, int r,
                                const Fixtures* fixtures = nullptr);

struct PropagationRow {
    std::string item;    // entry of the weight list this row belongs to
    std::string family;  // e.g. "F4"
    std::int64_t p = 0;
    std::vector<std::vector<std::int64_t>> pattern;  // allowed values per coordinate
    std::vector<int> J;                               // 1-based, as printed
    std::vector<std::string> bases;

    std::string pattern_string() const;  // "(*,2,2,{1,2})"
};

std::vector<std::string> propagation_bases();
// One row per Levi embedding of the base in the ambient. NoEmbedding if there is none.
std::vector<PropagationRow> levi_propagation(const std::string& base, const RootSystem& ambient);
// All rows for the ambient, rows of the same list entry and J merged coordinatewise.
std::vector<PropagationRow> propagation_table(const RootSystem& ambient);

}  // namespace weylforge
