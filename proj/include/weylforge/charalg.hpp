#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weylforge/rootsys.hpp"

namespace weylforge {

// What the coefficients of a character mean.
//   Weight: dimension of the weight space (dominant weights only; W-symmetric)
//   Nabla:  coefficient of ch nabla(mu)
//   Simple: coefficient of ch L(mu)
//   Chi:    coefficient of chi(mu), the same as Nabla for dominant mu
enum class CharForm { Weight, Nabla, Simple, Chi };

std::string_view to_string(CharForm f);

class VirtualCharacter {
public:
    VirtualCharacter() = default;
    VirtualCharacter(SystemId system, CharForm form) : system_(system), form_(form) {}

    SystemId system() const noexcept { return system_; }
    CharForm form() const noexcept { return form_; }
    const std::map<Weight, std::int64_t>& terms() const noexcept { return terms_; }

    std::int64_t operator[](const Weight& w) const;
    void add(const Weight& w, std::int64_t c);
    bool empty() const noexcept { return terms_.empty(); }
    bool nonnegative() const;

    VirtualCharacter& operator+=(const VirtualCharacter& o);
    VirtualCharacter& operator-=(const VirtualCharacter& o);
    friend VirtualCharacter operator+(VirtualCharacter a, const VirtualCharacter& b) { return a += b; }
    friend VirtualCharacter operator-(VirtualCharacter a, const VirtualCharacter& b) { return a -= b; }
    VirtualCharacter scaled(std::int64_t k) const;

    friend bool operator==(const VirtualCharacter&, const VirtualCharacter&) = default;

    // Terms in the canonical order of sys, highest first.
    std::vector<std::pair<Weight, std::int64_t>> canonical_terms(const RootSystem& sys) const;
    std::string to_string(const RootSystem& sys) const;

private:
    void require_compatible(const VirtualCharacter& o) const;

    SystemId system_ = 0;
    CharForm form_ = CharForm::Weight;
    std::map<Weight, std::int64_t> terms_;
};

// Sum of c * chi(mu) kept straightened: every key dominant, zero terms dropped.
class ChiSum {
public:
    explicit ChiSum(const RootSystem& sys);

    // Adds c * chi(mu) for an arbitrary weight mu.
    void add(const Weight& mu, std::int64_t c);
    const VirtualCharacter& character() const noexcept { return c_; }
    bool empty() const noexcept { return c_.empty(); }
    std::vector<std::pair<Weight, std::int64_t>> canonical_terms() const { return c_.canonical_terms(*sys_); }
    std::string to_string() const;

    friend bool operator==(const ChiSum& a, const ChiSum& b) { return a.c_ == b.c_; }

private:
    const RootSystem* sys_;
    VirtualCharacter c_;
};

using BasisFn = std::function<VirtualCharacter(const Weight&)>;

VirtualCharacter nabla_character(const RootSystem& sys, const Weight& lambda);
std::int64_t weyl_dimension(const RootSystem& sys, const Weight& lambda);
std::map<Weight, std::int64_t> full_weights(const RootSystem& sys, const VirtualCharacter& c);
std::int64_t orbit_size(const RootSystem& sys, const Weight& dominant);
std::int64_t dimension(const RootSystem& sys, const VirtualCharacter& c);

VirtualCharacter tensor(const RootSystem& sys, const VirtualCharacter& a, const VirtualCharacter& b);
VirtualCharacter frobenius_twist(const VirtualCharacter& c, std::int64_t q);

ChiSum chi(const RootSystem& sys, const Weight& mu);
bool chi_vanishing_epsilon_test(const RootSystem& sys, const Weight& mu);

// Weights of Z'_r(lambda) with multiplicity (all weights, not just dominant ones).
std::map<Weight, std::int64_t> zprime_character(const RootSystem& sys, const Weight& lambda, std::int64_t p, int r);
// Dominant part of a W-invariant full weight multiset, as a weight-form character.
VirtualCharacter dominant_part(const RootSystem& sys, const std::map<Weight, std::int64_t>& full);

// Weight form of a basis-form character.
VirtualCharacter to_weight_form(const RootSystem& sys, const VirtualCharacter& c, const BasisFn& simple = nullptr);

struct Expansion {
    SystemId system = 0;
    std::vector<std::pair<Weight, std::int64_t>> coefficients;  // nonzero, in processing order
    std::optional<std::pair<Weight, std::int64_t>> first_negative;
    VirtualCharacter as_character(CharForm form) const;
};

// Rewrites a weight-form character in a basis that is unitriangular for
// dominance (basis(mu) has top weight mu with value 1). The tie-break among
// weights of equal height can be reversed; the coefficients cannot change.
Expansion unitriangular_expand(const RootSystem& sys, const VirtualCharacter& c, const BasisFn& basis,
                               bool reverse_tiebreak = false);

// Clears the in-memory nabla cache (the on-disk cache is untouched).
void clear_character_cache();

}  // namespace weylforge
