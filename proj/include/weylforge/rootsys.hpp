#pragma once

// Root-system data for the simple types A-G (Bourbaki labelling) and the
// integer weight arithmetic everything else is built on. Weights live in the
// fundamental-weight basis; epsilon coordinates are only a conversion view.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace weylforge {

enum class Family { A, B, C, D, E, F, G };

char family_letter(Family f);
Family family_from_letter(char c);

inline constexpr std::size_t kMaxRank = 8;

// Packs (family, rank) so that weights from different systems never compare
// equal. Levi subsystems built as standalone systems share ids with the
// abstract type they are isomorphic to.
using SystemId = std::uint16_t;

inline constexpr SystemId make_system_id(Family f, int rank) {
    return static_cast<SystemId>(static_cast<int>(f) * 16 + rank);
}

class Weight {
public:
    Weight() = default;
    Weight(SystemId system, std::span<const std::int64_t> coords);
    Weight(SystemId system, std::initializer_list<std::int64_t> coords);

    static Weight zero(SystemId system, int rank);

    SystemId system() const noexcept { return system_; }
    int rank() const noexcept { return rank_; }

    std::int64_t operator[](std::size_t i) const { return c_[i]; }
    std::int64_t& operator[](std::size_t i) { return c_[i]; }
    std::span<const std::int64_t> coords() const { return {c_.data(), static_cast<std::size_t>(rank_)}; }
    std::vector<std::int64_t> to_vector() const { return {c_.begin(), c_.begin() + rank_}; }

    bool is_dominant() const;
    bool is_zero() const;

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    Weight operator-() const;
    Weight scaled(std::int64_t k) const;

    // Storage order: system, then lexicographic coordinates. This is NOT the
    // canonical dominance-refining order; see RootSystem::canonical_less.
    friend bool operator==(const Weight&, const Weight&) = default;
    friend std::strong_ordering operator<=>(const Weight& a, const Weight& b);

    std::string to_string() const;  // "(1,0,2)"

private:
    void require_same(const Weight& o) const;

    SystemId system_ = 0;
    std::uint8_t rank_ = 0;
    std::array<std::int64_t, kMaxRank> c_{};
};

struct WeightHash {
    std::size_t operator()(const Weight& w) const noexcept;
};

// A positive root with the data needed for pairings and inner products.
struct Root {
    Weight weight;                                 // omega coordinates
    std::array<std::int64_t, kMaxRank> simple{};   // coefficients in the simple roots
    std::array<std::int64_t, kMaxRank> coroot{};   // coroot in the simple coroots
    std::int64_t norm2 = 0;                        // (alpha, alpha), long/short scaled to even integers
    std::int64_t height = 0;
    bool is_short = false;
};

// Exact epsilon coordinates, stored doubled so half-integers stay integral.
struct EpsilonCoords {
    std::vector<std::int64_t> doubled;
    friend bool operator==(const EpsilonCoords&, const EpsilonCoords&) = default;
};

class RootSystem;
using SystemPtr = std::shared_ptr<const RootSystem>;

class RootSystem {
public:
    Family family() const noexcept { return family_; }
    int rank() const noexcept { return rank_; }
    SystemId id() const noexcept { return make_system_id(family_, rank_); }
    std::string name() const;  // e.g. "B3"

    // cartan(i, j) = <alpha_j, alpha_i^vee>
    std::int64_t cartan(int i, int j) const { return cartan_[i][j]; }
    // (alpha_i, alpha_i) / 2
    std::int64_t half_norm(int i) const { return half_norm_[i]; }

    const std::vector<Root>& positive_roots() const noexcept { return positive_roots_; }
    const Root& simple_root(int i) const { return positive_roots_[simple_index_[i]]; }
    const Root& highest_short_root() const { return positive_roots_[highest_short_]; }
    int coxeter_number() const noexcept { return coxeter_number_; }
    std::int64_t weyl_group_order() const noexcept { return weyl_order_; }

    Weight zero() const { return Weight::zero(id(), rank_); }
    Weight rho() const;
    Weight fundamental(int i) const;  // 0-based index
    Weight weight(std::span<const std::int64_t> coords) const;
    Weight weight(std::initializer_list<std::int64_t> coords) const;

    // <lambda, alpha^vee> for a positive root.
    std::int64_t pairing(const Weight& lambda, const Root& alpha) const;

    // Coefficients of a weight in the simple roots when they are integral.
    std::optional<std::array<std::int64_t, kMaxRank>> root_coordinates(const Weight& w) const;
    // True iff upper - lower is a nonnegative integer combination of simple roots.
    bool dominated_by(const Weight& lower, const Weight& upper) const;
    // det(Cartan) * height(w); height is rational for weights outside the root lattice.
    std::int64_t scaled_height(const Weight& w) const;
    std::int64_t cartan_determinant() const noexcept { return det_; }
    // (x, y) computed through root coordinates of x, which must lie in the root lattice.
    std::int64_t inner_product_root_lattice(const std::array<std::int64_t, kMaxRank>& x_root_coords,
                                            const Weight& y) const;

    // Canonical total order: larger height first, ties by lexicographically
    // smaller omega coordinates. Refines dominance.
    bool canonical_less(const Weight& a, const Weight& b) const;
    void sort_canonical(std::vector<Weight>& ws) const;

    Weight simple_reflect(const Weight& w, int i) const;
    Weight reflect(const Weight& w, const Root& alpha) const;

    void require_member(const Weight& w) const;

private:
    friend SystemPtr build_root_system(Family, int);
    RootSystem(Family f, int rank);

    Family family_;
    int rank_;
    std::array<std::array<std::int64_t, kMaxRank>, kMaxRank> cartan_{};
    std::array<std::array<std::int64_t, kMaxRank>, kMaxRank> adj_{};  // adjugate of cartan
    std::int64_t det_ = 1;
    std::array<std::int64_t, kMaxRank> half_norm_{};
    std::array<std::int64_t, kMaxRank> height_row_{};  // sum of adjugate rows, for scaled heights
    std::vector<Root> positive_roots_;
    std::array<std::size_t, kMaxRank> simple_index_{};
    std::size_t highest_short_ = 0;
    int coxeter_number_ = 0;
    std::int64_t weyl_order_ = 1;
};

// Validated constructor; instances are shared per (family, rank).
SystemPtr build_root_system(Family family, int rank);
// Parses "B3", "E8", ... and forwards to build_root_system.
SystemPtr parse_system(const std::string& name);

std::int64_t pairing(const RootSystem& sys, const Weight& lambda, const Root& alpha);

EpsilonCoords omega_to_epsilon(const RootSystem& sys, const Weight& lambda);
Weight epsilon_to_omega(const RootSystem& sys, const EpsilonCoords& e);

// All dominant mu with lambda - mu in N.Delta, in canonical order (lambda first).
std::vector<Weight> dominant_weights_below(const RootSystem& sys, const Weight& lambda);

bool is_restricted(const Weight& lambda, std::int64_t p, int r);

}  // namespace weylforge
