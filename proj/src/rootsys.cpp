#include "weylforge/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "weylforge/checked.hpp"
#include "weylforge/error.hpp"

namespace weylforge {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidFamilyRank: return "InvalidFamilyRank";
        case ErrorCode::SystemMismatch: return "SystemMismatch";
        case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
        case ErrorCode::NotDominant: return "NotDominant";
        case ErrorCode::NotRestricted: return "NotRestricted";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::OrbitTooLarge: return "OrbitTooLarge";
        case ErrorCode::FormMismatch: return "FormMismatch";
        case ErrorCode::MissingDecompositionData: return "MissingDecompositionData";
        case ErrorCode::BranchExplosion: return "BranchExplosion";
        case ErrorCode::UnknownScenario: return "UnknownScenario";
        case ErrorCode::AmbiguousTopWeight: return "AmbiguousTopWeight";
        case ErrorCode::NoEmbedding: return "NoEmbedding";
        case ErrorCode::NoCertificate: return "NoCertificate";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

char family_letter(Family f) { return static_cast<char>('A' + static_cast<int>(f)); }

Family family_from_letter(char c) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (c < 'A' || c > 'G') throw Error(ErrorCode::InvalidFamilyRank, std::string("unknown family '") + c + "'");
    return static_cast<Family>(c - 'A');
}

// ---------------------------------------------------------------- Weight

Weight::Weight(SystemId system, std::span<const std::int64_t> coords) : system_(system) {
    if (coords.size() > kMaxRank) throw Error(ErrorCode::InvalidInput, "rank exceeds 8");
    rank_ = static_cast<std::uint8_t>(coords.size());
    std::copy(coords.begin(), coords.end(), c_.begin());
}

Weight::Weight(SystemId system, std::initializer_list<std::int64_t> coords)
    : Weight(system, std::span<const std::int64_t>(coords.begin(), coords.size())) {}

Weight Weight::zero(SystemId system, int rank) {
    Weight w;
    w.system_ = system;
    w.rank_ = static_cast<std::uint8_t>(rank);
    return w;
}

bool Weight::is_dominant() const {
    return std::all_of(c_.begin(), c_.begin() + rank_, [](std::int64_t x) { return x >= 0; });
}

bool Weight::is_zero() const {
    return std::all_of(c_.begin(), c_.begin() + rank_, [](std::int64_t x) { return x == 0; });
}

void Weight::require_same(const Weight& o) const {
    if (system_ != o.system_ || rank_ != o.rank_)
        throw Error(ErrorCode::SystemMismatch, "weights from different root systems");
}

Weight& Weight::operator+=(const Weight& o) {
    require_same(o);
    for (int i = 0; i < rank_; ++i) c_[i] = checked::add(c_[i], o.c_[i]);
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    require_same(o);
    for (int i = 0; i < rank_; ++i) c_[i] = checked::sub(c_[i], o.c_[i]);
    return *this;
}

Weight Weight::operator-() const {
    Weight r = *this;
    for (int i = 0; i < rank_; ++i) r.c_[i] = checked::sub(0, c_[i]);
    return r;
}

Weight Weight::scaled(std::int64_t k) const {
    Weight r = *this;
    for (int i = 0; i < rank_; ++i) r.c_[i] = checked::mul(c_[i], k);
    return r;
}

std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
    if (auto c = a.system_ <=> b.system_; c != 0) return c;
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    for (int i = 0; i < a.rank_; ++i)
        if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::string Weight::to_string() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < rank_; ++i) os << (i ? "," : "") << c_[i];
    os << ')';
    return os.str();
}

std::size_t WeightHash::operator()(const Weight& w) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ w.system();
    for (auto x : w.coords()) {
        h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- helpers

namespace {

using Matrix = std::array<std::array<std::int64_t, kMaxRank>, kMaxRank>;

// Fraction-free Gaussian elimination (Bareiss); exact for integer input.
std::int64_t determinant(Matrix m, int n) {
    if (n == 0) return 1;
    std::int64_t sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != 0) { swap = r; break; }
            if (swap < 0) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = checked::sub(checked::mul(m[i][j], m[k][k]), checked::mul(m[i][k], m[k][j])) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::int64_t factorial(int n) {
    std::int64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

struct Gram {
    std::array<std::int64_t, kMaxRank> half_norm{};
    Matrix inner{};  // (alpha_i, alpha_j)
};

void bond(Gram& g, int i, int j, std::int64_t value) {
    g.inner[i][j] = value;
    g.inner[j][i] = value;
}

// Symmetrized Bourbaki data, squared lengths scaled to even integers.
Gram make_gram(Family f, int n) {
    Gram g;
    for (int i = 0; i < n; ++i) g.half_norm[i] = 1;
    switch (f) {
        case Family::A:
            for (int i = 0; i + 1 < n; ++i) bond(g, i, i + 1, -1);
            break;
        case Family::B:
            for (int i = 0; i + 1 < n; ++i) g.half_norm[i] = 2;
            for (int i = 0; i + 1 < n; ++i) bond(g, i, i + 1, -2);
            break;
        case Family::C:
            g.half_norm[n - 1] = 2;
            for (int i = 0; i + 2 < n; ++i) bond(g, i, i + 1, -1);
            bond(g, n - 2, n - 1, -2);
            break;
        case Family::D:
            for (int i = 0; i + 2 < n; ++i) bond(g, i, i + 1, -1);
            bond(g, n - 3, n - 1, -1);
            break;
        case Family::E:
            bond(g, 0, 2, -1);
            bond(g, 1, 3, -1);
            for (int i = 2; i + 1 < n; ++i) bond(g, i, i + 1, -1);
            break;
        case Family::F:
            g.half_norm = {2, 2, 1, 1};
            bond(g, 0, 1, -2);
            bond(g, 1, 2, -2);
            bond(g, 2, 3, -1);
            break;
        case Family::G:
            g.half_norm = {1, 3};
            bond(g, 0, 1, -3);
            break;
    }
    for (int i = 0; i < n; ++i) g.inner[i][i] = 2 * g.half_norm[i];
    return g;
}

bool valid_pair(Family f, int n) {
    switch (f) {
        case Family::A: return n >= 1 && n <= static_cast<int>(kMaxRank);
        case Family::B:
        case Family::C: return n >= 2 && n <= static_cast<int>(kMaxRank);
        case Family::D: return n >= 4 && n <= static_cast<int>(kMaxRank);
        case Family::E: return n >= 6 && n <= 8;
        case Family::F: return n == 4;
        case Family::G: return n == 2;
    }
    return false;
}

}  // namespace

// ---------------------------------------------------------------- RootSystem

RootSystem::RootSystem(Family f, int n) : family_(f), rank_(n) {
    const Gram g = make_gram(f, n);
    half_norm_ = g.half_norm;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cartan_[i][j] = g.inner[i][j] / g.half_norm[i];

    det_ = determinant(cartan_, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Matrix minor{};
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor[rr][cc++] = cartan_[r][c];
                }
                ++rr;
            }
            std::int64_t cof = determinant(minor, n - 1);
            adj_[j][i] = ((i + j) % 2 ? -cof : cof);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) height_row_[i] += adj_[j][i];

    // Positive roots by closure of the simple roots under simple reflections.
    const SystemId sid = id();
    std::map<Weight, Root> found;
    std::deque<Weight> queue;
    for (int i = 0; i < n; ++i) {
        Root r;
        std::array<std::int64_t, kMaxRank> col{};
        for (int k = 0; k < n; ++k) col[k] = cartan_[k][i];
        r.weight = Weight(sid, std::span<const std::int64_t>(col.data(), n));
        r.simple[i] = 1;
        found.emplace(r.weight, r);
        queue.push_back(r.weight);
    }
    while (!queue.empty()) {
        const Root cur = found.at(queue.front());
        queue.pop_front();
        for (int i = 0; i < n; ++i) {
            const std::int64_t c = cur.weight[i];
            if (c == 0) continue;
            Root next = cur;
            for (int k = 0; k < n; ++k) next.weight[k] -= c * cartan_[k][i];
            next.simple[i] -= c;
            bool positive = true;
            for (int k = 0; k < n; ++k) positive = positive && next.simple[k] >= 0;
            if (!positive || found.count(next.weight)) continue;
            found.emplace(next.weight, next);
            queue.push_back(next.weight);
        }
    }

    std::int64_t min_norm = 0;
    for (auto& [w, r] : found) {
        std::int64_t norm2 = 0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) norm2 += r.simple[j] * r.simple[k] * g.inner[j][k];
        r.norm2 = norm2;
        r.height = std::accumulate(r.simple.begin(), r.simple.begin() + n, std::int64_t{0});
        for (int j = 0; j < n; ++j) {
            const std::int64_t num = r.simple[j] * 2 * half_norm_[j];
            r.coroot[j] = num / norm2;
        }
        min_norm = (min_norm == 0) ? norm2 : std::min(min_norm, norm2);
        positive_roots_.push_back(r);
    }
    std::sort(positive_roots_.begin(), positive_roots_.end(), [](const Root& a, const Root& b) {
        if (a.height != b.height) return a.height < b.height;
        return b.weight < a.weight;
    });
    for (std::size_t k = 0; k < positive_roots_.size(); ++k) {
        Root& r = positive_roots_[k];
        r.is_short = (r.norm2 == min_norm);
        if (r.height == 1)
            for (int i = 0; i < n; ++i)
                if (r.simple[i] == 1) simple_index_[i] = k;
        if (r.is_short && (positive_roots_[highest_short_].is_short == false ||
                           r.height > positive_roots_[highest_short_].height))
            highest_short_ = k;
    }
    coxeter_number_ = static_cast<int>(pairing(rho(), positive_roots_[highest_short_])) + 1;

    switch (f) {
        case Family::A: weyl_order_ = factorial(n + 1); break;
        case Family::B:
        case Family::C: weyl_order_ = (std::int64_t{1} << n) * factorial(n); break;
        case Family::D: weyl_order_ = (std::int64_t{1} << (n - 1)) * factorial(n); break;
        case Family::E: weyl_order_ = n == 6 ? 51840 : n == 7 ? 2903040 : 696729600; break;
        case Family::F: weyl_order_ = 1152; break;
        case Family::G: weyl_order_ = 12; break;
    }
}

std::string RootSystem::name() const { return std::string(1, family_letter(family_)) + std::to_string(rank_); }

Weight RootSystem::rho() const {
    Weight w = zero();
    for (int i = 0; i < rank_; ++i) w[i] = 1;
    return w;
}

Weight RootSystem::fundamental(int i) const {
    if (i < 0 || i >= rank_) throw Error(ErrorCode::InvalidInput, "fundamental weight index out of range");
    Weight w = zero();
    w[i] = 1;
    return w;
}

Weight RootSystem::weight(std::span<const std::int64_t> coords) const {
    if (static_cast<int>(coords.size()) != rank_)
        throw Error(ErrorCode::InvalidInput, "weight has " + std::to_string(coords.size()) +
                                                 " coordinates, " + name() + " needs " + std::to_string(rank_));
    return Weight(id(), coords);
}

Weight RootSystem::weight(std::initializer_list<std::int64_t> coords) const {
    return weight(std::span<const std::int64_t>(coords.begin(), coords.size()));
}

void RootSystem::require_member(const Weight& w) const {
    if (w.system() != id() || w.rank() != rank_)
        throw Error(ErrorCode::SystemMismatch, "weight " + w.to_string() + " is not a weight of " + name());
}

std::int64_t RootSystem::pairing(const Weight& lambda, const Root& alpha) const {
    require_member(lambda);
    std::int64_t s = 0;
    for (int j = 0; j < rank_; ++j) s = checked::add(s, checked::mul(alpha.coroot[j], lambda[j]));
    return s;
}

std::optional<std::array<std::int64_t, kMaxRank>> RootSystem::root_coordinates(const Weight& w) const {
    require_member(w);
    std::array<std::int64_t, kMaxRank> out{};
    for (int j = 0; j < rank_; ++j) {
        std::int64_t s = 0;
        for (int i = 0; i < rank_; ++i) s = checked::add(s, checked::mul(adj_[j][i], w[i]));
        if (s % det_ != 0) return std::nullopt;
        out[j] = s / det_;
    }
    return out;
}

bool RootSystem::dominated_by(const Weight& lower, const Weight& upper) const {
    auto c = root_coordinates(upper - lower);
    if (!c) return false;
    for (int j = 0; j < rank_; ++j)
        if ((*c)[j] < 0) return false;
    return true;
}

std::int64_t RootSystem::scaled_height(const Weight& w) const {
    std::int64_t s = 0;
    for (int i = 0; i < rank_; ++i) s = checked::add(s, checked::mul(height_row_[i], w[i]));
    return s;
}

std::int64_t RootSystem::inner_product_root_lattice(const std::array<std::int64_t, kMaxRank>& x,
                                                    const Weight& y) const {
    // (alpha_j, omega_i) = delta_ij (alpha_j, alpha_j) / 2
    std::int64_t s = 0;
    for (int j = 0; j < rank_; ++j)
        s = checked::add(s, checked::mul(checked::mul(x[j], half_norm_[j]), y[j]));
    return s;
}

bool RootSystem::canonical_less(const Weight& a, const Weight& b) const {
    const std::int64_t ha = scaled_height(a), hb = scaled_height(b);
    if (ha != hb) return ha > hb;
    return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(),
                                        b.coords().end());
}

void RootSystem::sort_canonical(std::vector<Weight>& ws) const {
    std::sort(ws.begin(), ws.end(), [this](const Weight& a, const Weight& b) { return canonical_less(a, b); });
}

Weight RootSystem::simple_reflect(const Weight& w, int i) const {
    Weight r = w;
    const std::int64_t c = w[i];
    if (c == 0) return r;
    for (int k = 0; k < rank_; ++k) r[k] = checked::sub(r[k], checked::mul(c, cartan_[k][i]));
    return r;
}

Weight RootSystem::reflect(const Weight& w, const Root& alpha) const {
    return w - alpha.weight.scaled(pairing(w, alpha));
}

// ---------------------------------------------------------------- free functions

SystemPtr build_root_system(Family family, int rank) {
    if (!valid_pair(family, rank))
        throw Error(ErrorCode::InvalidFamilyRank,
                    std::string(1, family_letter(family)) + std::to_string(rank) + " is not a supported type");
    static std::mutex mu;
    static std::map<SystemId, SystemPtr> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[make_system_id(family, rank)];
    if (!slot) slot = SystemPtr(new RootSystem(family, rank));
    return slot;
}

SystemPtr parse_system(const std::string& name) {
    if (name.size() < 2) throw Error(ErrorCode::InvalidFamilyRank, "bad system name '" + name + "'");
    const Family f = family_from_letter(name[0]);
    int rank = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
            throw Error(ErrorCode::InvalidFamilyRank, "bad system name '" + name + "'");
        rank = rank * 10 + (name[i] - '0');
        if (rank > 64) throw Error(ErrorCode::InvalidFamilyRank, "bad system name '" + name + "'");
    }
    return build_root_system(f, rank);
}

std::int64_t pairing(const RootSystem& sys, const Weight& lambda, const Root& alpha) {
    return sys.pairing(lambda, alpha);
}

EpsilonCoords omega_to_epsilon(const RootSystem& sys, const Weight& lambda) {
    sys.require_member(lambda);
    const int n = sys.rank();
    const Family f = sys.family();
    if (f != Family::B && f != Family::C && f != Family::D)
        throw Error(ErrorCode::UnsupportedFamily, "epsilon coordinates exist only for B, C, D");
    // Doubled epsilon coordinates of each fundamental weight, summed.
    EpsilonCoords e{std::vector<std::int64_t>(n, 0)};
    for (int i = 0; i < n; ++i) {
        const std::int64_t c = lambda[i];
        if (c == 0) continue;
        const bool spin_b = (f == Family::B && i == n - 1);
        const bool spin_d = (f == Family::D && i >= n - 2);
        if (spin_b || spin_d) {
            for (int s = 0; s < n; ++s) {
                std::int64_t v = c;
                if (f == Family::D && i == n - 2 && s == n - 1) v = -c;
                e.doubled[s] = checked::add(e.doubled[s], v);
            }
        } else {
            for (int s = 0; s <= i; ++s) e.doubled[s] = checked::add(e.doubled[s], checked::mul(2, c));
        }
    }
    return e;
}

Weight epsilon_to_omega(const RootSystem& sys, const EpsilonCoords& e) {
    const int n = sys.rank();
    const Family f = sys.family();
    if (f != Family::B && f != Family::C && f != Family::D)
        throw Error(ErrorCode::UnsupportedFamily, "epsilon coordinates exist only for B, C, D");
    if (static_cast<int>(e.doubled.size()) != n) throw Error(ErrorCode::InvalidInput, "epsilon length mismatch");
    const auto& d = e.doubled;
    Weight w = sys.zero();
    auto half = [](std::int64_t x) {
        if (x % 2 != 0) throw Error(ErrorCode::InvalidInput, "epsilon vector is not in the weight lattice");
        return x / 2;
    };
    for (int i = 0; i + 1 < n; ++i) w[i] = half(d[i] - d[i + 1]);
    switch (f) {
        case Family::B: w[n - 1] = d[n - 1]; break;
        case Family::C: w[n - 1] = half(d[n - 1]); break;
        default: w[n - 1] = half(d[n - 2] + d[n - 1]); break;
    }
    // Membership check: the doubled coordinates must be all even or all odd (B, D),
    // all even for C.
    if (omega_to_epsilon(sys, w) != e)
        throw Error(ErrorCode::InvalidInput, "epsilon vector is not in the weight lattice");
    return w;
}

std::vector<Weight> dominant_weights_below(const RootSystem& sys, const Weight& lambda) {
    sys.require_member(lambda);
    if (!lambda.is_dominant()) throw Error(ErrorCode::NotDominant, lambda.to_string());
    // Dominant weights below lambda are connected to it by single positive-root steps
    // through dominant weights, so a downward search over dominant weights is complete.
    std::unordered_set<Weight, WeightHash> seen{lambda};
    std::vector<Weight> stack{lambda};
    while (!stack.empty()) {
        Weight cur = stack.back();
        stack.pop_back();
        for (const Root& a : sys.positive_roots()) {
            Weight next = cur - a.weight;
            if (!next.is_dominant() || seen.count(next)) continue;
            seen.insert(next);
            stack.push_back(next);
        }
    }
    std::vector<Weight> out(seen.begin(), seen.end());
    sys.sort_canonical(out);
    return out;
}

bool is_restricted(const Weight& lambda, std::int64_t p, int r) {
    const std::int64_t q = checked::power(p, r);
    for (auto c : lambda.coords())
        if (c < 0 || c >= q) return false;
    return true;
}

}  // namespace weylforge
