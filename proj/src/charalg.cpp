#include "weylforge/charalg.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "weylforge/cache.hpp"
#include "weylforge/checked.hpp"
#include "weylforge/error.hpp"
#include "weylforge/weylact.hpp"

namespace weylforge {

std::string_view to_string(CharForm f) {
    switch (f) {
        case CharForm::Weight: return "weight";
        case CharForm::Nabla: return "nabla";
        case CharForm::Simple: return "simple";
        case CharForm::Chi: return "chi";
    }
    return "?";
}

// ---------------------------------------------------------------- VirtualCharacter

std::int64_t VirtualCharacter::operator[](const Weight& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
}

void VirtualCharacter::add(const Weight& w, std::int64_t c) {
    if (c == 0) return;
    if (w.system() != system_) throw Error(ErrorCode::SystemMismatch, "term " + w.to_string() + " from another system");
    auto [it, inserted] = terms_.emplace(w, c);
    if (inserted) return;
    it->second = checked::add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

bool VirtualCharacter::nonnegative() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second >= 0; });
}

void VirtualCharacter::require_compatible(const VirtualCharacter& o) const {
    if (system_ != o.system_) throw Error(ErrorCode::SystemMismatch, "characters of different systems");
    if (form_ != o.form_)
        throw Error(ErrorCode::FormMismatch,
                    std::string("cannot combine ") + std::string(weylforge::to_string(form_)) + " form with " +
                        std::string(weylforge::to_string(o.form_)) + " form");
}

VirtualCharacter& VirtualCharacter::operator+=(const VirtualCharacter& o) {
    require_compatible(o);
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

VirtualCharacter& VirtualCharacter::operator-=(const VirtualCharacter& o) {
    require_compatible(o);
    for (const auto& [w, c] : o.terms_) add(w, checked::sub(0, c));
    return *this;
}

VirtualCharacter VirtualCharacter::scaled(std::int64_t k) const {
    VirtualCharacter r(system_, form_);
    for (const auto& [w, c] : terms_) r.add(w, checked::mul(c, k));
    return r;
}

std::vector<std::pair<Weight, std::int64_t>> VirtualCharacter::canonical_terms(const RootSystem& sys) const {
    std::vector<std::pair<Weight, std::int64_t>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(),
              [&sys](const auto& a, const auto& b) { return sys.canonical_less(a.first, b.first); });
    return out;
}

std::string VirtualCharacter::to_string(const RootSystem& sys) const {
    if (terms_.empty()) return "0";
    const char* sym = form_ == CharForm::Weight   ? "e"
                      : form_ == CharForm::Nabla  ? "ch nabla"
                      : form_ == CharForm::Simple ? "ch L"
                                                  : "chi";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : canonical_terms(sys)) {
        std::int64_t a = c;
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        if (a < 0) a = -a;
        if (a != 1) os << a << "*";
        os << sym << w.to_string();
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- ChiSum

ChiSum::ChiSum(const RootSystem& sys) : sys_(&sys), c_(sys.id(), CharForm::Chi) {}

void ChiSum::add(const Weight& mu, std::int64_t c) {
    if (c == 0) return;
    auto s = straighten(*sys_, mu);
    if (s.sign == 0) return;
    c_.add(*s.dominant, checked::mul(s.sign, c));
}

std::string ChiSum::to_string() const { return c_.to_string(*sys_); }

ChiSum chi(const RootSystem& sys, const Weight& mu) {
    ChiSum s(sys);
    s.add(mu, 1);
    return s;
}

// ---------------------------------------------------------------- nabla characters

namespace {

std::int64_t inner_with_root(const RootSystem& sys, const Root& a, const Weight& y) {
    std::int64_t s = 0;
    for (int j = 0; j < sys.rank(); ++j)
        s = checked::add(s, checked::mul(checked::mul(a.simple[j], sys.half_norm(j)), y[j]));
    return s;
}

// Freudenthal's recursion over the dominant weights below lambda.
std::map<Weight, std::int64_t> freudenthal(const RootSystem& sys, const Weight& lambda) {
    const auto doms = dominant_weights_below(sys, lambda);
    std::unordered_map<Weight, std::int64_t, WeightHash> mult;
    mult[lambda] = 1;
    const Weight shift = lambda + sys.rho().scaled(2);
    for (std::size_t k = 1; k < doms.size(); ++k) {
        const Weight& mu = doms[k];
        auto rc = sys.root_coordinates(lambda - mu);
        const std::int64_t denom = sys.inner_product_root_lattice(*rc, shift + mu);
        std::int64_t num = 0;
        for (const Root& a : sys.positive_roots()) {
            for (std::int64_t j = 1;; ++j) {
                const Weight nu = mu + a.weight.scaled(j);
                const Weight d = dominant_conjugate(sys, nu);
                auto it = mult.find(d);
                if (it == mult.end()) break;
                num = checked::add(num, checked::mul(it->second, inner_with_root(sys, a, nu)));
            }
        }
        num = checked::mul(num, 2);
        if (denom <= 0 || num % denom != 0)
            throw Error(ErrorCode::Overflow, "Freudenthal recursion produced a non-integral multiplicity");
        if (num != 0) mult[mu] = num / denom;
    }
    return {mult.begin(), mult.end()};
}

void reduce(__int128& num, __int128& den) {
    __int128 x = num < 0 ? -num : num, y = den;
    while (y != 0) {
        __int128 t = x % y;
        x = y;
        y = t;
    }
    if (x > 1) {
        num /= x;
        den /= x;
    }
}

struct NablaCache {
    std::shared_mutex mu;
    std::unordered_map<Weight, VirtualCharacter, WeightHash> entries;
};

NablaCache& nabla_cache() {
    static NablaCache c;
    return c;
}

}  // namespace

VirtualCharacter nabla_character(const RootSystem& sys, const Weight& lambda) {
    sys.require_member(lambda);
    if (!lambda.is_dominant()) throw Error(ErrorCode::NotDominant, lambda.to_string());
    auto& cache = nabla_cache();
    {
        std::shared_lock lock(cache.mu);
        auto it = cache.entries.find(lambda);
        if (it != cache.entries.end()) return it->second;
    }
    auto terms = cache::load(sys, 0, "nabla", lambda);
    if (!terms) {
        terms = freudenthal(sys, lambda);
        cache::store(sys, 0, "nabla", lambda, *terms);
    }
    VirtualCharacter c(sys.id(), CharForm::Weight);
    for (const auto& [w, m] : *terms) c.add(w, m);
    std::unique_lock lock(cache.mu);
    cache.entries.emplace(lambda, c);
    return c;
}

void clear_character_cache() {
    auto& cache = nabla_cache();
    std::unique_lock lock(cache.mu);
    cache.entries.clear();
}

std::int64_t weyl_dimension(const RootSystem& sys, const Weight& lambda) {
    sys.require_member(lambda);
    if (!lambda.is_dominant()) throw Error(ErrorCode::NotDominant, lambda.to_string());
    __int128 num = 1, den = 1;
    const Weight lr = lambda + sys.rho();
    for (const Root& a : sys.positive_roots()) {
        num *= sys.pairing(lr, a);
        den *= sys.pairing(sys.rho(), a);
        reduce(num, den);
        if (num > (__int128{1} << 100)) throw Error(ErrorCode::Overflow, "Weyl dimension");
    }
    if (den != 1 || num > std::numeric_limits<std::int64_t>::max())
        throw Error(ErrorCode::Overflow, "Weyl dimension does not fit in 64 bits");
    return static_cast<std::int64_t>(num);
}

std::int64_t orbit_size(const RootSystem& sys, const Weight& dominant) {
    // |W| / |W_J| with |W_J| = prod over positive roots of W_J of (ht + 1) / ht.
    __int128 num = 1, den = 1;
    for (const Root& a : sys.positive_roots()) {
        bool in_stab = true;
        for (int j = 0; j < sys.rank() && in_stab; ++j) in_stab = (a.simple[j] == 0 || dominant[j] == 0);
        if (!in_stab) continue;
        num *= a.height + 1;
        den *= a.height;
        reduce(num, den);
    }
    return static_cast<std::int64_t>(sys.weyl_group_order() * den / num);
}

std::int64_t dimension(const RootSystem& sys, const VirtualCharacter& c) {
    if (c.form() != CharForm::Weight) return dimension(sys, to_weight_form(sys, c));
    std::int64_t d = 0;
    for (const auto& [w, m] : c.terms())
        d = checked::add(d, checked::mul(m, orbit_size(sys, dominant_conjugate(sys, w))));
    return d;
}

std::map<Weight, std::int64_t> full_weights(const RootSystem& sys, const VirtualCharacter& c) {
    if (c.form() != CharForm::Weight) throw Error(ErrorCode::FormMismatch, "full_weights needs weight form");
    std::map<Weight, std::int64_t> out;
    for (const auto& [w, m] : c.terms())
        for (const Weight& v : orbit(sys, w)) out[v] = checked::add(out[v], m);
    return out;
}

VirtualCharacter dominant_part(const RootSystem& sys, const std::map<Weight, std::int64_t>& full) {
    VirtualCharacter c(sys.id(), CharForm::Weight);
    for (const auto& [w, m] : full)
        if (w.is_dominant()) c.add(w, m);
    return c;
}

// ---------------------------------------------------------------- basis changes

VirtualCharacter Expansion::as_character(CharForm form) const {
    VirtualCharacter c(system, form);
    for (const auto& [w, m] : coefficients) c.add(w, m);
    return c;
}

Expansion unitriangular_expand(const RootSystem& sys, const VirtualCharacter& c, const BasisFn& basis,
                               bool reverse_tiebreak) {
    if (c.form() != CharForm::Weight) throw Error(ErrorCode::FormMismatch, "expansion needs weight form");
    auto before = [&](const Weight& a, const Weight& b) {
        const std::int64_t ha = sys.scaled_height(a), hb = sys.scaled_height(b);
        if (ha != hb) return ha > hb;
        return reverse_tiebreak ? b < a : a < b;
    };
    Expansion out;
    out.system = sys.id();
    VirtualCharacter rest = c;
    while (!rest.empty()) {
        Weight top = rest.terms().begin()->first;
        for (const auto& [w, m] : rest.terms())
            if (before(w, top)) top = w;
        const std::int64_t coef = rest[top];
        VirtualCharacter b = basis(top);
        if (b[top] != 1) throw Error(ErrorCode::InvalidInput, "basis element is not unitriangular at " + top.to_string());
        rest -= b.scaled(coef);
        out.coefficients.emplace_back(top, coef);
        if (coef < 0 && !out.first_negative) out.first_negative = std::make_pair(top, coef);
    }
    return out;
}

VirtualCharacter to_weight_form(const RootSystem& sys, const VirtualCharacter& c, const BasisFn& simple) {
    VirtualCharacter out(sys.id(), CharForm::Weight);
    switch (c.form()) {
        case CharForm::Weight: return c;
        case CharForm::Nabla:
        case CharForm::Chi:
            for (const auto& [w, m] : c.terms()) out += nabla_character(sys, w).scaled(m);
            return out;
        case CharForm::Simple:
            if (!simple) throw Error(ErrorCode::MissingDecompositionData, "simple characters are not available");
            for (const auto& [w, m] : c.terms()) out += simple(w).scaled(m);
            return out;
    }
    return out;
}

// ---------------------------------------------------------------- products

VirtualCharacter tensor(const RootSystem& sys, const VirtualCharacter& a, const VirtualCharacter& b) {
    if (a.form() != CharForm::Weight || b.form() != CharForm::Weight)
        throw Error(ErrorCode::FormMismatch, "tensor needs weight forms");
    if (a.system() != sys.id() || b.system() != sys.id())
        throw Error(ErrorCode::SystemMismatch, "tensor of characters from different systems");
    if (a.empty() || b.empty()) return VirtualCharacter(sys.id(), CharForm::Weight);
    const bool swap = dimension(sys, a) > dimension(sys, b);
    const VirtualCharacter& small = swap ? b : a;
    const VirtualCharacter& large = swap ? a : b;
    // Brauer-Klimyk: chi(nu) * ch(M) = sum over weights mu of M of chi(nu + mu).
    const auto expanded = full_weights(sys, small);
    const auto nabla = unitriangular_expand(sys, large, [&sys](const Weight& w) { return nabla_character(sys, w); });
    ChiSum acc(sys);
    for (const auto& [nu, cn] : nabla.coefficients)
        for (const auto& [mu, cm] : expanded) acc.add(nu + mu, checked::mul(cn, cm));
    return to_weight_form(sys, acc.character());
}

VirtualCharacter frobenius_twist(const VirtualCharacter& c, std::int64_t q) {
    if (c.form() != CharForm::Weight) throw Error(ErrorCode::FormMismatch, "twist needs weight form");
    VirtualCharacter out(c.system(), CharForm::Weight);
    for (const auto& [w, m] : c.terms()) out.add(w.scaled(q), m);
    return out;
}

bool chi_vanishing_epsilon_test(const RootSystem& sys, const Weight& mu) {
    if (sys.family() != Family::B && sys.family() != Family::C)
        throw Error(ErrorCode::UnsupportedFamily, "the epsilon vanishing test is for types B and C");
    const auto e = omega_to_epsilon(sys, mu + sys.rho()).doubled;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if (std::llabs(e[i]) == std::llabs(e[j])) return true;
    return false;
}

std::map<Weight, std::int64_t> zprime_character(const RootSystem& sys, const Weight& lambda, std::int64_t p, int r) {
    sys.require_member(lambda);
    const std::int64_t q = checked::power(p, r);
    std::map<Weight, std::int64_t> cur{{lambda, 1}};
    for (const Root& a : sys.positive_roots()) {
        std::map<Weight, std::int64_t> next;
        for (const auto& [w, m] : cur)
            for (std::int64_t j = 0; j < q; ++j) {
                auto& slot = next[w - a.weight.scaled(j)];
                slot = checked::add(slot, m);
            }
        if (next.size() > kDefaultOrbitGuard) throw Error(ErrorCode::OrbitTooLarge, "Z' expansion too large");
        cur = std::move(next);
    }
    return cur;
}

}  // namespace weylforge
