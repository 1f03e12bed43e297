#include "weylforge/levi.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "weylforge/decomp.hpp"
#include "weylforge/error.hpp"
#include "weylforge/filtrate.hpp"

namespace weylforge {

namespace {

bool connected(const RootSystem& sys, const std::vector<int>& J) {
    std::vector<int> seen{J.front()};
    std::set<int> left(J.begin() + 1, J.end());
    for (std::size_t k = 0; k < seen.size(); ++k)
        for (auto it = left.begin(); it != left.end();) {
            if (sys.cartan(seen[k], *it) != 0) {
                seen.push_back(*it);
                it = left.erase(it);
            } else {
                ++it;
            }
        }
    return left.empty();
}

SystemPtr try_build(Family f, int rank) {
    try {
        return build_root_system(f, rank);
    } catch (const Error&) {
        return nullptr;
    }
}

bool matches(const RootSystem& sys, const std::vector<int>& J, const RootSystem& cand, const std::vector<int>& perm) {
    const int n = static_cast<int>(J.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (cand.cartan(a, b) != sys.cartan(J[perm[a]], J[perm[b]])) return false;
    return true;
}

constexpr Family kFamilies[] = {Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G};

}  // namespace

Weight LeviSubsystem::restrict_weight(const Weight& lambda) const {
    ambient->require_member(lambda);
    std::vector<std::int64_t> c(to_ambient.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = lambda[static_cast<std::size_t>(to_ambient[k])];
    return levi->weight(c);
}

bool LeviSubsystem::in_levi_cone(const Weight& lambda, const Weight& mu) const {
    auto rc = ambient->root_coordinates(lambda - mu);
    if (!rc) return false;
    for (int i = 0; i < ambient->rank(); ++i) {
        const bool inside = std::binary_search(J.begin(), J.end(), i);
        if ((*rc)[i] < 0 || (!inside && (*rc)[i] != 0)) return false;
    }
    return true;
}

LeviSubsystem levi_subsystem(const RootSystem& sys, std::vector<int> J) {
    std::sort(J.begin(), J.end());
    J.erase(std::unique(J.begin(), J.end()), J.end());
    if (J.empty()) throw Error(ErrorCode::NoEmbedding, "empty J");
    for (int j : J)
        if (j < 0 || j >= sys.rank()) throw Error(ErrorCode::NoEmbedding, "index out of range in J");
    if (!connected(sys, J)) throw Error(ErrorCode::NoEmbedding, "J is not connected in the Dynkin diagram of " + sys.name());

    const int n = static_cast<int>(J.size());
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);

    auto result = [&](SystemPtr cand, const std::vector<int>& perm) {
        LeviSubsystem L;
        L.ambient = build_root_system(sys.family(), sys.rank());
        L.J = J;
        L.levi = std::move(cand);
        for (int k : perm) L.to_ambient.push_back(J[k]);
        return L;
    };
    for (Family f : kFamilies)
        if (auto cand = try_build(f, n); cand && matches(sys, J, *cand, id)) return result(cand, id);
    for (Family f : kFamilies) {
        auto cand = try_build(f, n);
        if (!cand) continue;
        auto perm = id;
        do {
            if (matches(sys, J, *cand, perm)) return result(cand, perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    throw Error(ErrorCode::NoEmbedding, "no supported type for J in " + sys.name());
}

VirtualCharacter restrict_character(const LeviSubsystem& L, const VirtualCharacter& c) {
    const RootSystem& sys = *L.ambient;
    if (c.form() != CharForm::Weight) throw Error(ErrorCode::FormMismatch, "restriction needs a weight-form character");
    if (c.system() != sys.id()) throw Error(ErrorCode::SystemMismatch, "character is not over " + sys.name());
    if (c.empty()) return VirtualCharacter(L.levi->id(), CharForm::Weight);

    std::vector<Weight> maxima;
    for (const auto& [w, m] : c.terms()) {
        bool below = false;
        for (const auto& [v, n] : c.terms())
            if (v != w && sys.dominated_by(w, v)) below = true;
        if (!below) maxima.push_back(w);
    }
    if (maxima.size() != 1)
        throw Error(ErrorCode::AmbiguousTopWeight,
                    std::to_string(maxima.size()) + " dominance-maximal weights; split the character first");
    const Weight& top = maxima.front();

    std::map<Weight, std::int64_t> kept;
    for (const auto& [w, m] : full_weights(sys, c))
        if (L.in_levi_cone(top, w)) kept[L.restrict_weight(w)] += m;
    return dominant_part(*L.levi, kept);
}

bool restrict_tensor_check(const LeviSubsystem& L, const Weight& lambda, const Weight& mu) {
    const RootSystem& sys = *L.ambient;
    auto a = nabla_character(sys, lambda), b = nabla_character(sys, mu);
    return restrict_character(L, tensor(sys, a, b)) ==
           tensor(*L.levi, restrict_character(L, a), restrict_character(L, b));
}

namespace {

BasisFn unique_simple(const RootSystem& sys, std::int64_t p, std::shared_ptr<DecompositionSolver> solver) {
    return [&sys, p, solver](const Weight& w) {
        auto bs = solver->solve(w);
        if (!bs.unique())
            throw Error(ErrorCode::MissingDecompositionData,
                        "ch L" + w.to_string() + " over " + sys.name() + " p=" + std::to_string(p) + " has " +
                            std::to_string(bs.branches.size()) + " branches");
        return bs.branches.front().simple(w);
    };
}

}  // namespace

bool jq_levi_multiplicity_check(const LeviSubsystem& L, const Weight& lambda, const Weight& mu, std::int64_t p, int r,
                                const Fixtures* fixtures) {
    const RootSystem& sys = *L.ambient;
    const RootSystem& lev = *L.levi;
    if (!L.in_levi_cone(lambda, mu)) throw Error(ErrorCode::InvalidInput, "lambda - mu is not in N.J");

    SolverOptions opts;
    opts.fixtures = fixtures;
    auto big_simple = unique_simple(sys, p, std::make_shared<DecompositionSolver>(sys, p, opts));
    auto levi_simple = unique_simple(lev, p, std::make_shared<DecompositionSolver>(lev, p, opts));

    const auto nabla = nabla_character(sys, lambda);
    auto big = good_filtration_test(sys, nabla, FiltrationBasis::NablaPR, p, r, big_simple);
    auto small = good_filtration_test(lev, restrict_character(L, nabla), FiltrationBasis::NablaPR, p, r, levi_simple);

    if (!small.good() && big.good())
        throw Error(ErrorCode::NoCertificate, "CRITICAL: Levi side obstructed at " + small.obstruction->first.to_string() +
                                                  " while " + sys.name() + " has a certificate");
    if (!big.good())
        throw Error(ErrorCode::NoCertificate, sys.name() + " side obstructed at " + big.obstruction->first.to_string() +
                                                  " (coefficient " + std::to_string(big.obstruction->second) + ")");

    auto at = [](const FiltrationOutcome& o, const Weight& w) -> std::int64_t {
        for (const auto& [v, m] : o.certificate)
            if (v == w) return m;
        return 0;
    };
    return at(big, mu) == at(small, L.restrict_weight(mu));
}

// ---------------------------------------------------------------------------

namespace {

struct Base {
    std::string id;
    Family family;
    int rank;  // 0: every rank >= 3 of the family
    std::int64_t p;
    std::function<std::vector<std::int64_t>(int)> coords;
};

const std::vector<Base>& bases() {
    static const std::vector<Base> b = {
        {"B3_111", Family::B, 3, 2, [](int) { return std::vector<std::int64_t>{1, 1, 1}; }},
        {"Bk_110", Family::B, 0, 2,
         [](int m) {
             std::vector<std::int64_t> v(m, 0);
             v[0] = v[1] = 1;
             return v;
         }},
        {"C3_222", Family::C, 3, 3, [](int) { return std::vector<std::int64_t>{2, 2, 2}; }},
        {"C3_122", Family::C, 3, 3, [](int) { return std::vector<std::int64_t>{1, 2, 2}; }},
        {"D4_1111", Family::D, 4, 2, [](int) { return std::vector<std::int64_t>{1, 1, 1, 1}; }},
        {"G2_11", Family::G, 2, 2, [](int) { return std::vector<std::int64_t>{1, 1}; }},
    };
    return b;
}

const Base& find_base(const std::string& id) {
    for (const auto& b : bases())
        if (b.id == id) return b;
    throw Error(ErrorCode::InvalidInput, "unknown propagation base '" + id + "'");
}

// Entry of the weight list a base contributes to inside an ambient family.
std::string item_of(const Base& b, Family ambient) {
    const bool b3 = b.id == "B3_111" || b.id == "Bk_110";
    const bool c3 = b.id == "C3_222" || b.id == "C3_122";
    if (ambient == Family::B && b.id == "B3_111") return "B(i)";
    if (ambient == Family::B && b.id == "Bk_110") return "B(ii)";
    if (ambient == Family::C && c3) return "C";
    if (ambient == Family::D && b.id == "D4_1111") return "D";
    if (ambient == Family::E && b.id == "D4_1111") return "E";
    if (ambient == Family::F && b3) return "F4(i)";
    if (ambient == Family::F && c3) return "F4(ii)";
    if (ambient == Family::G) return "G2";
    return b.id;
}

const std::vector<std::string> kItemOrder = {"B(i)", "B(ii)", "C", "D", "E", "F4(i)", "F4(ii)", "G2"};

std::size_t item_rank(const std::string& item) {
    auto it = std::find(kItemOrder.begin(), kItemOrder.end(), item);
    return static_cast<std::size_t>(it - kItemOrder.begin());
}

std::vector<LeviSubsystem> embeddings(const RootSystem& ambient, Family f, int m) {
    std::vector<LeviSubsystem> out;
    const int n = ambient.rank();
    if (m > n) return out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != m) continue;
        std::vector<int> J;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) J.push_back(i);
        if (!connected(ambient, J)) continue;
        auto L = levi_subsystem(ambient, J);
        if (L.levi->family() == f && L.levi->rank() == m) out.push_back(std::move(L));
    }
    return out;
}

}  // namespace

std::string PropagationRow::pattern_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i) os << ',';
        const auto& v = pattern[i];
        if (static_cast<std::int64_t>(v.size()) == p) {
            os << '*';
        } else if (v.size() == 1) {
            os << v.front();
        } else {
            os << '{';
            for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
            os << '}';
        }
    }
    os << ')';
    return os.str();
}

std::vector<std::string> propagation_bases() {
    std::vector<std::string> ids;
    for (const auto& b : bases()) ids.push_back(b.id);
    return ids;
}

std::vector<PropagationRow> levi_propagation(const std::string& base, const RootSystem& ambient) {
    const Base& b = find_base(base);
    std::vector<int> ranks;
    if (b.rank) {
        ranks.push_back(b.rank);
    } else {
        for (int m = 3; m <= ambient.rank(); ++m) ranks.push_back(m);
    }

    std::vector<PropagationRow> rows;
    for (int m : ranks) {
        const auto coords = b.coords(m);
        for (const auto& L : embeddings(ambient, b.family, m)) {
            PropagationRow row;
            row.item = item_of(b, ambient.family());
            row.family = ambient.name();
            row.p = b.p;
            std::vector<std::int64_t> all(static_cast<std::size_t>(b.p));
            std::iota(all.begin(), all.end(), 0);
            row.pattern.assign(static_cast<std::size_t>(ambient.rank()), all);
            for (std::size_t k = 0; k < L.to_ambient.size(); ++k)
                row.pattern[static_cast<std::size_t>(L.to_ambient[k])] = {coords[k]};
            for (int j : L.J) row.J.push_back(j + 1);
            row.bases = {b.id};
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty())
        throw Error(ErrorCode::NoEmbedding, base + " is not a Levi subsystem of " + ambient.name());
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.J < y.J; });
    return rows;
}

std::vector<PropagationRow> propagation_table(const RootSystem& ambient) {
    std::vector<PropagationRow> rows;
    for (const auto& b : bases()) {
        try {
            for (auto& r : levi_propagation(b.id, ambient)) rows.push_back(std::move(r));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoEmbedding) throw;
        }
    }

    auto differing = [](const PropagationRow& x, const PropagationRow& y) {
        int n = 0, at = -1;
        for (std::size_t i = 0; i < x.pattern.size(); ++i)
            if (x.pattern[i] != y.pattern[i]) ++n, at = static_cast<int>(i);
        return n == 1 ? at : -1;
    };
    for (bool merged = true; merged;) {
        merged = false;
        for (std::size_t a = 0; a < rows.size() && !merged; ++a)
            for (std::size_t b = a + 1; b < rows.size() && !merged; ++b) {
                if (rows[a].item != rows[b].item || rows[a].J != rows[b].J || rows[a].p != rows[b].p) continue;
                const int at = differing(rows[a], rows[b]);
                if (at < 0) continue;
                auto& v = rows[a].pattern[static_cast<std::size_t>(at)];
                const auto& w = rows[b].pattern[static_cast<std::size_t>(at)];
                std::set<std::int64_t> u(v.begin(), v.end());
                u.insert(w.begin(), w.end());
                v.assign(u.begin(), u.end());
                rows[a].bases.insert(rows[a].bases.end(), rows[b].bases.begin(), rows[b].bases.end());
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(b));
                merged = true;
            }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        if (item_rank(x.item) != item_rank(y.item)) return item_rank(x.item) < item_rank(y.item);
        return x.J < y.J;
    });
    return rows;
}

}  // namespace weylforge
