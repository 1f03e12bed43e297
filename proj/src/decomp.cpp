#include "weylforge/decomp.hpp"

#include <algorithm>
#include <functional>

#include "weylforge/checked.hpp"
#include "weylforge/error.hpp"

namespace weylforge {

std::pair<Weight, Weight> steinberg_split(const Weight& lambda, std::int64_t p, int r) {
    if (!lambda.is_dominant()) throw Error(ErrorCode::NotDominant, lambda.to_string());
    const std::int64_t q = checked::power(p, r);
    Weight l0 = lambda, l1 = lambda;
    for (int i = 0; i < lambda.rank(); ++i) {
        l0[i] = lambda[i] % q;
        l1[i] = lambda[i] / q;
    }
    return {l0, l1};
}

const SimpleEntry& DecompositionBranch::entry(const Weight& mu) const {
    auto it = world.find(mu);
    if (it == world.end())
        throw Error(ErrorCode::MissingDecompositionData, "no decomposition data for " + mu.to_string());
    return *it->second;
}

ColumnFn DecompositionBranch::column_fn() const {
    return [this](const Weight& mu) { return entry(mu).column; };
}

BasisFn DecompositionBranch::simple_fn() const {
    return [this](const Weight& mu) { return entry(mu).simple; };
}

Expansion simple_expand(const RootSystem& sys, const VirtualCharacter& c, const World& world) {
    return unitriangular_expand(sys, c, [&](const Weight& mu) {
        auto it = world.find(mu);
        if (it == world.end())
            throw Error(ErrorCode::MissingDecompositionData, "no simple character for " + mu.to_string());
        return it->second->simple;
    });
}

namespace {

bool same_entry(const SimpleEntry& a, const SimpleEntry& b) { return a.column == b.column && a.simple == b.simple; }

std::optional<World> merge(const World& a, const World& b) {
    World out = a;
    for (const auto& [w, e] : b) {
        auto it = out.find(w);
        if (it == out.end()) {
            out.emplace(w, e);
        } else if (it->second != e && !same_entry(*it->second, *e)) {
            return std::nullopt;
        }
    }
    return out;
}

bool same_world(const World& a, const World& b) {
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
        if (ia->first != ib->first || (ia->second != ib->second && !same_entry(*ia->second, *ib->second)))
            return false;
    return true;
}

void push_unique(std::vector<World>& v, World w) {
    for (const auto& x : v)
        if (same_world(x, w)) return;
    v.push_back(std::move(w));
}

}  // namespace

DecompositionSolver::DecompositionSolver(const RootSystem& sys, std::int64_t p, SolverOptions opts)
    : sys_(&sys), p_(p), opts_(opts) {
    if (p < 2) throw Error(ErrorCode::InvalidInput, "p must be a prime");
}

void DecompositionSolver::note(const std::string& s) {
    if (std::find(constraints_.begin(), constraints_.end(), s) == constraints_.end()) constraints_.push_back(s);
}

void DecompositionSolver::guard(std::size_t n, const Weight& mu) const {
    if (n > opts_.branch_cap)
        throw Error(ErrorCode::BranchExplosion, std::to_string(n) + " branches while solving " + mu.to_string() +
                                                    " (cap " + std::to_string(opts_.branch_cap) + ")");
}

const std::vector<World>& DecompositionSolver::closure(const Weight& mu) {
    auto it = memo_.find(mu);
    if (it != memo_.end()) return it->second;
    auto worlds = compute(mu);
    return memo_.emplace(mu, std::move(worlds)).first->second;
}

std::vector<World> DecompositionSolver::extend(const World& w, const Weight& mu) {
    if (w.count(mu)) return {w};
    std::vector<World> out;
    for (const auto& m : closure(mu))
        if (auto merged = merge(w, m)) push_unique(out, std::move(*merged));
    guard(out.size(), mu);
    return out;
}

std::vector<World> DecompositionSolver::solve_joint(const std::vector<Weight>& weights) {
    std::vector<World> worlds{World{}};
    for (const auto& mu : weights) {
        sys_->require_member(mu);
        if (!mu.is_dominant()) throw Error(ErrorCode::NotDominant, mu.to_string());
        std::vector<World> next;
        for (const auto& w : worlds)
            for (auto& x : extend(w, mu)) push_unique(next, std::move(x));
        guard(next.size(), mu);
        worlds = std::move(next);
    }
    return worlds;
}

// Given ch L(mu), reads off the column greedily and checks it against the sum formula.
void DecompositionSolver::finish_from_character(const World& w0, const Weight& mu, const VirtualCharacter& simple,
                                                const std::string& provenance, std::vector<World>& out) {
    const RootSystem& sys = *sys_;
    std::vector<std::pair<World, std::map<Weight, std::int64_t>>> done;
    std::function<void(const World&, VirtualCharacter, std::map<Weight, std::int64_t>)> peel =
        [&](const World& w, VirtualCharacter rest, std::map<Weight, std::int64_t> col) {
            if (rest.empty()) {
                done.emplace_back(w, std::move(col));
                return;
            }
            auto terms = rest.canonical_terms(sys);
            const auto [top, c] = terms.front();
            if (c < 0) return;
            for (const auto& x : extend(w, top)) {
                VirtualCharacter r = rest - x.at(top)->simple.scaled(c);
                auto cc = col;
                cc[top] = c;
                peel(x, std::move(r), std::move(cc));
            }
        };
    peel(w0, nabla_character(sys, mu) - simple, {{mu, 1}});

    const ChiSum sum = jsf(sys, mu, p_);
    for (auto& [w, col] : done) {
        std::vector<World> ws{w};
        for (const auto& [nu, c] : sum.character().terms()) {
            std::vector<World> next;
            for (const auto& x : ws)
                for (auto& y : extend(x, nu)) push_unique(next, std::move(y));
            ws = std::move(next);
        }
        for (auto& x : ws) {
            DecompositionBranch b{{}, x};
            auto a = jsf_in_simple_basis(sys, sum, b.column_fn());
            bool ok = true;
            for (const auto& [nu, v] : a.terms())
                if (v < 0 || !col.count(nu) || col.at(nu) > v) ok = false;
            for (const auto& [nu, d] : col)
                if (nu != mu && a[nu] <= 0) ok = false;
            if (!ok) continue;
            auto e = std::make_shared<SimpleEntry>(SimpleEntry{col, simple, a, provenance});
            x.emplace(mu, std::move(e));
            push_unique(out, std::move(x));
        }
    }
}

std::vector<World> DecompositionSolver::compute(const Weight& mu) {
    const RootSystem& sys = *sys_;
    std::vector<World> out;
    const auto fixture = opts_.fixtures ? opts_.fixtures->simple_character(sys, p_, mu) : std::nullopt;

    if (!is_restricted(mu, p_, 1)) {
        auto [m0, m1] = steinberg_split(mu, p_, 1);
        for (const auto& w0 : closure(m0))
            for (const auto& w : extend(w0, m1)) {
                auto simple = tensor(sys, w.at(m0)->simple, frobenius_twist(w.at(m1)->simple, p_));
                finish_from_character(w, mu, simple,
                                      "L" + m0.to_string() + " (x) L" + m1.to_string() + "^(1)", out);
            }
        guard(out.size(), mu);
        return out;
    }

    const ChiSum sum = jsf(sys, mu, p_);
    const VirtualCharacter nabla = nabla_character(sys, mu);
    if (sum.empty()) {
        World w;
        w.emplace(mu, std::make_shared<SimpleEntry>(SimpleEntry{
                          {{mu, 1}}, nabla, VirtualCharacter(sys.id(), CharForm::Simple), "empty sum formula"}));
        out.push_back(std::move(w));
        return out;
    }

    std::vector<World> worlds{World{}};
    for (const auto& [nu, c] : sum.character().terms()) {
        std::vector<World> next;
        for (const auto& x : worlds)
            for (auto& y : extend(x, nu)) push_unique(next, std::move(y));
        guard(next.size(), mu);
        worlds = std::move(next);
    }

    std::size_t rejected = 0;
    for (const auto& w : worlds) {
        DecompositionBranch b{{}, w};
        const auto a = jsf_in_simple_basis(sys, sum, b.column_fn());
        if (!a.nonnegative()) continue;
        auto factors = a.canonical_terms(sys);
        for (const auto& [nu, v] : factors)
            if (v > 1)
                note("[Delta" + mu.to_string() + ":L" + nu.to_string() + "] in 1.." + std::to_string(v) +
                     " (sum formula multiplicity " + std::to_string(v) + ")");

        std::vector<std::pair<std::map<Weight, std::int64_t>, VirtualCharacter>> leaves;
        std::function<void(std::size_t, VirtualCharacter, std::map<Weight, std::int64_t>)> dfs =
            [&](std::size_t i, VirtualCharacter rest, std::map<Weight, std::int64_t> col) {
                if (i == factors.size()) {
                    leaves.emplace_back(std::move(col), std::move(rest));
                    return;
                }
                const auto& [nu, v] = factors[i];
                const auto& lnu = w.at(nu)->simple;
                VirtualCharacter r = rest;
                for (std::int64_t d = 1; d <= v; ++d) {
                    r -= lnu;
                    if (!r.nonnegative()) break;
                    auto cc = col;
                    cc[nu] = d;
                    dfs(i + 1, r, std::move(cc));
                }
            };
        dfs(0, nabla, {{mu, 1}});

        std::string prov = leaves.size() > 1 ? "sum formula bounds with positivity (" + std::to_string(leaves.size()) +
                                                   " candidates)"
                                             : "sum formula bounds with positivity";
        for (auto& [col, simple] : leaves) {
            if (fixture && simple != fixture->first) {
                ++rejected;
                continue;
            }
            World x = w;
            x.emplace(mu, std::make_shared<SimpleEntry>(SimpleEntry{col, simple, a, prov}));
            push_unique(out, std::move(x));
        }
        guard(out.size(), mu);
    }

    if (fixture) {
        const auto& id = fixture->second;
        if (out.empty())
            throw Error(ErrorCode::InvalidInput, "fixture " + id + " contradicts the sum formula for " + mu.to_string());
        if (out.size() + rejected > 1) {
            for (auto& x : out) {
                auto e = std::make_shared<SimpleEntry>(*x.at(mu));
                e->provenance = "literature fixture " + id;
                x[mu] = std::move(e);
            }
            note("ch L" + mu.to_string() + " selected by literature fixture " + id);
        }
    }
    if (out.empty())
        throw Error(ErrorCode::MissingDecompositionData, "no consistent decomposition for " + mu.to_string());
    return out;
}

DecompositionBranchSet DecompositionSolver::solve(const Weight& lambda) {
    sys_->require_member(lambda);
    if (!lambda.is_dominant()) throw Error(ErrorCode::NotDominant, lambda.to_string());
    DecompositionBranchSet out;
    out.system = sys_->id();
    out.p = p_;
    out.lambda = lambda;
    for (const auto& w : closure(lambda)) out.branches.push_back({w.at(lambda)->column, w});
    out.constraints = constraints_;
    return out;
}

std::map<std::vector<std::int64_t>, std::vector<std::size_t>> DecompositionBranchSet::group_by(
    const std::vector<Weight>& at) const {
    std::map<std::vector<std::int64_t>, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        std::vector<std::int64_t> key;
        for (const auto& w : at) {
            auto it = branches[i].column.find(w);
            key.push_back(it == branches[i].column.end() ? 0 : it->second);
        }
        out[key].push_back(i);
    }
    return out;
}

DecompositionBranchSet solve_decomposition(const RootSystem& sys, const Weight& lambda, std::int64_t p,
                                           const Fixtures* fixtures) {
    DecompositionSolver s(sys, p, {64, fixtures});
    return s.solve(lambda);
}

VirtualCharacter simple_character(const RootSystem& sys, const Weight& lambda, std::int64_t p,
                                  const DecompositionBranch& branch) {
    auto it = branch.world.find(lambda);
    if (it != branch.world.end()) return it->second->simple;
    if (is_restricted(lambda, p, 1))
        throw Error(ErrorCode::MissingDecompositionData, "no simple character for " + lambda.to_string());
    auto [l0, l1] = steinberg_split(lambda, p, 1);
    return tensor(sys, simple_character(sys, l0, p, branch), frobenius_twist(simple_character(sys, l1, p, branch), p));
}

}  // namespace weylforge
