#include "weylforge/hyperalg.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "weylforge/error.hpp"

namespace weylforge {

namespace {

using Vec = std::vector<std::int64_t>;

std::int64_t md(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

std::int64_t inverse(std::int64_t a, std::int64_t p) {
    std::int64_t r = 1, e = p - 2;
    a = md(a, p);
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

std::int64_t small_binomial(std::int64_t n, std::int64_t t) {
    if (t < 0 || t > n) return 0;
    std::int64_t r = 1;
    for (std::int64_t k = 1; k <= t; ++k) r = r * (n - t + k) / k;
    return r;
}

// One weight space of L(lambda). A basis vector is stored through its images
// under every E_j^(m) that lands on a weight of the module.
struct Space {
    Weight mu;
    int dim = 0;
    // sig_index[j][m] -> (space, offset) of E_j^(m) images inside a signature
    std::vector<std::vector<std::pair<int, int>>> sig_index;
    int sig_len = 0;
    std::vector<Vec> basis_sig;
    // f[i][n] : for each basis vector b of the space mu + n alpha_i, coordinates of F_i^(n) b here
    std::vector<std::vector<std::vector<Vec>>> f;
};

class Builder {
public:
    Builder(const RootSystem& sys, const Weight& lambda, std::int64_t p) : sys_(sys), lambda_(lambda), p_(p) {}

    VirtualCharacter run() {
        const auto full = full_weights(sys_, nabla_character(sys_, lambda_));
        std::vector<Weight> order;
        for (const auto& [w, m] : full) order.push_back(w);
        std::sort(order.begin(), order.end(), [&](const Weight& a, const Weight& b) {
            const auto ha = sys_.scaled_height(a), hb = sys_.scaled_height(b);
            return ha != hb ? ha > hb : a < b;
        });
        for (std::size_t k = 0; k < order.size(); ++k) index_.emplace(order[k], static_cast<int>(k));
        spaces_.resize(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) build(static_cast<int>(k), order[k]);

        VirtualCharacter out(sys_.id(), CharForm::Weight);
        for (const auto& s : spaces_)
            if (s.mu.is_dominant() && s.dim > 0) out.add(s.mu, s.dim);
        return out;
    }

private:
    int find(const Weight& w) const {
        auto it = index_.find(w);
        return it == index_.end() ? -1 : it->second;
    }

    Weight shift(const Weight& w, int i, std::int64_t n) const { return w + sys_.simple_root(i).weight.scaled(n); }

    // max n with mu + n alpha_i still a weight
    int reach(const Weight& mu, int i) const {
        int n = 0;
        while (find(shift(mu, i, n + 1)) >= 0) ++n;
        return n;
    }

    // E_j^(m) applied to basis vector b of space s, as coordinates in the target space.
    Vec e_image(int s, int b, int j, int m) const {
        const Space& sp = spaces_[s];
        if (m == 0) {
            Vec v(sp.dim, 0);
            v[b] = 1;
            return v;
        }
        if (j >= static_cast<int>(sp.sig_index.size()) || m >= static_cast<int>(sp.sig_index[j].size()) ||
            sp.sig_index[j][m].first < 0)
            return {};
        const auto [t, off] = sp.sig_index[j][m];
        const Vec& sig = sp.basis_sig[b];
        return Vec(sig.begin() + off, sig.begin() + off + spaces_[t].dim);
    }

    // F_i^(n) applied to a vector of space s, landing in space t.
    Vec f_apply(int t, int i, int n, const Vec& v) const {
        const Space& tp = spaces_[t];
        Vec out(tp.dim, 0);
        if (n == 0) return v;
        if (v.empty()) return out;
        const auto& cols = tp.f[i][n];
        for (std::size_t b = 0; b < v.size(); ++b) {
            if (v[b] == 0) continue;
            for (int k = 0; k < tp.dim; ++k) out[k] = (out[k] + v[b] * cols[b][k]) % p_;
        }
        return out;
    }

    Vec apply_e_to_vec(int s, const Vec& v, int j, int m, int target_dim) const {
        Vec out(target_dim, 0);
        for (std::size_t b = 0; b < v.size(); ++b) {
            if (v[b] == 0) continue;
            Vec img = e_image(s, static_cast<int>(b), j, m);
            if (img.empty()) continue;
            for (int k = 0; k < target_dim; ++k) out[k] = (out[k] + v[b] * img[k]) % p_;
        }
        return out;
    }

    void build(int k, const Weight& mu) {
        Space& sp = spaces_[k];
        sp.mu = mu;
        const int r = sys_.rank();
        sp.sig_index.assign(r, {});
        for (int j = 0; j < r; ++j) {
            const int top = reach(mu, j);
            sp.sig_index[j].assign(top + 1, {-1, 0});
            for (int m = 1; m <= top; ++m) {
                const int t = find(shift(mu, j, m));
                sp.sig_index[j][m] = {t, sp.sig_len};
                sp.sig_len += spaces_[t].dim;
            }
        }
        sp.f.assign(r, {});
        if (mu == lambda_) {
            sp.dim = 1;
            sp.basis_sig.push_back(Vec(sp.sig_len, 0));
            return;
        }

        // echelon rows of signatures, each with its expression in basis indices
        std::vector<Vec> rows, combos;
        std::vector<int> pivots;
        for (int i = 0; i < r; ++i) {
            const int top = reach(mu, i);
            sp.f[i].assign(top + 1, {});
            for (int n = 1; n <= top; ++n) {
                const int src = find(shift(mu, i, n));
                const int src_dim = spaces_[src].dim;
                for (int b = 0; b < src_dim; ++b) {
                    Vec sig = signature(k, i, n, src, b);
                    Vec combo(sp.dim + 1, 0);
                    for (std::size_t q = 0; q < rows.size(); ++q) {
                        const std::int64_t c = sig[pivots[q]];
                        if (c == 0) continue;
                        for (int x = 0; x < sp.sig_len; ++x) sig[x] = md(sig[x] - c * rows[q][x], p_);
                        for (std::size_t x = 0; x < combos[q].size(); ++x)
                            combo[x] = md(combo[x] + c * combos[q][x], p_);
                    }
                    int piv = -1;
                    for (int x = 0; x < sp.sig_len; ++x)
                        if (sig[x] != 0) {
                            piv = x;
                            break;
                        }
                    if (piv < 0) {
                        combo.resize(sp.dim);
                        sp.f[i][n].push_back(std::move(combo));
                        continue;
                    }
                    // new basis vector: its own signature, before reduction
                    const int idx = sp.dim++;
                    sp.basis_sig.push_back(signature(k, i, n, src, b));
                    for (auto& c : combos) c.resize(sp.dim, 0);
                    for (auto& c : sp.f) for (auto& cn : c) for (auto& v : cn) v.resize(sp.dim, 0);
                    Vec row_combo(sp.dim, 0);
                    for (std::size_t x = 0; x < combo.size() && x < row_combo.size(); ++x)
                        row_combo[x] = md(-combo[x], p_);
                    row_combo[idx] = 1;
                    const std::int64_t inv = inverse(sig[piv], p_);
                    for (auto& x : sig) x = x * inv % p_;
                    for (auto& x : row_combo) x = x * inv % p_;
                    rows.push_back(std::move(sig));
                    combos.push_back(std::move(row_combo));
                    pivots.push_back(piv);
                    Vec self(sp.dim, 0);
                    self[idx] = 1;
                    sp.f[i][n].push_back(std::move(self));
                }
            }
        }
    }

    // Signature of F_i^(n) b, b a basis vector of space src = mu + n alpha_i.
    Vec signature(int k, int i, int n, int src, int b) const {
        const Space& sp = spaces_[k];
        Vec sig(sp.sig_len, 0);
        const Weight& src_mu = spaces_[src].mu;
        const std::int64_t h = src_mu[i];
        for (int j = 0; j < sys_.rank(); ++j) {
            for (int m = 1; m < static_cast<int>(sp.sig_index[j].size()); ++m) {
                const auto [t, off] = sp.sig_index[j][m];
                if (t < 0) continue;
                Vec acc(spaces_[t].dim, 0);
                if (j != i) {
                    // F_i^(n) E_j^(m) b
                    const Vec eb = e_image(src, b, j, m);
                    if (!eb.empty()) {
                        const Vec fe = f_apply(t, i, n, eb);
                        for (std::size_t x = 0; x < acc.size(); ++x) acc[x] = fe[x];
                    }
                } else {
                    for (int u = 0; u <= std::min(m, n); ++u) {
                        const std::int64_t c = binomial_mod(h + m - n, u, p_);
                        if (c == 0) continue;
                        const Vec eb = e_image(src, b, i, m - u);
                        if (eb.empty()) continue;
                        const Vec fe = f_apply(t, i, n - u, eb);
                        for (std::size_t x = 0; x < acc.size(); ++x) acc[x] = (acc[x] + c * fe[x]) % p_;
                    }
                }
                std::copy(acc.begin(), acc.end(), sig.begin() + off);
            }
        }
        return sig;
    }


    const RootSystem& sys_;
    Weight lambda_;
    std::int64_t p_;
    std::map<Weight, int> index_;
    std::vector<Space> spaces_;
};

}  // namespace

std::int64_t binomial_mod(std::int64_t n, std::int64_t t, std::int64_t p) {
    if (t < 0) return 0;
    if (t == 0) return 1;
    std::int64_t sign = 1;
    if (n < 0) {
        // C(n, t) = (-1)^t C(t - n - 1, t)
        n = t - n - 1;
        if (t % 2) sign = -1;
    }
    if (t > n) return 0;
    std::int64_t r = 1;
    while (n > 0 || t > 0) {
        r = r * small_binomial(n % p, t % p) % p;
        n /= p;
        t /= p;
    }
    return md(sign * r, p);
}

VirtualCharacter construct_simple_character(const RootSystem& sys, const Weight& lambda, std::int64_t p) {
    sys.require_member(lambda);
    if (!lambda.is_dominant()) throw Error(ErrorCode::NotDominant, lambda.to_string());
    if (p < 2) throw Error(ErrorCode::InvalidInput, "p must be a prime");
    return Builder(sys, lambda, p).run();
}

}  // namespace weylforge
