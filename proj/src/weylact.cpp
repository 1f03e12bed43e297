#include "weylforge/weylact.hpp"

#include <unordered_set>

#include "weylforge/checked.hpp"
#include "weylforge/error.hpp"

namespace weylforge {

Weight dot_reflect(const RootSystem& sys, const Weight& lambda, const Root& alpha, std::int64_t m, std::int64_t p) {
    const std::int64_t k = checked::sub(sys.pairing(lambda + sys.rho(), alpha), checked::mul(m, p));
    return lambda - alpha.weight.scaled(k);
}

Weight simple_dot_reflect(const RootSystem& sys, const Weight& lambda, int i) {
    return sys.simple_reflect(lambda + sys.rho(), i) - sys.rho();
}

StraightenResult straighten(const RootSystem& sys, const Weight& mu) {
    sys.require_member(mu);
    Weight v = mu + sys.rho();
    StraightenResult out;
    int sign = 1;
    while (true) {
        int worst = -1;
        for (int i = 0; i < sys.rank(); ++i) {
            if (v[i] == 0) return out;
            if (v[i] < 0 && (worst < 0 || v[i] < v[worst])) worst = i;
        }
        if (worst < 0) break;
        v = sys.simple_reflect(v, worst);
        sign = -sign;
        ++out.length;
    }
    out.sign = sign;
    out.dominant = v - sys.rho();
    return out;
}

std::vector<Weight> orbit(const RootSystem& sys, const Weight& lambda, std::size_t guard) {
    sys.require_member(lambda);
    std::unordered_set<Weight, WeightHash> seen{lambda};
    std::vector<Weight> out{lambda};
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (int i = 0; i < sys.rank(); ++i) {
            if (out[k][i] == 0) continue;
            Weight next = sys.simple_reflect(out[k], i);
            if (seen.insert(next).second) {
                out.push_back(next);
                if (out.size() > guard)
                    throw Error(ErrorCode::OrbitTooLarge,
                                "orbit of " + lambda.to_string() + " exceeds " + std::to_string(guard));
            }
        }
    }
    return out;
}

Weight dominant_conjugate(const RootSystem& sys, const Weight& lambda) {
    sys.require_member(lambda);
    Weight v = lambda;
    while (true) {
        int worst = -1;
        for (int i = 0; i < sys.rank(); ++i)
            if (v[i] < 0 && (worst < 0 || v[i] < v[worst])) worst = i;
        if (worst < 0) return v;
        v = sys.simple_reflect(v, worst);
    }
}

Weight minus_w0(const RootSystem& sys, const Weight& lambda) {
    sys.require_member(lambda);
    if (!lambda.is_dominant()) throw Error(ErrorCode::NotDominant, lambda.to_string());
    return dominant_conjugate(sys, -lambda);
}

// mu is linked to lambda iff (mu + rho) - w(lambda + rho) lies in p Z Phi for some w in W.
bool is_linked(const RootSystem& sys, const Weight& lambda, const Weight& mu, std::int64_t p) {
    sys.require_member(lambda);
    sys.require_member(mu);
    const Weight target = mu + sys.rho();
    for (const Weight& v : orbit(sys, lambda + sys.rho())) {
        auto c = sys.root_coordinates(target - v);
        if (!c) continue;
        bool ok = true;
        for (int j = 0; j < sys.rank() && ok; ++j) ok = ((*c)[j] % p == 0);
        if (ok) return true;
    }
    return false;
}

}  // namespace weylforge
