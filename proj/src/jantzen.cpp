#include "weylforge/jantzen.hpp"

#include "weylforge/checked.hpp"
#include "weylforge/error.hpp"
#include "weylforge/weylact.hpp"

namespace weylforge {

std::int64_t p_adic_valuation(std::int64_t n, std::int64_t p) {
    if (n == 0) throw Error(ErrorCode::InvalidInput, "valuation of zero");
    std::int64_t v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

ChiSum jsf(const RootSystem& sys, const Weight& lambda, std::int64_t p, JsfPath path) {
    sys.require_member(lambda);
    if (!lambda.is_dominant()) throw Error(ErrorCode::NotDominant, lambda.to_string());
    if (p < 2) throw Error(ErrorCode::InvalidInput, "p must be a prime");
    ChiSum out(sys);
    const Weight shifted = lambda + sys.rho();
    for (const Root& a : sys.positive_roots()) {
        const std::int64_t n = sys.pairing(shifted, a);
        for (std::int64_t m = 1; checked::mul(m, p) < n; ++m) {
            const std::int64_t v = p_adic_valuation(m * p, p);
            if (path == JsfPath::DotReflection)
                out.add(dot_reflect(sys, lambda, a, m, p), v);
            else
                out.add(lambda - a.weight.scaled(m * p), -v);
        }
    }
    return out;
}

VirtualCharacter jsf_in_simple_basis(const RootSystem& sys, const ChiSum& sum, const ColumnFn& column) {
    VirtualCharacter out(sys.id(), CharForm::Simple);
    for (const auto& [mu, c] : sum.character().terms())
        for (const auto& [nu, d] : column(mu)) out.add(nu, checked::mul(c, d));
    return out;
}

}  // namespace weylforge
