#pragma once

#include <cstdint>
#include <functional>
#include <map>

#include "weylforge/charalg.hpp"

namespace weylforge {

// Two ways to evaluate a term of the sum formula; they must agree.
enum class JsfPath { DotReflection, Translation };

std::int64_t p_adic_valuation(std::int64_t n, std::int64_t p);

// sum over alpha > 0 and 0 < mp < <lambda + rho, alpha^vee> of nu_p(mp) chi(s_{alpha,mp} . lambda)
ChiSum jsf(const RootSystem& sys, const Weight& lambda, std::int64_t p, JsfPath path = JsfPath::DotReflection);

// Column of decomposition numbers [Delta(mu) : L(nu)], keyed by nu.
using ColumnFn = std::function<std::map<Weight, std::int64_t>(const Weight&)>;

// Rewrites a chi-sum in the simple basis using the given decomposition columns.
VirtualCharacter jsf_in_simple_basis(const RootSystem& sys, const ChiSum& sum, const ColumnFn& column);

}  // namespace weylforge
