#pragma once

#include <map>
#include <vector>

#include "ftest/core/ideal.hpp"
#include "ftest/frobenius/context.hpp"

namespace ftest {

// a^{[q]}: generated by q-th powers of the generators.  In characteristic p,
// (Σ c_v x^v)^q = Σ c_v x^{qv} because c^q = c in F_p.
inline Ideal frobenius_power(const Ideal& a, const FrobeniusContext& ctx) {
  if (a.ring()->characteristic() != ctx.p()) throw StructuralError("Frobenius context and ring disagree on p");
  if (ctx.e() == 0 || a.is_zero()) return a;
  const std::uint64_t q = to_u64(ctx.q(), "q");
  if (a.is_monomial()) {
    std::vector<Monomial> ms;
    for (const auto& m : a.monomial_generators()) ms.push_back(m.pow(q));
    return Ideal::from_monomials(a.ring(), std::move(ms));
  }
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) {
    std::vector<Term> terms;
    for (const auto& t : f.terms()) terms.push_back({t.monomial.pow(q), t.coefficient});
    gens.emplace_back(f.ring(), std::move(terms));
  }
  return Ideal(a.ring(), std::move(gens));
}

namespace detail {

// Coefficients g_b of f = Σ_b g_b^q x^b, 0 <= b_i < q.
inline std::vector<Polynomial> root_components(const Polynomial& f, std::uint64_t q) {
  std::map<std::vector<std::uint64_t>, std::vector<Term>> groups;
  for (const auto& t : f.terms()) {
    std::vector<std::uint64_t> rem(t.monomial.size());
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = t.monomial[i] % q;
    groups[rem].push_back({t.monomial.floor_div(q), t.coefficient});
  }
  std::vector<Polynomial> out;
  for (auto& [b, terms] : groups) out.emplace_back(f.ring(), std::move(terms));
  return out;
}

inline Ideal root_step(const Ideal& a, std::uint64_t q) {
  if (a.is_monomial()) {
    std::vector<Monomial> ms;
    for (const auto& m : a.monomial_generators()) ms.push_back(m.floor_div(q));
    return Ideal::from_monomials(a.ring(), std::move(ms));
  }
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators())
    for (auto& g : root_components(f, q)) gens.push_back(std::move(g));
  Ideal r(a.ring(), std::move(gens));
  if (!r.is_monomial() && r.generators().size() > 24) {
    if (auto m = r.as_monomial()) return *m;
    return Ideal(a.ring(), r.groebner());
  }
  return r;
}

}  // namespace detail

// a^{[1/q]}: the smallest J with a ⊆ J^{[q]}.  General ideals iterate the
// p-th root e times; monomial ideals take componentwise floors.
inline Ideal frobenius_root(const Ideal& a, const FrobeniusContext& ctx) {
  if (a.ring()->characteristic() != ctx.p()) throw StructuralError("Frobenius context and ring disagree on p");
  if (a.is_zero()) throw DomainError("Frobenius root: nonzero required");
  if (ctx.e() == 0) return a;
  if (a.is_monomial()) {
    if (ctx.q() > Natural(std::numeric_limits<std::uint64_t>::max())) return Ideal::unit(a.ring());
    return detail::root_step(a, static_cast<std::uint64_t>(ctx.q()));
  }
  Ideal r = a;
  for (unsigned i = 0; i < ctx.e(); ++i) r = detail::root_step(r, ctx.p());
  return r;
}

// Single-shot q-th root of a general ideal (used to cross-check iteration).
inline Ideal frobenius_root_direct(const Ideal& a, const FrobeniusContext& ctx) {
  if (a.is_zero()) throw DomainError("Frobenius root: nonzero required");
  if (ctx.e() == 0) return a;
  return detail::root_step(a, to_u64(ctx.q(), "q"));
}

}  // namespace ftest
