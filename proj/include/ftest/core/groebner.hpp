#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <vector>

#include "ftest/core/polynomial.hpp"

namespace ftest {

struct GroebnerOptions {
  std::size_t pair_cap = 200'000;  // S-pairs processed before giving up
};

// Full reduction of f modulo `basis` (every term, not only the leading one).
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis) {
  const auto& F = f.ring()->field();
  Polynomial rest = f;
  std::vector<Term> remainder;
  while (!rest.is_zero()) {
    const Term lt = rest.leading_term();
    const Polynomial* divisor = nullptr;
    for (const auto& g : basis)
      if (g.leading_monomial().divides(lt.monomial)) {
        divisor = &g;
        break;
      }
    if (!divisor) {
      remainder.push_back(lt);
      rest = rest - Polynomial::monomial(rest.ring(), lt.monomial, lt.coefficient);
      continue;
    }
    Residue c = F.mul(lt.coefficient, F.inv(divisor->leading_term().coefficient));
    rest = rest - divisor->times_monomial(lt.monomial / divisor->leading_monomial()).scaled(c);
  }
  return Polynomial(f.ring(), std::move(remainder));
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const auto& F = f.ring()->field();
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  Polynomial a = f.times_monomial(l / f.leading_monomial()).scaled(F.inv(f.leading_term().coefficient));
  Polynomial b = g.times_monomial(l / g.leading_monomial()).scaled(F.inv(g.leading_term().coefficient));
  return a - b;
}

// Reduced Groebner basis (grevlex), monic, sorted by descending leading
// monomial.  Buchberger's algorithm with the coprime leading-term criterion.
inline std::vector<Polynomial> groebner_basis(std::vector<Polynomial> gens, const GroebnerOptions& opts = {}) {
  std::erase_if(gens, [](const Polynomial& f) { return f.is_zero(); });
  if (gens.empty()) return {};
  const RingPtr ring = gens.front().ring();
  for (const auto& g : gens)
    if (g.is_constant()) return {Polynomial::constant(ring, 1)};

  std::vector<Polynomial> basis;
  for (auto& g : gens) {
    Polynomial r = normal_form(g, basis);
    if (!r.is_zero()) basis.push_back(r.monic());
  }
  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);

  std::size_t processed = 0;
  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    if (++processed > opts.pair_cap) throw ResourceError("Groebner basis pair cap exceeded");
    if (basis[i].leading_monomial().coprime(basis[j].leading_monomial())) continue;
    Polynomial r = normal_form(s_polynomial(basis[i], basis[j]), basis);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {Polynomial::constant(ring, 1)};
    basis.push_back(r.monic());
    std::size_t k = basis.size() - 1;
    for (std::size_t m = 0; m < k; ++m) pairs.emplace_back(m, k);
  }

  // Minimalize leading monomials, then inter-reduce tails.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& li = basis[i].leading_monomial();
      const auto& lj = basis[j].leading_monomial();
      if (lj.divides(li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const Term lt = minimal[i].leading_term();
    Polynomial tail = minimal[i] - Polynomial::monomial(ring, lt.monomial, lt.coefficient);
    reduced.push_back((Polynomial::monomial(ring, lt.monomial, lt.coefficient) + normal_form(tail, others)).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [](const Polynomial& a, const Polynomial& b) {
    return grevlex(a.leading_monomial(), b.leading_monomial()) > 0;
  });
  return reduced;
}

}  // namespace ftest
