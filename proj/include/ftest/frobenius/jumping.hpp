#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "ftest/frobenius/test_ideal.hpp"

namespace ftest {

struct Plateau {
  Rational from;  // closed
  Rational to;    // open, except for the last plateau which ends at λ_max inclusive
  bool closed_right = false;
  Ideal ideal;
};

struct JumpReport {
  Rational interval_end;
  std::vector<Rational> jumps;
  std::vector<Plateau> plateaus;
  bool certified = true;  // false once any τ evaluation hit a cap
  std::size_t evaluations = 0;
};

// Rationals in (0, λ_max] with denominator <= bound, plus λ_max.
inline std::vector<Rational> jump_candidates(const Rational& lambda_max, std::uint64_t denom_bound) {
  std::set<Rational> out;
  for (std::uint64_t d = 1; d <= denom_bound; ++d) {
    Natural top = floor_of(lambda_max * Rational(Natural(d)));
    for (Natural n = 1; n <= top; ++n) out.insert(Rational(n, Natural(d)));
  }
  if (lambda_max > 0) out.insert(lambda_max);
  return {out.begin(), out.end()};
}

// Smallest e with p^e >= bound^2.  Distinct candidates differ by at least
// 1/bound^2, so below this q the chain cannot tell neighbours apart.
inline unsigned resolving_exponent(std::uint64_t p, std::uint64_t denom_bound) {
  unsigned e = 1;
  Natural q = p;
  const Natural need = Natural(denom_bound) * denom_bound;
  while (q < need) {
    q *= p;
    ++e;
  }
  return e;
}

// F-jumping numbers of a in (0, λ_max], exact relative to the denominator
// bound.  τ(a^λ) is non-increasing in λ, so equal values at both ends of an
// interval mean no jump inside; unequal ends are bisected over the candidate
// list.  Each plateau is left-closed because τ is constant on [λ, λ+ε).
inline JumpReport f_jumping_numbers(const Ideal& a, const ExponentLambda& lambda_max, std::uint64_t denom_bound,
                                    const TestIdealCaps& caps = {}) {
  if (a.is_zero()) throw DomainError("jumping numbers: nonzero required");
  if (denom_bound < 1) throw DomainError("denominator bound must be >= 1");
  TestIdealCaps chain = caps;
  chain.e_min = std::max(chain.e_min, resolving_exponent(a.ring()->characteristic(), denom_bound));
  chain.e_max_monomial = std::max(chain.e_max_monomial, chain.e_min + chain.window);
  JumpReport report;
  report.interval_end = lambda_max.value();
  const std::vector<Rational> candidates = jump_candidates(lambda_max.value(), denom_bound);

  std::map<Rational, Ideal> memo;
  auto tau = [&](const Rational& l) -> const Ideal& {
    auto it = memo.find(l);
    if (it != memo.end()) return it->second;
    TestIdealResult r = test_ideal(a, ExponentLambda(l), chain);
    ++report.evaluations;
    if (r.flagged()) report.certified = false;
    return memo.emplace(l, std::move(r.ideal)).first->second;
  };

  const Natural p2 = Natural(a.ring()->characteristic()) * a.ring()->characteristic();
  std::vector<Rational> grid{Rational(0)};
  for (const auto& c : candidates)
    if (denominator_of(c * Rational(p2)) == 1) grid.push_back(c);
  if (candidates.empty() || grid.back() != lambda_max.value()) {
    if (lambda_max.value() > 0) grid.push_back(lambda_max.value());
  }

  std::set<Rational> jumps;
  // jumps in (lo, hi]
  auto refine = [&](auto&& self, const Rational& lo, const Rational& hi) -> void {
    if (tau(lo) == tau(hi)) return;
    auto first = std::upper_bound(candidates.begin(), candidates.end(), lo);
    auto past = std::lower_bound(candidates.begin(), candidates.end(), hi);
    if (first >= past) {
      jumps.insert(hi);
      return;
    }
    Rational mid = *(first + (past - first) / 2);
    self(self, lo, mid);
    self(self, mid, hi);
  };
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) refine(refine, grid[i], grid[i + 1]);

  report.jumps.assign(jumps.begin(), jumps.end());
  std::vector<Rational> starts{Rational(0)};
  starts.insert(starts.end(), report.jumps.begin(), report.jumps.end());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    bool last = i + 1 == starts.size();
    Rational to = last ? lambda_max.value() : starts[i + 1];
    report.plateaus.push_back({starts[i], to, last, tau(starts[i])});
  }
  for (std::size_t i = 1; i < report.plateaus.size(); ++i) {
    const auto& prev = report.plateaus[i - 1].ideal;
    const auto& cur = report.plateaus[i].ideal;
    if (!prev.contains(cur) || cur.contains(prev))
      throw TheoremViolation("jump plateaus are not strictly decreasing");
  }
  return report;
}

}  // namespace ftest
