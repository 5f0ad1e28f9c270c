#pragma once

#include <vector>

#include "ftest/asymptotic/graded_sequence.hpp"
#include "ftest/frobenius/test_ideal.hpp"

namespace ftest {

struct AsymptoticOrdEstimate {
  std::optional<Rational> value_at_cap;  // ord_Z(a_{m*})/m*
  std::uint64_t m_star = 0;
  std::optional<Rational> upper_bound;  // min over sampled m of ord_Z(a_m)/m
  bool exact = false;
  std::optional<Rational> exact_value;
  bool indeterminate = false;  // every sampled a_m was zero
};

// inf_m ord_Z(a_m)/m, sampled along m = 1..m_cap.
inline AsymptoticOrdEstimate asymptotic_ord(const GradedSequence& seq, const CoordinateSubvariety& Z, std::uint64_t m_cap) {
  if (m_cap < 1) throw DomainError("m_cap must be >= 1");
  AsymptoticOrdEstimate est;
  std::vector<OrdValue> ords(m_cap + 1);
  for (std::uint64_t m = 1; m <= m_cap; ++m) {
    ords[m] = seq.ord_term(m, Z);
    if (!ords[m]) continue;
    Rational r(Natural(*ords[m]), Natural(m));
    if (!est.upper_bound || r < *est.upper_bound) est.upper_bound = r;
    est.value_at_cap = r;
    est.m_star = m;
    // a_m^2 ⊆ a_{2m} forces ord(a_{2m}) <= 2·ord(a_m)
    if (m % 2 == 0 && ords[m / 2] && *ords[m] > 2 * *ords[m / 2])
      throw TheoremViolation("asymptotic order increased along the chain at m = " + std::to_string(m));
  }
  est.indeterminate = !est.upper_bound.has_value();
  if (auto exact = seq.exact_ord(Z)) {
    est.exact = true;
    est.exact_value = *exact;
    if (est.upper_bound && *exact > *est.upper_bound)
      throw TheoremViolation("closed-form asymptotic order exceeds a sampled ratio");
  }
  return est;
}

struct AsymptoticCaps {
  TestIdealCaps inner{};
  std::uint64_t m_cap = 64;
  unsigned window = 2;
  std::uint64_t m_start = 1;  // first index of the chain m_start, 2 m_start, 4 m_start, ...
};

// τ(a_•^λ) as the stable member of τ(a_m^{λ/m}) along m = 1, 2, 4, ...
inline TestIdealResult asymptotic_test_ideal(const GradedSequence& seq, const ExponentLambda& lambda,
                                             const AsymptoticCaps& caps = {}) {
  if (lambda.is_zero()) {
    TestIdealResult r{Ideal::unit(seq.ring()), 0, Evidence::closed_form};
    r.stabilization_m = 1;
    return r;
  }
  if (seq.kind() == GradedSequence::Kind::power) {
    // τ((a^m)^{λ/m}) = τ(a^λ) for every m
    TestIdealResult r = test_ideal(*seq.base(), lambda, caps.inner);
    r.stabilization_m = 1;
    return r;
  }
  std::optional<TestIdealResult> prev;
  bool flagged = false;
  unsigned run = 0;
  std::uint64_t run_start = 0;
  unsigned run_e = 0;
  for (std::uint64_t m = std::max<std::uint64_t>(1, caps.m_start); m <= caps.m_cap; m *= 2) {
    Ideal am = seq.term(m);
    if (am.is_zero()) continue;
    TestIdealResult cur = test_ideal(am, ExponentLambda(lambda.value() / Rational(Natural(m))), caps.inner);
    flagged |= cur.flagged();
    if (prev) {
      if (!cur.ideal.contains(prev->ideal)) {
        if (cur.evidence == Evidence::closed_form && prev->evidence == Evidence::closed_form)
          throw TheoremViolation("asymptotic test ideal chain is not ascending at m = " + std::to_string(m));
        // an unconverged member; both are lower bounds, so keep the sum
        cur.ideal = ideal_sum(cur.ideal, prev->ideal);
      }
      if (prev->ideal.contains(cur.ideal)) {
        if (++run >= caps.window) {
          TestIdealResult r{cur.ideal, run_e, flagged ? Evidence::cap_reached : Evidence::window_stable};
          r.stabilization_m = run_start;
          return r;
        }
      } else {
        run = 0;
        run_start = m;
        run_e = cur.stabilization_e;
      }
    } else {
      run_start = m;
      run_e = cur.stabilization_e;
    }
    prev = std::move(cur);
  }
  if (!prev) throw DomainError("asymptotic test ideal: every sampled a_m is zero");
  TestIdealResult r{prev->ideal, run_e, Evidence::cap_reached};
  r.stabilization_m = run_start;
  return r;
}

struct EstimateOrderCheck {
  OrdValue lhs;  // ord_Z(τ(a^λ))
  Rational rhs;  // λ·ord_Z(a) - codim
  bool holds = false;
  bool flagged = false;
  Ideal tau;
};

// ord_Z(τ(a^λ)) > λ·ord_Z(a) - codim(Z).
inline EstimateOrderCheck check_estimate_order(const Ideal& a, const CoordinateSubvariety& Z, const ExponentLambda& lambda,
                                               const TestIdealCaps& caps = {}) {
  if (a.is_zero()) throw DomainError("estimate order: nonzero required");
  TestIdealResult t = test_ideal(a, lambda, caps);
  EstimateOrderCheck c{ord_along(t.ideal, Z), lambda.value() * Rational(Natural(*ord_along(a, Z))) - Rational(Natural(Z.codim())),
                       false, t.flagged(), t.ideal};
  c.holds = !c.lhs || Rational(Natural(*c.lhs)) > c.rhs;
  return c;
}

struct ComputeTestRow {
  std::uint64_t m;
  OrdValue ord_a, ord_b;
  bool upper_ok, lower_ok, flagged;
};

struct ComputeTestReport {
  std::optional<Rational> lower_estimate;  // a certified lower bound for ord_Z(a_•)
  std::vector<ComputeTestRow> rows;
  bool holds = true;
  bool flagged = false;
};

// With b_m = τ(a_•^m):  ord(b_m)/m <= ord(a_m)/m  and  ord(b_m)/m > L - codim/m
// for any L <= ord_Z(a_•).  L is the closed form when known, else 0.
inline ComputeTestReport check_compute_test(const GradedSequence& seq, const CoordinateSubvariety& Z, std::uint64_t m_cap,
                                            const AsymptoticCaps& caps = {}) {
  ComputeTestReport rep;
  rep.lower_estimate = seq.exact_ord(Z);
  const Rational L = rep.lower_estimate.value_or(Rational(0));
  for (std::uint64_t m = 1; m <= m_cap; m *= 2) {
    ComputeTestRow row{m, seq.ord_term(m, Z), std::nullopt, true, true, false};
    TestIdealResult b = asymptotic_test_ideal(seq, ExponentLambda(Rational(Natural(m))), caps);
    row.flagged = b.flagged();
    row.ord_b = ord_along(b.ideal, Z);
    if (row.ord_b) {
      Rational rb(Natural(*row.ord_b), Natural(m));
      if (row.ord_a) row.upper_ok = *row.ord_b <= *row.ord_a;
      row.lower_ok = rb > L - Rational(Natural(Z.codim()), Natural(m));
    } else {
      row.upper_ok = !row.ord_a;
    }
    rep.flagged |= row.flagged;
    if (!row.flagged) rep.holds &= row.upper_ok && row.lower_ok;
    rep.rows.push_back(row);
  }
  return rep;
}

struct AsymptoticPropsReport {
  bool i_holds = true;           // τ(a_•^λ) ⊆ τ(a_•^μ), λ >= μ
  bool ii_holds = true;          // τ(a_•^{mλ}) ⊆ τ(a_•^λ)^m
  bool iv_premise = false;       // c·a_k ⊆ b_k for all sampled k
  bool iv_holds = true;          // τ(a_•^λ) ⊆ τ(b_•^λ) when the premise holds
  bool flagged = false;
  std::vector<std::string> warnings;
};

// Containments i, ii and iv of the asymptotic test ideal properties.  A
// failure without any cap flag is a TheoremViolation; with flags it is
// recorded as a warning.
inline AsymptoticPropsReport check_asymptotic_props(const GradedSequence& seq, const GradedSequence& seq2, const Ideal& c,
                                                    const ExponentLambda& lambda, const ExponentLambda& mu, std::uint64_t m,
                                                    const AsymptoticCaps& caps = {}) {
  if (lambda < mu) throw DomainError("asymptotic props: need lambda >= mu");
  if (m < 1) throw DomainError("asymptotic props: m must be >= 1");
  if (c.is_zero()) throw DomainError("asymptotic props: c must be nonzero");
  AsymptoticPropsReport rep;
  auto fail = [&](bool flagged, const std::string& what) {
    if (!flagged) throw TheoremViolation(what);
    rep.warnings.push_back(what + " (cap-flagged)");
  };

  auto tl = asymptotic_test_ideal(seq, lambda, caps);
  auto tm = asymptotic_test_ideal(seq, mu, caps);
  rep.flagged |= tl.flagged() || tm.flagged();
  rep.i_holds = tm.ideal.contains(tl.ideal);
  if (!rep.i_holds) fail(tl.flagged() || tm.flagged(), "item i: tau(a^lambda) not inside tau(a^mu)");

  auto tml = asymptotic_test_ideal(seq, ExponentLambda(lambda.value() * Rational(Natural(m))), caps);
  rep.flagged |= tml.flagged();
  rep.ii_holds = ideal_power(tl.ideal, m).contains(tml.ideal);
  if (!rep.ii_holds) fail(tl.flagged() || tml.flagged(), "item ii: tau(a^{m lambda}) not inside tau(a^lambda)^m");

  rep.iv_premise = true;
  for (std::uint64_t k = 1; k <= caps.m_cap && rep.iv_premise; k *= 2)
    rep.iv_premise = seq2.term(k).contains(ideal_product(c, seq.term(k)));
  if (rep.iv_premise) {
    auto tb = asymptotic_test_ideal(seq2, lambda, caps);
    rep.flagged |= tb.flagged();
    rep.iv_holds = tb.ideal.contains(tl.ideal);
    if (!rep.iv_holds) fail(tl.flagged() || tb.flagged(), "item iv: tau(a^lambda) not inside tau(b^lambda)");
  }
  return rep;
}

struct RightConstancyProbe {
  Rational probe;  // λ' > λ with τ(a_•^{λ'}) = τ(a_•^λ), when found
  bool found = false;
};

// Tries λ + 1/p^k for k = e*, e*+1, ... where e* is the stabilization exponent.
inline RightConstancyProbe probe_right_constancy(const GradedSequence& seq, const ExponentLambda& lambda,
                                                 const AsymptoticCaps& caps = {}, unsigned tries = 6) {
  const std::uint64_t p = seq.ring()->characteristic();
  auto base = asymptotic_test_ideal(seq, lambda, caps);
  RightConstancyProbe probe;
  for (unsigned k = std::max(1u, base.stabilization_e); k < std::max(1u, base.stabilization_e) + tries; ++k) {
    Rational l2 = lambda.value() + Rational(Natural(1), pow_natural(Natural(p), k));
    if (asymptotic_test_ideal(seq, ExponentLambda(l2), caps).ideal == base.ideal) {
      probe.probe = l2;
      probe.found = true;
      return probe;
    }
  }
  return probe;
}

}  // namespace ftest
