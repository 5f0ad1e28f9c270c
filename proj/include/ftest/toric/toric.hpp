#pragma once

// Asymptotic invariants of toric divisors: σ_Z, stable base loci, chart test
// ideals τ(λ·‖D‖) and τ_+(λ·‖D‖), and the non-nef locus with its three
// independent membership tests.

#include "ftest/asymptotic/asymptotic.hpp"
#include "ftest/toric/divisor.hpp"

namespace ftest::toric {

struct SigmaOptions {
  unsigned k_max = 24;  // deepest ε = 1/2^k
};

struct SigmaResult {
  Rational value;
  std::vector<std::pair<Rational, Rational>> samples;  // (ε, ord_Z(‖D+εA‖))
  Evidence evidence = Evidence::window_stable;
};

// σ_Z(D) = lim_{ε→0} ord_Z(‖D+εA‖), extrapolated from four collinear samples.
inline SigmaResult sigma(const Fan& X, const Divisor& d, const InvariantSubvariety& z, const Divisor& ample,
                         const SigmaOptions& opts = {}) {
  if (!is_pseudo_effective(X, d, ample)) throw DomainError("sigma: divisor is not pseudo-effective (B_- = X)");
  SigmaResult r;
  Rational eps = Rational(1, 2);
  for (unsigned k = 1; k <= opts.k_max; ++k, eps /= 2) {
    r.samples.emplace_back(eps, asymptotic_ord_toric(X, d + eps * ample, z));
    const std::size_t n = r.samples.size();
    if (n < 2) continue;
    const auto& [e1, f1] = r.samples[n - 2];
    const auto& [e0, f0] = r.samples[n - 1];
    const Rational slope = (f1 - f0) / (e1 - e0);
    r.value = f0 - e0 * slope;
    if (n < 4) continue;
    bool collinear = true;
    for (std::size_t i = n - 3; i < n - 1; ++i) {
      const auto& [ea, fa] = r.samples[i - 1];
      const auto& [eb, fb] = r.samples[i];
      if ((fa - fb) / (ea - eb) != slope) collinear = false;
    }
    if (collinear) return r;
  }
  r.evidence = Evidence::cap_reached;
  return r;
}

inline SigmaResult sigma(const Fan& X, const Divisor& d, const InvariantSubvariety& z) {
  return sigma(X, d, z, default_ample(X));
}

struct BaseLocusOptions {
  std::uint64_t m_cap = 4096;
  unsigned window = 2;
};

// A set of invariant subvarieties, or all of X.
struct Locus {
  bool whole = false;
  std::vector<InvariantSubvariety> members;
  friend bool operator==(const Locus&, const Locus&) = default;
};

inline std::string to_string(const Locus& l) {
  if (l.whole) return "X";
  std::string s = "{";
  for (std::size_t i = 0; i < l.members.size(); ++i) s += (i ? ", " : "") + to_string(l.members[i]);
  return s + "}";
}

struct BaseLocus {
  Locus locus;
  std::uint64_t m_stable = 0;
  Evidence evidence = Evidence::window_stable;
};

// Bs(mD) among invariant subvarieties for every maximal chart.
inline Locus base_locus_at(const Fan& X, const Divisor& d, std::uint64_t m) {
  const auto c = detail::scaled(d, m, true);
  std::vector<std::vector<Monomial>> gens;
  for (std::size_t k = 0; k < X.max_cones().size(); ++k) gens.push_back(chart_generators(X, c, k));
  Locus l;
  if (gens.front().empty()) {
    l.whole = true;
    return l;
  }
  for (const auto& z : X.subvarieties()) {
    const std::size_t k = X.chart_of(z);
    const CoordinateSubvariety cz = chart_subvariety(X, k, z);
    const bool in = std::none_of(gens[k].begin(), gens[k].end(), [&](const Monomial& g) { return ord_along(g, cz) == 0; });
    if (in) l.members.push_back(z);
  }
  return l;
}

// B(D) = Bs(mD) for m divisible enough, along m = r, 2r, 4r, ... with r the
// least m making mD integral.
inline BaseLocus stable_base_locus(const Fan& X, const Divisor& d, const BaseLocusOptions& opts = {}) {
  X.check_divisor(d);
  const std::uint64_t r = denominator_lcm(d);
  if (r > opts.m_cap) throw ResourceError("stable base locus: denominator exceeds m_cap");
  std::optional<Locus> prev;
  unsigned run = 0;
  std::uint64_t run_start = r;
  BaseLocus out;
  for (std::uint64_t m = r; m <= opts.m_cap; m *= 2) {
    Locus cur = base_locus_at(X, d, m);
    if (prev && *prev == cur) {
      if (++run >= opts.window) return {cur, run_start, Evidence::window_stable};
    } else {
      run = 0;
      run_start = m;
    }
    prev = std::move(cur);
  }
  return {*prev, run_start, Evidence::cap_reached};
}

// The graded sequence (a_{|⌊mD⌋|})_m restricted to a maximal chart.
inline GradedSequence toric_sequence(const Fan& X, const Divisor& d, std::size_t chart, std::uint64_t p = 2) {
  X.check_divisor(d);
  if (chart >= X.max_cones().size()) throw DomainError("chart index out of range");
  RingPtr ring = chart_ring(X, chart, p);
  auto rule = [X, d, chart, ring](std::uint64_t m) {
    return Ideal::from_monomials(ring, chart_generators(X, detail::scaled(d, m, false), chart));
  };
  auto exact = [X, d, chart](const CoordinateSubvariety& cz) -> std::optional<Rational> {
    if (!is_q_effective(X, d)) return std::nullopt;
    InvariantSubvariety z;
    for (auto j : cz.variables()) z.cone.push_back(X.max_cones()[chart][j]);
    std::sort(z.cone.begin(), z.cone.end());
    return asymptotic_ord_toric(X, d, z);
  };
  std::string label = "toric";
  if (!X.name().empty()) label += ":" + X.name();
  return GradedSequence::rule(ring, rule, label, exact, false);
}

// τ(λ·‖D‖) on a chart, through the chain m = r, 2r, 4r, ... where mD is integral.
inline TestIdealResult tau_toric(const Fan& X, const Divisor& d, const ExponentLambda& lambda, std::size_t chart,
                                 std::uint64_t p = 2, AsymptoticCaps caps = {}) {
  if (!is_q_effective(X, d)) throw DomainError("tau: |mD| is empty for every m");
  const GradedSequence seq = toric_sequence(X, d, chart, p);
  const std::uint64_t r = denominator_lcm(d);
  caps.m_start = checked_mul(r, std::max<std::uint64_t>(1, caps.m_start));
  caps.m_cap = checked_mul(r, caps.m_cap);
  caps.inner.newton_reduce = true;
  return asymptotic_test_ideal(seq, lambda, caps);
}

struct TauPlusOptions {
  unsigned k_max = 10;  // deepest ε = 1/2^k
  unsigned window = 1;  // consecutive equal ideals required
};

struct TauPlusResult {
  TestIdealResult result;
  unsigned k_stable = 0;  // ε = 1/2^k_stable first attained the ideal
  std::vector<TestIdealResult> chain;
};

// τ_+(λ·‖D‖) as the stable value of τ(λ·‖D + A/2^k‖).
inline TauPlusResult tau_plus_toric(const Fan& X, const Divisor& d, const ExponentLambda& lambda, std::size_t chart,
                                    const Divisor& ample, std::uint64_t p = 2, const AsymptoticCaps& caps = {},
                                    const TauPlusOptions& opts = {}) {
  if (!is_pseudo_effective(X, d, ample)) throw DomainError("tau_plus: divisor is not pseudo-effective");
  std::vector<TestIdealResult> chain;
  unsigned k_stable = 0;
  bool flagged = false;
  unsigned run = 0;
  Rational eps = Rational(1, 2);
  for (unsigned k = 1; k <= opts.k_max; ++k, eps /= 2) {
    TestIdealResult cur = tau_toric(X, d + eps * ample, lambda, chart, p, caps);
    flagged |= cur.flagged();
    if (!chain.empty()) {
      const Ideal& prev = chain.back().ideal;
      if (!prev.contains(cur.ideal) && !cur.flagged() && !chain.back().flagged())
        throw TheoremViolation("tau_plus: tau(lambda ||D + eps A||) grew as eps decreased");
      if (prev == cur.ideal) {
        ++run;
      } else {
        run = 0;
        k_stable = k;
      }
    } else {
      k_stable = k;
    }
    chain.push_back(cur);
    if (run >= opts.window) {
      if (flagged) cur.evidence = Evidence::cap_reached;
      return {cur, k_stable, std::move(chain)};
    }
  }
  TestIdealResult last = chain.back();
  last.evidence = Evidence::cap_reached;
  return {last, k_stable, std::move(chain)};
}

inline TauPlusResult tau_plus_toric(const Fan& X, const Divisor& d, const ExponentLambda& lambda, std::size_t chart,
                                    std::uint64_t p = 2) {
  return tau_plus_toric(X, d, lambda, chart, default_ample(X), p);
}

enum class NefStatus { nef, pseudo_effective_not_nef, not_pseudo_effective };

inline std::string to_string(NefStatus s) {
  switch (s) {
    case NefStatus::nef: return "nef";
    case NefStatus::pseudo_effective_not_nef: return "pseudo-effective-not-nef";
    case NefStatus::not_pseudo_effective: return "not-pseudo-effective";
  }
  return "?";
}

struct MethodVerdict {
  std::string method;
  Locus locus;
  bool flagged = false;  // some underlying computation reached a cap
};

struct NonNefOptions {
  std::uint64_t p = 2;
  std::uint64_t m_cap = 4;  // levels m for the test-ideal method
  std::vector<Rational> eps_grid{Rational(1, 8), Rational(1, 16)};
  std::optional<Divisor> ample;
  SigmaOptions sigma{};
  AsymptoticCaps tau{};
  TauPlusOptions tau_plus{};
  BaseLocusOptions base_locus{};
  bool enforce = true;  // throw TheoremViolation on any inconsistency
};

struct NonNefReport {
  Divisor divisor;
  Divisor ample;
  NefStatus status = NefStatus::nef;
  std::vector<std::pair<InvariantSubvariety, Rational>> positive_sigma;
  std::vector<MethodVerdict> cross_checks;  // lp-order, tau-vanishing, perturbed-base-locus
  std::size_t codim1_count = 0;
  std::size_t picard_number = 0;
  bool methods_agree = true;
  std::vector<std::string> violations;

  Locus non_nef_locus() const {
    Locus l;
    l.whole = status == NefStatus::not_pseudo_effective;
    if (!l.whole)
      for (const auto& [z, s] : positive_sigma) l.members.push_back(z);
    return l;
  }
};

// B_-(D) among invariant subvarieties, decided three ways: σ_Z(D) > 0;
// vanishing along Z of τ(m·‖D‖) (big D) or τ_+(m·‖D‖) for some m <= m_cap;
// Z ⊆ B(D + εA) for some ε in the grid.
inline NonNefReport non_nef_locus(const Fan& X, const Divisor& d, const NonNefOptions& opts = {}) {
  X.check_divisor(d);
  NonNefReport rep;
  rep.divisor = d;
  rep.ample = opts.ample ? *opts.ample : default_ample(X);
  rep.picard_number = X.picard_number();
  const auto subs = X.subvarieties();
  const bool nef = is_nef(X, d);
  const bool psef = is_pseudo_effective(X, d, rep.ample);
  rep.status = nef ? NefStatus::nef : psef ? NefStatus::pseudo_effective_not_nef : NefStatus::not_pseudo_effective;

  MethodVerdict lp_method{"lp-order", {}, false};
  MethodVerdict tau_method{"tau-vanishing", {}, false};
  MethodVerdict sbl_method{"perturbed-base-locus", {}, false};

  if (!psef) {
    lp_method.locus.whole = true;
    tau_method.locus.whole = true;
  } else {
    for (const auto& z : subs) {
      const SigmaResult s = sigma(X, d, z, rep.ample, opts.sigma);
      lp_method.flagged |= s.evidence == Evidence::cap_reached;
      if (s.value > 0) {
        rep.positive_sigma.emplace_back(z, s.value);
        lp_method.locus.members.push_back(z);
      }
    }
    const bool big = is_big(X, d);
    std::set<InvariantSubvariety> vanish;
    for (std::uint64_t m = 1; m <= opts.m_cap; ++m) {
      const ExponentLambda lambda{Rational(Natural(m))};
      std::vector<Ideal> taus;
      for (std::size_t k = 0; k < X.max_cones().size(); ++k) {
        TestIdealResult t = big ? tau_toric(X, d, lambda, k, opts.p, opts.tau)
                                : tau_plus_toric(X, d, lambda, k, rep.ample, opts.p, opts.tau, opts.tau_plus).result;
        tau_method.flagged |= t.flagged();
        taus.push_back(std::move(t.ideal));
      }
      for (const auto& z : subs) {
        std::optional<bool> verdict;
        for (std::size_t k = 0; k < X.max_cones().size(); ++k) {
          if (!chart_contains(X, k, z)) continue;
          const OrdValue o = ord_along(taus[k], chart_subvariety(X, k, z));
          const bool v = !o || *o > 0;
          if (verdict && *verdict != v) {
            const std::string msg = "chart test ideals disagree along " + to_string(z) + " at m = " + std::to_string(m);
            if (opts.enforce) throw TheoremViolation(msg);
            rep.violations.push_back(msg);
          }
          verdict = verdict.value_or(false) || v;
        }
        if (*verdict) vanish.insert(z);
      }
    }
    tau_method.locus.members.assign(vanish.begin(), vanish.end());
  }

  std::set<InvariantSubvariety> in_base;
  for (const auto& eps : opts.eps_grid) {
    const BaseLocus b = stable_base_locus(X, d + eps * rep.ample, opts.base_locus);
    sbl_method.flagged |= b.evidence == Evidence::cap_reached;
    if (b.locus.whole) sbl_method.locus.whole = true;
    in_base.insert(b.locus.members.begin(), b.locus.members.end());
  }
  if (!sbl_method.locus.whole) sbl_method.locus.members.assign(in_base.begin(), in_base.end());

  rep.cross_checks = {lp_method, tau_method, sbl_method};
  for (const auto& m : rep.cross_checks)
    if (!(m.locus == lp_method.locus)) {
      rep.methods_agree = false;
      rep.violations.push_back("non-nef locus methods disagree: lp-order " + to_string(lp_method.locus) + ", " + m.method +
                               " " + to_string(m.locus));
    }
  if (nef != rep.positive_sigma.empty() && psef) rep.violations.push_back("nef status and positive sigma disagree");
  for (const auto& [z, s] : rep.positive_sigma) rep.codim1_count += z.codim() == 1;
  if (rep.codim1_count > rep.picard_number)
    rep.violations.push_back("non-nef locus has more divisorial components than the Picard number");
  if (opts.enforce && !rep.violations.empty()) throw TheoremViolation(rep.violations.front());
  return rep;
}

}  // namespace ftest::toric
