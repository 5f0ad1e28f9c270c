#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ftest/frobenius/root.hpp"

namespace ftest {

enum class Evidence { closed_form, window_stable, cap_reached };

inline std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::closed_form: return "closed-form";
    case Evidence::window_stable: return "window-stable";
    case Evidence::cap_reached: return "cap-reached";
  }
  return "?";
}

struct TestIdealCaps {
  unsigned e_max_monomial = 10;
  unsigned e_max_general = 5;
  unsigned e_min = 1;   // first chain step that counts toward the window
  unsigned window = 2;  // consecutive equalities required to stop
  PowerOptions power{};
  // Replace a monomial ideal by the monomials at the vertices of its Newton
  // polyhedron; τ(a^λ) depends only on the integral closure of a.
  bool newton_reduce = false;
};

struct TestIdealResult {
  Ideal ideal;
  unsigned stabilization_e = 0;  // first e at which `ideal` was attained
  Evidence evidence = Evidence::window_stable;
  std::uint64_t stabilization_m = 0;  // asymptotic chains: first index m attaining `ideal`

  bool flagged() const noexcept { return evidence == Evidence::cap_reached; }
};

struct PowerFactor {
  Ideal ideal;
  Natural exponent;
};

namespace detail {

// x^m · Π a_i^{k_i}
struct PowerState {
  Monomial offset;
  std::vector<Natural> k;
};

inline bool dominates(const PowerState& a, const PowerState& b) {
  if (!a.offset.divides(b.offset)) return false;
  for (std::size_t i = 0; i < a.k.size(); ++i)
    if (a.k[i] > b.k[i]) return false;
  return true;
}

inline std::vector<PowerState> prune_states(std::vector<PowerState> v) {
  std::sort(v.begin(), v.end(), [](const PowerState& a, const PowerState& b) {
    if (a.offset.degree() != b.offset.degree()) return a.offset.degree() < b.offset.degree();
    return a.k < b.k;
  });
  std::vector<PowerState> kept;
  for (auto& s : v) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](const PowerState& k) { return dominates(k, s); });
    if (!dominated) {
      std::erase_if(kept, [&](const PowerState& k) { return dominates(s, k); });
      kept.push_back(std::move(s));
    }
  }
  return kept;
}

// One p-th root of x^m Π a_i^{k_i}.  Writing each multiplicity as
// c = p·d + r with 0 <= r < p,
//   (x^m Π a_i^{k_i})^{[1/p]} = Σ_r x^{⌊(m + Σ G_i r_i)/p⌋} Π a_i^{(k_i - |r_i|)/p}
// over r_i with |r_i| ≡ k_i (mod p) and |r_i| <= k_i.
inline void expand_state(const PowerState& st, const std::vector<std::vector<Monomial>>& gens, std::uint64_t p,
                         std::vector<PowerState>& out, std::size_t cap) {
  struct Partial {
    Monomial s;
    std::vector<Natural> k;
  };
  std::vector<Partial> partials{{st.offset, {}}};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Natural& ki = st.k[i];
    std::vector<Partial> next;
    for (const auto& part : partials) {
      if (ki == 0) {
        next.push_back(part);
        next.back().k.push_back(0);
        continue;
      }
      // t = |r_i| so far → antichain of offsets
      std::map<std::uint64_t, std::vector<Monomial>> layer{{0, {part.s}}};
      for (const auto& g : gens[i]) {
        std::map<std::uint64_t, std::vector<Monomial>> grown;
        for (const auto& [t, offs] : layer)
          for (std::uint64_t c = 0; c < p && ki >= t + c; ++c) {
            Monomial gc = g.pow(c);
            auto& dst = grown[t + c];
            for (const auto& o : offs) dst.push_back(o * gc);
          }
        for (auto& [t, offs] : grown) {
          offs = staircase::minimalize(std::move(offs));
          if (offs.size() > cap) throw ResourceError("Frobenius root state space exceeds the generator cap");
        }
        layer = std::move(grown);
      }
      for (auto& [t, offs] : layer) {
        Natural rest = ki - t;
        if (rest % p != 0) continue;
        Natural knew = rest / p;
        for (auto& o : offs) {
          Partial q{std::move(o), part.k};
          q.k.push_back(knew);
          next.push_back(std::move(q));
        }
      }
    }
    partials = std::move(next);
    if (partials.size() > cap) throw ResourceError("Frobenius root state space exceeds the generator cap");
  }
  for (auto& part : partials) out.push_back({part.s.floor_div(p), std::move(part.k)});
}

// (Π a_i^{N_i})^{[1/p^e]} for monomial a_i without expanding the powers.
inline Ideal monomial_root_of_powers(const std::vector<PowerFactor>& factors, const FrobeniusContext& ctx,
                                     const PowerOptions& opts) {
  const RingPtr ring = factors.front().ideal.ring();
  const std::size_t n = ring->nvars();
  std::vector<std::vector<Monomial>> gens;
  PowerState start{Monomial(n), {}};
  for (const auto& f : factors) {
    const auto& g = f.ideal.monomial_generators();
    if (staircase::member(g, Monomial(n))) continue;  // unit factor
    gens.push_back(g);
    start.k.push_back(f.exponent);
  }
  std::vector<PowerState> states{std::move(start)};
  for (unsigned level = 0; level < ctx.e(); ++level) {
    std::vector<PowerState> next;
    for (const auto& st : states) expand_state(st, gens, ctx.p(), next, opts.generator_cap);
    states = prune_states(std::move(next));
    if (states.size() > opts.generator_cap) throw ResourceError("Frobenius root state space exceeds the generator cap");
  }
  std::vector<std::map<Natural, std::vector<Monomial>>> powers(gens.size());
  auto power_of = [&](std::size_t i, const Natural& k) -> const std::vector<Monomial>& {
    auto it = powers[i].find(k);
    if (it == powers[i].end())
      it = powers[i].emplace(k, staircase::power(gens[i], to_u64(k, "power"), n, opts.generator_cap)).first;
    return it->second;
  };
  std::vector<Monomial> all;
  for (const auto& st : states) {
    std::vector<Monomial> acc{st.offset};
    for (std::size_t i = 0; i < gens.size(); ++i) acc = staircase::product(acc, power_of(i, st.k[i]), opts.generator_cap);
    all.insert(all.end(), acc.begin(), acc.end());
  }
  all = staircase::minimalize(std::move(all));
  if (all.size() > opts.generator_cap) throw ResourceError("monomial ideal exceeds the generator cap");
  return Ideal::from_monomials(ring, std::move(all));
}

}  // namespace detail

// (Π a_i^{N_i})^{[1/q]}.
//
// Monomial factors go through the digit recursion above.  For general
// ideals with r generators and N >= r(q-1)+1, some generator occurs with
// multiplicity >= q in every N-fold product, so a^N = a^{[q]}·a^{N-q} and
// (a^{[q]}·X)^{[1/q]} = a·X^{[1/q]}; exponents are reduced this way before
// anything is expanded.
inline Ideal root_of_power_product(std::vector<PowerFactor> factors, const FrobeniusContext& ctx,
                                   const PowerOptions& opts = {}) {
  if (factors.empty()) throw StructuralError("empty power product");
  const RingPtr ring = factors.front().ideal.ring();
  for (const auto& f : factors) {
    require_same_ring(ring, f.ideal.ring());
    if (f.ideal.is_zero()) throw DomainError("Frobenius root: nonzero required");
  }
  if (std::all_of(factors.begin(), factors.end(), [](const PowerFactor& f) { return f.ideal.is_monomial(); }))
    return detail::monomial_root_of_powers(factors, ctx, opts);
  const Natural& q = ctx.q();
  std::vector<std::uint64_t> pulled(factors.size(), 0);
  if (ctx.e() > 0) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      auto& f = factors[i];
      Natural r(f.ideal.generators().size());
      Natural threshold = r * (q - 1) + 1;
      if (f.exponent >= threshold) {
        Natural k = (f.exponent - threshold) / q + 1;
        pulled[i] = to_u64(k, "pulled exponent");
        f.exponent -= k * q;
      }
    }
  }
  Ideal prod = Ideal::unit(ring);
  for (const auto& f : factors) prod = ideal_product(prod, ideal_power(f.ideal, to_u64(f.exponent, "power"), opts), opts);
  Ideal root = frobenius_root(prod, ctx);
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (pulled[i]) root = ideal_product(root, ideal_power(factors[i].ideal, pulled[i], opts), opts);
  return root;
}

namespace detail {

// Runs an ascending chain J_1 ⊆ J_2 ⊆ ... and stops after `window`
// consecutive equalities.  A resource abort after the first step reports
// the last ideal as a lower bound.
template <class Step>
TestIdealResult stabilize_chain(Step&& step, unsigned first, unsigned last, unsigned window, const char* what) {
  std::optional<Ideal> prev;
  unsigned run = 0, run_start = first;
  for (unsigned e = first; e <= last; ++e) {
    std::optional<Ideal> cur;
    try {
      cur = step(e);
    } catch (const ResourceError&) {
      if (!prev) throw;
      return {*prev, run_start, Evidence::cap_reached};
    }
    if (prev) {
      if (!cur->contains(*prev))
        throw TheoremViolation(std::string(what) + ": chain is not ascending at step " + std::to_string(e));
      if (prev->contains(*cur)) {
        if (++run >= window) return {*cur, run_start, Evidence::window_stable};
      } else {
        run = 0;
        run_start = e;
      }
    } else {
      run_start = e;
    }
    prev = std::move(cur);
  }
  if (!prev) throw StructuralError(std::string(what) + ": empty chain");
  return {*prev, run_start, Evidence::cap_reached};
}

inline bool all_monomial(std::initializer_list<const Ideal*> ideals) {
  for (auto* a : ideals)
    if (!a->is_monomial()) return false;
  return true;
}

}  // namespace detail

// τ(a^λ) as the stable member of (a^{⌈λp^e⌉})^{[1/p^e]}, e = 1, 2, ...
inline TestIdealResult test_ideal(const Ideal& a, const ExponentLambda& lambda, const TestIdealCaps& caps = {}) {
  if (a.is_zero()) throw DomainError("test ideal: nonzero required");
  const RingPtr& ring = a.ring();
  const std::uint64_t p = ring->characteristic();

  // Principal monomial x^v: J_e = x^{⌊⌈λq⌉ v / q⌋} → x^{⌊λ v⌋}.
  if (a.is_monomial() && a.monomial_generators().size() == 1) {
    const Monomial& v = a.monomial_generators().front();
    auto at = [&](const Natural& N, const Natural& q) {
      std::vector<Monomial::Exponent> w(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) w[i] = to_u64(floor_div(N * v[i], q), "exponent");
      return Monomial(std::move(w));
    };
    std::vector<Monomial::Exponent> lim(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) lim[i] = to_u64(floor_of(lambda.value() * Rational(Natural(v[i]))), "exponent");
    const Monomial target(std::move(lim));
    for (unsigned e = 1;; ++e) {
      Natural q = pow_natural(Natural(p), e);
      Monomial cur = at(lambda.ceil_times(q), q);
      if (cur == target) return {Ideal::from_monomials(ring, {target}), e, Evidence::closed_form};
      if (!target.divides(cur) || e > 256) throw TheoremViolation("principal monomial chain does not approach x^{floor(lambda v)}");
    }
  }

  const unsigned e_max = a.is_monomial() ? caps.e_max_monomial : caps.e_max_general;
  const Ideal base = caps.newton_reduce && a.is_monomial()
                         ? Ideal::from_monomials(ring, staircase::newton_vertices(a.monomial_generators()))
                         : a;
  auto step = [&](unsigned e) {
    FrobeniusContext ctx(p, e);
    return root_of_power_product({{base, lambda.ceil_times(ctx.q())}}, ctx, caps.power);
  };
  return detail::stabilize_chain(step, std::max(1u, caps.e_min), e_max, caps.window, "test ideal");
}

// τ(a^λ b^μ) as the stable member of (a^{⌈λq⌉} b^{⌈μq⌉})^{[1/q]}.
inline TestIdealResult mixed_test_ideal(const Ideal& a, const ExponentLambda& lambda, const Ideal& b,
                                        const ExponentLambda& mu, const TestIdealCaps& caps = {}) {
  if (a.is_zero() || b.is_zero()) throw DomainError("mixed test ideal: nonzero required");
  require_same_ring(a.ring(), b.ring());
  const std::uint64_t p = a.ring()->characteristic();
  const unsigned e_max = detail::all_monomial({&a, &b}) ? caps.e_max_monomial : caps.e_max_general;
  auto step = [&](unsigned e) {
    FrobeniusContext ctx(p, e);
    return root_of_power_product({{a, lambda.ceil_times(ctx.q())}, {b, mu.ceil_times(ctx.q())}}, ctx, caps.power);
  };
  return detail::stabilize_chain(step, std::max(1u, caps.e_min), e_max, caps.window, "mixed test ideal");
}

}  // namespace ftest
