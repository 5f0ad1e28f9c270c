#pragma once

// Seeded property suites over random instances.  Each suite counts checked
// cases, cap-flagged cases (excluded from the verdict) and violations, and
// keeps the first violation after greedy minimization.

#include <chrono>
#include <functional>
#include <json.hpp>
#include <random>

#include "ftest/asymptotic/asymptotic.hpp"
#include "ftest/core/ideal_text.hpp"
#include "ftest/frobenius/ceil_split.hpp"
#include "ftest/frobenius/test_ideal.hpp"
#include "ftest/toric/io.hpp"
#include "ftest/toric/toric.hpp"

namespace ftest::verify {

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t checked = 0;
  std::size_t flagged = 0;
  std::size_t violations = 0;
  std::optional<nlohmann::json> counterexample;
  double seconds = 0;
  bool passed() const noexcept { return violations == 0; }
};

inline nlohmann::json to_json(const SuiteResult& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["budget"] = r.budget;
  j["checked"] = r.checked;
  j["flagged"] = r.flagged;
  j["violations"] = r.violations;
  j["passed"] = r.passed();
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  return j;
}

inline std::vector<std::string> suite_names() {
  return {"subadditivity", "estimate-order", "asymptotic-props", "toric-equivalences", "picard-bound", "ceil-identity"};
}

inline std::size_t default_budget(const std::string& suite) {
  if (suite == "ceil-identity") return 10000;
  if (suite == "asymptotic-props") return 20;
  if (suite == "toric-equivalences" || suite == "picard-bound") return 300;
  return 200;
}

// Monomial ideal in `ring` with 1..max_gens generators of degree 1..max_degree.
inline Ideal random_monomial_ideal(std::mt19937_64& rng, const RingPtr& ring, int max_gens, int max_degree) {
  const int n = static_cast<int>(ring->nvars());
  std::uniform_int_distribution<int> ngen(1, max_gens), deg(1, max_degree), var(0, n - 1);
  std::vector<Monomial> gens;
  const int k = ngen(rng);
  for (int i = 0; i < k; ++i) {
    std::vector<Monomial::Exponent> e(n, 0);
    const int d = deg(rng);
    for (int j = 0; j < d; ++j) ++e[var(rng)];
    gens.emplace_back(std::move(e));
  }
  return Ideal::from_monomials(ring, std::move(gens));
}

// As above in a ring of 1..max_vars variables x, y, z, w.
inline Ideal random_monomial_ideal(std::mt19937_64& rng, std::uint64_t p, int max_vars, int max_gens, int max_degree) {
  static const std::vector<std::string> names{"x", "y", "z", "w"};
  const int n = std::uniform_int_distribution<int>(1, max_vars)(rng);
  return random_monomial_ideal(rng, make_ring(p, std::vector<std::string>(names.begin(), names.begin() + n)), max_gens,
                               max_degree);
}

namespace detail {

// Smaller variants of a monomial ideal: one generator dropped, or one
// exponent lowered.
inline std::vector<Ideal> shrink(const Ideal& a) {
  std::vector<Ideal> out;
  const auto& g = a.monomial_generators();
  for (std::size_t i = 0; i < g.size() && g.size() > 1; ++i) {
    std::vector<Monomial> h;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (j != i) h.push_back(g[j]);
    out.push_back(Ideal::from_monomials(a.ring(), h));
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t v = 0; v < g[i].size(); ++v) {
      if (g[i][v] == 0 || g[i].degree() == 1) continue;
      std::vector<Monomial> h = g;
      std::vector<Monomial::Exponent> e = h[i].exponents();
      --e[v];
      h[i] = Monomial(e);
      out.push_back(Ideal::from_monomials(a.ring(), h));
    }
  return out;
}

// Greedy descent over `shrink` while `fails` keeps holding.
inline std::vector<Ideal> minimize(std::vector<Ideal> args, const std::function<bool(const std::vector<Ideal>&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < args.size() && !progress; ++i)
      for (const auto& smaller : shrink(args[i])) {
        auto trial = args;
        trial[i] = smaller;
        bool f = false;
        try {
          f = fails(trial);
        } catch (const ResourceError&) {
        }
        if (f) {
          args = std::move(trial);
          progress = true;
          break;
        }
      }
  }
  return args;
}

template <class F>
SuiteResult timed(const std::string& name, std::uint64_t seed, std::size_t budget, F&& body) {
  SuiteResult r;
  r.suite = name;
  r.seed = seed;
  r.budget = budget;
  const auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline const std::vector<Rational>& subadditivity_lambdas() {
  static const std::vector<Rational> l{Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
  return l;
}

}  // namespace detail

// τ((ab)^λ) ⊆ τ(a^λ)·τ(b^λ) and τ(a^{2λ}) ⊆ τ(a^λ)^2.
inline SuiteResult subadditivity(std::uint64_t seed, std::size_t budget, const TestIdealCaps& caps = {}) {
  return detail::timed("subadditivity", seed, budget, [&](SuiteResult& r) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < budget; ++i) {
      const std::uint64_t p = (i % 2) ? 3 : 2;
      const Ideal a = random_monomial_ideal(rng, p, 3, 4, 6);
      const Ideal b = random_monomial_ideal(rng, a.ring(), 4, 6);
      for (const auto& lam : detail::subadditivity_lambdas()) {
        // returns 0 ok, 1 violation, 2 flagged
        auto check = [&](const std::vector<Ideal>& ab) {
          const auto ta = test_ideal(ab[0], lam, caps), tb = test_ideal(ab[1], lam, caps);
          const auto tab = test_ideal(ideal_product(ab[0], ab[1]), lam, caps);
          const auto t2 = test_ideal(ab[0], ExponentLambda(Rational(2) * lam), caps);
          if (ta.flagged() || tb.flagged() || tab.flagged() || t2.flagged()) return 2;
          const bool ok1 = ideal_product(ta.ideal, tb.ideal).contains(tab.ideal);
          const bool ok2 = ideal_power(ta.ideal, 2).contains(t2.ideal);
          return ok1 && ok2 ? 0 : 1;
        };
        int v = 2;
        try {
          v = check({a, b});
        } catch (const ResourceError&) {
        }
        if (v == 2) {
          ++r.flagged;
          continue;
        }
        ++r.checked;
        if (v == 1) {
          ++r.violations;
          if (!r.counterexample) {
            auto m = detail::minimize({a, b}, [&](const std::vector<Ideal>& t) { return check(t) == 1; });
            r.counterexample = nlohmann::json{{"a", print_ideal(m[0])}, {"b", print_ideal(m[1])}, {"lambda", to_string(lam)}};
          }
        }
      }
    }
  });
}

// ord_Z(τ(a^λ)) > λ·ord_Z(a) − codim Z for Z the origin and each hyperplane.
inline SuiteResult estimate_order(std::uint64_t seed, std::size_t budget, const TestIdealCaps& caps = {}) {
  return detail::timed("estimate-order", seed, budget, [&](SuiteResult& r) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(1, 12);
    for (std::size_t i = 0; i < budget; ++i) {
      const std::uint64_t p = (i % 2) ? 3 : 2;
      const Ideal a = random_monomial_ideal(rng, p, 3, 4, 6);
      const Rational lam(num(rng), 4);
      const std::size_t n = a.ring()->nvars();
      std::vector<CoordinateSubvariety> zs{CoordinateSubvariety::origin(n)};
      for (std::size_t v = 0; v < n && n > 1; ++v) zs.push_back(CoordinateSubvariety::hyperplane(n, v));
      for (const auto& z : zs) {
        std::optional<EstimateOrderCheck> oc;
        try {
          oc = check_estimate_order(a, z, lam, caps);
        } catch (const ResourceError&) {
          ++r.flagged;
          continue;
        }
        const EstimateOrderCheck& c = *oc;
        if (c.flagged) {
          ++r.flagged;
          continue;
        }
        ++r.checked;
        if (!c.holds) {
          ++r.violations;
          if (!r.counterexample) {
            auto m = detail::minimize({a}, [&](const std::vector<Ideal>& t) {
              auto cc = check_estimate_order(t[0], z, lam, caps);
              return !cc.flagged && !cc.holds;
            });
            std::vector<std::string> vars;
            for (auto v : z.variables()) vars.push_back(a.ring()->variables()[v]);
            r.counterexample = nlohmann::json{{"a", print_ideal(m[0])}, {"lambda", to_string(lam)}, {"Z", vars}};
          }
        }
      }
    }
  });
}

// Containments of asymptotic test ideals on power and table sequences.
inline SuiteResult asymptotic_props(std::uint64_t seed, std::size_t budget, const AsymptoticCaps& caps = {}) {
  return detail::timed("asymptotic-props", seed, budget, [&](SuiteResult& r) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(1, 8), mm(1, 3);
    for (std::size_t i = 0; i < budget; ++i) {
      const std::uint64_t p = (i % 2) ? 3 : 2;
      const Ideal a = random_monomial_ideal(rng, p, 2, 3, 4);
      // b ⊇ a, so c = (1) satisfies the premise c·a_k ⊆ b_k
      std::vector<Monomial> extra = a.monomial_generators();
      extra.push_back(Monomial::variable(a.ring()->nvars(), 0).pow(1 + num(rng) % 3));
      const Ideal b = Ideal::from_monomials(a.ring(), extra);
      Rational lam(num(rng), 2), mu(num(rng), 2);
      if (lam < mu) std::swap(lam, mu);
      const std::uint64_t m = static_cast<std::uint64_t>(mm(rng));
      const bool table = i % 3 == 2;
      const GradedSequence s1 = table ? GradedSequence::table({{1, a}, {2, ideal_product(a, ideal_sum(a, b))}})
                                      : GradedSequence::power(a);
      const GradedSequence s2 = table ? GradedSequence::table({{1, b}, {2, ideal_power(b, 2)}}) : GradedSequence::power(b);
      try {
        const auto rep = check_asymptotic_props(s1, s2, Ideal::unit(a.ring()), lam, mu, m, caps);
        if (rep.flagged) {
          ++r.flagged;
          continue;
        }
        ++r.checked;
        if (!(rep.i_holds && rep.ii_holds && rep.iv_holds)) throw TheoremViolation("asymptotic containment failed");
      } catch (const ResourceError&) {
        ++r.flagged;
      } catch (const TheoremViolation& e) {
        ++r.checked;
        ++r.violations;
        if (!r.counterexample)
          r.counterexample = nlohmann::json{{"a", print_ideal(a)},        {"b", print_ideal(b)},
                                            {"lambda", to_string(lam)},  {"mu", to_string(mu)},
                                            {"m", m},                    {"table", table},
                                            {"message", std::string(e.what())}};
      }
    }
  });
}

// Every divisor with coefficients in [lo, hi], sampled evenly down to `cap`.
inline std::vector<toric::Divisor> divisor_sample(std::size_t nrays, long long lo, long long hi, std::size_t cap) {
  const std::size_t base = static_cast<std::size_t>(hi - lo + 1);
  std::size_t total = 1;
  for (std::size_t i = 0; i < nrays; ++i) total *= base;
  const std::size_t count = std::min(cap, total);
  std::vector<toric::Divisor> out;
  for (std::size_t j = 0; j < count; ++j) {
    std::size_t idx = j * total / count;
    toric::Divisor d;
    for (std::size_t i = 0; i < nrays; ++i) {
      d.emplace_back(static_cast<long long>(idx % base) + lo);
      idx /= base;
    }
    out.push_back(std::move(d));
  }
  return out;
}

inline std::vector<std::string> equivalence_fans() { return {"p2", "p1xp1", "f1", "f2"}; }

namespace detail {

template <class Check>
SuiteResult toric_suite(const std::string& name, std::uint64_t seed, std::size_t budget, Check&& check) {
  return timed(name, seed, budget, [&](SuiteResult& r) {
    for (const auto& fname : equivalence_fans()) {
      const toric::Fan X = toric::builtin_fan(fname);
      for (const auto& d : divisor_sample(X.rays().size(), -2, 3, budget)) {
        toric::NonNefOptions opts;
        opts.enforce = false;
        toric::NonNefReport rep;
        try {
          rep = toric::non_nef_locus(X, d, opts);
        } catch (const ResourceError&) {
          ++r.flagged;
          continue;
        }
        const bool flagged = std::any_of(rep.cross_checks.begin(), rep.cross_checks.end(),
                                         [](const toric::MethodVerdict& m) { return m.flagged; });
        if (flagged) {
          ++r.flagged;
          continue;
        }
        ++r.checked;
        if (auto why = check(X, rep)) {
          ++r.violations;
          if (!r.counterexample)
            r.counterexample =
                nlohmann::json{{"fan", fname}, {"divisor", toric::print_divisor(d)}, {"message", *why}};
        }
      }
    }
  });
}

}  // namespace detail

// The three non-nef-locus methods agree; nef divisors have empty loci.
inline SuiteResult toric_equivalences(std::uint64_t seed, std::size_t budget) {
  return detail::toric_suite("toric-equivalences", seed, budget,
                             [](const toric::Fan&, const toric::NonNefReport& rep) -> std::optional<std::string> {
                               if (!rep.methods_agree) return rep.violations.front();
                               for (const auto& v : rep.violations)
                                 if (v.find("chart") != std::string::npos) return v;
                               if (rep.status == toric::NefStatus::nef && !rep.positive_sigma.empty())
                                 return std::string("nef divisor with positive sigma");
                               for (const auto& m : rep.cross_checks)
                                 if (rep.status == toric::NefStatus::nef && (m.locus.whole || !m.locus.members.empty()))
                                   return m.method + " reports a nonempty locus for a nef divisor";
                               return std::nullopt;
                             });
}

// Divisorial components of B_-(D) number at most the Picard number.
inline SuiteResult picard_bound(std::uint64_t seed, std::size_t budget) {
  return detail::toric_suite("picard-bound", seed, budget,
                             [](const toric::Fan& X, const toric::NonNefReport& rep) -> std::optional<std::string> {
                               if (rep.codim1_count > X.picard_number())
                                 return std::to_string(rep.codim1_count) + " divisorial components exceed rho = " +
                                        std::to_string(X.picard_number());
                               return std::nullopt;
                             });
}

// ⌈λq/m⌉ = a·s + ⌈a·t/(b·m)⌉ on random (a, b, m, p, e).
inline SuiteResult ceil_identity(std::uint64_t seed, std::size_t budget) {
  return detail::timed("ceil-identity", seed, budget, [&](SuiteResult& r) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> ab(1, 20), mm(1, 10), pe(0, 3), ee(0, 12);
    const std::uint64_t primes[] = {2, 3, 5, 7};
    for (std::size_t i = 0; i < budget; ++i) {
      const Natural a(ab(rng) - 1 + (i % 2)), b(ab(rng)), m(mm(rng));
      const std::uint64_t p = primes[pe(rng)];
      const unsigned e = static_cast<unsigned>(ee(rng));
      const CeilSplit c = ceil_split(a, b, m, p, e);
      ++r.checked;
      if (c.lhs != c.rhs) {
        ++r.violations;
        if (!r.counterexample)
          r.counterexample = nlohmann::json{{"a", a.str()}, {"b", b.str()}, {"m", m.str()}, {"p", p}, {"e", e}};
      }
    }
  });
}

inline SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::optional<std::size_t> budget) {
  const std::size_t n = budget ? *budget : default_budget(name);
  if (name == "subadditivity") return subadditivity(seed, n);
  if (name == "estimate-order") return estimate_order(seed, n);
  if (name == "asymptotic-props") return asymptotic_props(seed, n);
  if (name == "toric-equivalences") return toric_equivalences(seed, n);
  if (name == "picard-bound") return picard_bound(seed, n);
  if (name == "ceil-identity") return ceil_identity(seed, n);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace ftest::verify
