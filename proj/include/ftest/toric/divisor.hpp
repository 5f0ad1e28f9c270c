#pragma once

// Section polytopes P_D = {u : ⟨u, v_i⟩ >= -d_i}, their lattice points seen
// in affine charts, and the LP-based numerical classification of divisors.

#include <map>
#include <numeric>
#include <optional>

#include "ftest/asymptotic/subvariety.hpp"
#include "ftest/core/staircase.hpp"
#include "ftest/toric/fan.hpp"

namespace ftest::toric {

inline Divisor operator+(const Divisor& a, const Divisor& b) {
  if (a.size() != b.size()) throw StructuralError("divisors have different lengths");
  Divisor r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Divisor operator*(const Rational& c, const Divisor& d) {
  Divisor r(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) r[i] = c * d[i];
  return r;
}

inline bool is_integral(const Divisor& d) {
  return std::all_of(d.begin(), d.end(), [](const Rational& c) { return denominator_of(c) == 1; });
}

// Least m >= 1 with mD integral.
inline std::uint64_t denominator_lcm(const Divisor& d) {
  std::uint64_t l = 1;
  for (const auto& c : d) {
    const std::uint64_t q = to_u64(denominator_of(c), "denominator");
    l = checked_mul(l / std::gcd(l, q), q);
  }
  return l;
}

// D + div(χ^u): coefficients d_i + ⟨u, v_i⟩.
inline Divisor linear_shift(const Fan& X, const Divisor& d, const Vec& u) {
  X.check_divisor(d);
  Divisor r = d;
  for (std::size_t i = 0; i < d.size(); ++i) r[i] += Rational(X.pairing(u, i));
  return r;
}

namespace detail {

inline std::int64_t floor_div_i(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline std::int64_t ceil_div_i(std::int64_t a, std::int64_t b) { return -floor_div_i(-a, b); }

inline std::vector<std::int64_t> scaled(const Divisor& d, std::uint64_t m, bool require_integral) {
  std::vector<std::int64_t> c(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Rational v = Rational(Natural(m)) * d[i];
    if (require_integral && denominator_of(v) != 1)
      throw ContractError("m*D is not integral at m = " + std::to_string(m));
    c[i] = to_i64(floor_of(v), "divisor coefficient");
  }
  return c;
}

// Solve ⟨u, v_i⟩ = rhs_i for i in rows by Cramer's rule; nullopt if singular.
inline std::optional<std::vector<Rational>> solve_rows(const Fan& X, const std::vector<std::size_t>& rows,
                                                       const std::vector<Rational>& rhs) {
  const std::size_t n = X.dim();
  std::vector<Vec> m;
  for (auto i : rows) m.push_back(X.rays()[i]);
  const long long d = det(m);
  if (d == 0) return std::nullopt;
  std::vector<Rational> u(n);
  for (std::size_t k = 0; k < n; ++k) {
    // replace column k by rhs; expand along that column
    Rational s = 0;
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<Vec> minor;
      for (std::size_t rr = 0; rr < n; ++rr) {
        if (rr == r) continue;
        Vec row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != k) row.push_back(m[rr][c]);
        minor.push_back(row);
      }
      const long long cof = ((r + k) % 2 ? -1 : 1) * det(minor);
      s += rhs[r] * Rational(cof);
    }
    u[k] = s / Rational(d);
  }
  return u;
}

inline Rational pairing(const Fan& X, const std::vector<Rational>& u, std::size_t ray) {
  Rational s = 0;
  for (std::size_t k = 0; k < X.dim(); ++k) s += u[k] * Rational(X.rays()[ray][k]);
  return s;
}

}  // namespace detail

// Vertices of P_D over ℚ; empty iff P_D(ℝ) is empty (the fan is complete).
inline std::vector<std::vector<Rational>> section_vertices(const Fan& X, const Divisor& d) {
  X.check_divisor(d);
  const std::size_t n = X.dim(), r = X.rays().size();
  std::set<std::vector<Rational>> out;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == n) {
      std::vector<Rational> rhs;
      for (auto i : pick) rhs.push_back(-d[i]);
      auto u = detail::solve_rows(X, pick, rhs);
      if (!u) return;
      for (std::size_t j = 0; j < r; ++j)
        if (detail::pairing(X, *u, j) < -d[j]) return;
      out.insert(*u);
      return;
    }
    for (std::size_t i = from; i < r; ++i) {
      pick[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return {out.begin(), out.end()};
}

// Chart exponents w_j = ⟨u, v_{σ_j}⟩ + c_{σ_j} of the lattice points u of
// P_c, minimalized: the monomial generators of a_{|c|} on the chart of
// maximal cone σ.  Empty when |c| has no sections.
inline std::vector<Monomial> chart_generators(const Fan& X, const std::vector<std::int64_t>& c, std::size_t chart) {
  const std::size_t n = X.dim(), r = X.rays().size();
  const auto& cone = X.max_cones().at(chart);
  const auto& inv = X.chart_inverse(chart);
  // u = u0 + Σ_j w_j col_j with ⟨u0, v_{σ_j}⟩ = -c_{σ_j}
  std::vector<std::int64_t> u0(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) u0[k] -= c[cone[j]] * inv[k][j];
  std::vector<std::int64_t> b(r);
  std::vector<std::vector<std::int64_t>> a(r, std::vector<std::int64_t>(n));
  for (std::size_t t = 0; t < r; ++t) {
    std::int64_t s = c[t];
    for (std::size_t k = 0; k < n; ++k) s += u0[k] * X.rays()[t][k];
    b[t] = s;
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t v = 0;
      for (std::size_t k = 0; k < n; ++k) v += inv[k][j] * X.rays()[t][k];
      a[t][j] = v;
    }
  }
  // box for the first n-1 chart coordinates from the rational vertices
  Divisor dq(r);
  for (std::size_t t = 0; t < r; ++t) dq[t] = Rational(c[t]);
  const auto verts = section_vertices(X, dq);
  if (verts.empty()) return {};
  std::vector<std::int64_t> hi(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    Rational best = 0;
    for (const auto& u : verts) best = std::max(best, detail::pairing(X, u, cone[j]) + dq[cone[j]]);
    hi[j] = to_i64(floor_of(best), "chart exponent");
  }
  std::vector<Monomial> cand;
  std::vector<std::int64_t> w(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j + 1 < n) {
      for (w[j] = 0; w[j] <= hi[j]; ++w[j]) rec(j + 1);
      return;
    }
    std::int64_t lo = 0, up = hi[n - 1];
    for (std::size_t t = 0; t < r; ++t) {
      std::int64_t s = b[t];
      for (std::size_t k = 0; k + 1 < n; ++k) s += a[t][k] * w[k];
      const std::int64_t at = a[t][n - 1];
      if (at > 0)
        lo = std::max(lo, detail::ceil_div_i(-s, at));
      else if (at < 0)
        up = std::min(up, detail::floor_div_i(s, -at));
      else if (s < 0)
        return;
    }
    if (lo > up) return;
    std::vector<Monomial::Exponent> e(n);
    for (std::size_t k = 0; k + 1 < n; ++k) e[k] = static_cast<Monomial::Exponent>(w[k]);
    e[n - 1] = static_cast<Monomial::Exponent>(lo);
    cand.emplace_back(std::move(e));
  };
  rec(0);
  return staircase::minimalize(std::move(cand));
}

// Polynomial ring of the chart of maximal cone σ: one variable x<i> per ray i of σ.
inline RingPtr chart_ring(const Fan& X, std::size_t chart, std::uint64_t p) {
  std::vector<std::string> names;
  for (auto i : X.max_cones().at(chart)) names.push_back("x" + std::to_string(i));
  return make_ring(p, names);
}

inline bool chart_contains(const Fan& X, std::size_t chart, const InvariantSubvariety& z) {
  const auto& cone = X.max_cones().at(chart);
  return std::includes(cone.begin(), cone.end(), z.cone.begin(), z.cone.end());
}

// V(τ) inside the chart of σ ⊇ τ as a coordinate subvariety.
inline CoordinateSubvariety chart_subvariety(const Fan& X, std::size_t chart, const InvariantSubvariety& z) {
  const auto& cone = X.max_cones().at(chart);
  std::vector<std::size_t> vars;
  for (auto i : z.cone) {
    auto it = std::find(cone.begin(), cone.end(), i);
    if (it == cone.end()) throw DomainError(to_string(z) + " does not meet the chosen chart");
    vars.push_back(static_cast<std::size_t>(it - cone.begin()));
  }
  return {cone.size(), vars};
}

inline CoordinateSubvariety chart_subvariety(const Fan& X, const InvariantSubvariety& z) {
  return chart_subvariety(X, X.chart_of(z), z);
}

// a_{|mD|} on a chart; requires mD integral.
inline Ideal chart_ideal(const Fan& X, const Divisor& d, std::uint64_t m, std::size_t chart, std::uint64_t p = 2) {
  X.check_divisor(d);
  return Ideal::from_monomials(chart_ring(X, chart, p), chart_generators(X, detail::scaled(d, m, true), chart));
}

// ord_Z(a_{|mD|}): the least Σ_{i∈τ} (⟨u, v_i⟩ + m d_i) over lattice points of P_{mD}.
inline OrdValue base_locus_ord(const Fan& X, const Divisor& d, std::uint64_t m, const InvariantSubvariety& z) {
  X.check_divisor(d);
  if (m == 0) throw DomainError("base locus level must be positive");
  if (!X.is_face(z)) throw DomainError("not a cone of the fan: " + to_string(z));
  const std::size_t chart = X.chart_of(z);
  const auto gens = chart_generators(X, detail::scaled(d, m, true), chart);
  if (gens.empty()) return std::nullopt;
  const CoordinateSubvariety cz = chart_subvariety(X, chart, z);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (const auto& g : gens) best = std::min(best, ord_along(g, cz));
  return best;
}

namespace detail {

// LP over u ∈ P_D (free variables), optionally with extra trailing variables.
inline lp::Problem section_lp(const Fan& X, const Divisor& d, std::size_t extra = 0) {
  const std::size_t n = X.dim();
  lp::Problem p(n + extra, true);
  for (std::size_t i = 0; i < X.rays().size(); ++i) {
    std::vector<Rational> row(n + extra);
    for (std::size_t k = 0; k < n; ++k) row[k] = X.rays()[i][k];
    p.add(row, lp::Relation::ge, -d[i]);
  }
  return p;
}

// u_σ with ⟨u_σ, v_i⟩ = -d_i on the rays of σ.
inline std::vector<Rational> u_sigma(const Fan& X, const Divisor& d, std::size_t chart) {
  const auto& cone = X.max_cones()[chart];
  std::vector<Rational> rhs;
  for (auto i : cone) rhs.push_back(-d[i]);
  return *solve_rows(X, cone, rhs);
}

}  // namespace detail

inline bool is_nef(const Fan& X, const Divisor& d, bool strict = false) {
  X.check_divisor(d);
  for (std::size_t c = 0; c < X.max_cones().size(); ++c) {
    const auto u = detail::u_sigma(X, d, c);
    const auto& cone = X.max_cones()[c];
    for (std::size_t j = 0; j < X.rays().size(); ++j) {
      if (std::find(cone.begin(), cone.end(), j) != cone.end()) continue;
      const Rational v = detail::pairing(X, u, j) + d[j];
      if (v < 0 || (strict && v == 0)) return false;
    }
  }
  return true;
}

inline bool is_ample(const Fan& X, const Divisor& d) { return is_nef(X, d, true); }

// An ample divisor with small nonnegative integer coefficients (least sum,
// then lexicographically least).
inline Divisor default_ample(const Fan& X) {
  const std::size_t r = X.rays().size();
  for (long long total = 1; total <= static_cast<long long>(4 * r); ++total) {
    std::vector<long long> c(r, 0);
    std::optional<Divisor> found;
    std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
      if (found) return;
      if (i + 1 == r) {
        c[i] = left;
        Divisor d;
        for (auto x : c) d.emplace_back(x);
        if (is_ample(X, d)) found = d;
        return;
      }
      for (long long v = left; v >= 0 && !found; --v) {
        c[i] = v;
        rec(i + 1, left - v);
      }
    };
    rec(0, total);
    if (found) return *found;
  }
  throw DomainError("no small ample divisor found");
}

inline bool is_big(const Fan& X, const Divisor& d) {
  X.check_divisor(d);
  const std::size_t n = X.dim();
  // maximize t subject to ⟨u, v_i⟩ - t >= -d_i
  lp::Problem p = detail::section_lp(X, d, 1);
  for (auto& row : p.rows) row.coeffs[n] = -1;
  p.objective[n] = -1;
  const auto s = lp::solve(p);
  return s.status == lp::Status::optimal && s.value < 0;
}

// P_D(ℝ) ≠ ∅
inline bool is_q_effective(const Fan& X, const Divisor& d) {
  X.check_divisor(d);
  return lp::feasible(detail::section_lp(X, d));
}

// P_{D+εA} ≠ ∅ for every ε > 0: the least feasible ε is 0.
inline bool is_pseudo_effective(const Fan& X, const Divisor& d, const Divisor& ample) {
  X.check_divisor(d);
  X.check_divisor(ample);
  if (!is_ample(X, ample)) throw DomainError("reference divisor is not ample");
  const std::size_t n = X.dim();
  lp::Problem p = detail::section_lp(X, d, 1);
  p.free[n] = false;
  for (std::size_t i = 0; i < p.rows.size(); ++i) p.rows[i].coeffs[n] = ample[i];
  p.objective[n] = 1;
  const auto s = lp::solve(p);
  if (s.status != lp::Status::optimal) throw TheoremViolation("pseudo-effectivity LP did not reach an optimum");
  return s.value == 0;
}

inline bool is_pseudo_effective(const Fan& X, const Divisor& d) { return is_pseudo_effective(X, d, default_ample(X)); }

struct Classification {
  bool ample = false;
  bool nef = false;
  bool big = false;
  bool pseudo_effective = false;
  bool effective = false;    // P_D contains a lattice point: |⌊D⌋| ≠ ∅
  bool q_effective = false;  // P_D(ℝ) ≠ ∅
};

inline Classification classify_divisor(const Fan& X, const Divisor& d) {
  X.check_divisor(d);
  Classification c;
  c.nef = is_nef(X, d);
  c.ample = c.nef && is_ample(X, d);
  c.big = is_big(X, d);
  c.pseudo_effective = c.big || is_pseudo_effective(X, d);
  c.q_effective = is_q_effective(X, d);
  c.effective = c.q_effective && !chart_generators(X, detail::scaled(d, 1, false), 0).empty();
  return c;
}

// ord_Z(‖D‖): the LP minimum of Σ_{i∈τ} (⟨u, v_i⟩ + d_i) over P_D(ℝ).
inline Rational asymptotic_ord_toric(const Fan& X, const Divisor& d, const InvariantSubvariety& z) {
  X.check_divisor(d);
  if (!X.is_face(z)) throw DomainError("not a cone of the fan: " + to_string(z));
  lp::Problem p = detail::section_lp(X, d);
  Rational constant = 0;
  for (auto i : z.cone) {
    for (std::size_t k = 0; k < X.dim(); ++k) p.objective[k] += Rational(X.rays()[i][k]);
    constant += d[i];
  }
  const auto s = lp::solve(p);
  if (s.status == lp::Status::infeasible) throw DomainError("asymptotic order: no pluri-sections (P_D is empty)");
  if (s.status != lp::Status::optimal) throw TheoremViolation("asymptotic order LP is unbounded on a complete fan");
  return s.value + constant;
}

}  // namespace ftest::toric
