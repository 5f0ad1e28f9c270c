#pragma once

// Operations on finite sets of exponent vectors viewed as generators of
// monomial ideals: minimalization under divisibility, products, powers.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "ftest/core/monomial.hpp"

namespace ftest::staircase {

namespace detail {

// Prefix-minimum Fenwick tree over compressed coordinates.
class PrefixMin {
 public:
  explicit PrefixMin(std::size_t n) : tree_(n + 1, std::numeric_limits<std::uint64_t>::max()) {}
  void update(std::size_t i, std::uint64_t v) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] = std::min(tree_[i], v);
  }
  std::uint64_t query(std::size_t i) const {  // min over [0, i]
    std::uint64_t r = std::numeric_limits<std::uint64_t>::max();
    for (++i; i > 0; i -= i & (~i + 1)) r = std::min(r, tree_[i]);
    return r;
  }

 private:
  std::vector<std::uint64_t> tree_;
};

inline bool lex_less(const Monomial& a, const Monomial& b) { return a.exponents() < b.exponents(); }

}  // namespace detail

// Minimal elements under divisibility, returned sorted by descending grevlex.
inline std::vector<Monomial> minimalize(std::vector<Monomial> v) {
  if (v.empty()) return v;
  const std::size_t n = v.front().size();
  std::sort(v.begin(), v.end(), detail::lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<Monomial> kept;
  if (n == 0) {
    kept.push_back(v.front());
  } else if (n == 1) {
    kept.push_back(v.front());
  } else if (n == 2) {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (auto& m : v)
      if (m[1] < best) {
        best = m[1];
        kept.push_back(std::move(m));
      }
  } else if (n == 3) {
    std::vector<std::uint64_t> ys;
    ys.reserve(v.size());
    for (const auto& m : v) ys.push_back(m[1]);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    detail::PrefixMin tree(ys.size());
    for (auto& m : v) {
      std::size_t yi = std::lower_bound(ys.begin(), ys.end(), m[1]) - ys.begin();
      if (tree.query(yi) <= m[2]) continue;
      tree.update(yi, m[2]);
      kept.push_back(std::move(m));
    }
  } else {
    std::stable_sort(v.begin(), v.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
    for (auto& m : v) {
      bool dominated = std::any_of(kept.begin(), kept.end(), [&](const Monomial& k) { return k.divides(m); });
      if (!dominated) kept.push_back(std::move(m));
    }
  }
  std::sort(kept.begin(), kept.end(), GrevlexGreater{});
  return kept;
}

inline bool member(const std::vector<Monomial>& gens, const Monomial& m) {
  return std::any_of(gens.begin(), gens.end(), [&](const Monomial& g) { return g.divides(m); });
}

// gens(b) ⊆ ideal(a)
inline bool contains(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
  return std::all_of(b.begin(), b.end(), [&](const Monomial& m) { return member(a, m); });
}

inline std::vector<Monomial> product(const std::vector<Monomial>& a, const std::vector<Monomial>& b,
                                     std::size_t cap = std::numeric_limits<std::size_t>::max()) {
  std::vector<Monomial> out;
  if (a.size() * b.size() > cap * 8 && a.size() * b.size() > 4'000'000)
    throw ResourceError("monomial product exceeds the generator cap");
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  out = minimalize(std::move(out));
  if (out.size() > cap) throw ResourceError("monomial ideal exceeds the generator cap");
  return out;
}

// Minimal generators of the N-th power, built as a^k = a^{k-1} * a.
inline std::vector<Monomial> power(const std::vector<Monomial>& gens, std::uint64_t N, std::size_t nvars,
                                   std::size_t cap = std::numeric_limits<std::size_t>::max()) {
  std::vector<Monomial> acc{Monomial(nvars)};
  if (gens.empty()) return N == 0 ? acc : std::vector<Monomial>{};
  if (N == 0 || member(gens, Monomial(nvars))) return acc;
  if (gens.size() == 1) return {gens.front().pow(N)};
  for (std::uint64_t k = 0; k < N; ++k) acc = product(acc, gens, cap);
  return acc;
}

// Minimal generators lying at vertices of the Newton polyhedron
// conv(gens) + orthant.  Computed exactly for up to two variables; in more
// variables the minimal generators are returned unchanged.
inline std::vector<Monomial> newton_vertices(const std::vector<Monomial>& gens) {
  std::vector<Monomial> v = minimalize(gens);
  if (v.empty() || v.front().size() != 2 || v.size() <= 2) return v;
  std::sort(v.begin(), v.end(), detail::lex_less);  // x ascending, y descending
  std::vector<Monomial> hull;
  auto cross = [](const Monomial& o, const Monomial& a, const Monomial& b) {
    const auto ax = static_cast<__int128>(a[0]) - o[0], ay = static_cast<__int128>(a[1]) - o[1];
    const auto bx = static_cast<__int128>(b[0]) - o[0], by = static_cast<__int128>(b[1]) - o[1];
    return ax * by - ay * bx;
  };
  for (auto& m : v) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), m) <= 0) hull.pop_back();
    hull.push_back(std::move(m));
  }
  std::sort(hull.begin(), hull.end(), GrevlexGreater{});
  return hull;
}

}  // namespace ftest::staircase
