#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ftest/core/errors.hpp"
#include "ftest/core/numeric.hpp"
#include "ftest/toric/rational_lp.hpp"

namespace ftest::toric {

using ftest::to_string;

using Vec = std::vector<long long>;

// One coefficient per ray.
using Divisor = std::vector<Rational>;

inline Divisor divisor(std::initializer_list<long long> coeffs) {
  Divisor d;
  for (auto c : coeffs) d.emplace_back(c);
  return d;
}

namespace detail {

inline long long det(const std::vector<Vec>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  long long s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Vec> minor;
    for (std::size_t r = 1; r < n; ++r) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    s += (c % 2 ? -1 : 1) * m[0][c] * det(minor);
  }
  return s;
}

// Exact inverse of a unimodular integer matrix (rows = vectors).
inline std::vector<Vec> unimodular_inverse(const std::vector<Vec>& m) {
  const std::size_t n = m.size();
  const long long d = det(m);
  if (d != 1 && d != -1) throw StructuralError("matrix is not unimodular");
  std::vector<Vec> inv(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Vec> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        Vec row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(row);
      }
      inv[i][j] = ((i + j) % 2 ? -1 : 1) * det(minor) * d;
    }
  return inv;
}

inline long long gcd_all(const Vec& v) {
  long long g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

}  // namespace detail

// The torus-invariant subvariety V(τ) of a cone τ.
struct InvariantSubvariety {
  std::vector<std::size_t> cone;  // sorted ray indices
  std::size_t codim() const noexcept { return cone.size(); }
  friend bool operator==(const InvariantSubvariety&, const InvariantSubvariety&) = default;
  friend bool operator<(const InvariantSubvariety& a, const InvariantSubvariety& b) {
    if (a.cone.size() != b.cone.size()) return a.cone.size() < b.cone.size();
    return a.cone < b.cone;
  }
};

inline std::string to_string(const InvariantSubvariety& z) {
  std::string s = "V(";
  for (std::size_t i = 0; i < z.cone.size(); ++i) s += (i ? "," : "") + std::to_string(z.cone[i]);
  return s + ")";
}

// Smooth complete projective fan of dimension <= 3.
class Fan {
 public:
  Fan(std::size_t dim, std::vector<Vec> rays, std::vector<std::vector<std::size_t>> cones, std::string name = {})
      : dim_(dim), rays_(std::move(rays)), cones_(std::move(cones)), name_(std::move(name)) {
    validate();
    for (const auto& c : cones_)
      for (std::size_t k = 1; k < (1u << c.size()); ++k) {
        InvariantSubvariety z;
        for (std::size_t b = 0; b < c.size(); ++b)
          if (k >> b & 1) z.cone.push_back(c[b]);
        faces_.insert(z);
      }
    for (const auto& c : cones_) {
      std::vector<Vec> m;
      for (auto i : c) m.push_back(rays_[i]);
      inverses_.push_back(detail::unimodular_inverse(m));
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Vec>& rays() const noexcept { return rays_; }
  const std::vector<std::vector<std::size_t>>& max_cones() const noexcept { return cones_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t picard_number() const noexcept { return rays_.size() - dim_; }

  // All invariant subvarieties, ordered by codimension then cone.
  std::vector<InvariantSubvariety> subvarieties() const { return {faces_.begin(), faces_.end()}; }

  bool is_face(const InvariantSubvariety& z) const { return faces_.count(z) > 0; }

  // Index of the first maximal cone containing z.
  std::size_t chart_of(const InvariantSubvariety& z) const {
    for (std::size_t c = 0; c < cones_.size(); ++c)
      if (std::includes(cones_[c].begin(), cones_[c].end(), z.cone.begin(), z.cone.end())) return c;
    throw DomainError("not a cone of the fan: " + to_string(z));
  }

  // Columns are the dual basis of cone c: ⟨col_j, v_{c_i}⟩ = δ_ij.
  const std::vector<Vec>& chart_inverse(std::size_t c) const { return inverses_[c]; }

  long long pairing(const Vec& u, std::size_t ray) const {
    long long s = 0;
    for (std::size_t k = 0; k < dim_; ++k) s += u[k] * rays_[ray][k];
    return s;
  }

  void check_divisor(const Divisor& d) const {
    if (d.size() != rays_.size())
      throw StructuralError("divisor has " + std::to_string(d.size()) + " coefficients, fan has " + std::to_string(rays_.size()) + " rays");
  }

 private:
  void validate() const {
    if (dim_ < 1 || dim_ > 3) throw DomainError("fan dimension must be 1, 2 or 3");
    if (rays_.empty()) throw DomainError("fan has no rays");
    std::set<Vec> seen;
    for (const auto& r : rays_) {
      if (r.size() != dim_) throw DomainError("ray has wrong length");
      if (detail::gcd_all(r) != 1) throw DomainError("ray is not primitive");
      if (!seen.insert(r).second) throw DomainError("duplicate ray");
    }
    std::set<std::vector<std::size_t>> cone_set;
    for (const auto& c : cones_) {
      if (c.size() != dim_) throw DomainError("not smooth: maximal cone is not simplicial of full dimension");
      for (auto i : c)
        if (i >= rays_.size()) throw DomainError("cone refers to a missing ray");
      if (!std::is_sorted(c.begin(), c.end()) || std::adjacent_find(c.begin(), c.end()) != c.end())
        throw DomainError("cone ray indices must be strictly increasing");
      std::vector<Vec> m;
      for (auto i : c) m.push_back(rays_[i]);
      long long d = detail::det(m);
      if (d != 1 && d != -1) throw DomainError("not smooth: cone determinant is " + std::to_string(d));
      if (!cone_set.insert(c).second) throw DomainError("duplicate cone");
    }
    check_complete();
    check_projective();
  }

  // Every facet of a maximal cone borders exactly two cones lying on opposite
  // sides, and a generic vector lies in exactly one cone.
  void check_complete() const {
    if (cones_.empty()) throw DomainError("not complete: no maximal cones");
    std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>> facets;
    for (std::size_t c = 0; c < cones_.size(); ++c)
      for (std::size_t drop = 0; drop < dim_; ++drop) {
        std::vector<std::size_t> f;
        for (std::size_t k = 0; k < dim_; ++k)
          if (k != drop) f.push_back(cones_[c][k]);
        facets[f].push_back({c, cones_[c][drop]});
      }
    for (const auto& [f, owners] : facets) {
      if (owners.size() != 2) throw DomainError("not complete: a facet borders " + std::to_string(owners.size()) + " cone(s)");
      // opposite sides: det(f, v_a) and det(f, v_b) differ in sign
      auto side = [&](std::size_t ray) {
        std::vector<Vec> m;
        for (auto i : f) m.push_back(rays_[i]);
        m.push_back(rays_[ray]);
        return detail::det(m);
      };
      if ((side(owners[0].second) > 0) == (side(owners[1].second) > 0))
        throw DomainError("not complete: cones overlap across a facet");
    }
    // generic direction (1, 1/97, 1/9973) scaled to integers
    const Vec w = dim_ == 1 ? Vec{1} : dim_ == 2 ? Vec{97, 1} : Vec{967381, 9973, 97};
    const Vec w2 = dim_ == 1 ? Vec{-1} : dim_ == 2 ? Vec{-89, -3} : Vec{-85931, -997, -7};
    for (const Vec& probe : {w, w2}) {
      int hits = 0;
      for (std::size_t c = 0; c < cones_.size(); ++c) {
        std::vector<Vec> m;
        for (auto i : cones_[c]) m.push_back(rays_[i]);
        auto inv = detail::unimodular_inverse(m);
        // coordinates of probe in the cone basis: probe = Σ a_k v_k, a = probe · inv
        bool inside = true;
        for (std::size_t k = 0; k < dim_; ++k) {
          long long a = 0;
          for (std::size_t j = 0; j < dim_; ++j) a += probe[j] * inv[j][k];
          if (a <= 0) inside = false;
        }
        hits += inside;
      }
      if (hits != 1) throw DomainError("not complete: a generic direction lies in " + std::to_string(hits) + " cones");
    }
  }

  // A strictly convex support function exists: d and u_σ with
  // ⟨u_σ, v_i⟩ = -d_i on σ and ⟨u_σ, v_j⟩ >= -d_j + 1 off σ.
  void check_projective() const {
    const std::size_t nr = rays_.size(), nc = cones_.size();
    lp::Problem p(nr + nc * dim_, true);
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t j = 0; j < nr; ++j) {
        std::vector<Rational> row(p.nvars);
        for (std::size_t k = 0; k < dim_; ++k) row[nr + c * dim_ + k] = rays_[j][k];
        row[j] = 1;
        bool in = std::find(cones_[c].begin(), cones_[c].end(), j) != cones_[c].end();
        if (in)
          p.add(row, lp::Relation::eq, 0);
        else
          p.add(row, lp::Relation::ge, 1);
      }
    if (!lp::feasible(p)) throw DomainError("not projective: no strictly convex support function");
  }

  std::size_t dim_;
  std::vector<Vec> rays_;
  std::vector<std::vector<std::size_t>> cones_;
  std::string name_;
  std::set<InvariantSubvariety> faces_;
  std::vector<std::vector<Vec>> inverses_;
};

inline Fan build_fan(std::size_t dim, std::vector<Vec> rays, std::vector<std::vector<std::size_t>> cones, std::string name = {}) {
  for (auto& c : cones) std::sort(c.begin(), c.end());
  return Fan(dim, std::move(rays), std::move(cones), std::move(name));
}

// Built-in geometry.  Ray order is part of the contract (divisors are
// coefficient vectors aligned to it).
inline Fan builtin_fan(const std::string& name) {
  if (name == "p1") return build_fan(1, {{1}, {-1}}, {{0}, {1}}, "p1");
  if (name == "p2") return build_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}, "p2");
  if (name == "p1xp1") return build_fan(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, "p1xp1");
  // blow-up of P^2 at the fixed point of cone{(1,0),(0,1)}; ray 3 is E
  if (name == "f1" || name == "blowup-p2")
    return build_fan(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 3}, {1, 3}, {1, 2}, {0, 2}}, name);
  if (name == "f2") return build_fan(2, {{1, 0}, {0, 1}, {-1, 2}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, "f2");
  if (name == "p3")
    return build_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, "p3");
  throw DomainError("unknown built-in fan '" + name + "'");
}

inline std::vector<std::string> builtin_fan_names() { return {"p1", "p2", "p1xp1", "f1", "f2", "p3"}; }

}  // namespace ftest::toric
