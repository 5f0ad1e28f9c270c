#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

#include "ftest/core/numeric.hpp"

namespace ftest {

// Exponent vector.  Entries are 64-bit with checked arithmetic: any
// operation that would leave the range throws ResourceError.
class Monomial {
 public:
  using Exponent = std::uint64_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}
  Monomial(std::initializer_list<Exponent> exps) : exps_(exps) {}

  static Monomial variable(std::size_t nvars, std::size_t index, Exponent power = 1) {
    Monomial m(nvars);
    m.exps_[index] = power;
    return m;
  }

  std::size_t size() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const noexcept { return exps_[i]; }
  const std::vector<Exponent>& exponents() const noexcept { return exps_; }

  Exponent degree() const {
    Exponent d = 0;
    for (auto e : exps_) d = checked_add(d, e);
    return d;
  }
  bool is_one() const noexcept {
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
  }

  // this | other
  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = checked_add(r.exps_[i], other.exps_[i]);
    return r;
  }
  // Caller guarantees other | this.
  Monomial operator/(const Monomial& other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
    return r;
  }
  Monomial pow(Exponent k) const {
    Monomial r(*this);
    for (auto& e : r.exps_) e = checked_mul(e, k);
    return r;
  }
  Monomial lcm(const Monomial& other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(r.exps_[i], other.exps_[i]);
    return r;
  }
  bool coprime(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
  }
  // Componentwise floor(e / q).
  Monomial floor_div(Exponent q) const {
    Monomial r(*this);
    for (auto& e : r.exps_) e /= q;
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> exps_;
};

// Graded reverse lexicographic order: higher degree first; ties broken by
// the last differing exponent, smaller exponent wins.
inline std::strong_ordering grevlex(const Monomial& a, const Monomial& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da <=> db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex(a, b) > 0; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto e : m.exponents()) h ^= std::hash<std::uint64_t>{}(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace ftest
