#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ftest/core/ideal.hpp"

namespace ftest {

// V(x_i : i ∈ S) in a polynomial chart.
class CoordinateSubvariety {
 public:
  CoordinateSubvariety(std::size_t nvars, std::vector<std::size_t> subset) : nvars_(nvars), subset_(std::move(subset)) {
    std::sort(subset_.begin(), subset_.end());
    subset_.erase(std::unique(subset_.begin(), subset_.end()), subset_.end());
    if (subset_.empty()) throw DomainError("subvariety: variable subset must be nonempty");
    if (subset_.back() >= nvars_) throw DomainError("subvariety: variable index out of range");
  }

  static CoordinateSubvariety origin(std::size_t nvars) {
    std::vector<std::size_t> all(nvars);
    for (std::size_t i = 0; i < nvars; ++i) all[i] = i;
    return {nvars, all};
  }
  static CoordinateSubvariety hyperplane(std::size_t nvars, std::size_t i) { return {nvars, {i}}; }

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<std::size_t>& variables() const noexcept { return subset_; }
  std::size_t codim() const noexcept { return subset_.size(); }

  friend bool operator==(const CoordinateSubvariety&, const CoordinateSubvariety&) = default;

 private:
  std::size_t nvars_;
  std::vector<std::size_t> subset_;
};

// Order of vanishing; nullopt stands for ∞ (the zero ideal).
using OrdValue = std::optional<std::uint64_t>;

inline std::string to_string(const OrdValue& v) { return v ? std::to_string(*v) : "inf"; }

inline std::uint64_t ord_along(const Monomial& m, const CoordinateSubvariety& Z) {
  std::uint64_t s = 0;
  for (auto i : Z.variables()) s = checked_add(s, m[i]);
  return s;
}

// m_Z is generated by the S-variables, so a ⊆ m_Z^r iff every term of every
// generator has S-degree >= r.
inline OrdValue ord_along(const Ideal& a, const CoordinateSubvariety& Z) {
  if (a.ring()->nvars() != Z.nvars()) throw StructuralError("subvariety lives in a different chart");
  if (a.is_zero()) return std::nullopt;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  if (a.is_monomial()) {
    for (const auto& m : a.monomial_generators()) best = std::min(best, ord_along(m, Z));
  } else {
    for (const auto& f : a.generators())
      for (const auto& t : f.terms()) best = std::min(best, ord_along(t.monomial, Z));
  }
  return best;
}

inline OrdValue ord_sum(const OrdValue& a, const OrdValue& b) {
  if (!a || !b) return std::nullopt;
  return checked_add(*a, *b);
}

inline OrdValue ord_min(const OrdValue& a, const OrdValue& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace ftest
