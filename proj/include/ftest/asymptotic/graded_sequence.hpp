#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "ftest/asymptotic/subvariety.hpp"

namespace ftest {

// m ↦ a_m with a_{m1}·a_{m2} ⊆ a_{m1+m2}.
class GradedSequence {
 public:
  enum class Kind { power, table, rule };
  using Rule = std::function<Ideal(std::uint64_t)>;
  // Closed-form asymptotic order along Z, when the rule knows one.
  using ExactOrd = std::function<std::optional<Rational>(const CoordinateSubvariety&)>;

  static GradedSequence power(Ideal a) {
    GradedSequence s(Kind::power, a.ring());
    s.base_ = std::move(a);
    return s;
  }

  // Entries m:T_m, extended to the smallest graded sequence containing them:
  // a_m = Σ over decompositions m = k_1 + ... + k_r into keys of Π T_{k_i}.
  static GradedSequence table(std::map<std::uint64_t, Ideal> entries) {
    if (entries.empty()) throw DomainError("graded sequence table must be nonempty");
    if (entries.begin()->first == 0) throw DomainError("graded sequence table indices start at 1");
    const RingPtr ring = entries.begin()->second.ring();
    bool nonzero = false;
    for (const auto& [k, a] : entries) {
      require_same_ring(ring, a.ring());
      nonzero |= !a.is_zero();
    }
    if (!nonzero) throw DomainError("graded sequence must have a nonzero member");
    GradedSequence s(Kind::table, ring);
    s.table_ = std::move(entries);
    return s;
  }

  // `validate = false` skips the superadditivity check for rules that hold
  // it by construction.
  static GradedSequence rule(RingPtr ring, Rule rule, std::string label, ExactOrd exact = {}, bool validate = true) {
    GradedSequence s(Kind::rule, std::move(ring));
    s.rule_ = std::move(rule);
    s.label_ = std::move(label);
    s.exact_ = std::move(exact);
    s.validate_ = validate;
    return s;
  }

  Kind kind() const noexcept { return kind_; }
  const RingPtr& ring() const noexcept { return ring_; }
  const std::string& label() const noexcept { return label_; }
  const std::optional<Ideal>& base() const noexcept { return base_; }
  const std::map<std::uint64_t, Ideal>& entries() const noexcept { return table_; }

  // a_m; superadditivity of rule-based sequences is checked for every split
  // of every index up to m the first time it is reached.
  Ideal term(std::uint64_t m) const {
    if (m == 0) throw DomainError("graded sequence index must be >= 1");
    std::lock_guard lock(state_->mu);
    if (kind_ == Kind::power) return raw(m);
    for (std::uint64_t k = state_->validated + 1; k <= m; ++k) {
      const Ideal& ak = raw(k);
      if (kind_ == Kind::rule && validate_)
        for (std::uint64_t m1 = 1; 2 * m1 <= k; ++m1)
          if (!ak.contains(ideal_product(raw(m1), raw(k - m1))))
            throw ContractError("graded sequence violates superadditivity at (m1, m2) = (" + std::to_string(m1) + ", " +
                                std::to_string(k - m1) + ")");
      state_->validated = k;
    }
    return raw(m);
  }

  std::uint64_t validated_up_to() const {
    std::lock_guard lock(state_->mu);
    return state_->validated;
  }

  // ord_Z(a_m) without materializing a_m when a formula is available.
  OrdValue ord_term(std::uint64_t m, const CoordinateSubvariety& Z) const {
    if (kind_ == Kind::power) {
      auto o = ord_along(*base_, Z);
      if (!o) return o;
      return checked_mul(*o, m);
    }
    if (kind_ == Kind::table) {
      // ord(a_m) = min_k ord(T_k) + ord(a_{m-k}), with ord(a_0) = 0
      std::vector<OrdValue> best(m + 1);
      best[0] = 0;
      for (std::uint64_t j = 1; j <= m; ++j) {
        OrdValue b = std::nullopt;
        for (const auto& [k, t] : table_) {
          if (k > j) break;
          b = ord_min(b, ord_sum(ord_along(t, Z), best[j - k]));
        }
        best[j] = b;
      }
      return best[m];
    }
    return ord_along(term(m), Z);
  }

  // Exact ord_Z(a_•) when it has a closed form.
  std::optional<Rational> exact_ord(const CoordinateSubvariety& Z) const {
    if (kind_ == Kind::power) {
      auto o = ord_along(*base_, Z);
      if (!o) return std::nullopt;
      return Rational(Natural(*o));
    }
    if (kind_ == Kind::table) {
      // products are additive in ord, so the infimum is a best single entry
      std::optional<Rational> best;
      for (const auto& [k, t] : table_) {
        auto o = ord_along(t, Z);
        if (!o) continue;
        Rational r = Rational(Natural(*o)) / Rational(Natural(k));
        if (!best || r < *best) best = r;
      }
      return best;
    }
    if (exact_) return exact_(Z);
    return std::nullopt;
  }

 private:
  GradedSequence(Kind kind, RingPtr ring) : kind_(kind), ring_(std::move(ring)), state_(std::make_shared<State>()) {
    if (kind_ == Kind::power) label_ = "power";
    if (kind_ == Kind::table) label_ = "table";
  }

  // caller holds the lock
  const Ideal& raw(std::uint64_t m) const {
    auto it = state_->cache.find(m);
    if (it != state_->cache.end()) return it->second;
    Ideal value = Ideal::zero(ring_);
    switch (kind_) {
      case Kind::power:
        value = ideal_power(*base_, m);
        break;
      case Kind::table:
        for (const auto& [k, t] : table_) {
          if (k > m) break;
          Ideal rest = k == m ? Ideal::unit(ring_) : raw(m - k);
          value = ideal_sum(value, ideal_product(t, rest));
        }
        break;
      case Kind::rule:
        value = rule_(m);
        require_same_ring(ring_, value.ring());
        break;
    }
    return state_->cache.emplace(m, std::move(value)).first->second;
  }

  struct State {
    std::mutex mu;
    std::map<std::uint64_t, Ideal> cache;
    std::uint64_t validated = 0;
  };

  Kind kind_;
  RingPtr ring_;
  std::string label_;
  std::optional<Ideal> base_;
  std::map<std::uint64_t, Ideal> table_;
  Rule rule_;
  ExactOrd exact_;
  bool validate_ = true;
  std::shared_ptr<State> state_;
};

}  // namespace ftest
