#pragma once

#include "ftest/core/numeric.hpp"
#include "ftest/core/prime_field.hpp"

namespace ftest {

// The e-th iterate of Frobenius over F_p, with q = p^e held exactly.
class FrobeniusContext {
 public:
  FrobeniusContext(PrimeField field, unsigned e) : field_(field), e_(e), q_(pow_natural(Natural(field.characteristic()), e)) {}
  FrobeniusContext(std::uint64_t p, unsigned e) : FrobeniusContext(PrimeField(p), e) {}

  const PrimeField& field() const noexcept { return field_; }
  std::uint64_t p() const noexcept { return field_.characteristic(); }
  unsigned e() const noexcept { return e_; }
  const Natural& q() const noexcept { return q_; }

 private:
  PrimeField field_;
  unsigned e_;
  Natural q_;
};

// Non-negative exact exponent λ.
class ExponentLambda {
 public:
  ExponentLambda() = default;
  ExponentLambda(Rational value) : value_(std::move(value)) {  // NOLINT: implicit by intent
    if (value_ < 0) throw DomainError("exponent must be non-negative");
  }
  ExponentLambda(long long n) : ExponentLambda(Rational(n)) {}  // NOLINT
  ExponentLambda(long long n, long long d) : ExponentLambda(Rational(Natural(n), Natural(d))) {}

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const { return value_ == 0; }

  // ⌈λ·q⌉
  Natural ceil_times(const Natural& q) const { return ceil_of(value_ * Rational(q)); }

  friend bool operator==(const ExponentLambda&, const ExponentLambda&) = default;
  friend auto operator<=>(const ExponentLambda& a, const ExponentLambda& b) {
    return a.value_ < b.value_ ? std::strong_ordering::less
                               : (a.value_ == b.value_ ? std::strong_ordering::equal : std::strong_ordering::greater);
  }

 private:
  Rational value_{0};
};

}  // namespace ftest
