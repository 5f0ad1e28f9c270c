#pragma once

#include "ftest/core/numeric.hpp"
#include "ftest/core/prime_field.hpp"

namespace ftest {

struct CeilSplit {
  Natural s, t, lhs, rhs;
};

// For λ = a/b and q = p^e written as q = m·b·s + t with 0 <= t < m·b:
//   ⌈λq/m⌉ = a·s + ⌈a·t/(b·m)⌉.
// Both sides are computed independently and must agree.
inline CeilSplit ceil_split(const Natural& a, const Natural& b, const Natural& m, std::uint64_t p, unsigned e) {
  if (b < 1 || m < 1 || a < 0) throw DomainError("ceil_split: need a >= 0, b >= 1, m >= 1");
  if (!is_prime(p)) throw DomainError("p must be prime");
  const Natural q = pow_natural(Natural(p), e);
  const Natural mb = m * b;
  CeilSplit r;
  r.s = q / mb;
  r.t = q % mb;
  r.lhs = ceil_div(a * q, b * m);
  r.rhs = a * r.s + ceil_div(a * r.t, b * m);
  if (r.lhs != r.rhs) throw TheoremViolation("ceil_split identity failed");
  return r;
}

inline CeilSplit ceil_split(const Rational& lambda, const Natural& m, std::uint64_t p, unsigned e) {
  return ceil_split(numerator_of(lambda), denominator_of(lambda), m, p, e);
}

}  // namespace ftest
