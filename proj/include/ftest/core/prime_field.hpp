#pragma once

#include <cstdint>
#include <string>

#include "ftest/core/errors.hpp"

namespace ftest {

// Residues are kept in [0, p) as 64-bit words; p < 2^31 so products fit.
using Residue = std::uint64_t;

// Deterministic Miller-Rabin; the base set {2, 3, 5, 7} is exact below 3.2e9.
constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
  };
  for (std::uint64_t a : {2u, 3u, 5u, 7u}) {
    std::uint64_t x = 1, base = a % n, e = d;
    while (e) {
      if (e & 1) x = mulmod(x, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 31)) throw DomainError("p must be below 2^31");
    if (!is_prime(p)) throw DomainError("p must be prime (got " + std::to_string(p) + ")");
  }

  std::uint64_t characteristic() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  Residue add(Residue a, Residue b) const noexcept { return (a + b) % p_; }
  Residue sub(Residue a, Residue b) const noexcept { return (a + p_ - b) % p_; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept { return (a * b) % p_; }
  Residue pow(Residue a, std::uint64_t e) const noexcept {
    Residue r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Residue inv(Residue a) const {
    if (a % p_ == 0) throw DomainError("division by zero in F_p");
    return pow(a, p_ - 2);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

}  // namespace ftest
