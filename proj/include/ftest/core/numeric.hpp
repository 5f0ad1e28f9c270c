#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

#include "ftest/core/errors.hpp"

namespace ftest {

using Natural = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline Natural numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Natural denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

// floor / ceil of an exact rational
inline Natural floor_of(const Rational& r) {
  Natural n = numerator_of(r), d = denominator_of(r);
  Natural q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

inline Natural ceil_of(const Rational& r) {
  Natural n = numerator_of(r), d = denominator_of(r);
  Natural q = n / d;
  if (n > 0 && q * d != n) q += 1;
  return q;
}

inline Natural ceil_div(const Natural& a, const Natural& b) { return ceil_of(Rational(a, b)); }
inline Natural floor_div(const Natural& a, const Natural& b) { return floor_of(Rational(a, b)); }

inline Natural pow_natural(const Natural& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

// Narrowing used when an exact quantity becomes a monomial exponent or a
// loop bound.  Overflow is reported, never wrapped.
inline std::uint64_t to_u64(const Natural& n, const char* what = "value") {
  if (n < 0 || n > Natural(std::numeric_limits<std::uint64_t>::max()))
    throw ResourceError(std::string(what) + " does not fit in 64 bits: " + n.str());
  return static_cast<std::uint64_t>(n);
}

inline std::int64_t to_i64(const Natural& n, const char* what = "value") {
  if (n < Natural(std::numeric_limits<std::int64_t>::min()) ||
      n > Natural(std::numeric_limits<std::int64_t>::max()))
    throw ResourceError(std::string(what) + " does not fit in 64 bits: " + n.str());
  return static_cast<std::int64_t>(n);
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("exponent overflow");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("exponent overflow");
  return r;
}

// "a/b" in lowest terms; integers print without a denominator.
inline std::string to_string(const Rational& r) {
  if (denominator_of(r) == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

// Accepts "a", "-a", "a/b".
inline Rational parse_rational(const std::string& text) {
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string s = trim(text);
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = trim(s.substr(0, slash));
  std::string den = slash == std::string::npos ? "1" : trim(s.substr(slash + 1));
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational '" + s + "'", 0);
  Natural n(num[0] == '+' ? num.substr(1) : num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'", slash);
  return Rational(n, d);
}

}  // namespace ftest
