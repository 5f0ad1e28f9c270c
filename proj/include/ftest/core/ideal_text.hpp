#pragma once

// Text form of ideals:
//
//   p=<prime>; vars=<comma-list>; gens=[<poly>{, <poly>}]
//
// Polynomials are written expanded, `^` for powers; `*` between factors is
// optional.  print_ideal emits the canonical (reduced Groebner basis) form,
// so parse_ideal(print_ideal(a)) == a.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "ftest/core/ideal.hpp"

namespace ftest {

inline std::string print_monomial(const Monomial& m, const Ring& ring) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.variables()[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

inline std::string print_polynomial(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    if (t.monomial.is_one())
      out += std::to_string(t.coefficient);
    else if (t.coefficient == 1)
      out += print_monomial(t.monomial, *f.ring());
    else
      out += std::to_string(t.coefficient) + '*' + print_monomial(t.monomial, *f.ring());
  }
  return out;
}

inline std::string print_generators(const std::vector<Polynomial>& gens) {
  std::string out = "[";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ", ";
    out += print_polynomial(gens[i]);
  }
  return out + "]";
}

inline std::string print_ring(const Ring& ring) {
  std::string out = "p=" + std::to_string(ring.characteristic()) + "; vars=";
  for (std::size_t i = 0; i < ring.nvars(); ++i) out += (i ? "," : "") + ring.variables()[i];
  return out;
}

inline std::string print_ideal(const Ideal& a) {
  return print_ring(*a.ring()) + "; gens=" + print_generators(a.canonical_generators());
}

namespace detail {

class IdealParser {
 public:
  explicit IdealParser(std::string_view text) : s_(text) {}

  Ideal parse_ideal() {
    expect_key("p");
    std::uint64_t p = parse_unsigned();
    expect(';');
    expect_key("vars");
    std::vector<std::string> vars;
    do {
      skip_ws();
      std::size_t at = pos_;
      std::string id = identifier();
      if (id.empty()) throw ParseError("expected a variable name", at);
      vars.push_back(id);
      skip_ws();
    } while (accept(','));
    expect(';');
    expect_key("gens");
    try {
      ring_ = make_ring(p, vars);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), 2);
    }
    expect('[');
    std::vector<Polynomial> gens;
    skip_ws();
    if (!accept(']')) {
      do {
        gens.push_back(parse_polynomial());
        skip_ws();
      } while (accept(','));
      expect(']');
    }
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("trailing characters", pos_);
    return Ideal(ring_, std::move(gens));
  }

  Polynomial parse_polynomial_in(RingPtr ring) {
    ring_ = std::move(ring);
    Polynomial f = parse_polynomial();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("trailing characters", pos_);
    return f;
  }

 private:
  Polynomial parse_polynomial() {
    const auto& F = ring_->field();
    std::vector<Term> terms;
    skip_ws();
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    while (true) {
      Term t = parse_term();
      if (negative) t.coefficient = F.neg(t.coefficient);
      terms.push_back(std::move(t));
      skip_ws();
      if (accept('+')) negative = false;
      else if (accept('-')) negative = true;
      else break;
    }
    return Polynomial(ring_, std::move(terms));
  }

  Term parse_term() {
    const auto& F = ring_->field();
    Term t{Monomial(ring_->nvars()), 1};
    bool any = false;
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        std::size_t at = pos_;
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
        Natural c(digits);
        skip_ws();
        if (accept('^')) {
          std::uint64_t k = parse_unsigned();
          c = boost::multiprecision::powm(c, Natural(k), Natural(F.characteristic()));
        }
        t.coefficient = F.mul(t.coefficient, static_cast<Residue>(c % F.characteristic()));
        (void)at;
      } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        std::size_t at = pos_;
        std::string id = identifier();
        std::vector<std::size_t> idx = split_variables(id, at);
        skip_ws();
        std::uint64_t k = 1;
        if (accept('^')) k = parse_unsigned();
        for (std::size_t j = 0; j < idx.size(); ++j) {
          Monomial v = Monomial::variable(ring_->nvars(), idx[j], j + 1 == idx.size() ? k : 1);
          t.monomial = t.monomial * v;
        }
      } else {
        throw ParseError(any ? "expected a factor after '*'" : "expected a term", pos_);
      }
      any = true;
      skip_ws();
      if (accept('*')) continue;
      if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) continue;
      break;
    }
    return t;
  }

  // An identifier that is not a variable is read as a concatenation of
  // variable names ("xy" = x*y), longest match first.
  std::vector<std::size_t> split_variables(const std::string& id, std::size_t at) const {
    std::vector<std::size_t> out;
    std::size_t i = 0;
    while (i < id.size()) {
      std::size_t best = 0, best_len = 0;
      for (std::size_t v = 0; v < ring_->nvars(); ++v) {
        const auto& name = ring_->variables()[v];
        if (name.size() > best_len && id.compare(i, name.size(), name) == 0) {
          best = v;
          best_len = name.size();
        }
      }
      if (best_len == 0) throw ParseError("unknown variable '" + id + "'", at + i);
      out.push_back(best);
      i += best_len;
    }
    return out;
  }

  std::string identifier() {
    std::string id;
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        id += s_[pos_++];
    }
    return id;
  }

  std::uint64_t parse_unsigned() {
    skip_ws();
    std::size_t at = pos_;
    std::string digits;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
    if (digits.empty()) throw ParseError("expected a non-negative integer", at);
    if (digits.size() > 18) throw ParseError("integer too large", at);
    return std::stoull(digits);
  }

  void expect_key(const char* key) {
    skip_ws();
    std::size_t at = pos_;
    if (identifier() != key) throw ParseError(std::string("expected '") + key + "='", at);
    expect('=');
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  RingPtr ring_;
};

}  // namespace detail

inline Ideal parse_ideal(std::string_view text) { return detail::IdealParser(text).parse_ideal(); }

inline Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return detail::IdealParser(text).parse_polynomial_in(ring);
}

}  // namespace ftest
