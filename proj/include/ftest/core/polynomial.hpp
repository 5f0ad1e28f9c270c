#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ftest/core/monomial.hpp"
#include "ftest/core/prime_field.hpp"

namespace ftest {

// F_p[x_1, ..., x_n] with named variables.
class Ring {
 public:
  Ring(PrimeField field, std::vector<std::string> variables)
      : field_(field), variables_(std::move(variables)) {
    if (variables_.empty()) throw StructuralError("a ring needs at least one variable");
    for (std::size_t i = 0; i < variables_.size(); ++i)
      for (std::size_t j = i + 1; j < variables_.size(); ++j)
        if (variables_[i] == variables_[j]) throw StructuralError("duplicate variable '" + variables_[i] + "'");
  }

  const PrimeField& field() const noexcept { return field_; }
  std::uint64_t characteristic() const noexcept { return field_.characteristic(); }
  std::size_t nvars() const noexcept { return variables_.size(); }
  const std::vector<std::string>& variables() const noexcept { return variables_; }

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  PrimeField field_;
  std::vector<std::string> variables_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::uint64_t p, std::vector<std::string> variables) {
  return std::make_shared<const Ring>(PrimeField(p), std::move(variables));
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a != b && !(*a == *b)) throw StructuralError("ambient ring mismatch");
}

struct Term {
  Monomial monomial;
  Residue coefficient;
  friend bool operator==(const Term&, const Term&) = default;
};

// Sparse polynomial; terms are kept sorted by descending grevlex with no
// zero coefficients.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    normalize();
  }

  static Polynomial constant(RingPtr ring, std::int64_t c) {
    Residue r = ring->field().reduce(c);
    std::size_t n = ring->nvars();
    Polynomial f(std::move(ring));
    if (r != 0) f.terms_.push_back({Monomial(n), r});
    return f;
  }
  static Polynomial monomial(RingPtr ring, Monomial m, Residue c = 1) {
    if (m.size() != ring->nvars()) throw StructuralError("monomial length does not match the ring");
    Polynomial f(std::move(ring));
    if (c % f.ring_->characteristic() != 0) f.terms_.push_back({std::move(m), c % f.ring_->characteristic()});
    return f;
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_constant() const noexcept { return terms_.size() == 1 && terms_[0].monomial.is_one(); }
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().monomial; }
  std::size_t size() const noexcept { return terms_.size(); }

  Monomial::Exponent total_degree() const {
    Monomial::Exponent d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
    return d;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    const auto& F = ring_->field();
    Residue inv = F.inv(terms_.front().coefficient);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coefficient = F.mul(t.coefficient, inv);
    return r;
  }

  Polynomial scaled(Residue c) const {
    const auto& F = ring_->field();
    c %= F.characteristic();
    if (c == 0) return Polynomial(ring_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coefficient = F.mul(t.coefficient, c);
    return r;
  }

  Polynomial times_monomial(const Monomial& m) const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.monomial = t.monomial * m;
    return r;  // multiplication by a monomial preserves the order
  }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) { return combine(f, g, false); }
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) { return combine(f, g, true); }

  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    require_same_ring(f.ring_, g.ring_);
    if (f.is_zero() || g.is_zero()) return Polynomial(f.ring_);
    const auto& F = f.ring_->field();
    std::map<Monomial, Residue, GrevlexGreater> acc;
    for (const auto& a : f.terms_)
      for (const auto& b : g.terms_) {
        auto [it, fresh] = acc.try_emplace(a.monomial * b.monomial, 0);
        it->second = F.add(it->second, F.mul(a.coefficient, b.coefficient));
      }
    Polynomial r(f.ring_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back({m, c});
    return r;
  }

  Polynomial pow(std::uint64_t k) const {
    Polynomial result = constant(ring_, 1), base = *this;
    while (k) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    return *f.ring_ == *g.ring_ && f.terms_ == g.terms_;
  }

 private:
  static Polynomial combine(const Polynomial& f, const Polynomial& g, bool subtract) {
    require_same_ring(f.ring_, g.ring_);
    const auto& F = f.ring_->field();
    Polynomial r(f.ring_);
    r.terms_.reserve(f.terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < f.terms_.size() || j < g.terms_.size()) {
      if (j == g.terms_.size() || (i < f.terms_.size() && grevlex(f.terms_[i].monomial, g.terms_[j].monomial) > 0)) {
        r.terms_.push_back(f.terms_[i++]);
      } else if (i == f.terms_.size() || grevlex(f.terms_[i].monomial, g.terms_[j].monomial) < 0) {
        Term t = g.terms_[j++];
        if (subtract) t.coefficient = F.neg(t.coefficient);
        r.terms_.push_back(std::move(t));
      } else {
        Residue c = subtract ? F.sub(f.terms_[i].coefficient, g.terms_[j].coefficient)
                             : F.add(f.terms_[i].coefficient, g.terms_[j].coefficient);
        if (c != 0) r.terms_.push_back({f.terms_[i].monomial, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    const auto& F = ring_->field();
    for (auto& t : terms_) {
      if (t.monomial.size() != ring_->nvars()) throw StructuralError("monomial length does not match the ring");
      t.coefficient %= F.characteristic();
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return grevlex(a.monomial, b.monomial) > 0; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().monomial == t.monomial)
        merged.back().coefficient = F.add(merged.back().coefficient, t.coefficient);
      else
        merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return t.coefficient == 0; });
    terms_ = std::move(merged);
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

}  // namespace ftest
