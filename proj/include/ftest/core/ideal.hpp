#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "ftest/core/groebner.hpp"
#include "ftest/core/staircase.hpp"

namespace ftest {

struct PowerOptions {
  Monomial::Exponent degree_cap = 512;  // general (non-monomial) ideals only
  std::size_t generator_cap = 400'000;
};

// Finitely generated ideal of F_p[x_1..x_n].  Monomial ideals keep a
// minimal monomial generating set; other ideals compute a reduced Groebner
// basis on first use.  Values are immutable; copies share the cache.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)) {
    std::erase_if(gens, [](const Polynomial& f) { return f.is_zero(); });
    for (const auto& g : gens) require_same_ring(ring_, g.ring());
    bool all_terms = std::all_of(gens.begin(), gens.end(), [](const Polynomial& f) { return f.is_monomial(); });
    if (all_terms) {
      std::vector<Monomial> ms;
      ms.reserve(gens.size());
      for (const auto& g : gens) ms.push_back(g.leading_monomial());
      set_monomial(std::move(ms));
    } else if (std::any_of(gens.begin(), gens.end(), [](const Polynomial& f) { return f.is_constant(); })) {
      set_monomial({Monomial(ring_->nvars())});
    } else {
      std::vector<Polynomial> monic;
      for (auto& g : gens) monic.push_back(g.monic());
      std::sort(monic.begin(), monic.end(), [](const Polynomial& a, const Polynomial& b) {
        return std::lexicographical_compare(a.terms().begin(), a.terms().end(), b.terms().begin(), b.terms().end(),
                                            [](const Term& x, const Term& y) {
                                              auto c = grevlex(x.monomial, y.monomial);
                                              return c != 0 ? c > 0 : x.coefficient < y.coefficient;
                                            });
      });
      monic.erase(std::unique(monic.begin(), monic.end()), monic.end());
      generators_ = std::move(monic);
      is_monomial_ = false;
    }
    cache_ = std::make_shared<Cache>();
  }

  static Ideal from_monomials(RingPtr ring, std::vector<Monomial> ms) {
    Ideal a(std::move(ring));
    for (const auto& m : ms)
      if (m.size() != a.ring_->nvars()) throw StructuralError("monomial length does not match the ring");
    a.set_monomial(std::move(ms));
    return a;
  }
  static Ideal zero(RingPtr ring) { return from_monomials(std::move(ring), {}); }
  static Ideal unit(RingPtr ring) {
    std::size_t n = ring->nvars();
    return from_monomials(std::move(ring), {Monomial(n)});
  }
  static Ideal principal(const Polynomial& f) { return Ideal(f.ring(), {f}); }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }
  bool is_monomial() const noexcept { return is_monomial_; }
  bool is_zero() const noexcept { return generators_.empty(); }
  // Minimal monomial generators; only valid when is_monomial().
  const std::vector<Monomial>& monomial_generators() const {
    if (!is_monomial_) throw StructuralError("not a monomial ideal");
    return monomials_;
  }
  bool is_unit() const {
    if (is_monomial_) return monomials_.size() == 1 && monomials_.front().is_one();
    const auto& gb = groebner();
    return gb.size() == 1 && gb.front().is_constant();
  }

  // Reduced Groebner basis; for monomial ideals, the minimal generators.
  const std::vector<Polynomial>& groebner(const GroebnerOptions& opts = {}) const {
    if (is_monomial_) return generators_;
    std::call_once(cache_->once, [&] {
      auto gb = groebner_basis(generators_, opts);
      for (const auto& g : generators_)
        if (!normal_form(g, gb).is_zero()) throw TheoremViolation("Groebner basis does not contain a generator");
      cache_->basis = std::move(gb);
    });
    return cache_->basis;
  }

  // Canonical generating set: reduced Groebner basis, leading monomials
  // descending.  Two ideals are equal iff these lists are equal.
  const std::vector<Polynomial>& canonical_generators() const { return groebner(); }

  // If the ideal is generated by monomials (its reduced basis is made of
  // terms), return it in monomial form.
  std::optional<Ideal> as_monomial() const {
    if (is_monomial_) return *this;
    const auto& gb = groebner();
    std::vector<Monomial> ms;
    for (const auto& g : gb) {
      if (!g.is_monomial()) return std::nullopt;
      ms.push_back(g.leading_monomial());
    }
    return from_monomials(ring_, std::move(ms));
  }

  bool contains(const Polynomial& f) const {
    require_same_ring(ring_, f.ring());
    if (f.is_zero()) return true;
    if (is_monomial_) {
      return std::all_of(f.terms().begin(), f.terms().end(),
                         [&](const Term& t) { return staircase::member(monomials_, t.monomial); });
    }
    return normal_form(f, groebner()).is_zero();
  }

  // b ⊆ *this
  bool contains(const Ideal& b) const {
    require_same_ring(ring_, b.ring_);
    if (is_monomial_ && b.is_monomial_) return staircase::contains(monomials_, b.monomials_);
    return std::all_of(b.generators_.begin(), b.generators_.end(), [&](const Polynomial& f) { return contains(f); });
  }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    if (!(*a.ring_ == *b.ring_)) return false;
    if (a.is_monomial_ && b.is_monomial_) return a.monomials_ == b.monomials_;
    return a.contains(b) && b.contains(a);
  }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Polynomial> basis;
  };

  explicit Ideal(RingPtr ring) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {}

  void set_monomial(std::vector<Monomial> ms) {
    monomials_ = staircase::minimalize(std::move(ms));
    generators_.clear();
    for (const auto& m : monomials_) generators_.push_back(Polynomial::monomial(ring_, m));
    is_monomial_ = true;
  }

  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::vector<Monomial> monomials_;
  bool is_monomial_ = true;
  std::shared_ptr<Cache> cache_;
};

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.is_monomial() && b.is_monomial()) {
    auto ms = a.monomial_generators();
    ms.insert(ms.end(), b.monomial_generators().begin(), b.monomial_generators().end());
    return Ideal::from_monomials(a.ring(), std::move(ms));
  }
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ring(), std::move(gens));
}

inline Ideal ideal_product(const Ideal& a, const Ideal& b, const PowerOptions& opts = {}) {
  require_same_ring(a.ring(), b.ring());
  if (a.is_monomial() && b.is_monomial())
    return Ideal::from_monomials(a.ring(),
                                 staircase::product(a.monomial_generators(), b.monomial_generators(), opts.generator_cap));
  if (a.generators().size() * b.generators().size() > opts.generator_cap)
    throw ResourceError("ideal product exceeds the generator cap");
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) {
      Polynomial h = f * g;
      if (!h.is_monomial() && h.total_degree() > opts.degree_cap)
        throw ResourceError("ideal product exceeds the degree cap");
      gens.push_back(std::move(h));
    }
  return Ideal(a.ring(), std::move(gens));
}

inline Ideal ideal_power(const Ideal& a, std::uint64_t N, const PowerOptions& opts = {}) {
  if (N == 0) return Ideal::unit(a.ring());
  if (a.is_monomial())
    return Ideal::from_monomials(a.ring(),
                                 staircase::power(a.monomial_generators(), N, a.ring()->nvars(), opts.generator_cap));
  if (a.generators().size() == 1) {
    const auto& f = a.generators().front();
    if (checked_mul(f.total_degree(), N) > opts.degree_cap) throw ResourceError("ideal power exceeds the degree cap");
    return Ideal::principal(f.pow(N));
  }
  Ideal acc = a;
  for (std::uint64_t k = 1; k < N; ++k) acc = ideal_product(acc, a, opts);
  return acc;
}

}  // namespace ftest
