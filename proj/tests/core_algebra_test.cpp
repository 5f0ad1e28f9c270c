#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace ftest;
using ftest::testing::I;

namespace {

RingPtr ring2(std::uint64_t p) { return make_ring(p, {"x", "y"}); }

}  // namespace

TEST(PrimeField, RejectsComposites) {
  EXPECT_NO_THROW(PrimeField(2));
  EXPECT_NO_THROW(PrimeField(2147483647));
  EXPECT_THROW(PrimeField(4), DomainError);
  EXPECT_THROW(PrimeField(1), DomainError);
  EXPECT_THROW(PrimeField(561), DomainError);  // Carmichael
  EXPECT_THROW(PrimeField(std::uint64_t{1} << 31), DomainError);
}

TEST(PrimeField, MillerRabinMatchesTrialDivision) {
  auto trial = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), trial(n)) << n;
}

TEST(PolyMul, FreshmansDreamInCharTwo) {
  auto R = ring2(2);
  auto f = parse_polynomial("x + y", R);
  EXPECT_EQ(f * f, parse_polynomial("x^2 + y^2", R));
}

TEST(PolyMul, Identity) {
  auto R = ring2(5);
  auto f = parse_polynomial("3x^2y + 4y + 1", R);
  EXPECT_EQ(f * Polynomial::constant(R, 1), f);
}

TEST(PolyMul, HandExpansionOverF3) {
  auto R = make_ring(3, {"x"});
  EXPECT_EQ(parse_polynomial("x + 1", R) * parse_polynomial("x + 2", R), parse_polynomial("x^2 + 2", R));
}

TEST(PolyMul, AmbientMismatchIsStructural) {
  auto f = parse_polynomial("x", ring2(2));
  auto g = parse_polynomial("x", ring2(3));
  EXPECT_THROW(f * g, StructuralError);
  EXPECT_THROW(ideal_product(Ideal::principal(f), Ideal::principal(g)), StructuralError);
}

TEST(PolyMul, TermCountBound) {
  std::mt19937_64 rng(7);
  auto R = ring2(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Term> a, b;
    for (int i = 0; i < 5; ++i) a.push_back({Monomial({rng() % 4, rng() % 4}), 1 + rng() % 6});
    for (int i = 0; i < 4; ++i) b.push_back({Monomial({rng() % 4, rng() % 4}), 1 + rng() % 6});
    Polynomial f(R, a), g(R, b);
    EXPECT_LE((f * g).size(), f.size() * g.size());
    EXPECT_EQ(f * g, g * f);
  }
}

TEST(IdealPower, Examples) {
  EXPECT_EQ(ideal_power(I("p=2; vars=x,y; gens=[x, y]"), 2), I("p=2; vars=x,y; gens=[x^2, x*y, y^2]"));
  EXPECT_TRUE(ideal_power(I("p=2; vars=x,y; gens=[x, y]"), 0).is_unit());
  EXPECT_EQ(ideal_power(I("p=2; vars=x,y; gens=[x^2, y^3]"), 2), I("p=2; vars=x,y; gens=[x^4, x^2*y^3, y^6]"));
}

TEST(IdealPower, MatchesMultisetEnumeration) {
  std::mt19937_64 rng(11);
  auto R = make_ring(2, {"x", "y", "z"});
  for (int trial = 0; trial < 40; ++trial) {
    Ideal a = ftest::testing::random_monomial_ideal(rng, R, 3, 3);
    unsigned N = 1 + trial % 4;
    auto oracle = Ideal::from_monomials(R, ftest::testing::brute_force_power(a.monomial_generators(), N, 3));
    EXPECT_EQ(ideal_power(a, N), oracle);
  }
}

TEST(IdealPower, AdditiveInExponent) {
  std::mt19937_64 rng(12);
  auto R = make_ring(3, {"x", "y", "z"});
  for (int trial = 0; trial < 60; ++trial) {
    Ideal a = ftest::testing::random_monomial_ideal(rng, R, 4, 4);
    unsigned M = rng() % 4, N = rng() % 4;
    EXPECT_EQ(ideal_power(a, M + N), ideal_product(ideal_power(a, M), ideal_power(a, N)));
  }
}

TEST(IdealPower, GeneralIdealRespectsDegreeCap) {
  Ideal a = I("p=3; vars=x,y; gens=[x^2 + y]");
  PowerOptions opts;
  opts.degree_cap = 10;
  EXPECT_NO_THROW(ideal_power(a, 5, opts));
  EXPECT_THROW(ideal_power(a, 6, opts), ResourceError);
}

TEST(IdealProduct, Examples) {
  EXPECT_EQ(ideal_product(I("p=2; vars=x,y; gens=[x]"), I("p=2; vars=x,y; gens=[y]")), I("p=2; vars=x,y; gens=[x*y]"));
  auto a = I("p=5; vars=x,y; gens=[x^2 + y, x*y]");
  EXPECT_EQ(ideal_product(a, Ideal::unit(a.ring())), a);
  auto m = I("p=2; vars=x,y; gens=[x, y]");
  EXPECT_EQ(ideal_product(m, m), ideal_power(m, 2));
  EXPECT_EQ(ideal_product(m, m), I("p=2; vars=x,y; gens=[x^2, x*y, y^2]"));
}

TEST(Groebner, Examples) {
  {
    auto gb = I("p=3; vars=x,y; gens=[x]").groebner();
    ASSERT_EQ(gb.size(), 1u);
    EXPECT_EQ(print_polynomial(gb[0]), "x");
  }
  for (std::uint64_t p : {2, 3, 5, 7}) {
    auto a = parse_ideal("p=" + std::to_string(p) + "; vars=x,y; gens=[x^2 + y, y]");
    auto gb = groebner_basis(a.generators());
    ASSERT_EQ(gb.size(), 2u);
    EXPECT_EQ(print_generators(gb), "[x^2, y]");
  }
  auto mono = I("p=2; vars=x,y; gens=[x^2, x^3*y, y^2, x*y^4]");
  EXPECT_EQ(print_generators(mono.groebner()), "[x^2, y^2]");
}

TEST(Groebner, IdempotentAndDeterministic) {
  std::mt19937_64 rng(5);
  auto R = make_ring(5, {"x", "y", "z"});
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Polynomial> gens;
    for (int g = 0; g < 3; ++g) {
      std::vector<Term> t;
      for (int k = 0; k < 3; ++k) t.push_back({Monomial({rng() % 3, rng() % 3, rng() % 3}), 1 + rng() % 4});
      gens.emplace_back(R, t);
    }
    auto gb = groebner_basis(gens);
    EXPECT_EQ(groebner_basis(gb), gb);
    auto shuffled = gens;
    std::reverse(shuffled.begin(), shuffled.end());
    EXPECT_EQ(groebner_basis(shuffled), gb);
    for (const auto& g : gens) EXPECT_TRUE(normal_form(g, gb).is_zero());
  }
}

TEST(Groebner, PairCapAborts) {
  auto a = I("p=7; vars=x,y,z; gens=[x^3 + y*z + 1, y^3 + x*z, z^3 + x*y + z]");
  GroebnerOptions opts;
  opts.pair_cap = 1;
  EXPECT_THROW(groebner_basis(a.generators(), opts), ResourceError);
}

TEST(Containment, Examples) {
  EXPECT_TRUE(I("p=2; vars=x,y; gens=[x, y]").contains(I("p=2; vars=x,y; gens=[x^2, x*y]")));
  EXPECT_FALSE(I("p=2; vars=x,y; gens=[x^2]").contains(I("p=2; vars=x,y; gens=[x]")));
  EXPECT_TRUE(I("p=3; vars=x,y; gens=[x^2, y]").contains(I("p=3; vars=x,y; gens=[x^2 + y]")));
  EXPECT_FALSE(I("p=3; vars=x,y; gens=[x^2 + y]").contains(I("p=3; vars=x,y; gens=[x^2, y]")));
}

TEST(Containment, MonotoneAndEqualityIsEquivalence) {
  std::mt19937_64 rng(99);
  auto R = make_ring(2, {"x", "y", "z"});
  for (int trial = 0; trial < 300; ++trial) {
    Ideal a = ftest::testing::random_monomial_ideal(rng, R, 3, 3);
    Ideal b = ideal_sum(ideal_product(a, ftest::testing::random_monomial_ideal(rng, R, 2, 2)),
                        ideal_product(a, ftest::testing::random_monomial_ideal(rng, R, 2, 2)));
    Ideal c = ideal_product(b, ftest::testing::random_monomial_ideal(rng, R, 2, 2));
    ASSERT_TRUE(a.contains(b));
    ASSERT_TRUE(b.contains(c));
    EXPECT_TRUE(a.contains(c));
    EXPECT_EQ(a, a);
    EXPECT_EQ(a == b, b == a);
    // generator-set equality for minimalized monomial ideals
    EXPECT_EQ(a == b, a.monomial_generators() == b.monomial_generators());
  }
}

TEST(Containment, MixedMonomialAndGeneral) {
  auto R = make_ring(3, {"x", "y"});
  Ideal general(R, {parse_polynomial("x^2 + x*y", R), parse_polynomial("x*y", R)});
  EXPECT_EQ(general, I("p=3; vars=x,y; gens=[x^2, x*y]"));
  ASSERT_TRUE(general.as_monomial().has_value());
}

TEST(IdealText, ParseExamples) {
  auto a = I("p=2; vars=x,y; gens=[x^2, x*y]");
  EXPECT_TRUE(a.is_monomial());
  EXPECT_EQ(a.generators().size(), 2u);
  auto b = I("p=3; vars=x,y; gens=[x^3 + x*y^3]");
  EXPECT_FALSE(b.is_monomial());
  EXPECT_EQ(b.generators().size(), 1u);
  try {
    I("p=4; vars=x; gens=[x]");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("p must be prime"), std::string::npos);
  }
}

TEST(IdealText, SyntaxErrorsCarryPosition) {
  try {
    I("p=2; vars=x,y; gens=[x^, y]");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 23u);
  }
  EXPECT_THROW(I("p=2; vars=x,y; gens=[z]"), ParseError);
  EXPECT_THROW(I("p=2 vars=x; gens=[x]"), ParseError);
  EXPECT_THROW(I("p=2; vars=x; gens=[x] junk"), ParseError);
}

TEST(IdealText, OptionalStarsAndCoefficients) {
  auto R = make_ring(5, {"x", "y"});
  EXPECT_EQ(parse_polynomial("3x^2y - y + 7", R), parse_polynomial("3*x^2*y + 4*y + 2", R));
  EXPECT_EQ(parse_polynomial("xy", R), parse_polynomial("x*y", R));
  EXPECT_EQ(parse_polynomial("x y^2", R), parse_polynomial("x*y^2", R));
}

TEST(IdealText, RoundTripIsExact) {
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {2, 3, 5, 11}) {
    auto R = make_ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Polynomial> gens;
      for (int g = 0; g < 2; ++g) {
        std::vector<Term> t;
        for (int k = 0; k < 3; ++k) t.push_back({Monomial({rng() % 3, rng() % 3, rng() % 3}), rng() % p});
        gens.emplace_back(R, t);
      }
      Ideal a(R, gens);
      std::string text = print_ideal(a);
      Ideal back = parse_ideal(text);
      EXPECT_EQ(back, a);
      EXPECT_EQ(print_ideal(back), text);
    }
  }
  EXPECT_EQ(print_ideal(Ideal::zero(make_ring(2, {"x"}))), "p=2; vars=x; gens=[]");
  EXPECT_EQ(print_ideal(Ideal::unit(make_ring(2, {"x"}))), "p=2; vars=x; gens=[1]");
}

TEST(Rationals, RoundTripAndFloorCeil) {
  for (const char* s : {"0", "3", "-7", "5/2", "-3/4", "12/8"}) {
    Rational r = parse_rational(s);
    EXPECT_EQ(parse_rational(to_string(r)), r);
  }
  EXPECT_EQ(to_string(parse_rational("12/8")), "3/2");
  EXPECT_EQ(floor_of(Rational(-3, 2)), -2);
  EXPECT_EQ(ceil_of(Rational(-3, 2)), -1);
  EXPECT_EQ(ceil_of(Rational(7, 2)), 4);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
}
