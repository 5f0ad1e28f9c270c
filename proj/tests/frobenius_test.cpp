#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace ftest;
using ftest::testing::I;
using ftest::testing::random_monomial_ideal;

namespace {

Rational Q(long long n, long long d = 1) { return Rational(n, d); }

std::vector<Polynomial> random_polys(std::mt19937_64& rng, const RingPtr& R, int count, int terms, int max_exp) {
  std::vector<Polynomial> out;
  const std::uint64_t p = R->characteristic();
  for (int g = 0; g < count; ++g) {
    std::vector<Term> t;
    for (int k = 0; k < terms; ++k) {
      std::vector<Monomial::Exponent> e(R->nvars());
      for (auto& v : e) v = rng() % (max_exp + 1);
      t.push_back({Monomial(std::move(e)), 1 + rng() % (p - 1 == 0 ? 1 : p - 1)});
    }
    Polynomial f(R, t);
    if (!f.is_zero()) out.push_back(f);
  }
  if (out.empty()) out.push_back(Polynomial::monomial(R, Monomial::variable(R->nvars(), 0)));
  return out;
}

}  // namespace

TEST(FrobeniusPower, Examples) {
  auto R = make_ring(2, {"x", "y"});
  EXPECT_EQ(frobenius_power(I("p=2; vars=x,y; gens=[x]"), FrobeniusContext(2, 2)), I("p=2; vars=x,y; gens=[x^4]"));
  EXPECT_TRUE(frobenius_power(Ideal::unit(R), FrobeniusContext(2, 3)).is_unit());
  EXPECT_EQ(frobenius_power(I("p=2; vars=x,y; gens=[x + y]"), FrobeniusContext(2, 1)), I("p=2; vars=x,y; gens=[x^2 + y^2]"));
}

TEST(FrobeniusPower, AgreesWithPolynomialPower) {
  std::mt19937_64 rng(8);
  for (std::uint64_t p : {2, 3, 5}) {
    auto R = make_ring(p, {"x", "y"});
    for (int trial = 0; trial < 10; ++trial) {
      auto f = random_polys(rng, R, 1, 3, 3).front();
      EXPECT_EQ(frobenius_power(Ideal::principal(f), FrobeniusContext(p, 1)), Ideal::principal(f.pow(p)));
    }
  }
}

TEST(FrobeniusRoot, Examples) {
  EXPECT_EQ(frobenius_root(I("p=2; vars=x,y; gens=[x^3]"), FrobeniusContext(2, 1)), I("p=2; vars=x,y; gens=[x]"));
  for (unsigned e : {0u, 1u, 4u}) EXPECT_TRUE(frobenius_root(I("p=5; vars=x; gens=[1]"), FrobeniusContext(5, e)).is_unit());
  EXPECT_EQ(frobenius_root(I("p=3; vars=x,y; gens=[x^3 + x*y^3]"), FrobeniusContext(3, 1)), I("p=3; vars=x,y; gens=[x, y]"));
}

TEST(FrobeniusRoot, ZeroIdealRejected) {
  auto R = make_ring(2, {"x"});
  try {
    frobenius_root(Ideal::zero(R), FrobeniusContext(2, 1));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("nonzero required"), std::string::npos);
  }
  EXPECT_THROW(test_ideal(Ideal::zero(R), 1), DomainError);
}

TEST(FrobeniusRoot, ExponentZeroIsIdentity) {
  auto a = I("p=3; vars=x,y; gens=[x^2 + y, x*y^5]");
  EXPECT_EQ(frobenius_root(a, FrobeniusContext(3, 0)), a);
}

TEST(FrobeniusRoot, HugeQMonomial) {
  // q beyond 64 bits: every exponent floors to zero
  EXPECT_TRUE(frobenius_root(I("p=7; vars=x; gens=[x^100]"), FrobeniusContext(7, 40)).is_unit());
}

TEST(FrobeniusRoot, IterationMatchesSingleShotAndComposes) {
  std::mt19937_64 rng(21);
  for (std::uint64_t p : {2, 3}) {
    auto R = make_ring(p, {"x", "y"});
    for (int trial = 0; trial < 15; ++trial) {
      Ideal a(R, random_polys(rng, R, 2, 4, 9));
      for (unsigned e = 0; e <= 3; ++e) {
        Ideal r = frobenius_root(a, FrobeniusContext(p, e));
        EXPECT_EQ(r, frobenius_root_direct(a, FrobeniusContext(p, e)));
        EXPECT_EQ(frobenius_root(r, FrobeniusContext(p, 1)), frobenius_root(a, FrobeniusContext(p, e + 1)));
      }
    }
  }
}

TEST(FrobeniusRoot, MonomialComposition) {
  std::mt19937_64 rng(22);
  for (std::uint64_t p : {2, 3, 5}) {
    auto R = make_ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 20; ++trial) {
      Ideal a = random_monomial_ideal(rng, R, 4, 30);
      for (unsigned e = 0; e <= 4; ++e)
        EXPECT_EQ(frobenius_root(frobenius_root(a, FrobeniusContext(p, e)), FrobeniusContext(p, 1)),
                  frobenius_root(a, FrobeniusContext(p, e + 1)));
    }
  }
}

TEST(FrobeniusRoot, AdjunctionAndMinimality) {
  // Every monomial ideal J in a 2-variable box with a ⊆ J^{[q]} contains the root.
  std::mt19937_64 rng(23);
  auto R = make_ring(2, {"x", "y"});
  std::vector<Monomial> box;
  for (std::uint64_t i = 0; i <= 2; ++i)
    for (std::uint64_t j = 0; j <= 2; ++j) box.push_back(Monomial({i, j}));
  for (int trial = 0; trial < 25; ++trial) {
    Ideal a = random_monomial_ideal(rng, R, 3, 6);
    FrobeniusContext ctx(2, 1 + trial % 2);
    Ideal root = frobenius_root(a, ctx);
    ASSERT_TRUE(frobenius_power(root, ctx).contains(a));
    for (unsigned mask = 1; mask < (1u << box.size()); ++mask) {
      std::vector<Monomial> gens;
      for (std::size_t b = 0; b < box.size(); ++b)
        if (mask >> b & 1) gens.push_back(box[b]);
      Ideal J = Ideal::from_monomials(R, gens);
      if (frobenius_power(J, ctx).contains(a)) {
        EXPECT_TRUE(J.contains(root));
      }
    }
  }
}

TEST(FrobeniusRoot, GeneralAdjunction) {
  std::mt19937_64 rng(24);
  auto R = make_ring(3, {"x", "y"});
  for (int trial = 0; trial < 10; ++trial) {
    Ideal a(R, random_polys(rng, R, 2, 3, 7));
    FrobeniusContext ctx(3, 1);
    EXPECT_TRUE(frobenius_power(frobenius_root(a, ctx), ctx).contains(a));
  }
}

TEST(FrobeniusRoot, Monotone) {
  std::mt19937_64 rng(25);
  auto R = make_ring(3, {"x", "y", "z"});
  for (int trial = 0; trial < 60; ++trial) {
    Ideal a = random_monomial_ideal(rng, R, 3, 8);
    Ideal b = ideal_sum(a, random_monomial_ideal(rng, R, 2, 8));
    FrobeniusContext ctx(3, 1 + trial % 3);
    EXPECT_TRUE(frobenius_root(b, ctx).contains(frobenius_root(a, ctx)));
    EXPECT_TRUE(test_ideal(b, Q(3, 2)).ideal.contains(test_ideal(a, Q(3, 2)).ideal));
  }
}

TEST(RootOfPowers, DigitRecursionMatchesExpansion) {
  std::mt19937_64 rng(26);
  for (std::uint64_t p : {2, 3, 5}) {
    auto R = make_ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 25; ++trial) {
      Ideal a = random_monomial_ideal(rng, R, 4, 4);
      Ideal b = random_monomial_ideal(rng, R, 3, 3);
      unsigned e = 1 + trial % 3;
      FrobeniusContext ctx(p, e);
      std::uint64_t N = rng() % 40, M = rng() % 20;
      Ideal expanded = frobenius_root(ideal_product(ideal_power(a, N), ideal_power(b, M)), ctx);
      EXPECT_EQ(root_of_power_product({{a, N}, {b, M}}, ctx), expanded);
    }
  }
}

TEST(RootOfPowers, GeneralIdealsMatchExpansion) {
  std::mt19937_64 rng(27);
  auto R = make_ring(2, {"x", "y"});
  for (int trial = 0; trial < 8; ++trial) {
    Ideal a(R, random_polys(rng, R, 2, 2, 2));
    FrobeniusContext ctx(2, 2);
    std::uint64_t N = 6 + trial;
    EXPECT_EQ(root_of_power_product({{a, N}}, ctx), frobenius_root(ideal_power(a, N), ctx));
  }
}

TEST(TestIdeal, Examples) {
  auto r = test_ideal(I("p=2; vars=x; gens=[x]"), Q(3, 2));
  EXPECT_EQ(r.ideal, I("p=2; vars=x; gens=[x]"));
  EXPECT_EQ(r.evidence, Evidence::closed_form);

  EXPECT_TRUE(test_ideal(I("p=2; vars=x,y; gens=[x, y]"), 0).ideal.is_unit());
  EXPECT_TRUE(test_ideal(I("p=3; vars=x,y; gens=[x^2 + y^3]"), 0).ideal.is_unit());

  auto m2 = test_ideal(I("p=2; vars=x,y; gens=[x, y]"), 2);
  EXPECT_EQ(m2.ideal, I("p=2; vars=x,y; gens=[x, y]"));
  EXPECT_EQ(m2.evidence, Evidence::window_stable);

  EXPECT_TRUE(test_ideal(I("p=2; vars=x,y; gens=[x, y]"), Q(3, 2)).ideal.is_unit());
}

TEST(TestIdeal, ChainMatchesNaiveIteration) {
  auto a = I("p=2; vars=x,y; gens=[x, y]");
  for (unsigned e = 1; e <= 6; ++e) {
    FrobeniusContext ctx(2, e);
    for (Rational l : {Q(2), Q(3, 2), Q(5, 3)})
      EXPECT_EQ(root_of_power_product({{a, ExponentLambda(l).ceil_times(ctx.q())}}, ctx),
                ftest::testing::naive_chain_member(a, l, e));
  }
}

TEST(TestIdeal, PrincipalClosedForm) {
  for (std::uint64_t p : {2, 3, 5}) {
    auto R = make_ring(p, {"x", "y"});
    for (long long num = 0; num <= 20; ++num)
      for (long long den : {1, 2, 3, 7}) {
        Rational l(num, den);
        auto r = test_ideal(Ideal::from_monomials(R, {Monomial({3, 2})}), l);
        EXPECT_EQ(r.evidence, Evidence::closed_form);
        auto fx = static_cast<std::uint64_t>(floor_of(3 * l)), fy = static_cast<std::uint64_t>(floor_of(2 * l));
        EXPECT_EQ(r.ideal, Ideal::from_monomials(R, {Monomial({fx, fy})}));
      }
  }
}

TEST(TestIdeal, ChainIsAscending) {
  std::mt19937_64 rng(30);
  auto R = make_ring(2, {"x", "y", "z"});
  for (int trial = 0; trial < 30; ++trial) {
    Ideal a = random_monomial_ideal(rng, R, 4, 6);
    Rational l(1 + rng() % 8, 1 + rng() % 4);
    std::optional<Ideal> prev;
    for (unsigned e = 1; e <= 7; ++e) {
      FrobeniusContext ctx(2, e);
      Ideal J = root_of_power_product({{a, ExponentLambda(l).ceil_times(ctx.q())}}, ctx);
      if (prev) {
        EXPECT_TRUE(J.contains(*prev));
      }
      prev = J;
    }
  }
}

TEST(TestIdeal, AgreesWithNewtonPolyhedron) {
  // Monomial test ideals are cut out by the interior of the scaled Newton
  // polyhedron; compare whenever the chain reports a stable value, with a
  // longer window to avoid premature plateaus.
  std::mt19937_64 rng(31);
  TestIdealCaps caps;
  caps.window = 4;
  caps.e_max_monomial = 12;
  int compared = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::uint64_t p = trial % 2 ? 3 : 2;
    auto R = make_ring(p, {"x", "y", "z"});
    Ideal a = random_monomial_ideal(rng, R, 4, 5);
    Rational l(1 + rng() % 6, 1 + rng() % 3);
    auto r = test_ideal(a, l, caps);
    if (r.flagged()) continue;
    ++compared;
    EXPECT_EQ(r.ideal, ftest::testing::newton_test_ideal(a, l)) << print_ideal(a) << " lambda=" << to_string(l);
  }
  EXPECT_GT(compared, 40);
}

TEST(TestIdeal, ShortWindowCanStopEarly) {
  // J_e = (x, y) for e = 1, 2, 3 and (1) from e = 4 on.
  auto a = I("p=2; vars=x,y,z; gens=[x^3*y, y^3*z]");
  auto short_window = test_ideal(a, Q(1, 2));
  EXPECT_EQ(short_window.evidence, Evidence::window_stable);
  EXPECT_EQ(short_window.ideal, I("p=2; vars=x,y,z; gens=[x, y]"));
  TestIdealCaps caps;
  caps.window = 3;
  EXPECT_TRUE(test_ideal(a, Q(1, 2), caps).ideal.is_unit());
  // either way the reported ideal is a lower bound for the true one
  EXPECT_TRUE(test_ideal(a, Q(1, 2), caps).ideal.contains(short_window.ideal));
}

TEST(TestIdeal, CapReachedIsLowerBound) {
  auto a = I("p=2; vars=x,y,z; gens=[x^3*y, y^3*z]");
  TestIdealCaps caps;
  caps.e_max_monomial = 3;
  caps.window = 3;
  auto r = test_ideal(a, Q(1, 2), caps);
  EXPECT_EQ(r.evidence, Evidence::cap_reached);
  EXPECT_TRUE(r.flagged());
  EXPECT_TRUE(ftest::testing::newton_test_ideal(a, Q(1, 2)).contains(r.ideal));
}

TEST(TestIdeal, GeneralIdealPath) {
  // a smooth curve: τ((f)^λ) = (1) for λ < 1 and (f) at λ = 1
  auto f = I("p=3; vars=x,y; gens=[x^2 + y]");
  EXPECT_TRUE(test_ideal(f, Q(1, 2)).ideal.is_unit());
  EXPECT_EQ(test_ideal(f, 1).ideal, f);
  // cusp in characteristic 3 versus 5
  auto cusp3 = test_ideal(I("p=5; vars=x,y; gens=[x^2 + y^3]"), Q(1, 2));
  EXPECT_FALSE(cusp3.flagged());
  EXPECT_TRUE(cusp3.ideal.is_unit());
}

TEST(TestIdeal, Properties) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    std::uint64_t p = trial % 2 ? 3 : 2;
    auto R = make_ring(p, {"x", "y", "z"});
    Ideal a = random_monomial_ideal(rng, R, 3, 5);
    Ideal b = random_monomial_ideal(rng, R, 3, 5);
    Rational l(1 + rng() % 4, 2), mu = l / 2;
    auto ta = test_ideal(a, l), tb = test_ideal(b, l), tmu = test_ideal(a, mu);
    auto t1 = test_ideal(a, 1);
    if (!t1.flagged()) {
      EXPECT_TRUE(t1.ideal.contains(a));
    }
    if (!ta.flagged() && !tmu.flagged()) {
      EXPECT_TRUE(tmu.ideal.contains(ta.ideal));
    }
    auto tab = test_ideal(ideal_product(a, b), l);
    if (!tab.flagged() && !ta.flagged() && !tb.flagged()) {
      EXPECT_TRUE(ideal_product(ta.ideal, tb.ideal).contains(tab.ideal));
    }
    auto t2 = test_ideal(a, Rational(2 * l));
    if (!t2.flagged() && !ta.flagged()) {
      EXPECT_TRUE(ideal_power(ta.ideal, 2).contains(t2.ideal));
    }
    for (unsigned r : {2u, 3u}) {
      auto scaled = test_ideal(a, Rational(Natural(r)) * mu);
      auto powered = test_ideal(ideal_power(a, r), mu);
      if (!scaled.flagged() && !powered.flagged()) {
        EXPECT_EQ(scaled.ideal, powered.ideal);
      }
    }
  }
}

TEST(MixedTestIdeal, Examples) {
  auto a = I("p=2; vars=x,y; gens=[x^2, y^3]");
  auto b = I("p=2; vars=x,y; gens=[x*y]");
  EXPECT_EQ(mixed_test_ideal(a, Q(3, 2), b, 0).ideal, test_ideal(a, Q(3, 2)).ideal);
  EXPECT_EQ(mixed_test_ideal(I("p=2; vars=x,y; gens=[x]"), 1, I("p=2; vars=x,y; gens=[y]"), 1).ideal,
            I("p=2; vars=x,y; gens=[x*y]"));
  for (Rational l : {Q(1, 2), Q(1), Q(3, 2)}) {
    auto mixed = mixed_test_ideal(a, l, a, l);
    auto squared = test_ideal(ideal_power(a, 2), l);
    EXPECT_TRUE(squared.ideal.contains(mixed.ideal));
  }
}

TEST(MixedTestIdeal, MatchesProductChain) {
  std::mt19937_64 rng(33);
  auto R = make_ring(3, {"x", "y"});
  for (int trial = 0; trial < 20; ++trial) {
    Ideal a = random_monomial_ideal(rng, R, 3, 4), b = random_monomial_ideal(rng, R, 3, 4);
    Rational l(1 + rng() % 4, 2);
    auto mixed = mixed_test_ideal(a, l, b, l);
    auto prod = test_ideal(ideal_product(a, b), l);
    if (!mixed.flagged() && !prod.flagged()) {
      EXPECT_EQ(mixed.ideal, prod.ideal);
    }
  }
}

TEST(JumpingNumbers, Examples) {
  auto x = f_jumping_numbers(I("p=2; vars=x; gens=[x]"), 3, 8);
  EXPECT_EQ(x.jumps, (std::vector<Rational>{Q(1), Q(2), Q(3)}));
  EXPECT_TRUE(x.certified);

  auto unit = f_jumping_numbers(I("p=3; vars=x,y; gens=[1]"), 5, 4);
  EXPECT_TRUE(unit.jumps.empty());
  ASSERT_EQ(unit.plateaus.size(), 1u);
  EXPECT_TRUE(unit.plateaus[0].ideal.is_unit());

  auto m = f_jumping_numbers(I("p=2; vars=x,y; gens=[x, y]"), 3, 8);
  EXPECT_EQ(m.jumps, (std::vector<Rational>{Q(2), Q(3)}));
  ASSERT_EQ(m.plateaus.size(), 3u);
  EXPECT_EQ(m.plateaus[2].ideal, I("p=2; vars=x,y; gens=[x^2, x*y, y^2]"));
}

TEST(JumpingNumbers, NonIntegralJumps) {
  // (x^2, y^3): jumps are the values (u+1)/2 + (v+1)/3
  auto a = I("p=5; vars=x,y; gens=[x^2, y^3]");
  EXPECT_EQ(f_jumping_numbers(a, 1, 6).jumps, (std::vector<Rational>{Q(5, 6)}));
  EXPECT_EQ(f_jumping_numbers(a, Q(3, 2), 6).jumps, (std::vector<Rational>{Q(5, 6), Q(7, 6), Q(4, 3), Q(3, 2)}));
}

TEST(JumpingNumbers, PlateausMatchPointwiseEvaluation) {
  for (std::uint64_t p : {2, 3}) {
    auto R = make_ring(p, {"x", "y"});
    Ideal a = Ideal::from_monomials(R, {Monomial({2, 1}), Monomial({0, 3})});
    auto report = f_jumping_numbers(a, 3, 6);
    for (std::size_t i = 0; i < report.plateaus.size(); ++i) {
      const auto& pl = report.plateaus[i];
      Rational mid = (pl.from + pl.to) / 2;
      EXPECT_EQ(test_ideal(a, mid).ideal, pl.ideal) << to_string(mid);
      if (i > 0) {
        EXPECT_TRUE(report.plateaus[i - 1].ideal.contains(pl.ideal));
        EXPECT_FALSE(pl.ideal.contains(report.plateaus[i - 1].ideal));
      }
    }
  }
}

TEST(CeilSplit, Examples) {
  auto r = ceil_split(Q(1, 2), 1, 3, 2);
  EXPECT_EQ(r.s, 4);
  EXPECT_EQ(r.t, 1);
  EXPECT_EQ(r.lhs, 5);
  EXPECT_EQ(r.rhs, 5);
  auto z = ceil_split(Q(0), 3, 5, 4);
  EXPECT_EQ(z.lhs, 0);
  EXPECT_EQ(z.rhs, 0);
}

TEST(CeilSplit, Fuzz) {
  std::mt19937_64 rng(34);
  const std::uint64_t primes[] = {2, 3, 5, 7};
  for (int trial = 0; trial < 10000; ++trial) {
    Natural a = rng() % 21, b = 1 + rng() % 20, m = 1 + rng() % 10;
    std::uint64_t p = primes[rng() % 4];
    unsigned e = rng() % 13;
    auto r = ceil_split(a, b, m, p, e);
    Natural q = pow_natural(Natural(p), e);
    // independent check with exact rationals
    EXPECT_EQ(r.lhs, ceil_of(Rational(a, b) * Rational(q) / Rational(m)));
    EXPECT_EQ(Natural(m * b * r.s + r.t), q);
    EXPECT_LT(r.t, m * b);
  }
}
