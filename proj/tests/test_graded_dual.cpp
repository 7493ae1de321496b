#include "oracles.hpp"
#include "support.hpp"

using namespace hsk;
using namespace hsk::test;

namespace {

template <CoefficientField F>
Ring<F> small_ring(const F& field, Rng& rng) {
  return Ring<F>(field, static_cast<std::size_t>(uniform(rng, 1, 3)));
}

template <CoefficientField F>
MultiDerivation<F> der(const Ring<F>& ring, const std::string& s) {
  return MultiDerivation<F>::from_derivation(Op(ring, s));
}

mpz_class axiom5_coefficient(unsigned long i, unsigned long j) {
  mpz_class jf = oracle::factorial(j), pw;
  mpz_pow_ui(pw.get_mpz_t(), jf.get_mpz_t(), i);
  return oracle::factorial(i * j) / (oracle::factorial(i) * pw);
}

}  // namespace

TEST(MdEval, Examples) {
  const Ring<RationalField> q(RationalField(), 3);
  const auto delta = der(q, "x2*D[1,0,0] + x1^2*D[0,0,1]");
  const auto z = zeta(delta, 2);
  EXPECT_EQ(md_eval(z, {P(q, "x1"), P(q, "x3")}), P(q, "x1^2*x2"));
  EXPECT_EQ(md_eval(MultiDerivation<RationalField>::from_poly(P(q, "3*x2")), {}), P(q, "3*x2"));
  EXPECT_TRUE(md_eval(z, {P(q, "x1"), P(q, "5")}).is_zero());
  EXPECT_EQ(md_eval(delta, {P(q, "x1*x3")}), op_apply(delta.to_derivation(), P(q, "x1*x3")));
  EXPECT_THROW(md_eval(z, {P(q, "x1")}), std::invalid_argument);
}

TEST(MdEval, SymmetricAndMultilinear) {
  for_each_field([](const auto& field) {
    Rng rng(201);
    for (int c = 0; c < 100; ++c) {
      const auto ring = small_ring(field, rng);
      const auto u = random_multider(ring, 3, 2, rng);
      auto fs = std::vector{random_poly(ring, 2, 3, rng), random_poly(ring, 2, 3, rng), random_poly(ring, 2, 3, rng)};
      const auto v = md_eval(u, fs);
      std::swap(fs[0], fs[2]);
      ASSERT_EQ(md_eval(u, fs), v);
      std::swap(fs[1], fs[2]);
      ASSERT_EQ(md_eval(u, fs), v);
      const auto g = random_poly(ring, 2, 3, rng);
      auto gs = fs;
      gs[0] = g;
      auto hs = fs;
      hs[0] = fs[0] + g;
      ASSERT_EQ(md_eval(u, hs), v + md_eval(u, gs));
    }
  });
}

TEST(Shuffle, Examples) {
  const Ring<RationalField> q(RationalField(), 2);
  const auto d = der(q, "x2*D[1,0] + D[0,1]"), e = der(q, "x1^2*D[0,1]");
  const auto de = shuffle(d, e);
  EXPECT_EQ(md_eval(de, {P(q, "x1"), P(q, "x2")}), P(q, "x1^2*x2"));
  EXPECT_EQ(md_eval(de, {P(q, "x1"), P(q, "x2")}),
            md_eval(d, {P(q, "x1")}) * md_eval(e, {P(q, "x2")}) + md_eval(d, {P(q, "x2")}) * md_eval(e, {P(q, "x1")}));
  EXPECT_EQ(shuffle(d, MultiDerivation<RationalField>::unit(q)), d);
  const Ring<PrimeField> f2(PrimeField(2), 1);
  const auto u = der(f2, "D[1]");
  EXPECT_TRUE(shuffle(u, u).value(MultiIndex{2}).is_zero());
  EXPECT_TRUE(oracle::shuffle_value(u, u, MultiIndex{2}).is_zero());
}

TEST(Shuffle, RingLaws) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(203);
    for (int c = 0; c < 200; ++c) {
      const auto ring = small_ring(field, rng);
      auto deg = [&] { return static_cast<std::uint32_t>(uniform(rng, 0, 3)); };
      const auto u = random_multider(ring, deg(), 2, rng), v = random_multider(ring, deg(), 2, rng),
                 w = random_multider(ring, deg(), 1, rng);
      ASSERT_EQ(u * v, v * u);
      ASSERT_EQ((u * v) * w, u * (v * w));
      ASSERT_EQ(u * MultiDerivation<F>::unit(ring), u);
      const auto a = random_poly(ring, 2, 2, rng);
      const auto v2 = random_multider(ring, v.degree(), 2, rng);
      ASSERT_EQ(u * (v + v2), u * v + u * v2);
      ASSERT_EQ((a * u) * v, a * (u * v));
    }
  });
}

TEST(Shuffle, MatchesSubsetSum) {
  for_each_field([](const auto& field) {
    Rng rng(207);
    for (int c = 0; c < 500; ++c) {
      const auto ring = small_ring(field, rng);
      const auto i = static_cast<std::uint32_t>(uniform(rng, 0, 3)), j = static_cast<std::uint32_t>(uniform(rng, 0, 3));
      const auto u = random_multider(ring, i, 2, rng), v = random_multider(ring, j, 2, rng);
      const auto uv = shuffle(u, v);
      for (const auto& g : indices_of_degree(ring.nvars, i + j)) ASSERT_EQ(uv.value(g), oracle::shuffle_value(u, v, g));
    }
  });
}

TEST(DividedPower, Examples) {
  const Ring<RationalField> q(RationalField(), 2);
  const auto d = der(q, "x2*D[1,0] + 3*D[0,1]");
  EXPECT_EQ(divided_power(d, 0), MultiDerivation<RationalField>::unit(q));
  EXPECT_EQ(divided_power(d, 1), d);
  const auto r2 = divided_power(d, 2);
  EXPECT_EQ(r2.value(MultiIndex{1, 1}), P(q, "3*x2"));
  EXPECT_EQ(r2.value(MultiIndex{2, 0}), P(q, "x2^2"));
  EXPECT_THROW(divided_power(MultiDerivation<RationalField>::unit(q), 2), std::invalid_argument);
  EXPECT_THROW(divided_power(d, 25), DeskScaleExceeded);
}

TEST(DividedPower, MatchesSetPartitions) {
  for_each_field([](const auto& field) {
    Rng rng(211);
    for (int c = 0; c < 150; ++c) {
      const auto ring = small_ring(field, rng);
      const auto d = static_cast<std::uint32_t>(uniform(rng, 1, 2));
      const auto i = static_cast<std::uint32_t>(uniform(rng, 0, d == 1 ? 4 : 3));
      const auto u = random_multider(ring, d, 2, rng);
      const auto r = divided_power(u, i);
      for (const auto& g : indices_of_degree(ring.nvars, i * d)) ASSERT_EQ(r.value(g), oracle::divided_power_value(u, i, g));
    }
  });
}

TEST(DividedPower, FactorialScalingOverRationals) {
  const RationalField q;
  Rng rng(213);
  for (int c = 0; c < 500; ++c) {
    const auto ring = small_ring(q, rng);
    const auto d = static_cast<std::uint32_t>(uniform(rng, 1, 2));
    const auto i = static_cast<std::uint32_t>(uniform(rng, 0, 3));
    const auto u = random_multider(ring, d, 1, rng);
    auto pw = MultiDerivation<RationalField>::unit(ring);
    for (std::uint32_t k = 0; k < i; ++k) pw = pw * u;
    ASSERT_EQ(pw, q.from_integer(oracle::factorial(i)) * divided_power(u, i));
  }
}

TEST(DividedPower, Axioms) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    using MD = MultiDerivation<F>;
    Rng rng(217);
    for (int c = 0; c < 40; ++c) {
      const auto ring = small_ring(field, rng);
      const auto d = static_cast<std::uint32_t>(uniform(rng, 1, 2));
      const auto u = random_multider(ring, d, 1, rng), v = random_multider(ring, d, 1, rng);
      const auto lambda = random_poly(ring, 1, 2, rng);
      const auto i = static_cast<std::uint32_t>(uniform(rng, 0, 3)), j = static_cast<std::uint32_t>(uniform(rng, 1, 3));
      ASSERT_EQ(divided_power(u, 0), MD::unit(ring));
      ASSERT_EQ(divided_power(u, 1), u);
      ASSERT_EQ(divided_power(u, i) * divided_power(u, j), field.from_integer(oracle::binomial(i + j, i)) * divided_power(u, i + j));
      MD sum(ring, i * d);
      for (std::uint32_t a = 0; a <= i; ++a) sum += divided_power(u, a) * divided_power(v, i - a);
      ASSERT_EQ(divided_power(u + v, i), sum);
      ASSERT_EQ(divided_power(lambda * u, i), lambda.pow(i) * divided_power(u, i));
      ASSERT_EQ(divided_power(divided_power(u, j), i), field.from_integer(axiom5_coefficient(i, j)) * divided_power(u, i * j));
    }
  });
  EXPECT_EQ(axiom5_coefficient(3, 3), 280);
  EXPECT_EQ(axiom5_coefficient(2, 2), 3);
}

TEST(Zeta, Examples) {
  const Contra ex;
  const auto delta = MultiDerivation<PrimeField>::from_derivation(ex.delta);
  EXPECT_EQ(zeta(delta, 0), MultiDerivation<PrimeField>::unit(ex.ring));
  EXPECT_EQ(zeta(delta, 2).value(MultiIndex{0, 0, 2}), P(ex.ring, "x2^4"));
  EXPECT_TRUE(zeta(MultiDerivation<PrimeField>(ex.ring, 1), 3).is_zero());
  EXPECT_THROW(zeta(zeta(delta, 2), 1), std::invalid_argument);
}

TEST(Zeta, ExponentialType) {
  for_each_field([](const auto& field) {
    Rng rng(219);
    for (int c = 0; c < 100; ++c) {
      const auto ring = small_ring(field, rng);
      const auto d = random_multider(ring, 1, 2, rng);
      const auto i = static_cast<std::uint32_t>(uniform(rng, 0, 3)), j = static_cast<std::uint32_t>(uniform(rng, 0, 3));
      ASSERT_EQ(zeta(d, i) * zeta(d, j), field.from_integer(oracle::binomial(i + j, i)) * zeta(d, i + j));
      ASSERT_EQ(zeta(d, i), divided_power(d, i));
    }
  });
}

TEST(Theta, Examples) {
  const Ring<RationalField> q(RationalField(), 1);
  EXPECT_EQ(theta(Op(q, "x1^2 + 1"), 0), MultiDerivation<RationalField>::from_poly(P(q, "x1^2 + 1")));
  EXPECT_EQ(theta(Op(q, "x1*D[1]"), 1), der(q, "x1*D[1]"));
  EXPECT_EQ(theta(Op(q, "D[2]"), 2).value(MultiIndex{2}), P(q, "1"));
  EXPECT_EQ(theta_alternating_sum(Op(q, "D[2]"), {P(q, "x1"), P(q, "x1")}), P(q, "1"));
  EXPECT_THROW(theta(Op(q, "D[2]"), 1), std::invalid_argument);
}

TEST(Theta, EqualsTopCoefficients) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(223);
    for (int c = 0; c < 150; ++c) {
      const auto ring = small_ring(field, rng);
      const auto n = static_cast<std::uint32_t>(uniform(rng, 0, 4));
      const auto p = random_diffop(ring, n, 2, 3, rng);
      const auto t = theta(p, n);
      for (const auto& g : indices_of_degree(ring.nvars, n)) ASSERT_EQ(t.value(g), p.coeff(g));
      // The kernel is exactly the operators of lower order.
      ASSERT_EQ(t.is_zero(), p.has_order_at_most(static_cast<std::int64_t>(n) - 1));
      // Every multiderivation is hit.
      const auto u = random_multider(ring, n, 2, rng);
      DiffOp<F> lift(ring);
      for (const auto& [a, v] : u.values()) lift.add_term(a, v);
      ASSERT_EQ(theta(lift, n), u);
    }
  });
}

TEST(Theta, Multiplicative) {
  for_each_field([](const auto& field) {
    Rng rng(227);
    for (int c = 0; c < 200; ++c) {
      const auto ring = small_ring(field, rng);
      const auto total = static_cast<std::uint32_t>(uniform(rng, 0, 5));
      const auto a = static_cast<std::uint32_t>(uniform(rng, 0, total)), b = total - a;
      const auto p = random_diffop(ring, a, 2, 3, rng), q = random_diffop(ring, b, 2, 3, rng);
      ASSERT_EQ(theta(op_compose(p, q), a + b), shuffle(theta(p, a), theta(q, b)));
    }
  });
}

TEST(Theta, CommutesWithZetaOnHSComponents) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(229);
    for (int c = 0; c < 100; ++c) {
      const auto ring = small_ring(field, rng);
      const int m = static_cast<int>(uniform(rng, 1, 5));
      const auto d = random_hs(ring, m, 1, rng);
      const auto d1 = MultiDerivation<F>::from_derivation(d.component(1));
      for (int n = 0; n <= m; ++n) ASSERT_EQ(theta(d.component(n), static_cast<std::uint32_t>(n)), zeta(d1, static_cast<std::uint32_t>(n)));
    }
  });
}

TEST(SderPoisson, Examples) {
  const Ring<RationalField> q(RationalField(), 2);
  const auto d = Op(q, "x2*D[1,0]"), e = Op(q, "x1^2*D[0,1]");
  const auto lie = op_compose(d, e) - op_compose(e, d);
  EXPECT_EQ(sder_poisson(MultiDerivation<RationalField>::from_derivation(d), MultiDerivation<RationalField>::from_derivation(e)),
            MultiDerivation<RationalField>::from_derivation(lie));
  const auto h = zeta(MultiDerivation<RationalField>::from_derivation(d), 2);
  const auto a = P(q, "x1*x2");
  const auto ha = sder_poisson(h, MultiDerivation<RationalField>::from_poly(a));
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_EQ(md_eval(ha, {Poly<RationalField>::variable(q, i)}), md_eval(h, {Poly<RationalField>::variable(q, i), a}));
  EXPECT_THROW(sder_poisson(MultiDerivation<RationalField>::unit(q), MultiDerivation<RationalField>::unit(q)),
               std::invalid_argument);
}

TEST(SderPoisson, AntisymmetricAndCompatibleWithTheta) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(233);
    for (int c = 0; c < 150; ++c) {
      const auto ring = small_ring(field, rng);
      const auto r = static_cast<std::uint32_t>(uniform(rng, 0, 3)), s = static_cast<std::uint32_t>(uniform(rng, r == 0 ? 1 : 0, 3));
      const auto u = random_multider(ring, r, 2, rng), v = random_multider(ring, s, 2, rng);
      ASSERT_EQ(sder_poisson(u, v), -sder_poisson(v, u));
      const auto p = random_diffop(ring, r, 2, 3, rng), q = random_diffop(ring, s, 2, 3, rng);
      ASSERT_EQ(theta(poisson(Symbol<F>(p, r), Symbol<F>(q, s))), sder_poisson(theta(p, r), theta(q, s)));
    }
  });
}

TEST(Rendering, MultiDerivation) {
  const Contra ex;
  const auto z = zeta(MultiDerivation<PrimeField>::from_derivation(ex.delta), 2);
  EXPECT_EQ(z.to_string(default_names(3)), "deg 2:\n  dx^[0,0,2] -> x2^4");
}
