#include "oracles.hpp"
#include "support.hpp"

using namespace hsk;
using namespace hsk::test;

TEST(DeltaApply, Examples) {
  const Ring<RationalField> q(RationalField(), 2);
  const Ring<PrimeField> f2(PrimeField(2), 2);
  EXPECT_EQ(delta_apply(MultiIndex{0, 1}, P(q, "x1*x2^2")), P(q, "2*x1*x2"));
  EXPECT_TRUE(delta_apply(MultiIndex{0, 1}, P(f2, "x1*x2^2")).is_zero());
  EXPECT_EQ(delta_apply(MultiIndex{1, 1}, P(q, "x1*x2")), P(q, "1"));
}

TEST(DeltaApply, MatchesTermwiseOracle) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(3);
    for (int c = 0; c < 300; ++c) {
      const Ring<F> ring(field, static_cast<std::size_t>(uniform(rng, 1, 3)));
      const auto a = random_index(ring.nvars, 4, rng);
      const auto f = random_poly(ring, 6, 5, rng);
      ASSERT_EQ(delta_apply(a, f), oracle::delta_apply(a, f));
    }
  });
}

TEST(OpApply, CharacteristicTwoExample) {
  const Contra ex;
  const auto& r = ex.ring;
  const auto d2 = Op(r, "x2^4*D[0,0,2] + x2^2*D[0,1,0]");
  EXPECT_EQ(op_apply(d2, P(r, "x3^2")), P(r, "x2^4"));
  // t^2 coefficient of (x3 + x2^2 t)^2.
  EXPECT_EQ(op_apply(d2, P(r, "x3^2")), oracle::substitute(P(r, "x3^2"), ex.phi4.images())[2]);
  const auto d3 = Op(r, "x2^6*D[0,0,3] + x2^4*D[0,1,1]");
  EXPECT_EQ(op_apply(d3, P(r, "x2*x3")), P(r, "x2^4"));
  EXPECT_EQ(op_apply(d3, P(r, "x2*x3")), oracle::substitute(P(r, "x2*x3"), ex.phi4.images())[3]);
  EXPECT_EQ(op_apply(DiffOp<PrimeField>::identity(r), ex.f), ex.f);
}

TEST(OpCompose, Examples) {
  const Ring<RationalField> q2(RationalField(), 2);
  EXPECT_EQ(op_compose(Op(q2, "D[1,0]"), Op(q2, "D[0,1]")), Op(q2, "D[1,1]"));
  EXPECT_EQ(op_compose(Op(q2, "D[0,1]"), Op(q2, "D[0,1]")), Op(q2, "2*D[0,2]"));
  const Ring<PrimeField> f2(PrimeField(2), 2);
  EXPECT_TRUE(op_compose(Op(f2, "D[0,1]"), Op(f2, "D[0,1]")).is_zero());
  const Ring<RationalField> q1(RationalField(), 1);
  const auto lhs = op_compose(Op(q1, "x1*D[1]"), Op(q1, "D[1]"));
  EXPECT_EQ(lhs, Op(q1, "2*x1*D[2]"));
  for (std::uint32_t b = 0; b <= 6; ++b) {
    const auto mono = Poly<RationalField>::monomial(q1, MultiIndex{b});
    EXPECT_EQ(op_apply(lhs, mono), oracle::op_apply(Op(q1, "x1*D[1]"), oracle::op_apply(Op(q1, "D[1]"), mono)));
  }
}

TEST(OpCompose, SoundOnRandomOperators) {
  auto run = [](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(17);
    for (int c = 0; c < 500; ++c) {
      const Ring<F> ring(field, static_cast<std::size_t>(uniform(rng, 1, 3)));
      const auto p = random_diffop(ring, static_cast<std::uint32_t>(uniform(rng, 0, 4)), 2, 3, rng);
      const auto q = random_diffop(ring, static_cast<std::uint32_t>(uniform(rng, 0, 4)), 2, 3, rng);
      const auto f = random_poly(ring, 6, 5, rng);
      const auto pq = op_compose(p, q);
      ASSERT_EQ(op_apply(pq, f), op_apply(p, op_apply(q, f)));
      ASSERT_TRUE(pq.has_order_at_most(static_cast<std::int64_t>(p.order().value_or(0) + q.order().value_or(0))));
    }
  };
  run(PrimeField(2));
  run(PrimeField(3));
  run(RationalField());
}

TEST(OpCompose, AgreesWithApplyThenExtract) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(23);
    for (int c = 0; c < 150; ++c) {
      const Ring<F> ring(field, static_cast<std::size_t>(uniform(rng, 1, 3)));
      const auto p = random_diffop(ring, static_cast<std::uint32_t>(uniform(rng, 0, 3)), 2, 3, rng);
      const auto q = random_diffop(ring, static_cast<std::uint32_t>(uniform(rng, 0, 3)), 2, 3, rng);
      ASSERT_EQ(op_compose(p, q), oracle::compose(p, q)) << p.to_string() << " o " << q.to_string();
    }
  });
}

TEST(Bracket, Examples) {
  const Ring<RationalField> q1(RationalField(), 1);
  const auto x = P(q1, "x1");
  EXPECT_EQ(bracket(Op(q1, "D[1]"), x), DiffOp<RationalField>::identity(q1));
  EXPECT_TRUE(bracket(Op(q1, "3*x1^2"), P(q1, "x1 + 7")).is_zero());
  const auto b = bracket(Op(q1, "D[2]"), x);
  EXPECT_EQ(b, Op(q1, "D[1]"));
  for (std::uint32_t e = 0; e <= 6; ++e) {
    const auto mono = Poly<RationalField>::monomial(q1, MultiIndex{e});
    EXPECT_EQ(op_apply(b, mono), oracle::op_apply(Op(q1, "D[2]"), x * mono) - x * oracle::op_apply(Op(q1, "D[2]"), mono));
  }
}

TEST(Bracket, OrderDrops) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(29);
    for (int c = 0; c < 300; ++c) {
      const Ring<F> ring(field, static_cast<std::size_t>(uniform(rng, 1, 3)));
      const auto p = random_diffop(ring, static_cast<std::uint32_t>(uniform(rng, 0, 4)), 2, 3, rng);
      const auto a = random_poly(ring, 3, 3, rng);
      const auto ord = static_cast<std::int64_t>(p.order().value_or(0));
      ASSERT_TRUE(bracket(p, a).has_order_at_most(ord - 1));
    }
  });
}

TEST(IteratedBracket, SymmetricAndDropsToOrderZero) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(31);
    for (int c = 0; c < 150; ++c) {
      const Ring<F> ring(field, static_cast<std::size_t>(uniform(rng, 1, 3)));
      const auto d = static_cast<std::uint32_t>(uniform(rng, 1, 3));
      const auto p = random_diffop(ring, d, 2, 3, rng);
      std::vector<Poly<F>> xs;
      for (std::uint32_t k = 0; k < d; ++k) xs.push_back(random_poly(ring, 2, 2, rng));
      const auto b = iterated_bracket(p, xs);
      ASSERT_TRUE(b.has_order_at_most(0));
      auto perm = xs;
      std::reverse(perm.begin(), perm.end());
      ASSERT_EQ(iterated_bracket(p, perm), b);
      std::rotate(perm.begin(), perm.begin() + 1, perm.end());
      ASSERT_EQ(iterated_bracket(p, perm), b);
    }
  });
}

TEST(CoeffExtract, Examples) {
  const Contra ex;
  const Ring<RationalField> q(RationalField(), 3);
  const MultiIndex a{1, 0, 2};
  std::function<Poly<RationalField>(const MultiIndex&)> bb = [&](const MultiIndex& m) {
    return delta_apply(a, Poly<RationalField>::monomial(q, m));
  };
  EXPECT_EQ(coeff_extract(q, bb, 3), DiffOp<RationalField>::delta(q, a));

  auto slot = [&](int i) {
    std::function<Poly<PrimeField>(const Poly<PrimeField>&)> f = [&, i](const Poly<PrimeField>& g) {
      return oracle::substitute(g, ex.phi4.images())[static_cast<std::size_t>(i)];
    };
    return coeff_extract(ex.ring, f, static_cast<std::uint32_t>(i));
  };
  EXPECT_EQ(slot(2).to_string(), "x2^2*D[0,1,0] + x2^4*D[0,0,2]");
  EXPECT_EQ(slot(4), Op(ex.ring, "x2^8*D[0,0,4] + x2^6*D[0,1,2] + x2^4*D[0,2,0] + x2^3*D[0,1,0]"));
}

TEST(CoeffExtract, InvertsApplication) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(37);
    for (int c = 0; c < 100; ++c) {
      const Ring<F> ring(field, static_cast<std::size_t>(uniform(rng, 1, 3)));
      const auto d = static_cast<std::uint32_t>(uniform(rng, 0, 5));
      const auto p = random_diffop(ring, d, 2, 3, rng);
      std::function<Poly<F>(const Poly<F>&)> bb = [&](const Poly<F>& f) { return op_apply(p, f); };
      ASSERT_EQ(coeff_extract(ring, bb, d), p);
    }
  });
}

TEST(CoeffExtract, RejectsMapsOfHigherOrder) {
  const Ring<RationalField> q(RationalField(), 1);
  std::function<Poly<RationalField>(const Poly<RationalField>&)> bb = [&](const Poly<RationalField>& f) {
    return op_apply(Op(q, "D[3]"), f);
  };
  EXPECT_THROW(coeff_extract(q, bb, 2), NotAnOperator);
}

TEST(Symbol, Examples) {
  const Ring<RationalField> q1(RationalField(), 1);
  const auto s = symbol(Op(q1, "D[1]"), 1);
  EXPECT_EQ(s.principal(), Op(q1, "D[1]"));
  EXPECT_THROW(symbol(Op(q1, "D[2]"), 1), std::invalid_argument);
  EXPECT_EQ(poisson(s, symbol(Op(q1, "x1*D[1]"), 1)), s);
  EXPECT_TRUE(poisson(s, s).is_zero());
  // Lower-order terms do not affect the symbol.
  EXPECT_EQ(symbol(Op(q1, "D[2] + x1*D[1] + 3"), 2), symbol(Op(q1, "D[2]"), 2));
}

TEST(Symbol, ProductRuleOnBasis) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    const Ring<F> ring(field, 2);
    for (const auto& a : indices_up_to(2, 3))
      for (const auto& b : indices_up_to(2, 3)) {
        const auto prod = symbol(DiffOp<F>::delta(ring, a), a.total()) * symbol(DiffOp<F>::delta(ring, b), b.total());
        const auto want = binom(field, a + b, a) * symbol(DiffOp<F>::delta(ring, a + b), a.total() + b.total());
        ASSERT_EQ(prod, want);
      }
  });
}

TEST(Symbol, ProductDependsOnlyOnSymbols) {
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(41);
    for (int c = 0; c < 150; ++c) {
      const Ring<F> ring(field, static_cast<std::size_t>(uniform(rng, 1, 3)));
      const auto r = static_cast<std::uint32_t>(uniform(rng, 1, 3)), s = static_cast<std::uint32_t>(uniform(rng, 1, 3));
      const auto p = random_diffop(ring, r, 2, 3, rng), q = random_diffop(ring, s, 2, 3, rng);
      const auto p2 = p + random_diffop(ring, r - 1, 2, 3, rng), q2 = q + random_diffop(ring, s - 1, 2, 3, rng);
      const auto lhs = symbol(op_compose(p, q), r + s);
      ASSERT_EQ(lhs, symbol(op_compose(p2, q2), r + s));
      ASSERT_EQ(lhs, symbol(p, r) * symbol(q, s));
      ASSERT_EQ(poisson(symbol(p, r), symbol(q, s)), poisson(symbol(p2, r), symbol(q2, s)));
    }
  });
}

TEST(IteratedBracket, OfHSComponents) {
  // [...[D_m, x_1], ..., x_k] = sum_j (sum_{|alpha| = m-j, alpha_i > 0} prod D_{alpha_i}(x_i)) D_j
  for_each_field([](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Rng rng(43);
    for (int c = 0; c < 60; ++c) {
      const Ring<F> ring(field, static_cast<std::size_t>(uniform(rng, 1, 2)));
      const int m = static_cast<int>(uniform(rng, 1, 4));
      const auto d = random_hs(ring, m, 1, rng);
      const int k = static_cast<int>(uniform(rng, 1, m));
      std::vector<Poly<F>> xs;
      for (int i = 0; i < k; ++i) xs.push_back(random_poly(ring, 2, 2, rng));
      DiffOp<F> lhs = d.component(m);
      for (const auto& x : xs) lhs = bracket(lhs, x);
      DiffOp<F> rhs(ring);
      for (int j = 0; j <= m - k; ++j) {
        Poly<F> coef(ring);
        for (const auto& alpha : indices_of_degree(static_cast<std::size_t>(k), static_cast<std::uint32_t>(m - j))) {
          bool positive = true;
          for (int i = 0; i < k; ++i) positive = positive && alpha[static_cast<std::size_t>(i)] > 0;
          if (!positive) continue;
          Poly<F> prod = Poly<F>::one(ring);
          for (int i = 0; i < k; ++i) prod *= op_apply(d.component(static_cast<int>(alpha[static_cast<std::size_t>(i)])), xs[static_cast<std::size_t>(i)]);
          coef += prod;
        }
        rhs += coef * d.component(j);
      }
      ASSERT_EQ(lhs, rhs);
    }
  });
}

TEST(Rendering, DiffOps) {
  const Contra ex;
  EXPECT_EQ(ex.phi4.component(2).to_string(), "x2^2*D[0,1,0] + x2^4*D[0,0,2]");
  const Ring<RationalField> q(RationalField(), 2);
  EXPECT_EQ(Op(q, "-3/2*x1*D[1,0] + (x1 + x2)*D[0,2] + 5").to_string(), "5 - 3/2*x1*D[1,0] + (x1 + x2)*D[0,2]");
  EXPECT_EQ(Op(q, "0").to_string(), "0");
  Rng rng(47);
  for (int c = 0; c < 200; ++c) {
    const auto p = random_diffop(q, 3, 2, 4, rng);
    ASSERT_EQ(Op(q, p.to_string()), p) << p.to_string();
  }
}
