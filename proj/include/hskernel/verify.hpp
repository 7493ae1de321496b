#pragma once

// Randomized property checks behind `hskernel run ... verify-theorems`.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hskernel/logarithmic.hpp"
#include "hskernel/random.hpp"

namespace hsk {

struct PropertyResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

struct VerifyReport {
  std::vector<PropertyResult> results;

  bool ok() const {
    for (const auto& r : results)
      if (r.failed) return false;
    return true;
  }

  std::string table() const {
    std::size_t w = 8;
    for (const auto& r : results) w = std::max(w, r.name.size());
    std::string s;
    char buf[64];
    s += "property" + std::string(w - 8, ' ') + "  passed  failed\n";
    for (const auto& r : results) {
      std::snprintf(buf, sizeof buf, "  %6zu  %6zu", r.passed, r.failed);
      s += r.name + std::string(w - r.name.size(), ' ') + buf + "\n";
    }
    for (const auto& r : results)
      if (r.failed) s += "first failure in " + r.name + ": " + r.first_failure + "\n";
    return s;
  }
};

namespace detail {

inline void tally(PropertyResult& r, bool ok, const std::function<std::string()>& describe) {
  if (ok) {
    ++r.passed;
    return;
  }
  if (!r.failed) r.first_failure = describe();
  ++r.failed;
}

inline mpz_class factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

template <CoefficientField F>
void verify_field(const F& field, std::size_t cases, Rng& rng, VerifyReport& out) {
  using P = Poly<F>;
  using Op = DiffOp<F>;
  using MD = MultiDerivation<F>;
  const std::string tag = " [" + field.name() + "]";
  auto ring_for = [&](std::size_t n) { return Ring<F>(field, n); };

  PropertyResult group{"HS group law" + tag};
  PropertyResult sigma{"total symbol multiplicative, exponential" + tag};
  PropertyResult mult{"theta multiplicative" + tag};
  PropertyResult diagram{"theta(D_n) = zeta_n(D_1)" + tag};
  PropertyResult shuf{"shuffle commutative, associative, unital" + tag};
  PropertyResult pd{"divided power axioms" + tag};
  PropertyResult pois{"theta respects Poisson brackets" + tag};
  PropertyResult obst{"obstruction corrections are logarithmic" + tag};

  for (std::size_t c = 0; c < cases; ++c) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
    const auto ring = ring_for(n);
    const auto names = default_names(n);

    {
      const int m = static_cast<int>(uniform(rng, 1, 3));
      auto d = random_hs(ring, m, 2, rng), e = random_hs(ring, m, 2, rng), g = random_hs(ring, m, 1, rng);
      const auto id = HSDerivation<F>::identity(ring, m);
      const auto inv = hs_inverse(d);
      const bool ok = hs_compose(hs_compose(d, e), g) == hs_compose(d, hs_compose(e, g)) &&
                      hs_compose(d, inv) == id && hs_compose(inv, d) == id;
      tally(group, ok, [&] { return "length " + std::to_string(m) + " in " + ring.describe(); });

      const auto sd = total_symbol(d), se = total_symbol(e);
      tally(sigma, total_symbol(hs_compose(d, e)) == sd * se && is_exponential_type(sd),
            [&] { return "length " + std::to_string(m) + " in " + ring.describe(); });

      bool dg = true;
      const auto d1 = MD::from_derivation(d.component(1));
      for (int i = 0; i <= m && dg; ++i) dg = theta(d.component(i), static_cast<std::uint32_t>(i)) == zeta(d1, static_cast<std::uint32_t>(i));
      tally(diagram, dg, [&] { return "length " + std::to_string(m) + " in " + ring.describe(); });
    }

    {
      const auto total = static_cast<std::uint32_t>(uniform(rng, 0, 5));
      const auto a = static_cast<std::uint32_t>(uniform(rng, 0, total));
      const auto b = total - a;
      const Op p = random_diffop(ring, a, 2, 3, rng), q = random_diffop(ring, b, 2, 3, rng);
      tally(mult, theta(op_compose(p, q), a + b) == theta(p, a) * theta(q, b),
            [&] { return "P = " + p.to_string(names) + ", Q = " + q.to_string(names); });
      if (a + b >= 1) {
        const auto lhs = theta(poisson(Symbol<F>(p, a), Symbol<F>(q, b)));
        tally(pois, lhs == sder_poisson(theta(p, a), theta(q, b)),
              [&] { return "P = " + p.to_string(names) + ", Q = " + q.to_string(names); });
      }
    }

    {
      auto deg = [&] { return static_cast<std::uint32_t>(uniform(rng, 0, 3)); };
      const auto u = random_multider(ring, deg(), 2, rng), v = random_multider(ring, deg(), 2, rng),
                 w = random_multider(ring, deg(), 1, rng);
      const bool ok = u * v == v * u && (u * v) * w == u * (v * w) && u * MD::unit(ring) == u;
      tally(shuf, ok, [&] { return "u = " + u.to_string(names); });
    }

    if (c % 4 == 0) {
      // Axioms on homogeneous u, v of degree <= 2 with i, j <= 3.
      const auto d = static_cast<std::uint32_t>(uniform(rng, 1, 2));
      const auto u = random_multider(ring, d, 1, rng), v = random_multider(ring, d, 1, rng);
      const auto lambda = random_poly(ring, 1, 2, rng);
      const auto i = static_cast<std::uint32_t>(uniform(rng, 0, 3)), j = static_cast<std::uint32_t>(uniform(rng, 0, 3));
      const auto k = i + j;
      bool ok = divided_power(u, 0) == MD::unit(ring) && divided_power(u, 1) == u;
      MD sum(ring, k * d);
      for (std::uint32_t a = 0; a <= k; ++a) sum += divided_power(u, a) * divided_power(v, k - a);
      ok = ok && divided_power(u + v, k) == sum;
      ok = ok && divided_power(lambda * u, k) == lambda.pow(k) * divided_power(u, k);
      ok = ok && divided_power(u, i) * divided_power(u, j) == field.binomial(k, i) * divided_power(u, k);
      if (j >= 1) {
        const mpz_class coef = factorial(i * j) / (factorial(i) * [&] {
                                 mpz_class f;
                                 mpz_pow_ui(f.get_mpz_t(), factorial(j).get_mpz_t(), i);
                                 return f;
                               }());
        ok = ok && divided_power(divided_power(u, j), i) == field.from_integer(coef) * divided_power(u, i * j);
      }
      tally(pd, ok, [&] { return "u = " + u.to_string(names) + ", i = " + std::to_string(i) + ", j = " + std::to_string(j); });
    }

    if (c % 4 == 1) {
      // F . E is logarithmic for (F); every greedy step must validate.
      auto f = random_poly(ring, 2, 3, rng);
      if (f.is_zero()) f = P::variable(ring, 0);
      const Ideal<F> J(ring, {f});
      const auto d = hs_scale(f, random_hs(ring, static_cast<int>(uniform(rng, 1, 2)), 1, rng));
      bool ok = true;
      try {
        const auto rep = obstruction_step(d, J);
        ok = !rep.ok() || is_log_hs(*rep.corrected, J);
      } catch (const std::logic_error&) {
        ok = false;
      }
      tally(obst, ok, [&] { return "F = " + f.to_string(names); });
    }
  }
  for (auto* r : {&group, &sigma, &mult, &diagram, &shuf, &pd, &pois, &obst}) out.results.push_back(std::move(*r));
}

}  // namespace detail

/// All properties over F_2, F_3, F_5 and Q, `cases` random instances each.
inline VerifyReport verify_theorems(std::uint64_t seed, std::size_t cases) {
  VerifyReport rep;
  Rng rng(seed);
  detail::verify_field(PrimeField(2), cases, rng, rep);
  detail::verify_field(PrimeField(3), cases, rng, rep);
  detail::verify_field(PrimeField(5), cases, rng, rep);
  detail::verify_field(RationalField(), cases, rng, rep);
  return rep;
}

}  // namespace hsk
