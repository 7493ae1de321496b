#pragma once

// Seeded generators for property checks. Deterministic for a given seed on a
// given standard library.

#include <random>
#include <vector>

#include "hskernel/graded_dual.hpp"
#include "hskernel/hs.hpp"

namespace hsk {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

template <CoefficientField F>
typename F::element random_scalar(const F& field, Rng& rng) {
  if (field.characteristic() == 0) {
    auto num = field.from_int(uniform(rng, -4, 4));
    if (uniform(rng, 0, 3) == 0) return num / field.from_int(uniform(rng, 1, 3));
    return num;
  }
  return field.from_int(uniform(rng, 0, static_cast<std::int64_t>(field.characteristic()) - 1));
}

template <CoefficientField F>
typename F::element random_nonzero_scalar(const F& field, Rng& rng) {
  for (;;) {
    auto c = random_scalar(field, rng);
    if (!c.is_zero()) return c;
  }
}

inline MultiIndex random_index(std::size_t n, std::uint32_t max_total, Rng& rng) {
  MultiIndex m(n);
  const auto total = static_cast<std::uint32_t>(uniform(rng, 0, max_total));
  for (std::uint32_t k = 0; k < total; ++k) ++m[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(n) - 1))];
  return m;
}

/// Up to `terms` terms of total degree <= max_deg.
template <CoefficientField F>
Poly<F> random_poly(const Ring<F>& ring, std::uint32_t max_deg, std::size_t terms, Rng& rng) {
  Poly<F> p(ring);
  const auto count = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(terms)));
  for (std::size_t t = 0; t < count; ++t) p.add_term(random_index(ring.nvars, max_deg, rng), random_scalar(ring.field, rng));
  return p;
}

template <CoefficientField F>
DiffOp<F> random_diffop(const Ring<F>& ring, std::uint32_t order, std::uint32_t max_deg, std::size_t terms, Rng& rng) {
  DiffOp<F> d(ring);
  const auto count = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(terms)));
  for (std::size_t t = 0; t < count; ++t)
    d.add_term(random_index(ring.nvars, order, rng), random_poly(ring, max_deg, 3, rng));
  return d;
}

/// Derivation with no constant term: sum a_i D^(i).
template <CoefficientField F>
DiffOp<F> random_derivation(const Ring<F>& ring, std::uint32_t max_deg, Rng& rng) {
  DiffOp<F> d(ring);
  for (std::size_t i = 0; i < ring.nvars; ++i) d.add_term(MultiIndex::unit(ring.nvars, i), random_poly(ring, max_deg, 2, rng));
  return d;
}

template <CoefficientField F>
HSDerivation<F> random_hs(const Ring<F>& ring, int m, std::uint32_t max_deg, Rng& rng) {
  std::vector<std::vector<Poly<F>>> hi(ring.nvars);
  for (auto& h : hi)
    for (int i = 1; i <= m; ++i) h.push_back(random_poly(ring, max_deg, 2, rng));
  return HSDerivation<F>::from_higher_terms(ring, m, hi);
}

template <CoefficientField F>
MultiDerivation<F> random_multider(const Ring<F>& ring, std::uint32_t degree, std::uint32_t max_deg, Rng& rng) {
  MultiDerivation<F> u(ring, degree);
  for (const auto& a : indices_of_degree(ring.nvars, degree))
    if (uniform(rng, 0, 2) != 0) u.set(a, random_poly(ring, max_deg, 2, rng));
  return u;
}

}  // namespace hsk
