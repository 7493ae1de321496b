#pragma once

#include <gtest/gtest.h>

#include "hskernel/hskernel.hpp"
#include "hskernel/random.hpp"

namespace hsk::test {

/// Calls fn once per coefficient field exercised by the suites.
template <class Fn>
void for_each_field(Fn&& fn) {
  fn(PrimeField(2));
  fn(PrimeField(3));
  fn(PrimeField(5));
  fn(RationalField());
}

template <CoefficientField F>
std::vector<Poly<F>> vars(const Ring<F>& ring) {
  std::vector<Poly<F>> v;
  for (std::size_t i = 0; i < ring.nvars; ++i) v.push_back(Poly<F>::variable(ring, i));
  return v;
}

template <CoefficientField F>
Poly<F> P(const Ring<F>& ring, const std::string& s) {
  return parse_poly(ring, default_names(ring.nvars), s);
}

template <CoefficientField F>
DiffOp<F> Op(const Ring<F>& ring, const std::string& s) {
  return parse_diffop(ring, default_names(ring.nvars), s);
}

/// The characteristic-2 example: F = x1^2 + x2^3 + x3^2 and the length-4 Phi.
struct Contra {
  using K = PrimeField;
  Ring<K> ring{K(2), 3};
  Poly<K> f = P(ring, "x1^2 + x2^3 + x3^2");
  HSDerivation<K> phi4 = HSDerivation<K>::from_higher_terms(
      ring, 4, {{P(ring, "0"), P(ring, "0"), P(ring, "0"), P(ring, "0")},
                {P(ring, "0"), P(ring, "x2^2"), P(ring, "0"), P(ring, "x2^3")},
                {P(ring, "x2^2"), P(ring, "0"), P(ring, "0"), P(ring, "0")}});
  HSDerivation<K> dpp = HSDerivation<K>::from_higher_terms(
      ring, 3, {{P(ring, "0"), P(ring, "1"), P(ring, "0")}, {P(ring, "0"), P(ring, "0"), P(ring, "0")},
                {P(ring, "0"), P(ring, "0"), P(ring, "0")}});
  DiffOp<K> delta = Op(ring, "x2^2*D[0,0,1]");
  std::string str(const DiffOp<K>& d) const { return d.to_string(); }
};

}  // namespace hsk::test
