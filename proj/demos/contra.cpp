// The characteristic-2 counterexample: delta = x2^2 d/dx3 is 4-integrable along
// J = (x1^2 + x2^3 + x3^2), but D'' = (Id, 0, D^(1,0,0), 0) has no logarithmic lift.

#include <iostream>

#include "hskernel/hskernel.hpp"

using namespace hsk;
using K = PrimeField;
using P = Poly<K>;

int main() {
  const Ring<K> ring(K(2), 3);
  const auto names = default_names(3);
  const auto x1 = P::variable(ring, 0), x2 = P::variable(ring, 1), x3 = P::variable(ring, 2);
  const P zero(ring);
  const auto f = x1.pow(2) + x2.pow(3) + x3.pow(2);
  const Ideal<K> J(ring, {f});

  const auto delta = x2.pow(2) * DiffOp<K>::delta(ring, 2, 1);
  std::cout << "delta = " << delta.to_string(names) << ", J-logarithmic: " << is_log_derivation(delta, J) << "\n";

  const auto trace = step_integrate(delta, J, 4);
  std::cout << trace.to_string(names);
  for (int i = 0; i <= 4; ++i) std::cout << "  D_" << i << " = " << trace.reached->component(i).to_string(names) << "\n";

  const auto dpp = HSDerivation<K>::from_higher_terms(ring, 3, {{zero, P::one(ring), zero}, {zero, zero, zero}, {zero, zero, zero}});
  std::cout << "D'' is J-logarithmic: " << is_log_hs(dpp, J) << "\n";
  std::cout << obstruction_step(dpp, J).to_string(names) << "\n";
}
