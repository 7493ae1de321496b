// Total symbols and the theta map on a random HS derivation over F_3.

#include <iostream>

#include "hskernel/hskernel.hpp"
#include "hskernel/random.hpp"

using namespace hsk;
using K = PrimeField;

int main() {
  Rng rng(7);
  const Ring<K> ring(K(3), 2);
  const auto names = default_names(2);
  const auto d = random_hs(ring, 3, 1, rng);
  for (std::size_t j = 0; j < 2; ++j) std::cout << names[j] << " -> " << d.images()[j].to_string(names) << "\n";

  const auto ts = total_symbol(d);
  for (const auto& s : ts.slots()) std::cout << s.to_string(names) << "\n";
  std::cout << "exponential type: " << is_exponential_type(ts) << "\n";

  const auto d1 = MultiDerivation<K>::from_derivation(d.component(1));
  for (std::uint32_t n = 0; n <= 3; ++n) {
    const auto lhs = theta(d.component(static_cast<int>(n)), n);
    std::cout << "theta_" << n << "(D_" << n << ") == zeta_" << n << "(D_1): " << (lhs == zeta(d1, n)) << "\n";
  }
  std::cout << divided_power(d1, 2).to_string(names) << "\n";
}
