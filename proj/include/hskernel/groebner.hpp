#pragma once

// Ideals of R with grevlex Buchberger bases. Basis elements keep their
// coordinates over the original generators so divisions can be pulled back.

#include <algorithm>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hskernel/poly.hpp"

namespace hsk {

template <CoefficientField F>
struct GroebnerBasis {
  std::vector<Poly<F>> basis;                   // reduced, monic, sorted by leading monomial
  std::vector<std::vector<Poly<F>>> cofactors;  // basis[i] = sum_k cofactors[i][k] * generators[k]
  std::size_t pairs_processed = 0;
};

/// f = sum_k quotients[k] * divisors[k] + remainder, remainder fully reduced.
template <CoefficientField F>
struct Division {
  std::vector<Poly<F>> quotients;
  Poly<F> remainder;
};

template <CoefficientField F>
Division<F> divide(const Poly<F>& f, const std::vector<Poly<F>>& divisors) {
  const auto& ring = f.ring();
  Division<F> d{std::vector<Poly<F>>(divisors.size(), Poly<F>(ring)), Poly<F>(ring)};
  Poly<F> p = f;
  while (!p.is_zero()) {
    const MultiIndex m = p.leading_monomial();
    const auto c = p.leading_coeff();
    bool hit = false;
    for (std::size_t k = 0; k < divisors.size(); ++k) {
      const auto& g = divisors[k];
      if (g.is_zero() || !g.leading_monomial().divides(m)) continue;
      const auto shift = m - g.leading_monomial();
      const auto q = c * g.leading_coeff().inverse();
      d.quotients[k].add_term(shift, q);
      p -= g.mul_term(shift, q);
      hit = true;
      break;
    }
    if (!hit) {
      d.remainder.add_term(m, c);
      p.add_term(m, -c);
    }
  }
  return d;
}

namespace detail {

template <CoefficientField F>
std::vector<Poly<F>> combine(const std::vector<Poly<F>>& a, const Poly<F>& s, const std::vector<Poly<F>>& b) {
  // a - s*b
  std::vector<Poly<F>> r = a;
  for (std::size_t k = 0; k < r.size(); ++k)
    if (!b[k].is_zero() && !s.is_zero()) r[k] -= s * b[k];
  return r;
}

template <CoefficientField F>
GroebnerBasis<F> buchberger(const Ring<F>& ring, const std::vector<Poly<F>>& gens, std::size_t max_pairs) {
  using P = Poly<F>;
  const std::size_t ng = gens.size();
  std::vector<P> g;
  std::vector<std::vector<P>> cof;
  for (std::size_t k = 0; k < ng; ++k) {
    if (gens[k].is_zero()) continue;
    std::vector<P> c(ng, P(ring));
    const auto inv = gens[k].leading_coeff().inverse();
    c[k] = P::constant(ring, inv);
    g.push_back(inv * gens[k]);
    cof.push_back(std::move(c));
  }

  // Pairs ordered by lcm degree, then insertion.
  struct Pair {
    std::uint32_t deg;
    std::size_t i, j;
    bool operator<(const Pair& o) const { return std::tie(deg, j, i) < std::tie(o.deg, o.j, o.i); }
  };
  std::set<Pair> queue;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (MultiIndex::coprime(g[i].leading_monomial(), g[j].leading_monomial())) continue;
      queue.insert({MultiIndex::lcm(g[i].leading_monomial(), g[j].leading_monomial()).total(), i, j});
    }
  };
  for (std::size_t j = 1; j < g.size(); ++j) add_pairs(j);

  std::size_t processed = 0;
  while (!queue.empty()) {
    if (++processed > max_pairs)
      throw DeskScaleExceeded("Groebner pair cap " + std::to_string(max_pairs) + " exceeded");
    const Pair pr = *queue.begin();
    queue.erase(queue.begin());
    const auto& gi = g[pr.i];
    const auto& gj = g[pr.j];
    const auto l = MultiIndex::lcm(gi.leading_monomial(), gj.leading_monomial());
    const auto si = l - gi.leading_monomial(), sj = l - gj.leading_monomial();
    const auto one = ring.field.one();
    P s = gi.mul_term(si, one) - gj.mul_term(sj, one);
    std::vector<P> scof = cof[pr.i];
    for (std::size_t k = 0; k < ng; ++k) {
      scof[k] = cof[pr.i][k].mul_term(si, one) - cof[pr.j][k].mul_term(sj, one);
    }
    auto dv = divide(s, g);
    if (dv.remainder.is_zero()) continue;
    for (std::size_t b = 0; b < g.size(); ++b)
      if (!dv.quotients[b].is_zero()) scof = combine(scof, dv.quotients[b], cof[b]);
    const auto inv = dv.remainder.leading_coeff().inverse();
    for (auto& c : scof) c = inv * c;
    g.push_back(inv * dv.remainder);
    cof.push_back(std::move(scof));
    add_pairs(g.size() - 1);
  }

  // Minimize: drop elements whose leading monomial is divisible by another's.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j || !g[j].leading_monomial().divides(g[i].leading_monomial())) continue;
      redundant = !(g[j].leading_monomial() == g[i].leading_monomial()) || j < i;
    }
    if (!redundant) keep.push_back(i);
  }
  GroebnerBasis<F> out;
  for (auto i : keep) {
    out.basis.push_back(g[i]);
    out.cofactors.push_back(cof[i]);
  }
  // Interreduce tails.
  for (std::size_t i = 0; i < out.basis.size(); ++i) {
    std::vector<P> others;
    for (std::size_t j = 0; j < out.basis.size(); ++j) others.push_back(j == i ? P(ring) : out.basis[j]);
    const P lead = P::monomial(ring, out.basis[i].leading_monomial());
    auto dv = divide(out.basis[i] - lead, others);
    out.basis[i] = lead + dv.remainder;
    for (std::size_t j = 0; j < others.size(); ++j)
      if (!dv.quotients[j].is_zero()) out.cofactors[i] = combine(out.cofactors[i], dv.quotients[j], out.cofactors[j]);
  }
  std::vector<std::size_t> order(out.basis.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return GrevlexDescending{}(out.basis[b].leading_monomial(), out.basis[a].leading_monomial());
  });
  GroebnerBasis<F> sorted;
  for (auto i : order) {
    sorted.basis.push_back(out.basis[i]);
    sorted.cofactors.push_back(out.cofactors[i]);
  }
  sorted.pairs_processed = processed;
  return sorted;
}

}  // namespace detail

template <CoefficientField F>
class Ideal {
 public:
  using P = Poly<F>;

  Ideal() = default;
  Ideal(const Ring<F>& ring, std::vector<P> generators, std::size_t max_pairs = kMaxGroebnerPairs)
      : ring_(ring), gens_(std::move(generators)), max_pairs_(max_pairs) {
    if (gens_.empty()) throw std::invalid_argument("an ideal needs at least one generator");
    for (const auto& g : gens_)
      if (!(g.ring() == ring_)) throw ContextMismatch("ideal generator ring");
  }

  const Ring<F>& ring() const { return ring_; }
  const std::vector<P>& generators() const { return gens_; }

  /// The single nonzero generator, if the presentation has at most one.
  std::optional<P> principal_generator() const {
    std::optional<P> g;
    for (const auto& x : gens_) {
      if (x.is_zero()) continue;
      if (g) return std::nullopt;
      g = x;
    }
    return g ? g : std::optional<P>(P(ring_));
  }

  const GroebnerBasis<F>& groebner() const {
    std::call_once(cache_->once, [this] { cache_->gb = detail::buchberger(ring_, gens_, max_pairs_); });
    return cache_->gb;
  }

  /// Grevlex normal form.
  P reduce(const P& f) const { return divide(f, groebner().basis).remainder; }

  bool member(const P& f) const {
    if (auto g = principal_generator()) return member_principal(f, *g);
    return member_groebner(f);
  }
  bool member_groebner(const P& f) const { return reduce(f).is_zero(); }

  static bool member_principal(const P& f, const P& g) {
    if (g.is_zero()) return f.is_zero();
    return exact_divide(f, g).has_value();
  }

  /// f = sum_k c[k] * generators[k] + remainder, with remainder the normal form.
  Division<F> divide_by_generators(const P& f) const {
    const auto& gb = groebner();
    auto dv = divide(f, gb.basis);
    Division<F> out{std::vector<P>(gens_.size(), P(ring_)), dv.remainder};
    for (std::size_t b = 0; b < gb.basis.size(); ++b) {
      if (dv.quotients[b].is_zero()) continue;
      for (std::size_t k = 0; k < gens_.size(); ++k)
        if (!gb.cofactors[b][k].is_zero()) out.quotients[k] += dv.quotients[b] * gb.cofactors[b][k];
    }
    return out;
  }

 private:
  struct Cache {
    std::once_flag once;
    GroebnerBasis<F> gb;
  };
  Ring<F> ring_{};
  std::vector<P> gens_;
  std::size_t max_pairs_ = kMaxGroebnerPairs;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

template <CoefficientField F>
const std::vector<Poly<F>>& groebner(const Ideal<F>& I) {
  return I.groebner().basis;
}

template <CoefficientField F>
Poly<F> reduce(const Poly<F>& f, const Ideal<F>& I) {
  return I.reduce(f);
}

template <CoefficientField F>
bool member(const Poly<F>& f, const Ideal<F>& I) {
  return I.member(f);
}

}  // namespace hsk
