#pragma once

// The graded dual of Sym(Omega) over the free ring: symmetric multiderivations
// stored by their values on the basis monomials dx^alpha.

#include <bit>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hskernel/diffop.hpp"

namespace hsk {

template <CoefficientField F>
class MultiDerivation {
 public:
  using P = Poly<F>;
  using K = typename F::element;
  using ValueMap = std::map<MultiIndex, P, GrevlexDescending>;

  MultiDerivation() = default;
  MultiDerivation(const Ring<F>& ring, std::uint32_t degree) : ring_(ring), degree_(degree) {}

  static MultiDerivation unit(const Ring<F>& ring) { return from_poly(P::one(ring)); }

  static MultiDerivation from_poly(const P& a) {
    MultiDerivation u(a.ring(), 0);
    u.set(MultiIndex(a.ring().nvars), a);
    return u;
  }

  /// Degree-1 element with value delta(x_i) on dx_i.
  static MultiDerivation from_derivation(const DiffOp<F>& delta) {
    const auto& ring = delta.ring();
    if (!delta.has_order_at_most(1)) throw std::invalid_argument("derivation must have order <= 1");
    if (!delta.coeff(MultiIndex(ring.nvars)).is_zero())
      throw std::invalid_argument("derivation must vanish on constants");
    MultiDerivation u(ring, 1);
    for (std::size_t i = 0; i < ring.nvars; ++i) u.set(MultiIndex::unit(ring.nvars, i), delta.coeff(MultiIndex::unit(ring.nvars, i)));
    return u;
  }

  DiffOp<F> to_derivation() const {
    if (degree_ != 1) throw std::invalid_argument("not a degree-1 multiderivation");
    DiffOp<F> d(ring_);
    for (const auto& [a, v] : values_) d.add_term(a, v);
    return d;
  }

  const Ring<F>& ring() const { return ring_; }
  std::uint32_t degree() const { return degree_; }
  const ValueMap& values() const { return values_; }
  bool is_zero() const { return values_.empty(); }

  P value(const MultiIndex& alpha) const {
    auto it = values_.find(alpha);
    return it == values_.end() ? P(ring_) : it->second;
  }

  void set(const MultiIndex& alpha, const P& v) {
    if (alpha.size() != ring_.nvars || alpha.total() != degree_)
      throw std::invalid_argument("basis index " + alpha.to_string() + " not of degree " + std::to_string(degree_));
    if (v.is_zero()) values_.erase(alpha);
    else values_.insert_or_assign(alpha, v);
  }

  void add(const MultiIndex& alpha, const P& v) { set(alpha, value(alpha) + v); }

  MultiDerivation& operator+=(const MultiDerivation& o) {
    same(o);
    for (const auto& [a, v] : o.values_) add(a, v);
    return *this;
  }
  MultiDerivation& operator-=(const MultiDerivation& o) {
    same(o);
    for (const auto& [a, v] : o.values_) add(a, -v);
    return *this;
  }
  friend MultiDerivation operator+(MultiDerivation a, const MultiDerivation& b) { return a += b; }
  friend MultiDerivation operator-(MultiDerivation a, const MultiDerivation& b) { return a -= b; }
  friend MultiDerivation operator-(const MultiDerivation& a) { return MultiDerivation(a.ring_, a.degree_) - a; }

  friend MultiDerivation operator*(const P& c, const MultiDerivation& u) {
    MultiDerivation r(u.ring_, u.degree_);
    for (const auto& [a, v] : u.values_) r.set(a, c * v);
    return r;
  }
  friend MultiDerivation operator*(const K& c, const MultiDerivation& u) {
    MultiDerivation r(u.ring_, u.degree_);
    for (const auto& [a, v] : u.values_) r.set(a, c * v);
    return r;
  }

  /// Shuffle product: (u * v)(dx^gamma) = sum_{alpha+beta=gamma} C(gamma, alpha) u_alpha v_beta.
  friend MultiDerivation operator*(const MultiDerivation& u, const MultiDerivation& v) {
    u.same_ring(v);
    MultiDerivation r(u.ring_, u.degree_ + v.degree_);
    const auto& field = u.ring_.field;
    for (const auto& [a, ua] : u.values_)
      for (const auto& [b, vb] : v.values_) {
        auto c = binom(field, a + b, a);
        if (!c.is_zero()) r.add(a + b, c * (ua * vb));
      }
    return r;
  }

  friend bool operator==(const MultiDerivation& a, const MultiDerivation& b) {
    return a.ring_ == b.ring_ && a.degree_ == b.degree_ && a.values_ == b.values_;
  }

  /// "deg r: dx^[alpha] -> poly" lines, grevlex-descending.
  std::string to_string(const std::vector<std::string>& names) const {
    std::string s = "deg " + std::to_string(degree_) + ":";
    if (values_.empty()) return s + " 0";
    for (const auto& [a, v] : values_) s += "\n  dx^" + a.to_string() + " -> " + v.to_string(names);
    return s;
  }
  std::string to_string() const { return to_string(default_names(ring_.nvars)); }

 private:
  void same_ring(const MultiDerivation& o) const {
    if (!(ring_ == o.ring_)) throw ContextMismatch("multiderivations over different rings");
  }
  void same(const MultiDerivation& o) const {
    same_ring(o);
    if (degree_ != o.degree_) throw std::invalid_argument("multiderivation degrees differ");
  }

  Ring<F> ring_{};
  std::uint32_t degree_ = 0;
  ValueMap values_;
};

/// u(f_1, ..., f_r) through d f_j = sum_i (df_j/dx_i) dx_i.
template <CoefficientField F>
Poly<F> md_eval(const MultiDerivation<F>& u, const std::vector<Poly<F>>& fs) {
  using P = Poly<F>;
  const auto& ring = u.ring();
  if (fs.size() != u.degree())
    throw std::invalid_argument("md_eval: degree " + std::to_string(u.degree()) + " but " +
                                std::to_string(fs.size()) + " arguments");
  std::map<MultiIndex, P, GrevlexDescending> prod;
  prod.emplace(MultiIndex(ring.nvars), P::one(ring));
  for (const auto& f : fs) {
    if (!(f.ring() == ring)) throw ContextMismatch("md_eval argument ring");
    std::vector<P> grad;
    for (std::size_t i = 0; i < ring.nvars; ++i) grad.push_back(partial(f, i));
    std::map<MultiIndex, P, GrevlexDescending> next;
    for (const auto& [a, c] : prod)
      for (std::size_t i = 0; i < ring.nvars; ++i) {
        if (grad[i].is_zero()) continue;
        auto key = a + MultiIndex::unit(ring.nvars, i);
        auto [it, fresh] = next.try_emplace(key, ring);
        it->second += c * grad[i];
      }
    prod = std::move(next);
  }
  P out(ring);
  for (const auto& [a, c] : prod) {
    auto it = u.values().find(a);
    if (it != u.values().end()) out += c * it->second;
  }
  return out;
}

template <CoefficientField F>
MultiDerivation<F> shuffle(const MultiDerivation<F>& u, const MultiDerivation<F>& v) {
  return u * v;
}

namespace detail {

// Number of set partitions of the id coordinate positions of gamma whose blocks
// have the given (sorted) types.
inline mpz_class partition_count(const MultiIndex& gamma, const std::vector<MultiIndex>& blocks) {
  mpz_class count = 1;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), gamma[k]);
    for (const auto& b : blocks) {
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), b[k]);
      num /= f;
    }
    count *= num;
  }
  std::size_t run = 1;
  for (std::size_t b = 1; b <= blocks.size(); ++b) {
    if (b < blocks.size() && blocks[b] == blocks[b - 1]) {
      ++run;
      continue;
    }
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), run);
    count /= f;
    run = 1;
  }
  return count;
}

}  // namespace detail

/// rho_i(u) for u homogeneous of degree d >= 1: sum over unordered partitions of
/// the coordinate multiset into i blocks of size d of prod u(block).
template <CoefficientField F>
MultiDerivation<F> divided_power(const MultiDerivation<F>& u, std::uint32_t i) {
  using P = Poly<F>;
  const auto& ring = u.ring();
  const std::uint32_t d = u.degree();
  if (d == 0) throw std::invalid_argument("divided powers need degree >= 1");
  if (i == 0) return MultiDerivation<F>::unit(ring);
  if (static_cast<std::uint64_t>(i) * d > kMaxDividedPowerDegree)
    throw DeskScaleExceeded("divided power of degree " + std::to_string(i * d) + " (max " +
                            std::to_string(kMaxDividedPowerDegree) + ")");
  MultiDerivation<F> out(ring, i * d);
  std::vector<std::pair<MultiIndex, P>> support(u.values().begin(), u.values().end());
  std::vector<std::size_t> pick;
  // Multisets of i blocks drawn from the support, as non-decreasing index lists.
  auto rec = [&](auto&& self, std::size_t from, MultiIndex gamma, P prod) -> void {
    if (pick.size() == i) {
      std::vector<MultiIndex> blocks;
      for (auto p : pick) blocks.push_back(support[p].first);
      auto c = ring.field.from_integer(detail::partition_count(gamma, blocks));
      if (!c.is_zero()) out.add(gamma, c * prod);
      return;
    }
    for (std::size_t s = from; s < support.size(); ++s) {
      pick.push_back(s);
      self(self, s, gamma + support[s].first, prod * support[s].second);
      pick.pop_back();
    }
  };
  rec(rec, 0, MultiIndex(ring.nvars), P::one(ring));
  return out;
}

/// zeta_r(delta)(dx^alpha) = prod delta(x_i)^alpha_i.
template <CoefficientField F>
MultiDerivation<F> zeta(const MultiDerivation<F>& delta, std::uint32_t r) {
  if (delta.degree() != 1) throw std::invalid_argument("zeta needs a degree-1 multiderivation");
  const auto& ring = delta.ring();
  MultiDerivation<F> out(ring, r);
  for (const auto& a : indices_of_degree(ring.nvars, r)) {
    Poly<F> v = Poly<F>::one(ring);
    for (std::size_t k = 0; k < ring.nvars; ++k) v *= delta.value(MultiIndex::unit(ring.nvars, k)).pow(a[k]);
    out.set(a, v);
  }
  return out;
}

/// sum_{L subset [n]} (-1)^#L x_L P(x_{L'}).
template <CoefficientField F>
Poly<F> theta_alternating_sum(const DiffOp<F>& p, const std::vector<Poly<F>>& xs) {
  using P = Poly<F>;
  const auto& ring = p.ring();
  const std::size_t n = xs.size();
  P out(ring);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    P xl = P::one(ring), xr = P::one(ring);
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) {
        xl *= xs[k];
        sign = -sign;
      } else {
        xr *= xs[k];
      }
    }
    P term = xl * p(xr);
    if (sign > 0) out += term;
    else out -= term;
  }
  return out;
}

/// theta_n(sigma_n(P)) on each dx^gamma: the iterated bracket with the
/// coordinates of gamma, checked against the alternating sum.
template <CoefficientField F>
MultiDerivation<F> theta(const DiffOp<F>& p, std::uint32_t n) {
  using P = Poly<F>;
  const auto& ring = p.ring();
  if (!p.has_order_at_most(n))
    throw std::invalid_argument("theta: operator order " + std::to_string(*p.order()) + " exceeds " + std::to_string(n));
  MultiDerivation<F> out(ring, n);
  for (const auto& gamma : indices_of_degree(ring.nvars, n)) {
    std::vector<P> xs;
    for (auto k : coordinate_list(gamma)) xs.push_back(P::variable(ring, k));
    DiffOp<F> b = iterated_bracket(p, xs);
    if (!b.has_order_at_most(0)) throw std::logic_error("theta: iterated bracket has positive order");
    P v = b.coeff(MultiIndex(ring.nvars));
    if (!(v == theta_alternating_sum(p, xs)))
      throw std::logic_error("theta: bracket and alternating-sum formulas disagree on dx^" + gamma.to_string());
    out.set(gamma, v);
  }
  return out;
}

template <CoefficientField F>
MultiDerivation<F> theta(const Symbol<F>& s) {
  return theta(s.representative(), s.degree());
}

/// {h, h'} on coordinate tuples:
///   sum_{#L=s} h(x_L', h'(x_L)) - sum_{#M=r} h'(x_M', h(x_M)).
template <CoefficientField F>
MultiDerivation<F> sder_poisson(const MultiDerivation<F>& h, const MultiDerivation<F>& hp) {
  using P = Poly<F>;
  const auto& ring = h.ring();
  if (!(ring == hp.ring())) throw ContextMismatch("sder_poisson rings differ");
  const std::uint32_t r = h.degree(), s = hp.degree();
  if (r + s == 0) throw std::invalid_argument("sder_poisson needs total degree >= 1");
  const std::uint32_t N = r + s - 1;
  MultiDerivation<F> out(ring, N);

  auto half = [&](const MultiDerivation<F>& outer, const MultiDerivation<F>& inner, const std::vector<P>& xs) {
    P acc(ring);
    const std::uint32_t q = inner.degree();
    if (outer.degree() == 0) return acc;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << N); ++mask) {
      if (static_cast<std::uint32_t>(std::popcount(mask)) != q) continue;
      std::vector<P> in, rest;
      for (std::size_t k = 0; k < N; ++k) (mask >> k & 1 ? in : rest).push_back(xs[k]);
      rest.push_back(md_eval(inner, in));
      acc += md_eval(outer, rest);
    }
    return acc;
  };

  for (const auto& gamma : indices_of_degree(ring.nvars, N)) {
    std::vector<P> xs;
    for (auto k : coordinate_list(gamma)) xs.push_back(P::variable(ring, k));
    out.set(gamma, half(h, hp, xs) - half(hp, h, xs));
  }
  return out;
}

}  // namespace hsk
