#pragma once

// Hasse-Schmidt derivations of R, stored as the coordinate images of the
// algebra map Phi: R -> R[t]/(t^{m+1}), x_j -> x_j + (higher terms in t).

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hskernel/diffop.hpp"
#include "hskernel/series.hpp"

namespace hsk {

template <CoefficientField F>
class HSDerivation {
 public:
  using P = Poly<F>;
  using S = TruncSeries<F>;
  using Op = DiffOp<F>;

  HSDerivation() = default;

  /// images[j] must have order m and constant term x_j.
  HSDerivation(const Ring<F>& ring, std::vector<S> images) : ring_(ring), images_(std::move(images)) {
    if (images_.size() != ring.nvars)
      throw InvalidHS("expected " + std::to_string(ring.nvars) + " images, got " + std::to_string(images_.size()));
    length_ = images_.empty() ? 0 : images_[0].order();
    for (std::size_t j = 0; j < images_.size(); ++j) {
      if (!(images_[j].ring() == ring)) throw ContextMismatch("image ring");
      if (images_[j].order() != length_) throw InvalidHS("images have different lengths");
      if (!(images_[j][0] == P::variable(ring, j)))
        throw InvalidHS("t^0 coefficient of image " + std::to_string(j + 1) + " is not x" + std::to_string(j + 1));
    }
  }

  static HSDerivation identity(const Ring<F>& ring, int m) {
    std::vector<S> im;
    for (std::size_t j = 0; j < ring.nvars; ++j) im.push_back(S::constant(P::variable(ring, j), m));
    return HSDerivation(ring, std::move(im));
  }

  /// Images x_j -> x_j + sum_{i>=1} higher[j][i-1] t^i.
  static HSDerivation from_higher_terms(const Ring<F>& ring, int m, const std::vector<std::vector<P>>& higher) {
    if (higher.size() != ring.nvars) throw InvalidHS("one image per variable required");
    std::vector<S> im;
    for (std::size_t j = 0; j < ring.nvars; ++j) {
      std::vector<P> c{P::variable(ring, j)};
      c.insert(c.end(), higher[j].begin(), higher[j].end());
      im.emplace_back(ring, m, std::move(c));
    }
    return HSDerivation(ring, std::move(im));
  }

  /// The length-1 HS derivation (Id, delta) of a derivation.
  static HSDerivation from_derivation(const Op& delta) {
    const auto& ring = delta.ring();
    check_derivation(delta);
    std::vector<std::vector<P>> hi;
    for (std::size_t j = 0; j < ring.nvars; ++j) hi.push_back({delta(P::variable(ring, j))});
    return from_higher_terms(ring, 1, hi);
  }

  /// The Taylor family (Id, D_1^(i), D_2^(i), ...): x_i -> x_i + t.
  static HSDerivation taylor(const Ring<F>& ring, std::size_t i, int m) {
    std::vector<std::vector<P>> hi(ring.nvars);
    hi.at(i).push_back(P::one(ring));
    return from_higher_terms(ring, m, hi);
  }

  const Ring<F>& ring() const { return ring_; }
  int length() const { return length_; }
  const std::vector<S>& images() const { return images_; }

  /// Phi(f) in R[t]/(t^{m+1}).
  S phi(const P& f) const { return substitute(f, images_); }

  /// D_i as a Taylor-basis operator of order <= i.
  const Op& component(int i) const {
    if (i < 0 || i > length_) throw std::out_of_range("component index " + std::to_string(i));
    ensure_cache();
    return cache_->components[static_cast<std::size_t>(i)];
  }
  std::vector<Op> components() const {
    ensure_cache();
    return cache_->components;
  }

  friend bool operator==(const HSDerivation& a, const HSDerivation& b) {
    return a.ring_ == b.ring_ && a.images_ == b.images_;
  }

  static void check_derivation(const Op& delta) {
    if (!delta.has_order_at_most(1)) throw std::invalid_argument("derivation must have order <= 1");
    if (!delta.coeff(MultiIndex(delta.ring().nvars)).is_zero())
      throw std::invalid_argument("derivation must vanish on constants");
  }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Op> components;
  };

  // Taylor: Phi(f) = f(x + u) = sum_alpha D^(alpha)(f) u^alpha with u_j = Phi(x_j) - x_j,
  // so D_i = sum_{|alpha| <= i} [t^i](u^alpha) D^(alpha).
  void ensure_cache() const {
    std::call_once(cache_->once, [this] {
      const std::size_t n = ring_.nvars;
      std::vector<S> u;
      for (std::size_t j = 0; j < n; ++j) {
        S uj = images_[j];
        uj[0] = P(ring_);
        u.push_back(std::move(uj));
      }
      std::vector<Op> comps(static_cast<std::size_t>(length_) + 1, Op(ring_));
      std::map<MultiIndex, S, GrevlexDescending> upow;
      for (const auto& alpha : indices_up_to(n, static_cast<std::uint32_t>(length_))) {
        S val = S::constant(P::one(ring_), length_);
        if (!alpha.is_zero()) {
          std::size_t k = 0;
          while (alpha[k] == 0) ++k;
          val = upow.at(alpha - MultiIndex::unit(n, k)) * u[k];
        }
        for (int i = static_cast<int>(alpha.total()); i <= length_; ++i)
          comps[static_cast<std::size_t>(i)].add_term(alpha, val[static_cast<std::size_t>(i)]);
        upow.emplace(alpha, std::move(val));
      }
      cache_->components = std::move(comps);
    });
  }

  Ring<F> ring_{};
  int length_ = 0;
  std::vector<S> images_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

template <CoefficientField F>
HSDerivation<F> hs_from_images(const Ring<F>& ring, std::vector<TruncSeries<F>> images) {
  return HSDerivation<F>(ring, std::move(images));
}

template <CoefficientField F>
const DiffOp<F>& hs_component(const HSDerivation<F>& d, int i) {
  return d.component(i);
}

/// D o D' with (D o D')_n = sum_{i+j=n} D_i o D'_j, i.e. Phi'' = Phi~ o Phi'.
template <CoefficientField F>
HSDerivation<F> hs_compose(const HSDerivation<F>& d, const HSDerivation<F>& e) {
  if (!(d.ring() == e.ring())) throw ContextMismatch("hs_compose rings differ");
  if (d.length() != e.length())
    throw std::invalid_argument("hs_compose: lengths " + std::to_string(d.length()) + " and " +
                                std::to_string(e.length()));
  std::vector<TruncSeries<F>> im;
  for (const auto& s : e.images()) im.push_back(substitute_series(s, d.images()));
  return HSDerivation<F>(d.ring(), std::move(im));
}

/// Two-sided inverse; images of Phi^{-1} are solved degree by degree in t.
template <CoefficientField F>
HSDerivation<F> hs_inverse(const HSDerivation<F>& d) {
  using P = Poly<F>;
  const auto& ring = d.ring();
  const int m = d.length();
  Substitution<F> phi(ring, d.images());
  std::vector<std::vector<P>> v(ring.nvars);
  std::vector<std::vector<TruncSeries<F>>> phi_v(ring.nvars);
  for (int n = 1; n <= m; ++n) {
    for (std::size_t k = 0; k < ring.nvars; ++k) {
      P acc = -d.images()[k][static_cast<std::size_t>(n)];
      for (int i = 1; i < n; ++i) acc -= phi_v[k][static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(n - i)];
      phi_v[k].push_back(phi(acc));
      v[k].push_back(std::move(acc));
    }
  }
  return HSDerivation<F>::from_higher_terms(ring, m, v);
}

template <CoefficientField F>
HSDerivation<F> hs_truncate(const HSDerivation<F>& d, int m) {
  if (m > d.length() || m < 0)
    throw std::invalid_argument("hs_truncate: " + std::to_string(m) + " exceeds length " + std::to_string(d.length()));
  std::vector<TruncSeries<F>> im;
  for (const auto& s : d.images()) im.push_back(s.truncate(m));
  return HSDerivation<F>(d.ring(), std::move(im));
}

/// a . D with components a^r D_r.
template <CoefficientField F>
HSDerivation<F> hs_scale(const Poly<F>& a, const HSDerivation<F>& d) {
  std::vector<TruncSeries<F>> im;
  for (const auto& s : d.images()) {
    TruncSeries<F> r = s;
    Poly<F> ar = Poly<F>::one(d.ring());
    for (int i = 1; i <= s.order(); ++i) {
      ar *= a;
      r[static_cast<std::size_t>(i)] = ar * s[static_cast<std::size_t>(i)];
    }
    im.push_back(std::move(r));
  }
  return HSDerivation<F>(d.ring(), std::move(im));
}

/// The length m+1 integral with zero t^{m+1} coefficient on every coordinate.
template <CoefficientField F>
HSDerivation<F> canonical_lift(const HSDerivation<F>& d) {
  if (d.length() + 1 > kMaxOrder)
    throw DeskScaleExceeded("lift to length " + std::to_string(d.length() + 1));
  std::vector<TruncSeries<F>> im;
  for (const auto& s : d.images()) im.emplace_back(d.ring(), d.length() + 1, s.coeffs());
  return HSDerivation<F>(d.ring(), std::move(im));
}

/// D_i = delta^i / i!, valid when i! is invertible for all i <= m.
template <CoefficientField F>
HSDerivation<F> char0_integral(const DiffOp<F>& delta, int m) {
  using P = Poly<F>;
  HSDerivation<F>::check_derivation(delta);
  const auto& ring = delta.ring();
  const auto& field = ring.field;
  std::vector<typename F::element> inv_fact{field.one()};
  mpz_class fact = 1;
  for (int i = 1; i <= m; ++i) {
    fact *= i;
    auto f = field.from_integer(fact);
    if (f.is_zero())
      throw NotIntegrable(std::to_string(i) + "! is not invertible in " + field.name());
    inv_fact.push_back(f.inverse());
  }
  std::vector<std::vector<P>> hi(ring.nvars);
  for (std::size_t k = 0; k < ring.nvars; ++k) {
    P cur = P::variable(ring, k);
    for (int i = 1; i <= m; ++i) {
      cur = delta(cur);
      hi[k].push_back(inv_fact[static_cast<std::size_t>(i)] * cur);
    }
  }
  return HSDerivation<F>::from_higher_terms(ring, m, hi);
}

// ---------------------------------------------------------------------------

/// Sigma_m(D) = sum sigma_i(D_i) t^i.
template <CoefficientField F>
class TotalSymbol {
 public:
  TotalSymbol() = default;
  explicit TotalSymbol(std::vector<Symbol<F>> slots) : slots_(std::move(slots)) {
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (slots_[i].degree() != i) throw std::invalid_argument("slot degree mismatch");
  }

  static TotalSymbol one(const Ring<F>& ring, int m) {
    std::vector<Symbol<F>> s{Symbol<F>::unit(ring)};
    for (int i = 1; i <= m; ++i) s.emplace_back(DiffOp<F>(ring), static_cast<std::uint32_t>(i));
    return TotalSymbol(std::move(s));
  }

  int length() const { return static_cast<int>(slots_.size()) - 1; }
  const Symbol<F>& operator[](std::size_t i) const { return slots_.at(i); }
  const std::vector<Symbol<F>>& slots() const { return slots_; }

  TotalSymbol truncate(int m) const {
    return TotalSymbol(std::vector<Symbol<F>>(slots_.begin(), slots_.begin() + m + 1));
  }

  friend TotalSymbol operator*(const TotalSymbol& a, const TotalSymbol& b) {
    if (a.slots_.size() != b.slots_.size()) throw std::invalid_argument("total symbol lengths differ");
    std::vector<Symbol<F>> out;
    for (std::size_t n = 0; n < a.slots_.size(); ++n) {
      Symbol<F> acc = a.slots_[0] * b.slots_[n];
      for (std::size_t i = 1; i <= n; ++i) acc = acc + a.slots_[i] * b.slots_[n - i];
      out.push_back(std::move(acc));
    }
    return TotalSymbol(std::move(out));
  }

  /// a * Sigma: slot i scaled by a^i.
  friend TotalSymbol operator*(const Poly<F>& a, const TotalSymbol& s) {
    std::vector<Symbol<F>> out;
    Poly<F> ai = Poly<F>::one(a.ring());
    for (std::size_t i = 0; i < s.slots_.size(); ++i) {
      out.push_back(ai * s.slots_[i]);
      ai *= a;
    }
    return TotalSymbol(std::move(out));
  }

  friend bool operator==(const TotalSymbol&, const TotalSymbol&) = default;

 private:
  std::vector<Symbol<F>> slots_;
};

template <CoefficientField F>
TotalSymbol<F> total_symbol(const HSDerivation<F>& d) {
  std::vector<Symbol<F>> slots;
  for (int i = 0; i <= d.length(); ++i) slots.emplace_back(d.component(i), static_cast<std::uint32_t>(i));
  return TotalSymbol<F>(std::move(slots));
}

/// R_0 = 1 and C(i+j, i) R_{i+j} = R_i R_j for i + j <= m. T needs T*T,
/// element*T and ==; the unit is passed explicitly.
template <class T, CoefficientField F>
bool is_exponential_type(const std::vector<T>& slots, const F& field, const T& unit) {
  if (slots.empty() || !(slots[0] == unit)) return false;
  const std::size_t m = slots.size() - 1;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i; i + j <= m; ++j)
      if (!(field.binomial(i + j, i) * slots[i + j] == slots[i] * slots[j])) return false;
  return true;
}

template <CoefficientField F>
bool is_exponential_type(const TotalSymbol<F>& t) {
  const auto& ring = t[0].ring();
  return is_exponential_type(t.slots(), ring.field, Symbol<F>::unit(ring));
}

}  // namespace hsk
