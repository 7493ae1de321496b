#pragma once

// Truncated power series R[t]/(t^{m+1}) with polynomial coefficients, and the
// substitution homomorphism x_j -> images[j].

#include <span>
#include <string>
#include <vector>

#include "hskernel/poly.hpp"

namespace hsk {

template <CoefficientField F>
class TruncSeries {
 public:
  using P = Poly<F>;

  TruncSeries() = default;
  TruncSeries(const Ring<F>& ring, int order) : ring_(ring), coeffs_(check_order(order) + 1, P(ring)) {}
  /// Missing trailing coefficients are zero; extra ones are an error.
  TruncSeries(const Ring<F>& ring, int order, std::vector<P> coeffs) : TruncSeries(ring, order) {
    if (coeffs.size() > coeffs_.size())
      throw std::invalid_argument("series has more coefficients than order+1");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      ring_check(coeffs[i]);
      coeffs_[i] = std::move(coeffs[i]);
    }
  }
  static TruncSeries constant(const P& p, int order) {
    TruncSeries s(p.ring(), order);
    s.coeffs_[0] = p;
    return s;
  }

  const Ring<F>& ring() const { return ring_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const P& operator[](std::size_t i) const { return coeffs_.at(i); }
  P& operator[](std::size_t i) { return coeffs_.at(i); }
  const std::vector<P>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  TruncSeries truncate(int new_order) const {
    if (new_order > order() || new_order < 0)
      throw std::invalid_argument("truncate: order " + std::to_string(new_order) + " not <= " +
                                  std::to_string(order()));
    TruncSeries r(ring_, new_order);
    for (int i = 0; i <= new_order; ++i) r.coeffs_[i] = coeffs_[i];
    return r;
  }

  TruncSeries& operator+=(const TruncSeries& o) {
    same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.same(b);
    TruncSeries r(a.ring_, a.order());
    const int m = a.order();
    for (int i = 0; i <= m; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (int j = 0; i + j <= m; ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return r;
  }
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

  /// Multiply every coefficient by a polynomial.
  TruncSeries scaled(const P& a) const {
    TruncSeries r(ring_, order());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = a * coeffs_[i];
    return r;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
  }

  /// "x3 + x2^2*t + (x1 + 1)*t^2", zero slots skipped.
  std::string to_string(const std::vector<std::string>& names) const {
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      const auto c = coeffs_[i].to_string(names);
      if (i == 0) {
        s += c;
        continue;
      }
      if (c != "1") s += (coeffs_[i].size() > 1 || c[0] == '-' ? "(" + c + ")" : c) + "*";
      s += i == 1 ? "t" : "t^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  static std::size_t check_order(int order) {
    if (order < 0) throw std::invalid_argument("negative truncation order");
    if (order > kMaxOrder)
      throw DeskScaleExceeded("truncation order " + std::to_string(order) + " (max " +
                              std::to_string(kMaxOrder) + ")");
    return static_cast<std::size_t>(order);
  }
  void ring_check(const P& p) const {
    if (!(p.ring() == ring_)) throw ContextMismatch(ring_.describe() + " vs " + p.ring().describe());
  }
  void same(const TruncSeries& o) const {
    if (!(ring_ == o.ring_)) throw ContextMismatch(ring_.describe() + " vs " + o.ring_.describe());
    if (order() != o.order()) throw std::invalid_argument("series orders differ");
  }

  Ring<F> ring_{};
  std::vector<P> coeffs_;
};

/// Powers images[j]^e cached per variable, for repeated substitutions.
template <CoefficientField F>
class Substitution {
 public:
  using S = TruncSeries<F>;

  Substitution(const Ring<F>& ring, std::span<const S> images) : ring_(ring) {
    if (images.size() != ring.nvars) throw ContextMismatch("substitution needs one image per variable");
    order_ = images.empty() ? 0 : images[0].order();
    for (const auto& im : images) {
      if (!(im.ring() == ring)) throw ContextMismatch(ring.describe() + " vs " + im.ring().describe());
      if (im.order() != order_) throw std::invalid_argument("images have different orders");
      powers_.push_back({S::constant(Poly<F>::one(ring), order_), im});
    }
  }

  int order() const { return order_; }

  const S& power(std::size_t j, std::uint32_t e) {
    auto& pw = powers_[j];
    while (pw.size() <= e) pw.push_back(pw.back() * pw[1]);
    return pw[e];
  }

  S monomial(const MultiIndex& m) {
    S r = S::constant(Poly<F>::one(ring_), order_);
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[j]) r *= power(j, m[j]);
    return r;
  }

  S operator()(const Poly<F>& f) {
    S r(ring_, order_);
    for (const auto& [m, c] : f.terms()) {
      S mono = monomial(m);
      for (int i = 0; i <= order_; ++i) r[i] += c * mono[i];
    }
    return r;
  }

 private:
  Ring<F> ring_;
  int order_ = 0;
  std::vector<std::vector<S>> powers_;
};

/// Image of f under the k-algebra map x_j -> images[j], truncated at t^{m+1}.
template <CoefficientField F>
TruncSeries<F> substitute(const Poly<F>& f, std::span<const TruncSeries<F>> images) {
  Substitution<F> sub(f.ring(), images);
  return sub(f);
}

template <CoefficientField F>
TruncSeries<F> substitute(const Poly<F>& f, const std::vector<TruncSeries<F>>& images) {
  return substitute(f, std::span<const TruncSeries<F>>(images));
}

/// Extend to R_m -> R_m by acting on each t-coefficient (t fixed).
template <CoefficientField F>
TruncSeries<F> substitute_series(const TruncSeries<F>& s, const std::vector<TruncSeries<F>>& images) {
  Substitution<F> sub(s.ring(), images);
  TruncSeries<F> r(s.ring(), s.order());
  for (int j = 0; j <= s.order(); ++j) {
    if (s[j].is_zero()) continue;
    auto img = sub(s[j]);
    for (int i = 0; i + j <= s.order(); ++i) r[i + j] += img[i];
  }
  return r;
}

}  // namespace hsk
