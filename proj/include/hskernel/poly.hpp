#pragma once

// Sparse multivariate polynomials over an exact field, grevlex throughout.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hskernel/coefficient.hpp"
#include "hskernel/errors.hpp"
#include "hskernel/multi_index.hpp"

namespace hsk {

template <CoefficientField F>
struct Ring {
  F field{};
  std::size_t nvars = 0;

  Ring() = default;
  Ring(F f, std::size_t n) : field(std::move(f)), nvars(n) {
    if (n > kMaxVars)
      throw DeskScaleExceeded(std::to_string(n) + " variables (max " + std::to_string(kMaxVars) + ")");
  }

  friend bool operator==(const Ring&, const Ring&) = default;

  std::string describe() const { return field.name() + "[" + std::to_string(nvars) + " vars]"; }
};

/// Default variable names x1..xn.
inline std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

template <CoefficientField F>
class Poly {
 public:
  using K = typename F::element;
  using TermMap = std::map<MultiIndex, K, GrevlexDescending>;

  Poly() = default;
  explicit Poly(Ring<F> ring) : ring_(std::move(ring)) {}

  static Poly constant(const Ring<F>& ring, const K& c) { return monomial(ring, MultiIndex(ring.nvars), c); }
  static Poly constant(const Ring<F>& ring, long c) { return constant(ring, ring.field.from_int(c)); }
  static Poly one(const Ring<F>& ring) { return constant(ring, ring.field.one()); }
  static Poly monomial(const Ring<F>& ring, const MultiIndex& m, const K& c) {
    Poly p(ring);
    if (m.size() != ring.nvars) throw ContextMismatch("monomial length " + std::to_string(m.size()));
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
  }
  static Poly monomial(const Ring<F>& ring, const MultiIndex& m) { return monomial(ring, m, ring.field.one()); }
  static Poly variable(const Ring<F>& ring, std::size_t i) {
    return monomial(ring, MultiIndex::unit(ring.nvars, i), ring.field.one());
  }

  const Ring<F>& ring() const { return ring_; }
  const F& field() const { return ring_.field; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero()); }

  /// Coefficient of x^m (zero if absent).
  K coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ring_.field.zero() : it->second;
  }
  K constant_term() const { return coeff(MultiIndex(ring_.nvars)); }

  /// Total degree; nullopt stands for the zero polynomial's minus infinity.
  std::optional<std::uint32_t> degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.total();
  }
  const MultiIndex& leading_monomial() const { return terms_.begin()->first; }
  const K& leading_coeff() const { return terms_.begin()->second; }

  void add_term(const MultiIndex& m, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.ring_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(const K& c, const Poly& p) {
    Poly r(p.ring_);
    if (c.is_zero()) return r;
    for (const auto& [m, pc] : p.terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * pc);
    return r;
  }

  /// Multiply by the monomial c*x^m.
  Poly mul_term(const MultiIndex& m, const K& c) const {
    Poly r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [pm, pc] : terms_) r.terms_.emplace_hint(r.terms_.end(), pm + m, c * pc);
    return r;
  }

  Poly pow(std::uint32_t e) const {
    Poly result = one(ring_), base = *this;
    while (e) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return leading_coeff().inverse() * *this;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.ring_ == b.ring_ && a.terms_ == b.terms_; }

  /// Canonical rendering, grevlex-descending: "x2^4*x3 + 1".
  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      const bool neg = c.is_negative();
      const K mag = neg ? -c : c;
      if (first) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      first = false;
      const std::string mono = monomial_string(m, names);
      if (mono.empty()) {
        s += mag.to_string();
      } else if (mag.is_one()) {
        s += mono;
      } else {
        s += mag.to_string() + "*" + mono;
      }
    }
    return s;
  }
  std::string to_string() const { return to_string(default_names(ring_.nvars)); }

  static std::string monomial_string(const MultiIndex& m, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += names.at(i);
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

  void check(const Poly& o) const {
    if (!(ring_ == o.ring_)) throw ContextMismatch(ring_.describe() + " vs " + o.ring_.describe());
  }

 private:
  Ring<F> ring_{};
  TermMap terms_;
};

/// q with f = q*g, or nullopt when g does not divide f. Long division by the
/// grevlex leading term of g.
template <CoefficientField F>
std::optional<Poly<F>> exact_divide(const Poly<F>& f, const Poly<F>& g) {
  f.check(g);
  if (g.is_zero()) throw std::domain_error("exact_divide: division by the zero polynomial");
  const auto& lm = g.leading_monomial();
  const auto lc_inv = g.leading_coeff().inverse();
  Poly<F> rem = f, q(f.ring());
  while (!rem.is_zero()) {
    const auto& m = rem.leading_monomial();
    if (!lm.divides(m)) return std::nullopt;
    const auto shift = m - lm;
    const auto c = rem.leading_coeff() * lc_inv;
    q.add_term(shift, c);
    rem -= g.mul_term(shift, c);
  }
  return q;
}

}  // namespace hsk
