#pragma once

// Differential operators on R = k[x1..xn] written in the Taylor basis,
// P = sum_alpha a_alpha * D^(alpha), with left coefficients a_alpha in R.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hskernel/poly.hpp"

namespace hsk {

/// prod_i C(beta_i, alpha_i), exact, mapped into the field. Caller ensures alpha <= beta.
template <CoefficientField F>
typename F::element binom(const F& field, const MultiIndex& beta, const MultiIndex& alpha) {
  auto r = field.one();
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (alpha[i] == 0 || alpha[i] == beta[i]) continue;
    r *= field.binomial(beta[i], alpha[i]);
    if (r.is_zero()) break;
  }
  return r;
}

/// D^(alpha)(f): x^beta -> C(beta, alpha) x^(beta - alpha) when beta >= alpha, else 0.
template <CoefficientField F>
Poly<F> delta_apply(const MultiIndex& alpha, const Poly<F>& f) {
  if (alpha.size() != f.ring().nvars) throw ContextMismatch("delta index length");
  Poly<F> r(f.ring());
  if (alpha.is_zero()) return f;
  for (const auto& [beta, c] : f.terms()) {
    if (!alpha.divides(beta)) continue;
    r.add_term(beta - alpha, binom(f.field(), beta, alpha) * c);
  }
  return r;
}

/// d f / d x_i
template <CoefficientField F>
Poly<F> partial(const Poly<F>& f, std::size_t i) {
  return delta_apply(MultiIndex::unit(f.ring().nvars, i), f);
}

/// Ordering of Taylor-basis terms: by |alpha| ascending, grevlex-descending within a degree.
struct DeltaOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const auto da = a.total(), db = b.total();
    if (da != db) return da < db;
    return MultiIndex::grevlex_cmp(a, b) > 0;
  }
};

template <CoefficientField F>
class DiffOp {
 public:
  using P = Poly<F>;
  using K = typename F::element;
  using TermMap = std::map<MultiIndex, P, DeltaOrder>;

  DiffOp() = default;
  explicit DiffOp(Ring<F> ring) : ring_(std::move(ring)) {}

  static DiffOp identity(const Ring<F>& ring) { return multiplication(P::one(ring)); }
  /// The order-0 operator f -> a*f.
  static DiffOp multiplication(const P& a) {
    DiffOp d(a.ring());
    d.add_term(MultiIndex(a.ring().nvars), a);
    return d;
  }
  static DiffOp delta(const Ring<F>& ring, const MultiIndex& alpha) { return term(P::one(ring), alpha); }
  /// D_e^(i), the e-th Taylor operator in the single variable x_i.
  static DiffOp delta(const Ring<F>& ring, std::size_t i, std::uint32_t e) {
    MultiIndex a(ring.nvars);
    a[i] = e;
    return delta(ring, a);
  }
  static DiffOp term(const P& a, const MultiIndex& alpha) {
    DiffOp d(a.ring());
    d.add_term(alpha, a);
    return d;
  }

  const Ring<F>& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  P coeff(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? P(ring_) : it->second;
  }

  /// max |alpha|; nullopt for the zero operator.
  std::optional<std::uint32_t> order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.total();
  }
  bool has_order_at_most(std::int64_t d) const {
    auto o = order();
    return !o || static_cast<std::int64_t>(*o) <= d;
  }

  void add_term(const MultiIndex& alpha, const P& a) {
    if (alpha.size() != ring_.nvars) throw ContextMismatch("delta index length");
    if (!(a.ring() == ring_)) throw ContextMismatch(ring_.describe() + " vs " + a.ring().describe());
    if (a.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(alpha, a);
    if (!inserted) {
      it->second += a;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  DiffOp& operator+=(const DiffOp& o) {
    check(o);
    for (const auto& [al, a] : o.terms_) add_term(al, a);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& o) {
    check(o);
    for (const auto& [al, a] : o.terms_) add_term(al, -a);
    return *this;
  }
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  DiffOp operator-() const {
    DiffOp r(ring_);
    for (const auto& [al, a] : terms_) r.terms_.emplace(al, -a);
    return r;
  }

  /// Left multiplication by a polynomial: (a*P)(f) = a*P(f).
  friend DiffOp operator*(const P& a, const DiffOp& d) {
    DiffOp r(d.ring_);
    for (const auto& [al, c] : d.terms_) r.add_term(al, a * c);
    return r;
  }
  friend DiffOp operator*(const K& c, const DiffOp& d) {
    DiffOp r(d.ring_);
    for (const auto& [al, a] : d.terms_) r.add_term(al, c * a);
    return r;
  }

  /// Terms with |alpha| == d.
  DiffOp slice(std::uint32_t d) const {
    DiffOp r(ring_);
    for (const auto& [al, a] : terms_)
      if (al.total() == d) r.terms_.emplace(al, a);
    return r;
  }

  P operator()(const P& f) const {
    check_ring(f.ring());
    P r(ring_);
    for (const auto& [al, a] : terms_) {
      auto v = delta_apply(al, f);
      if (!v.is_zero()) r += a * v;
    }
    return r;
  }

  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.ring_ == b.ring_ && a.terms_ == b.terms_; }

  /// "x2^2*D[0,1,0] + x2^4*D[0,0,2]"
  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [al, a] : terms_) {
      std::string piece;
      bool neg = false;
      if (a.size() == 1) {
        piece = a.to_string(names);
        if (!piece.empty() && piece[0] == '-') {
          neg = true;
          piece.erase(0, 1);
        }
      } else {
        piece = "(" + a.to_string(names) + ")";
      }
      if (!al.is_zero()) {
        if (piece == "1")
          piece = "D" + al.to_string();
        else
          piece += "*D" + al.to_string();
      }
      if (s.empty())
        s = neg ? "-" + piece : piece;
      else
        s += (neg ? " - " : " + ") + piece;
    }
    return s;
  }
  std::string to_string() const { return to_string(default_names(ring_.nvars)); }

  void check(const DiffOp& o) const { check_ring(o.ring_); }
  void check_ring(const Ring<F>& r) const {
    if (!(ring_ == r)) throw ContextMismatch(ring_.describe() + " vs " + r.describe());
  }

 private:
  Ring<F> ring_{};
  TermMap terms_;
};

template <CoefficientField F>
Poly<F> op_apply(const DiffOp<F>& op, const Poly<F>& f) {
  return op(f);
}

/// P o Q in the Taylor basis, via D^(alpha) o (b.) = sum_{s+r=alpha} D^(s)(b) D^(r)
/// and D^(r) o D^(beta) = C(r+beta, beta) D^(r+beta).
template <CoefficientField F>
DiffOp<F> op_compose(const DiffOp<F>& lhs, const DiffOp<F>& rhs) {
  lhs.check(rhs);
  const auto& field = lhs.ring().field;
  DiffOp<F> out(lhs.ring());
  for (const auto& [alpha, a] : lhs.terms()) {
    const auto sigmas = indices_below(alpha);
    for (const auto& [beta, b] : rhs.terms()) {
      for (const auto& sigma : sigmas) {
        auto db = delta_apply(sigma, b);
        if (db.is_zero()) continue;
        const auto rho = alpha - sigma;
        const auto c = binom(field, rho + beta, beta);
        if (c.is_zero()) continue;
        out.add_term(rho + beta, c * (a * db));
      }
    }
  }
  return out;
}

template <CoefficientField F>
DiffOp<F> op_pow(const DiffOp<F>& p, std::uint32_t e) {
  auto r = DiffOp<F>::identity(p.ring());
  for (std::uint32_t i = 0; i < e; ++i) r = op_compose(r, p);
  return r;
}

/// [P, a] = P o a - a o P.
template <CoefficientField F>
DiffOp<F> bracket(const DiffOp<F>& op, const Poly<F>& a) {
  return op_compose(op, DiffOp<F>::multiplication(a)) - a * op;
}

/// [P, Q] = P o Q - Q o P.
template <CoefficientField F>
DiffOp<F> commutator(const DiffOp<F>& p, const DiffOp<F>& q) {
  return op_compose(p, q) - op_compose(q, p);
}

/// [[...[[P, x_d], x_{d-1}], ...], x_1]: brackets with the last entry first.
template <CoefficientField F>
DiffOp<F> iterated_bracket(DiffOp<F> op, const std::vector<Poly<F>>& xs) {
  for (std::size_t i = xs.size(); i-- > 0;) op = bracket(op, xs[i]);
  return op;
}

/// Taylor-basis expansion of a black-box k-linear operator of order <= d, from
/// its values on monomials:
///   a_alpha = sum_{beta <= alpha} C(alpha, beta) (-1)^|beta| x^beta P(x^(alpha - beta)).
/// Throws NotAnOperator when the reconstruction disagrees with the black box on
/// a monomial of degree d + 1.
template <CoefficientField F>
DiffOp<F> coeff_extract(const Ring<F>& ring, const std::function<Poly<F>(const MultiIndex&)>& black_box,
                        std::uint32_t d) {
  if (d > static_cast<std::uint32_t>(kMaxOrder))
    throw DeskScaleExceeded("operator order " + std::to_string(d));
  std::map<MultiIndex, Poly<F>, GrevlexDescending> values;
  auto value = [&](const MultiIndex& m) -> const Poly<F>& {
    auto it = values.find(m);
    if (it == values.end()) it = values.emplace(m, black_box(m)).first;
    return it->second;
  };
  const auto& field = ring.field;
  DiffOp<F> out(ring);
  for (const auto& alpha : indices_up_to(ring.nvars, d)) {
    Poly<F> a(ring);
    for (const auto& beta : indices_below(alpha)) {
      auto c = binom(field, alpha, beta);
      if (c.is_zero()) continue;
      if (beta.total() % 2) c = -c;
      const auto& v = value(alpha - beta);
      if (v.is_zero()) continue;
      a += v.mul_term(beta, c);
    }
    out.add_term(alpha, a);
  }
  for (const auto& gamma : indices_of_degree(ring.nvars, d + 1)) {
    auto mono = Poly<F>::monomial(ring, gamma);
    if (!(out(mono) == value(gamma)))
      throw NotAnOperator("disagreement on x^" + gamma.to_string() + " at order bound " + std::to_string(d));
  }
  return out;
}

/// Expansion of an operator given as a function on polynomials.
template <CoefficientField F>
DiffOp<F> coeff_extract(const Ring<F>& ring, const std::function<Poly<F>(const Poly<F>&)>& op,
                        std::uint32_t d) {
  std::function<Poly<F>(const MultiIndex&)> bb = [&](const MultiIndex& m) {
    return op(Poly<F>::monomial(ring, m));
  };
  return coeff_extract(ring, bb, d);
}

// ---------------------------------------------------------------------------
// Symbols in gr Diff.

/// sigma_d(P): class of an order <= d operator modulo order <= d-1. Keeps the
/// representative; equality looks at the degree-d slice only.
template <CoefficientField F>
class Symbol {
 public:
  Symbol() = default;
  Symbol(DiffOp<F> rep, std::uint32_t degree) : rep_(std::move(rep)), degree_(degree) {
    if (!rep_.has_order_at_most(degree))
      throw std::invalid_argument("symbol: operator order " + std::to_string(*rep_.order()) +
                                  " exceeds degree " + std::to_string(degree));
  }

  static Symbol unit(const Ring<F>& ring) { return Symbol(DiffOp<F>::identity(ring), 0); }

  std::uint32_t degree() const { return degree_; }
  const DiffOp<F>& representative() const { return rep_; }
  DiffOp<F> principal() const { return rep_.slice(degree_); }
  const Ring<F>& ring() const { return rep_.ring(); }
  bool is_zero() const { return principal().is_zero(); }

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.degree_ == b.degree_ && a.principal() == b.principal();
  }

  friend Symbol operator+(const Symbol& a, const Symbol& b) {
    if (a.degree_ != b.degree_) throw std::invalid_argument("adding symbols of different degree");
    return Symbol(a.principal() + b.principal(), a.degree_);
  }
  friend Symbol operator*(const Poly<F>& c, const Symbol& s) { return Symbol(c * s.principal(), s.degree_); }
  friend Symbol operator*(const typename F::element& c, const Symbol& s) {
    return Symbol(c * s.principal(), s.degree_);
  }

  /// Product in gr Diff from principal slices alone:
  /// sigma^(alpha) sigma^(beta) = C(alpha+beta, alpha) sigma^(alpha+beta).
  friend Symbol operator*(const Symbol& a, const Symbol& b) {
    const auto pa = a.principal(), pb = b.principal();
    const auto& field = a.ring().field;
    DiffOp<F> out(a.ring());
    for (const auto& [al, ca] : pa.terms())
      for (const auto& [be, cb] : pb.terms()) {
        auto c = binom(field, al + be, al);
        if (!c.is_zero()) out.add_term(al + be, c * (ca * cb));
      }
    return Symbol(std::move(out), a.degree_ + b.degree_);
  }

  std::string to_string(const std::vector<std::string>& names) const {
    return "sigma_" + std::to_string(degree_) + "(" + principal().to_string(names) + ")";
  }

 private:
  DiffOp<F> rep_{};
  std::uint32_t degree_ = 0;
};

template <CoefficientField F>
Symbol<F> symbol(const DiffOp<F>& p, std::uint32_t d) {
  return Symbol<F>(p, d);
}

/// {sigma_r(P), sigma_s(Q)} = sigma_{r+s-1}([P, Q]), computed on representatives.
template <CoefficientField F>
Symbol<F> poisson(const Symbol<F>& s, const Symbol<F>& t) {
  const auto r = s.degree() + t.degree();
  if (r == 0) return Symbol<F>(DiffOp<F>(s.ring()), 0);
  return Symbol<F>(commutator(s.representative(), t.representative()), r - 1);
}

}  // namespace hsk
