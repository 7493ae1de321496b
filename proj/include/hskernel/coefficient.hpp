#pragma once

// Exact coefficient fields: prime fields F_p and the rationals.
//
// A field descriptor (PrimeField, RationalField) builds elements; elements
// carry everything they need for arithmetic, so Poly and friends only keep a
// copy of the descriptor for constructing zeros and mapping integers.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hsk {

/// Trial division; desk-scale moduli only.
constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// C(n, k) over the integers; zero when k > n.
inline mpz_class binomial_z(unsigned long n, unsigned long k) {
  mpz_class r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

namespace detail {

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// n, k < p
inline std::uint64_t small_binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num = num * ((n - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  return num * pow_mod(den, p - 2, p) % p;
}

}  // namespace detail

/// C(n, k) mod p by Lucas' theorem.
inline std::uint64_t lucas_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n || k) {
    const std::uint64_t ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    r = r * detail::small_binomial_mod(ni, ki, p) % p;
    n /= p;
    k /= p;
  }
  return r;
}

// ---------------------------------------------------------------------------

class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t modulus) : v_(value % modulus), p_(modulus) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_negative() const { return false; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return raw(s, a.p_);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
  }
  friend Fp operator*(const Fp& a, const Fp& b) { return raw(a.v_ * b.v_ % a.p_, a.p_); }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in F_p");
    return raw(detail::pow_mod(v_, p_ - 2, p_), p_);
  }

  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

  std::string to_string() const { return std::to_string(v_); }

 private:
  static Fp raw(std::uint64_t v, std::uint64_t p) {
    Fp r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 2;
};

class Rational {
 public:
  Rational() = default;
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  explicit Rational(const mpz_class& z) : q_(z) {}
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_.canonicalize();
  }

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_negative() const { return sgn(q_) < 0; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero in Q");
    return Rational(mpq_class(a.q_ / b.q_));
  }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

  Rational inverse() const { return Rational(1, 1) / *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  std::string to_string() const { return q_.get_str(); }

 private:
  mpq_class q_{0};
};

// ---------------------------------------------------------------------------

struct PrimeField {
  using element = Fp;

  std::uint64_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::uint64_t modulus) : p(modulus) {
    if (!is_prime(modulus) || modulus >= (1ull << 31))
      throw std::invalid_argument("characteristic must be 0 or prime (got " +
                                  std::to_string(modulus) + ")");
  }

  std::uint64_t characteristic() const { return p; }
  Fp zero() const { return Fp(0, p); }
  Fp one() const { return Fp(1, p); }
  Fp from_int(long v) const {
    long r = v % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return Fp(static_cast<std::uint64_t>(r), p);
  }
  Fp from_integer(const mpz_class& z) const {
    mpz_class r = z % mpz_class(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    return Fp(r.get_ui(), p);
  }
  /// Lucas fast path; agrees with from_integer(binomial_z(n, k)).
  Fp binomial(std::uint64_t n, std::uint64_t k) const { return Fp(lucas_binomial(n, k, p), p); }

  std::string name() const { return "F_" + std::to_string(p); }
  friend bool operator==(const PrimeField&, const PrimeField&) = default;
};

struct RationalField {
  using element = Rational;

  std::uint64_t characteristic() const { return 0; }
  Rational zero() const { return Rational(); }
  Rational one() const { return Rational(1, 1); }
  Rational from_int(long v) const { return Rational(v, 1); }
  Rational from_integer(const mpz_class& z) const { return Rational(z); }
  Rational binomial(std::uint64_t n, std::uint64_t k) const {
    return Rational(binomial_z(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
  }

  std::string name() const { return "Q"; }
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

template <class F>
concept CoefficientField = requires(const F& f, const typename F::element& a, const mpz_class& z) {
  { f.zero() } -> std::same_as<typename F::element>;
  { f.one() } -> std::same_as<typename F::element>;
  { f.from_integer(z) } -> std::same_as<typename F::element>;
  { f.binomial(1u, 1u) } -> std::same_as<typename F::element>;
  { f.characteristic() } -> std::convertible_to<std::uint64_t>;
  { a + a } -> std::same_as<typename F::element>;
  { a * a } -> std::same_as<typename F::element>;
  { a.is_zero() } -> std::convertible_to<bool>;
};

}  // namespace hsk
