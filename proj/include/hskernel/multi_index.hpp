#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "hskernel/config.hpp"
#include "hskernel/errors.hpp"

namespace hsk {

/// Exponent vector in N^n, n <= kMaxVars. Stored inline; no allocation.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : n_(static_cast<std::uint8_t>(check_size(n))) {}
  MultiIndex(std::initializer_list<std::uint32_t> exps)
      : n_(static_cast<std::uint8_t>(check_size(exps.size()))) {
    std::size_t i = 0;
    for (auto e : exps) e_[i++] = e;
  }
  explicit MultiIndex(const std::vector<std::uint32_t>& exps)
      : n_(static_cast<std::uint8_t>(check_size(exps.size()))) {
    for (std::size_t i = 0; i < exps.size(); ++i) e_[i] = exps[i];
  }

  /// e_i: the i-th unit vector.
  static MultiIndex unit(std::size_t n, std::size_t i) {
    MultiIndex m(n);
    m.e_.at(i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t& operator[](std::size_t i) { return e_[i]; }

  std::uint32_t total() const {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += e_[i];
    return s;
  }
  bool is_zero() const { return total() == 0; }

  /// Entry-wise partial order.
  bool divides(const MultiIndex& o) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
    for (std::size_t i = 0; i < a.n_; ++i) a.e_[i] += b.e_[i];
    return a;
  }
  /// Defined only when b <= a.
  friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) {
    for (std::size_t i = 0; i < a.n_; ++i) {
      if (b.e_[i] > a.e_[i]) throw std::domain_error("multi-index subtraction below zero");
      a.e_[i] -= b.e_[i];
    }
    return a;
  }

  static MultiIndex lcm(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] = a.e_[i] > b.e_[i] ? a.e_[i] : b.e_[i];
    return r;
  }
  static bool coprime(const MultiIndex& a, const MultiIndex& b) {
    for (std::size_t i = 0; i < a.n_; ++i)
      if (a.e_[i] && b.e_[i]) return false;
    return true;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.n_; ++i)
      if (a.e_[i] != b.e_[i]) return false;
    return true;
  }

  /// Grevlex comparison with x1 > x2 > ... > xn: -1, 0, 1.
  static int grevlex_cmp(const MultiIndex& a, const MultiIndex& b) {
    const auto da = a.total(), db = b.total();
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = a.n_; i-- > 0;) {
      if (a.e_[i] != b.e_[i]) return a.e_[i] > b.e_[i] ? -1 : 1;
    }
    return 0;
  }

  /// "[0,1,2]"
  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < n_; ++i) {
      if (i) s += ',';
      s += std::to_string(e_[i]);
    }
    return s + "]";
  }

 private:
  static std::size_t check_size(std::size_t n) {
    if (n > kMaxVars)
      throw DeskScaleExceeded(std::to_string(n) + " variables (max " + std::to_string(kMaxVars) + ")");
    return n;
  }

  std::array<std::uint32_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
};

/// Map ordering putting the grevlex-largest monomial first.
struct GrevlexDescending {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return MultiIndex::grevlex_cmp(a, b) > 0;
  }
};

/// All multi-indices of length n with total degree exactly d, grevlex-descending.
inline std::vector<MultiIndex> indices_of_degree(std::size_t n, std::uint32_t d) {
  std::vector<MultiIndex> out;
  MultiIndex cur(n);
  if (n == 0) {
    if (d == 0) out.push_back(cur);
    return out;
  }
  // Enumerate compositions of d into n parts.
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (std::uint32_t e = left + 1; e-- > 0;) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), GrevlexDescending{});
  return out;
}

/// All multi-indices with total degree <= d.
inline std::vector<MultiIndex> indices_up_to(std::size_t n, std::uint32_t d) {
  std::vector<MultiIndex> out;
  for (std::uint32_t k = 0; k <= d; ++k) {
    auto v = indices_of_degree(n, k);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

/// All beta <= alpha.
inline std::vector<MultiIndex> indices_below(const MultiIndex& alpha) {
  std::vector<MultiIndex> out;
  MultiIndex cur(alpha.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == alpha.size()) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= alpha[i]; ++e) {
      cur[i] = e;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// The coordinate multiset of gamma, e.g. [2,0,1] -> {0,0,2}.
inline std::vector<std::size_t> coordinate_list(const MultiIndex& gamma) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    for (std::uint32_t k = 0; k < gamma[i]; ++k) out.push_back(i);
  return out;
}

}  // namespace hsk
