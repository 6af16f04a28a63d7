#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "hasse/errors.hpp"

namespace hasse {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector with inline storage. Ordered by graded lexicographic
/// order with the first variable largest.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : n_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVars) throw ArgumentError("too many variables (max 16)");
  }

  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1) {
    Monomial m(nvars);
    m.set(index, power);
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  unsigned operator[](std::size_t i) const noexcept { return exp_[i]; }
  unsigned degree() const noexcept { return deg_; }
  bool is_one() const noexcept { return deg_ == 0; }

  void set(std::size_t i, unsigned e) {
    if (i >= n_) throw ArgumentError("variable index out of range");
    if (e > 0xFFFFU) throw ArgumentError("exponent overflow");
    deg_ = deg_ - exp_[i] + e;
    exp_[i] = static_cast<std::uint16_t>(e);
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < n_; ++i) {
      const unsigned e = static_cast<unsigned>(exp_[i]) + o.exp_[i];
      if (e > 0xFFFFU) throw ArgumentError("exponent overflow");
      r.exp_[i] = static_cast<std::uint16_t>(e);
    }
    r.deg_ = deg_ + o.deg_;
    return r;
  }

  /// Multiplies every exponent by k (used by Frobenius and stretching).
  Monomial scaled(unsigned k) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < n_; ++i) {
      const unsigned long e = static_cast<unsigned long>(exp_[i]) * k;
      if (e > 0xFFFFU) throw ArgumentError("exponent overflow");
      r.exp_[i] = static_cast<std::uint16_t>(e);
    }
    r.deg_ = deg_ * k;
    return r;
  }

  bool divides(const Monomial& o) const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
      if (exp_[i] > o.exp_[i]) return false;
    return true;
  }

  /// o / this, assuming this divides o.
  Monomial quotient_of(const Monomial& o) const noexcept {
    Monomial r(o);
    for (std::size_t i = 0; i < n_; ++i) r.exp_[i] = static_cast<std::uint16_t>(o.exp_[i] - exp_[i]);
    r.deg_ = o.deg_ - deg_;
    return r;
  }

  Monomial lcm(const Monomial& o) const noexcept {
    Monomial r(n_);
    for (std::size_t i = 0; i < n_; ++i) r.exp_[i] = std::max(exp_[i], o.exp_[i]);
    r.deg_ = 0;
    for (std::size_t i = 0; i < n_; ++i) r.deg_ += r.exp_[i];
    return r;
  }

  Monomial gcd(const Monomial& o) const noexcept {
    Monomial r(n_);
    for (std::size_t i = 0; i < n_; ++i) r.exp_[i] = std::min(exp_[i], o.exp_[i]);
    r.deg_ = 0;
    for (std::size_t i = 0; i < n_; ++i) r.deg_ += r.exp_[i];
    return r;
  }

  bool coprime(const Monomial& o) const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
      if (exp_[i] != 0 && o.exp_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.n_ == b.n_ && a.deg_ == b.deg_ && a.exp_ == b.exp_;
  }

  /// Graded lexicographic comparison.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (a.deg_ != b.deg_) return a.deg_ <=> b.deg_;
    for (std::size_t i = 0; i < a.n_; ++i)
      if (a.exp_[i] != b.exp_[i]) return a.exp_[i] <=> b.exp_[i];
    return std::strong_ordering::equal;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < n_; ++i) h = (h ^ exp_[i]) * 1099511628211ULL;
    return h;
  }

 private:
  std::array<std::uint16_t, kMaxVars> exp_{};
  std::uint8_t n_ = 0;
  unsigned deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

}  // namespace hasse
