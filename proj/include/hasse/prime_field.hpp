#pragma once

#include <cstdint>
#include <ostream>

#include "hasse/errors.hpp"

namespace hasse {

using fp_t = std::uint32_t;

bool is_prime(fp_t p) noexcept;

inline fp_t fp_add(fp_t a, fp_t b, fp_t p) noexcept {
  const fp_t s = a + b;
  return s >= p ? s - p : s;
}
inline fp_t fp_sub(fp_t a, fp_t b, fp_t p) noexcept { return a >= b ? a - b : a + p - b; }
inline fp_t fp_neg(fp_t a, fp_t p) noexcept { return a == 0 ? 0 : p - a; }
inline fp_t fp_mul(fp_t a, fp_t b, fp_t p) noexcept {
  return static_cast<fp_t>((static_cast<std::uint64_t>(a) * b) % p);
}
fp_t fp_pow(fp_t a, std::uint64_t e, fp_t p) noexcept;
/// Inverse of a nonzero residue; throws on zero.
fp_t fp_inv(fp_t a, fp_t p);
/// Reduce an arbitrary signed integer into [0, p).
fp_t fp_from_int(long long v, fp_t p) noexcept;

/// An element of F_p that carries its modulus. Small enough to pass by value.
struct Zp {
  fp_t v = 0;
  fp_t p = 0;

  bool is_zero() const noexcept { return v == 0; }
  bool is_one() const noexcept { return v == 1; }

  friend Zp operator+(Zp a, Zp b) noexcept { return {fp_add(a.v, b.v, a.p), a.p}; }
  friend Zp operator-(Zp a, Zp b) noexcept { return {fp_sub(a.v, b.v, a.p), a.p}; }
  friend Zp operator*(Zp a, Zp b) noexcept { return {fp_mul(a.v, b.v, a.p), a.p}; }
  Zp operator-() const noexcept { return {fp_neg(v, p), p}; }
  Zp& operator+=(Zp o) noexcept { v = fp_add(v, o.v, p); return *this; }
  Zp& operator-=(Zp o) noexcept { v = fp_sub(v, o.v, p); return *this; }
  Zp& operator*=(Zp o) noexcept { v = fp_mul(v, o.v, p); return *this; }
  Zp inv() const { return {fp_inv(v, p), p}; }
  static Zp one_like(Zp z) noexcept { return {1U % z.p, z.p}; }
  friend bool operator==(Zp a, Zp b) noexcept { return a.v == b.v; }
};

inline std::ostream& operator<<(std::ostream& os, Zp a) { return os << a.v; }

}  // namespace hasse
