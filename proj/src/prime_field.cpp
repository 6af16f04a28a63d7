#include "hasse/prime_field.hpp"

namespace hasse {

bool is_prime(fp_t p) noexcept {
  if (p < 2) return false;
  for (fp_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

fp_t fp_pow(fp_t a, std::uint64_t e, fp_t p) noexcept {
  fp_t result = 1 % p;
  fp_t base = a % p;
  while (e > 0) {
    if (e & 1U) result = fp_mul(result, base, p);
    base = fp_mul(base, base, p);
    e >>= 1U;
  }
  return result;
}

fp_t fp_inv(fp_t a, fp_t p) {
  if (a % p == 0) throw MathError("division by zero in F_" + std::to_string(p));
  return fp_pow(a, p - 2, p);
}

fp_t fp_from_int(long long v, fp_t p) noexcept {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<fp_t>(r);
}

}  // namespace hasse
