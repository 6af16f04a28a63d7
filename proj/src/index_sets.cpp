#include "hasse/index_sets.hpp"

#include <algorithm>
#include <limits>

#include "hasse/errors.hpp"

namespace hasse {

unsigned ipow(unsigned p, unsigned l) {
  unsigned long long r = 1;
  for (unsigned i = 0; i < l; ++i) {
    r *= p;
    if (r > std::numeric_limits<unsigned>::max()) throw ArgumentError("power overflows");
  }
  return static_cast<unsigned>(r);
}

std::vector<std::pair<unsigned, unsigned>> factorize(unsigned n) {
  if (n == 0) throw ArgumentError("cannot factor zero");
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned q = 2; q * q <= n; ++q) {
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e > 0) out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<unsigned> c_set(unsigned p, unsigned l, unsigned i) {
  const unsigned bound = ipow(p, l);
  if (i < 1 || i >= bound) throw ArgumentError("index must satisfy 1 <= i < p^l");
  std::vector<unsigned> out;
  unsigned long long v = i;
  for (unsigned j = 0; v < bound; ++j, v *= p) out.push_back(j);
  return out;
}

unsigned c_set_max(unsigned p, unsigned l, unsigned i) { return c_set(p, l, i).back(); }

bool p_set_member(unsigned n, const MultiIndex& alpha) {
  if (n == 0) throw ArgumentError("n must be positive");
  for (const auto& [q, e] : factorize(n)) {
    bool all = true;
    for (unsigned a : alpha) all = all && a % q == 0;
    if (all) return true;
  }
  return false;
}

unsigned n_beta(unsigned m, const MultiIndex& beta) {
  if (m < 2) throw ArgumentError("n_beta needs m > 1");
  if (!p_set_member(m, beta)) throw ArgumentError("multi-index is not in P_m");
  unsigned n = 1;
  for (const auto& [q, a] : factorize(m)) {
    // b = q-adic valuation of gcd(beta), infinite for beta = 0
    unsigned b = a;
    for (unsigned x : beta) {
      if (x == 0) continue;
      unsigned v = 0;
      while (x % q == 0) {
        x /= q;
        ++v;
      }
      b = std::min(b, v);
    }
    n *= ipow(q, a - b);
  }
  return n;
}

std::vector<unsigned> j_set(unsigned p, unsigned l, const HsOrder& ell) {
  std::vector<unsigned> out;
  if (ell.infinite) return out;
  const unsigned top = ipow(p, l);
  for (unsigned j = std::max(ell.value, 1U); j <= top; ++j)
    if (j % p != 0) out.push_back(j);
  return out;
}

}  // namespace hasse
