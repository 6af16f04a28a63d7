#pragma once

#include <utility>
#include <vector>

#include "hasse/hs.hpp"

namespace hasse {

using MultiIndex = std::vector<unsigned>;

/// p^l, throwing on overflow.
unsigned ipow(unsigned p, unsigned l);
/// Prime factorization as (prime, exponent) pairs, primes increasing.
std::vector<std::pair<unsigned, unsigned>> factorize(unsigned n);

/// {j : i p^j < p^l} for 1 <= i < p^l.
std::vector<unsigned> c_set(unsigned p, unsigned l, unsigned i);
/// max c_set(p, l, i).
unsigned c_set_max(unsigned p, unsigned l, unsigned i);

/// Some prime factor of n divides every component of alpha.
bool p_set_member(unsigned n, const MultiIndex& alpha);

/// The divisor n of m with 1 <= n < m and beta n / m a multi-index outside
/// P_n. Throws ArgumentError unless m > 1 and beta lies in P_m.
unsigned n_beta(unsigned m, const MultiIndex& beta);

/// {j : ell <= j <= p^l, p does not divide j}, increasing.
std::vector<unsigned> j_set(unsigned p, unsigned l, const HsOrder& ell);

}  // namespace hasse
