#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "hasse/decompose.hpp"
#include "support/random_log.hpp"

namespace hasse {

/// Random combination sum f_i delta_i of logarithmic derivations.
inline HSDerivation random_log_derivation(std::mt19937_64& rng, const RingPtr& r,
                                          const std::vector<HSDerivation>& basis, unsigned deg) {
  std::vector<MPoly> values(r->ring_vars().size(), r->zero());
  for (const auto& b : basis) {
    if (rng() % 2 == 0) continue;
    const MPoly f = random_poly(rng, *r, deg, 0, 2);
    for (std::size_t j = 0; j < values.size(); ++j) values[j] += f * b.image(j)[1];
  }
  return HSDerivation::from_derivation(r, values);
}

/// x_j -> x_j + delta(x_j) mu^j padded to length m.
inline HSDerivation shifted_derivation(const HSDerivation& delta, unsigned j, unsigned m) {
  const HSDerivation s = stretch(delta, j);
  return j == m ? s : pad_integral(s, m);
}

/// Random (p^l - 1)-I-log HS-derivation of length p^l with l(D) > 1: shifted
/// logarithmic derivations at positions >= 2, stretched logarithmic pieces,
/// and an arbitrary top component.
inline HSDerivation random_char_p_instance(std::mt19937_64& rng, const IdealPresentation& I, unsigned p, unsigned l,
                                           unsigned deg, const std::vector<HSDerivation>& logs) {
  const RingPtr& r = I.ring();
  const unsigned top = ipow(p, l);
  std::vector<HSDerivation> pieces;
  for (unsigned j = 2; j < top; ++j)
    if (rng() % 2 == 0) pieces.push_back(shifted_derivation(random_log_derivation(rng, r, logs, deg), j, top));
  if (rng() % 2 == 0) pieces.push_back(truncate(stretch(random_log_hs(rng, I, top / 2, deg, false), 2), top));
  if (rng() % 3 != 0) pieces.push_back(padded_top(rng, r, top, top, deg));
  std::shuffle(pieces.begin(), pieces.end(), rng);
  return compose_all(pieces, r, top);
}

}  // namespace hasse
