#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hasse/hs.hpp"
#include "support/random_hs.hpp"

namespace hasse {

struct PropertyTally {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 20) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

/// Runs every group / substitution identity on one random instance built
/// from the seed. Ring is F_p[x,y]; lengths are at most max_len.
inline void check_hs_identities(std::uint64_t seed, const RingPtr& r, unsigned max_len, unsigned deg,
                                PropertyTally& tally) {
  std::mt19937_64 rng(seed);
  const unsigned m = 1 + static_cast<unsigned>(rng() % max_len);
  const std::string tag = " [seed " + std::to_string(seed) + ", m=" + std::to_string(m) + "]";
  const HSDerivation D = random_hs(rng, r, m, deg, 1 + static_cast<unsigned>(rng() % m));
  const HSDerivation E = random_hs(rng, r, m, deg, 1 + static_cast<unsigned>(rng() % m));
  const HSDerivation F = random_hs(rng, r, m, deg);
  const HSDerivation id = HSDerivation::identity(r, m);

  // Group axioms.
  tally.expect(compose(compose(D, E), F) == compose(D, compose(E, F)), "associativity" + tag);
  tally.expect(compose(D, id) == D && compose(id, D) == D, "identity element" + tag);
  const HSDerivation Dinv = invert(D);
  tally.expect(compose(D, Dinv).is_identity() && compose(Dinv, D).is_identity(), "inverse" + tag);

  // Order of a composition and additivity of the first nonzero component.
  const HsOrder lD = order(D), lE = order(E), lDE = order(compose(D, E));
  const unsigned n = std::min(lD.infinite ? m + 1 : lD.value, lE.infinite ? m + 1 : lE.value);
  tally.expect(lDE.at_least(n), "order of composition" + tag);
  if (n <= m) {
    const HSDerivation DE = compose(D, E);
    bool additive = true;
    for (const MPoly& mono : monomials_up_to(*r, 6))
      if (!(component(DE, n, mono) == component(D, n, mono) + component(E, n, mono))) additive = false;
    tally.expect(additive, "top component additivity" + tag);
  }

  // Generator images determine the order.
  {
    unsigned best = m + 1;
    for (const MPoly& mono : monomials_up_to(*r, 6)) {
      const JetSeries v = eval_phi(D, mono);
      for (unsigned i = 1; i < best; ++i)
        if (!v[i].is_zero()) best = i;
    }
    const HsOrder via_monomials = best > m ? HsOrder::infinity() : HsOrder::finite(best);
    tally.expect(via_monomials == lD, "order from generators" + tag);
  }

  // Constant-coefficient substitution maps.
  const unsigned n1 = m + static_cast<unsigned>(rng() % 3);
  const unsigned n2 = std::max(1U, n1 - static_cast<unsigned>(rng() % 2));
  const SubstitutionMap phi = random_constant_subst(rng, r, m, n1);
  const SubstitutionMap psi = random_constant_subst(rng, r, n1, n2);
  tally.expect(subst_action(phi, compose(D, E)) == compose(subst_action(phi, D), subst_action(phi, E)),
               "distributivity over composition" + tag);
  tally.expect(subst_action(psi, subst_action(phi, D)) == subst_action(compose_subst(psi, phi), D),
               "action of composed substitutions" + tag);
  tally.expect(invert(subst_action(phi, D)) == subst_action(phi, Dinv), "substitution commutes with inverse" + tag);

  // Truncation, stretch and scaling relations.
  const unsigned q = 1 + static_cast<unsigned>(rng() % m);
  const unsigned k1 = 1 + static_cast<unsigned>(rng() % 3), k2 = 1 + static_cast<unsigned>(rng() % 2);
  const FieldElem a = r->scalar(static_cast<long long>(rng() % r->p));
  tally.expect(truncate(compose(compose(D, E), F), q) == compose(compose(truncate(D, q), truncate(E, q)), truncate(F, q)),
               "truncation of compositions" + tag);
  tally.expect(stretch(compose(compose(D, E), F), k1) == compose(compose(stretch(D, k1), stretch(E, k1)), stretch(F, k1)),
               "stretch of compositions" + tag);
  tally.expect(stretch(D, k1 * k2) == stretch(stretch(D, k1), k2), "iterated stretch" + tag);
  tally.expect(scale(a, compose(D, E)) == compose(scale(a, D), scale(a, E)), "scaling of compositions" + tag);
  tally.expect(stretch(scale(a.pow(k1), D), k1) == scale(a, stretch(D, k1)), "scaled stretch" + tag);
  tally.expect(truncate(stretch(D, k1), q * k1) == stretch(truncate(D, q), k1), "truncated stretch" + tag);
  tally.expect(truncate(scale(a, D), q) == scale(a, truncate(D, q)), "truncated scaling" + tag);

  // (Id, delta)[m] is central.
  const HSDerivation delta = random_derivation(rng, r, deg);
  const HSDerivation central = stretch(delta, m);
  tally.expect(compose(D, central) == compose(central, D), "centrality of top-length derivations" + tag);
}

}  // namespace hasse
