#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hasse/basechange.hpp"
#include "hasse/index_sets.hpp"

namespace hasse {

/// One factor psi . N of a factorization, where psi(mu) = c mu^n with
/// c = 1 (char-p decomposition) or c = t^alpha (polynomial base change).
struct FactorEntry {
  unsigned n = 1;
  MultiIndex alpha;
  /// The factor before substitution (over the base ring for base change).
  HSDerivation base;
  /// psi . base at the full length, over the ring of the input.
  HSDerivation applied;
  /// Logarithmic level the factor is expected to have (0: no ideal given).
  unsigned required_log_level = 0;
  bool log_attested = true;
};

struct FactorizationCertificate {
  explicit FactorizationCertificate(HSDerivation in) : input(std::move(in)) {}

  HSDerivation input;
  /// Composition order: factors[0] o factors[1] o ... .
  std::vector<FactorEntry> factors;
  bool recomposes = false;

  // Char-p decomposition D = T[p] o F.
  unsigned p = 0;
  unsigned l = 0;
  std::optional<HSDerivation> coarse_t;
  std::optional<HSDerivation> coarse_f;
  /// (T_{p^(l-1)} - D_{p^l})(h) in I for every generator h.
  bool top_relation = true;
  /// F is logarithmic at full length and l(F) > 1.
  bool f_attested = true;

  std::string note;

  HSDerivation recompose() const;
  /// All attestations hold and the factors recompose to the input.
  bool valid() const;
};

/// D = T[p] o (o_{j in J(l,D)} psi^j . F^j), factors in decreasing j.
/// Integrals are searched with the given bounds; failure raises
/// BoundExhausted.
FactorizationCertificate decompose_char_p(const HSDerivation& D, const IdealPresentation& I, unsigned p, unsigned l,
                                          const SearchBounds& bounds = {});

/// D over k[t][x] written as o_n o_{alpha in L_n} psi_alpha^{n,m} . N~^{n,alpha}
/// with N^{n,alpha} over k[x] of length floor(m/n). With an ideal of the
/// base ring, each N^{n,alpha} is attested floor(m/n)-logarithmic.
FactorizationCertificate factor_over_poly_extension(const HSDerivation& D, const BaseExtension& ext,
                                                    const std::optional<IdealPresentation>& I = std::nullopt);

struct PreimageTerm {
  MultiIndex alpha;
  /// m-integral over the base ring; its first component is delta_alpha.
  HSDerivation integral;
};

/// Reads delta = sum t^alpha delta_alpha off the n = 1 factors of a
/// certificate for an integral of delta. Throws ArgumentError when the
/// certificate is not about delta.
std::vector<PreimageTerm> phi_preimage(const HSDerivation& delta, const FactorizationCertificate& cert,
                                       const BaseExtension& ext);

}  // namespace hasse
