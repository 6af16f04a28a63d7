#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "hasse/jets.hpp"

namespace hasse {

/// Order of D - Id: a positive integer or infinity for the identity.
struct HsOrder {
  bool infinite = true;
  unsigned value = 0;

  static HsOrder finite(unsigned v) { return {false, v}; }
  static HsOrder infinity() { return {true, 0}; }
  /// True when this order is at least n (infinity exceeds everything).
  bool at_least(unsigned n) const noexcept { return infinite || value >= n; }
  friend bool operator==(const HsOrder&, const HsOrder&) = default;
};

std::ostream& operator<<(std::ostream& os, const HsOrder& o);

/// Hasse-Schmidt derivation of length m on a polynomial ring, stored as the
/// images phi_D(x_j) of the ring variables. Extension variables are fixed.
class HSDerivation {
 public:
  /// Validates that image j has constant term x_j and order m.
  static HSDerivation from_images(RingPtr ring, unsigned m, std::vector<JetSeries> images);
  static HSDerivation identity(RingPtr ring, unsigned m);
  /// (Id, delta) with delta(x_j) = values[j].
  static HSDerivation from_derivation(RingPtr ring, const std::vector<MPoly>& values);

  const RingPtr& ring() const noexcept { return ring_; }
  unsigned length() const noexcept { return m_; }
  /// Image of the j-th ring variable (index into Ring::ring_vars()).
  const JetSeries& image(std::size_t j) const { return images_.at(j); }
  const std::vector<JetSeries>& images() const noexcept { return images_; }
  std::size_t num_generators() const noexcept { return images_.size(); }

  /// D_i(x_j) for every ring variable.
  std::vector<MPoly> component_values(unsigned i) const;
  bool is_identity() const;

  friend bool operator==(const HSDerivation& a, const HSDerivation& b);

 private:
  HSDerivation(RingPtr ring, unsigned m, std::vector<JetSeries> images)
      : ring_(std::move(ring)), m_(m), images_(std::move(images)) {}

  RingPtr ring_;
  unsigned m_ = 0;
  std::vector<JetSeries> images_;
};

/// phi_D(f); coefficient i equals D_i(f).
JetSeries eval_phi(const HSDerivation& D, const MPoly& f);
/// D_i(f).
MPoly component(const HSDerivation& D, unsigned i, const MPoly& f);
/// phi~_D applied to a whole series (coefficientwise, then truncated).
JetSeries extend_phi(const HSDerivation& D, const JetSeries& f);

HSDerivation compose(const HSDerivation& D, const HSDerivation& E);
/// Composes left to right: list[0] o list[1] o ... .
HSDerivation compose_all(const std::vector<HSDerivation>& list, RingPtr ring, unsigned m);
HSDerivation invert(const HSDerivation& D);
HsOrder order(const HSDerivation& D);

HSDerivation subst_action(const SubstitutionMap& psi, const HSDerivation& D);
/// a . D = (a^i D_i).
HSDerivation scale(const MPoly& a, const HSDerivation& D);
HSDerivation scale(const FieldElem& a, const HSDerivation& D);
/// (Id, D_1, ..., D_n).
HSDerivation truncate(const HSDerivation& D, unsigned n);
/// D[k]: D_{i/k} in position i when k | i, zero otherwise.
HSDerivation stretch(const HSDerivation& D, unsigned k);

/// delta with D = E o (Id, delta)[m]. Requires truncate(D, m-1) ==
/// truncate(E, m-1); returned as a length-1 derivation.
HSDerivation residual_derivation(const HSDerivation& D, const HSDerivation& E);

/// Derivation (length 1) applied to f.
MPoly apply_derivation(const HSDerivation& delta, const MPoly& f);

}  // namespace hasse
