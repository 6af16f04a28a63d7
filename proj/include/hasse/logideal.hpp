#pragma once

#include <functional>

#include "hasse/hs.hpp"
#include "hasse/ideal.hpp"

namespace hasse {

/// D_i(h) in I for every generator h of I and every 1 <= i <= r. By the
/// Leibniz rule this implies D_i(I) in I for i <= r.
bool is_r_log(const HSDerivation& D, const IdealPresentation& I, unsigned r);
/// is_r_log at the full length.
bool is_log(const HSDerivation& D, const IdealPresentation& I);
/// Largest r with D r-I-logarithmic (0 when D_1 already fails).
unsigned log_level(const HSDerivation& D, const IdealPresentation& I);

/// HS-derivation of R/I given by representative images whose coefficients
/// are in normal form modulo I.
class QuotientHS {
 public:
  QuotientHS(IdealPresentation ideal, HSDerivation representative);

  const IdealPresentation& ideal() const noexcept { return ideal_; }
  const HSDerivation& representative() const noexcept { return rep_; }
  unsigned length() const noexcept { return rep_.length(); }

  friend bool operator==(const QuotientHS& a, const QuotientHS& b) { return a.rep_ == b.rep_; }

 private:
  IdealPresentation ideal_;
  HSDerivation rep_;
};

/// Reduces every image coefficient modulo I.
HSDerivation reduce_images(const HSDerivation& D, const IdealPresentation& I);

/// Pi_HS(D); throws MathError unless D is I-logarithmic.
QuotientHS pushforward_hs(const HSDerivation& D, const IdealPresentation& I);
/// Composition in HS(R/I): compose representatives and reduce.
QuotientHS compose(const QuotientHS& a, const QuotientHS& b);
/// psi . D on the quotient (coefficients of psi are read modulo I).
QuotientHS subst_action(const SubstitutionMap& psi, const QuotientHS& D);
/// Lift to R using the representatives themselves.
HSDerivation lift_hs_from_quotient(const QuotientHS& E);

/// Extensional check that a linear operator maps I into I: applied to each
/// generator times every monomial of degree <= deg.
bool preserves_ideal(const std::function<MPoly(const MPoly&)>& op, const IdealPresentation& I, unsigned deg = 6);

}  // namespace hasse
