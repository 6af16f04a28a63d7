#pragma once

#include <vector>

#include "hasse/ring.hpp"

namespace hasse {

/// Ideal given by generators, with a reduced graded-lex Groebner basis
/// computed at construction.
class IdealPresentation {
 public:
  IdealPresentation(RingPtr ring, std::vector<MPoly> generators);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<MPoly>& generators() const noexcept { return generators_; }
  const std::vector<MPoly>& groebner_basis() const noexcept { return basis_; }

  /// Remainder of f modulo the Groebner basis (canonical).
  MPoly normal_form(const MPoly& f) const;
  bool contains(const MPoly& f) const { return normal_form(f).is_zero(); }
  bool is_unit_ideal() const;
  bool is_zero_ideal() const noexcept { return basis_.empty(); }

 private:
  RingPtr ring_;
  std::vector<MPoly> generators_;
  std::vector<MPoly> basis_;
};

/// Reduced Groebner basis of the given polynomials (Buchberger, chain
/// criterion only).
std::vector<MPoly> groebner_basis(const std::vector<MPoly>& polys);

/// Remainder of f under full reduction by the given monic basis.
MPoly reduce(const MPoly& f, const std::vector<MPoly>& basis);

bool membership(const IdealPresentation& I, const MPoly& f);

}  // namespace hasse
