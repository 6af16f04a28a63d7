#pragma once

#include <cstddef>
#include <vector>

#include "hasse/ring.hpp"

namespace hasse {

/// Element of A[|mu|]/(mu^(m+1)) with A a polynomial ring; always stores
/// exactly m+1 coefficients.
class JetSeries {
 public:
  JetSeries(RingPtr ring, unsigned order);
  JetSeries(RingPtr ring, unsigned order, std::vector<MPoly> coeffs);
  /// The constant series f.
  static JetSeries constant(RingPtr ring, unsigned order, MPoly f);

  const RingPtr& ring() const noexcept { return ring_; }
  unsigned order() const noexcept { return order_; }
  const MPoly& operator[](std::size_t i) const { return c_.at(i); }
  MPoly& operator[](std::size_t i) { return c_.at(i); }
  const std::vector<MPoly>& coeffs() const noexcept { return c_; }

  bool is_zero() const;
  /// Smallest i with a nonzero coefficient, or order()+1 for zero.
  unsigned valuation() const;

  /// Same series viewed at a different order (dropping or zero-padding).
  JetSeries with_order(unsigned order) const;

  JetSeries operator-() const;
  friend JetSeries operator+(const JetSeries& a, const JetSeries& b);
  friend JetSeries operator-(const JetSeries& a, const JetSeries& b);
  JetSeries& operator+=(const JetSeries& o) { return *this = *this + o; }
  friend bool operator==(const JetSeries& a, const JetSeries& b);

  JetSeries scaled(const MPoly& f) const;

 private:
  RingPtr ring_;
  unsigned order_;
  std::vector<MPoly> c_;
};

/// Truncated Cauchy product.
JetSeries jet_mul(const JetSeries& f, const JetSeries& g);
JetSeries jet_pow(const JetSeries& f, unsigned e);

/// A-algebra map A[|mu|]_m -> A[|mu|]_n given by the image of mu.
class SubstitutionMap {
 public:
  /// Throws ArgumentError when image(0) != 0 or the map is not well
  /// defined (mu^(m+1) must land in mu^(n+1)).
  SubstitutionMap(unsigned source_order, JetSeries image);

  unsigned source_order() const noexcept { return source_; }
  unsigned target_order() const noexcept { return image_.order(); }
  const JetSeries& image() const noexcept { return image_; }
  const RingPtr& ring() const noexcept { return image_.ring(); }
  /// True when every coefficient of the image is free of ring variables.
  bool constant_coefficients() const noexcept { return constant_; }

  /// mu -> a mu, order m -> m.
  static SubstitutionMap scale(RingPtr ring, unsigned m, const MPoly& a);
  /// mu -> mu, order m -> n with n <= m.
  static SubstitutionMap projection(RingPtr ring, unsigned m, unsigned n);
  /// mu -> mu^k, order m -> m k.
  static SubstitutionMap stretch(RingPtr ring, unsigned m, unsigned k);
  /// mu -> c mu^k, order m -> n.
  static SubstitutionMap monomial(RingPtr ring, unsigned m, unsigned n, const MPoly& c, unsigned k);

 private:
  unsigned source_;
  JetSeries image_;
  bool constant_;
};

/// sum_i f_i psi(mu)^i truncated at the target order.
JetSeries apply_subst(const SubstitutionMap& psi, const JetSeries& f);
/// The map mu -> psi(phi(mu)); phi is applied first.
SubstitutionMap compose_subst(const SubstitutionMap& psi, const SubstitutionMap& phi);

}  // namespace hasse
