#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hasse/param_poly.hpp"
#include "hasse/prime_field.hpp"

namespace hasse {

/// Element of F_p or of F_p(u_1..u_k). With parameters the value is a
/// reduced fraction whose denominator is monic in graded-lex order; without
/// parameters only the residue is stored.
class FieldElem {
 public:
  FieldElem() = default;
  /// Zero of the field with the given characteristic and parameter count.
  FieldElem(fp_t p, std::size_t nparams);

  static FieldElem from_int(fp_t p, std::size_t nparams, long long v);
  static FieldElem param(fp_t p, std::size_t nparams, std::size_t index);
  static FieldElem from_poly(const ParamPoly& num);
  static FieldElem one_like(const FieldElem& z) { return from_int(z.p_, z.nparams_, 1); }

  fp_t characteristic() const noexcept { return p_; }
  std::size_t nparams() const noexcept { return nparams_; }

  bool is_zero() const noexcept { return nparams_ == 0 ? v_ == 0 : num_.is_zero(); }
  bool is_one() const noexcept;
  /// True when the value lies in F_p.
  bool is_scalar() const noexcept;
  /// Residue of a scalar value; throws if the value involves parameters.
  fp_t scalar_value() const;

  /// Numerator and denominator (denominator 1 when there are no parameters).
  ParamPoly numerator() const;
  ParamPoly denominator() const;

  FieldElem operator-() const;
  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem inv() const;
  FieldElem pow(unsigned long long e) const;
  /// x^(p^e); additive.
  FieldElem frobenius(unsigned e) const;

  friend bool operator==(const FieldElem& a, const FieldElem& b);

  /// Largest total degree among numerator and denominator.
  int param_degree() const noexcept;

 private:
  friend FieldElem reduce_fraction(const ParamPoly& num, const ParamPoly& den);
  void check_same(const FieldElem& o) const;

  fp_t p_ = 2;
  std::size_t nparams_ = 0;
  fp_t v_ = 0;
  ParamPoly num_;
  ParamPoly den_;
};

/// Builds the canonical fraction num/den. Throws MathError on zero den.
FieldElem reduce_fraction(const ParamPoly& num, const ParamPoly& den);

}  // namespace hasse
