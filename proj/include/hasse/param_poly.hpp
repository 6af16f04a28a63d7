#pragma once

#include <cstddef>

#include "hasse/prime_field.hpp"
#include "hasse/sparse_poly.hpp"

namespace hasse {

/// Polynomial over F_p in the parameters of a rational function field.
using ParamPoly = SparsePoly<Zp>;

ParamPoly param_zero(std::size_t nparams, fp_t p);
ParamPoly param_constant(std::size_t nparams, fp_t p, fp_t value);
ParamPoly param_variable(std::size_t nparams, fp_t p, std::size_t index);

fp_t characteristic(const ParamPoly& f) noexcept;

/// Scales f so its graded-lex leading coefficient is 1. Zero stays zero.
ParamPoly make_monic(const ParamPoly& f);

/// Sets q = a / b and returns true when b divides a exactly.
bool exact_divide(const ParamPoly& a, const ParamPoly& b, ParamPoly& q);

/// a / b; throws MathError when the division is not exact.
ParamPoly divide_exact(const ParamPoly& a, const ParamPoly& b);

/// Monic greatest common divisor (zero only when both inputs are zero).
ParamPoly gcd(const ParamPoly& a, const ParamPoly& b);

/// f^(p^e) computed termwise.
ParamPoly frobenius(const ParamPoly& f, unsigned e);

}  // namespace hasse
