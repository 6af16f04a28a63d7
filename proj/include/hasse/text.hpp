#pragma once

#include <optional>
#include <string>

#include "hasse/hs.hpp"
#include "hasse/ideal.hpp"

namespace hasse {

// Text formats.
//
// Header line: space separated key=value pairs
//   p=<prime> vars=x,y [params=s,t] [ext=t1,t2] [len=<m>]
// `ext` declares extension-role variables (fixed by every derivation).
//
// Polynomials: expressions with + - * / ^ and parentheses over integers,
// parameters and variables, e.g. `3*x^2*y + (s+1)/t * x`. Integers are read
// modulo p, exponents are non-negative integers and division is allowed
// only by nonzero constants of F_p(params).
//
// Derivation file: header with len, then one line `x -> <series>` per ring
// variable, where <series> may also use `mu`; it is read modulo
// mu^(len+1) and its constant term must be the variable itself.
//
// Ideal file: optional header, then one generator per line.
//
// Substitution file: header with from=<m> to=<n> instead of len, then
// one line `mu -> <series>`.
//
// Blank lines and text after '#' are ignored everywhere.

struct RingHeader {
  RingPtr ring;
  std::optional<unsigned> len;
  std::optional<unsigned> from;
  std::optional<unsigned> to;
};

/// Parses a header line; `line` is used for error locations.
RingHeader parse_header(const std::string& text, std::size_t line = 1);
std::string format_header(const Ring& r);

std::string format_coeff(const FieldElem& c, const Ring& r);
/// Canonical text: terms in decreasing graded-lex order, coefficients
/// printed as representatives in [1, p).
std::string format_poly(const MPoly& f, const Ring& r);
MPoly parse_poly(const std::string& text, const RingPtr& r, std::size_t line = 1, std::size_t column = 1);

std::string format_derivation(const HSDerivation& D);
HSDerivation parse_derivation(const std::string& text);

std::string format_ideal(const IdealPresentation& I);
/// Without a header the ring must be given; with both they must agree.
IdealPresentation parse_ideal(const std::string& text, const RingPtr& ring = nullptr);

std::string format_subst(const SubstitutionMap& psi);
/// The ring comes from the header; it must agree with `ring` when given.
SubstitutionMap parse_subst(const std::string& text, const RingPtr& ring = nullptr);

}  // namespace hasse
