#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hasse/linear.hpp"
#include "hasse/param_poly.hpp"
#include "hasse/ring.hpp"

namespace hasse {

/// Polynomials over F_p in "flat" variables: the ring variables of a Ring
/// followed by its parameters. Coefficients with denominators must be
/// cleared before flattening.
using FlatPoly = ParamPoly;

std::size_t flat_size(const Ring& r);
/// Throws ArgumentError if some coefficient has a nontrivial denominator.
FlatPoly flatten(const MPoly& f, const Ring& r);
MPoly unflatten(const FlatPoly& f, const Ring& r);
/// Least common multiple of all coefficient denominators (monic).
ParamPoly common_denominator(const MPoly& f);
/// f times its common denominator, so every coefficient is a polynomial.
MPoly clear_denominators(const MPoly& f);

/// Total degree of the monomial restricted to `vars` is at most max_degree.
struct DegreeBound {
  std::vector<std::size_t> vars;
  unsigned max_degree = 0;
};

/// An unknown polynomial over F_p; its coefficient space is spanned by all
/// monomials satisfying every bound (variables outside the bounds are not
/// allowed to occur).
struct SymbolSpec {
  std::string name;
  std::vector<DegreeBound> bounds;
};

/// multiplier * S^power with power a power of p (1 allowed).
struct AdditiveTerm {
  std::size_t symbol = 0;
  unsigned power = 1;
  FlatPoly multiplier;
};

/// The identity constant + sum(terms) = 0.
struct AdditiveEquation {
  FlatPoly constant;
  std::vector<AdditiveTerm> terms;
};

struct FrobeniusProblem {
  fp_t p = 2;
  std::size_t nbase = 0;
  std::vector<SymbolSpec> symbols;
  std::vector<AdditiveEquation> equations;
};

struct FrobeniusSolution {
  bool feasible = false;
  /// One polynomial per symbol.
  std::vector<FlatPoly> particular;
  std::vector<std::vector<FlatPoly>> kernel;
  std::size_t unknowns = 0;
  std::size_t rows = 0;
  std::size_t rank = 0;
  std::size_t augmented_rank = 0;
};

/// Monomials in `nbase` variables allowed by the bounds, in decreasing
/// graded-lex order.
std::vector<Monomial> ansatz_monomials(std::size_t nbase, const std::vector<DegreeBound>& bounds);

/// Solves the additive identities over the bounded coefficient space by
/// F_p elimination. Since u^p = u on F_p, (sum u_i m_i)^q = sum u_i m_i^q,
/// so each unknown coefficient contributes a fixed column.
FrobeniusSolution frobenius_linear_solve(const FrobeniusProblem& problem);

/// Splits a polynomial in nbase + nsymbols variables (symbols last) into an
/// additive equation. Throws NonAdditiveError when a monomial involves two
/// symbols or a symbol to a power that is not a power of p.
AdditiveEquation additive_from_polynomial(const FlatPoly& f, std::size_t nbase, fp_t p);

}  // namespace hasse
