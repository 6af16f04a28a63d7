#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hasse/field.hpp"
#include "hasse/sparse_poly.hpp"

namespace hasse {

/// Ring variables are moved by HS-derivations; extension variables (base
/// change variables t_i, auxiliary unknowns) are constants for them.
enum class VarRole { Ring, Extension };

struct Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Polynomial over a coefficient field; the ring it belongs to is carried by
/// the enclosing object (jet, derivation, ideal).
using MPoly = SparsePoly<FieldElem>;

/// Descriptor of K[x_1..x_d] with K = F_p(params).
struct Ring {
  fp_t p = 2;
  std::vector<std::string> params;
  std::vector<std::string> vars;
  std::vector<VarRole> roles;

  static RingPtr make(fp_t p, std::vector<std::string> params, std::vector<std::string> vars,
                      std::vector<VarRole> roles = {});

  std::size_t nvars() const noexcept { return vars.size(); }
  std::size_t nparams() const noexcept { return params.size(); }
  /// Indices of ring-role variables in order.
  std::vector<std::size_t> ring_vars() const;
  std::vector<std::size_t> extension_vars() const;

  FieldElem zero_coeff() const { return FieldElem(p, params.size()); }
  FieldElem scalar(long long v) const { return FieldElem::from_int(p, params.size(), v); }
  FieldElem param(std::size_t i) const { return FieldElem::param(p, params.size(), i); }

  MPoly zero() const { return MPoly(nvars(), zero_coeff()); }
  MPoly one() const { return constant(scalar(1)); }
  MPoly constant(const FieldElem& c) const { return MPoly::constant(nvars(), zero_coeff(), c); }
  MPoly var(std::size_t i) const;
  MPoly term(const Monomial& m, const FieldElem& c) const { return MPoly::monomial(nvars(), zero_coeff(), m, c); }
  Monomial unit_monomial() const { return Monomial(nvars()); }

  std::size_t var_index(const std::string& name) const;
  std::size_t param_index(const std::string& name) const;

  bool same_as(const Ring& o) const;
};

/// Throws ArgumentError unless both descriptors describe the same ring.
void require_same_ring(const Ring& a, const Ring& b);

MPoly partial(const MPoly& f, std::size_t var);
/// f^(p^e), additive in f.
MPoly frobenius(const MPoly& f, unsigned e);
/// Largest parameter degree over all coefficients.
int param_degree(const MPoly& f);
/// Largest total degree in the given variables (-1 for zero).
int degree_in_vars(const MPoly& f, const std::vector<std::size_t>& vars);
/// Multiplies every coefficient by c.
MPoly scale(const MPoly& f, const FieldElem& c);
/// True when no coefficient has a nontrivial denominator.
bool has_polynomial_coefficients(const MPoly& f);

/// Re-expresses f in a target ring: variable i goes to variable var_map[i]
/// and each coefficient is sent through coeff_map.
MPoly map_poly(const MPoly& f, const Ring& target, const std::vector<std::size_t>& var_map,
               const std::function<FieldElem(const FieldElem&)>& coeff_map);

/// Evaluates the generic substitution x_i -> images[i] inside the target ring.
MPoly substitute(const MPoly& f, const std::vector<MPoly>& images, const MPoly& one);

}  // namespace hasse
