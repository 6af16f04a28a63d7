#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hasse/integrate.hpp"

namespace hasse {

/// A coefficient extension k -> L applied to R = k[x].
///
/// Polynomial: L = k[t_1..t_e]; the target ring has the source variables
/// followed by the t_i as extension-role variables.
/// FrobeniusTwist: L = F_p(a_1..a_n) over k = F_p(s_1..s_n) with
/// s_i = a_i^(p^e); the target ring has the same variables.
class BaseExtension {
 public:
  enum class Kind { Polynomial, FrobeniusTwist };

  static BaseExtension polynomial(RingPtr source, const std::vector<std::string>& t_names);
  static BaseExtension frobenius_twist(RingPtr source, const std::vector<std::string>& new_params, unsigned e);

  Kind kind() const noexcept { return kind_; }
  const RingPtr& source() const noexcept { return source_; }
  const RingPtr& target() const noexcept { return target_; }
  /// Indices of the new variables t_i in the target (polynomial kind).
  const std::vector<std::size_t>& new_vars() const noexcept { return new_vars_; }
  unsigned twist_exponent() const noexcept { return twist_; }
  /// Number of coordinates of a basis index.
  std::size_t basis_rank() const;

  FieldElem map_coeff(const FieldElem& c) const;
  MPoly map(const MPoly& f) const;
  IdealPresentation extend_ideal(const IdealPresentation& I) const;
  /// t^alpha, or a^alpha for a Frobenius twist (alpha_i < p^e).
  MPoly basis_element(const std::vector<unsigned>& alpha) const;

 private:
  Kind kind_ = Kind::Polynomial;
  RingPtr source_, target_;
  std::vector<std::size_t> var_map_;
  std::vector<std::size_t> new_vars_;
  unsigned twist_ = 0;
};

HSDerivation extend_hs(const HSDerivation& D, const BaseExtension& ext);
SubstitutionMap extend_subst(const SubstitutionMap& psi, const BaseExtension& ext);

struct BasisComponent {
  std::vector<unsigned> index;
  /// Length-1 derivation over the source ring.
  HSDerivation derivation;
};

/// Writes a derivation over the target as sum_i b_i * extend(delta_i) with
/// b_i the basis elements; components are sorted by index and nonzero.
std::vector<BasisComponent> basis_decompose_derivation(const HSDerivation& eps, const BaseExtension& ext);
/// sum_i b_i * extend(delta_i) as a length-1 derivation over the target.
HSDerivation basis_recombine(const std::vector<BasisComponent>& parts, const BaseExtension& ext);

struct LeapEntry {
  std::string witness;
  /// Longest length for which an integral was found (within bounds).
  unsigned integrable_to = 1;
  /// Length at which the search stopped (0 when integrable to m_max).
  unsigned failed_length = 0;
  SearchStatus status = SearchStatus::Feasible;
  std::string note;
};

struct LeapReport {
  std::vector<LeapEntry> entries;
  /// Lengths s where a witness integrable to s-1 has no integral of length s
  /// within the bounds.
  std::vector<unsigned> flagged;
  /// Lengths where the search was inconclusive.
  std::vector<unsigned> inconclusive;
  bool flags_at_prime_powers_only = true;
  unsigned max_length = 0;
  ResolvedBounds bounds;
};

LeapReport leap_scan(const IdealPresentation& I, unsigned m_max, const std::vector<HSDerivation>& witnesses,
                     const std::vector<std::string>& labels = {}, const SearchBounds& bounds = {});

/// True when n is a positive power p^k with k >= 1.
bool is_power_of(unsigned n, unsigned p);

}  // namespace hasse
