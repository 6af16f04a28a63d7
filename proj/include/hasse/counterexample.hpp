#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hasse/basechange.hpp"

namespace hasse {

// The instance: k = F_2(s,t), h = x^2 + y^2 + t x^4 + s y^4, A = k[x,y]/(h),
// and L = F_2(a,b) with s = a^2, t = b^2, where h = H^2 for
// H = x + y + b x^2 + a y^2. h is taken to be irreducible over k; this is
// assumed, not checked.

struct CounterexampleOptions {
  /// Degree bounds for the unknowns W, U, G of W^2 + (t+s) U^4 = h G.
  unsigned xy_degree = 8;
  unsigned st_degree = 4;
  /// Bounds for the staged integral searches on both sides.
  SearchBounds search;
};

/// One coefficient of phi(h) for the generic length-4 lift
/// x -> x + sum u_i mu^i, y -> y + sum v_i mu^i.
struct CoefficientStep {
  unsigned power = 0;
  std::string coefficient;
  std::string consequence;
  bool checked = false;
};

struct KSideReport {
  RingPtr ring;
  MPoly h;
  std::vector<CoefficientStep> steps;
  std::string equation;
  unsigned xy_degree = 0;
  unsigned st_degree = 0;
  std::size_t unknowns = 0;
  std::size_t rows = 0;
  std::size_t rank = 0;
  std::size_t augmented_rank = 0;
  std::size_t kernel_dimension = 0;
  bool system_feasible = false;
  /// Kernel basis elements whose U component is nonzero / not in (h).
  std::size_t u_nonzero = 0;
  std::size_t u_outside_h = 0;
  /// Every element of the bounded solution space has U in (h).
  bool u_forced = false;
  /// Staged search for a length-4 integral of d/dx + d/dy over k.
  ObstructionReport diagonal_search;
};

struct LSideWitness {
  std::string label;
  HSDerivation derivation;
  /// delta(H) in (H) and delta(h) in (h).
  bool log_for_H = false;
  bool log_for_h = false;
  /// delta does not vanish on A_L.
  bool nonzero_on_quotient = false;
  ObstructionReport search;
  bool verified = false;
};

struct LSideReport {
  RingPtr ring;
  MPoly H;
  MPoly h;
  bool h_is_square = false;
  std::vector<LSideWitness> witnesses;
  /// x -> x + mu + (a+b) mu^2, y -> y + mu.
  std::optional<HSDerivation> published;
  bool published_verified = false;
  bool published_fixes_h = false;
};

struct CounterexampleReport {
  KSideReport k;
  LSideReport l;
  bool not_surjective = false;
  std::string conclusion;
};

CounterexampleReport counterexample_report(const CounterexampleOptions& options = {});

/// Human-readable account following the argument step by step.
std::string counterexample_text(const CounterexampleReport& report);

}  // namespace hasse
