#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hasse/frobenius_solve.hpp"
#include "hasse/logideal.hpp"

namespace hasse {

/// Ansatz bounds for integral searches. Negative values mean "derive from
/// the instance".
struct SearchBounds {
  int ring_degree = -1;
  int param_degree = -1;
  unsigned depth = 1;
};

struct ResolvedBounds {
  unsigned ring_degree = 4;
  unsigned param_degree = 0;
  unsigned depth = 1;
  friend bool operator==(const ResolvedBounds&, const ResolvedBounds&) = default;
};

/// Parses "ring=4,param=2,depth=1" (any subset, any order).
SearchBounds parse_bounds(const std::string& text);
/// Bounds from the HS_DEFAULT_BOUNDS environment variable, else automatic.
SearchBounds bounds_from_env();
/// Automatic ring degree: max(generator degree, 4, extra_degree); automatic
/// parameter degree: twice the largest parameter degree of the generators.
ResolvedBounds resolve_bounds(const SearchBounds& b, const IdealPresentation& I, unsigned extra_degree = 0);

enum class SearchStatus { Feasible, Infeasible, Inconclusive };
const char* to_string(SearchStatus s);

/// Dimensions and rank data of one solved system.
struct StageCertificate {
  unsigned stage = 0;
  /// "linear", "reopen" (previous stage moved along bounded log
  /// derivations) or "frobenius" (earlier stage re-opened through p-th powers).
  std::string branch;
  unsigned reopened_stage = 0;
  std::size_t rows = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  std::size_t augmented_rank = 0;
  bool feasible = false;
  std::string note;
  friend bool operator==(const StageCertificate&, const StageCertificate&) = default;
};

struct ObstructionReport {
  SearchStatus status = SearchStatus::Infeasible;
  /// Last stage for which an extension was found.
  unsigned stage_reached = 1;
  /// Stage that failed (0 when feasible).
  unsigned failed_stage = 0;
  std::optional<HSDerivation> witness;
  std::vector<StageCertificate> systems;
  ResolvedBounds bounds;
  bool gradient_vanishes = false;
  std::string note;

  bool feasible() const noexcept { return status == SearchStatus::Feasible; }
};

/// One extension step from length stage-1 to stage.
struct ExtensionProblem {
  HSDerivation current;
  IdealPresentation ideal;
  unsigned stage;
  SearchBounds bounds;
  /// Optional per-generator values T_h: the step then asks for
  /// [mu^stage] phi(h) - T_h in I instead of [mu^stage] phi(h) in I.
  std::vector<MPoly> top_target;

  /// Throws ArgumentError if current does not have length stage-1 or is not
  /// (stage-1)-I-logarithmic.
  ExtensionProblem(HSDerivation current, IdealPresentation ideal, unsigned stage, SearchBounds bounds = {},
                   std::vector<MPoly> top_target = {});
};

/// Extends D to length n by zero coefficients.
HSDerivation pad_integral(const HSDerivation& D, unsigned n);

/// True when every partial derivative of every generator lies in I.
bool gradient_vanishes(const IdealPresentation& I);

/// Basis (over the coefficient field) of derivations with coefficients of
/// total degree <= degree that map every generator into I.
std::vector<HSDerivation> bounded_log_derivations(const IdealPresentation& I, unsigned degree);

ObstructionReport log_extend_step(const ExtensionProblem& problem);

/// Searches for an n-integral of delta inside HS(log I; n), stage by stage.
/// With top_target the last stage satisfies the shifted condition instead.
/// A failure is relative to the bounds, never a nonexistence proof.
ObstructionReport find_log_integral(const HSDerivation& delta, const IdealPresentation& I, unsigned n,
                                    const SearchBounds& bounds = {}, const std::vector<MPoly>& top_target = {});

/// E_1 = delta and E is I-logarithmic at its full length.
bool verify_integral_witness(const HSDerivation& E, const HSDerivation& delta, const IdealPresentation& I);

/// Re-runs the search recorded in a report and checks that it reproduces
/// the same status, stages and rank data.
bool recheck(const ObstructionReport& report, const HSDerivation& delta, const IdealPresentation& I, unsigned n,
             const SearchBounds& bounds = {}, const std::vector<MPoly>& top_target = {});

}  // namespace hasse
