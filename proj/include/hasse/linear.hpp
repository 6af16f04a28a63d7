#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hasse/field.hpp"

namespace hasse {

/// Dense system A x = b over one coefficient field.
class LinearSystem {
 public:
  LinearSystem(FieldElem zero, std::size_t ncols, std::vector<std::string> labels = {});

  void add_row(std::vector<FieldElem> row, FieldElem rhs);

  std::size_t rows() const noexcept { return matrix_.size(); }
  std::size_t cols() const noexcept { return ncols_; }
  const FieldElem& zero() const noexcept { return zero_; }
  const std::vector<std::vector<FieldElem>>& matrix() const noexcept { return matrix_; }
  const std::vector<FieldElem>& rhs() const noexcept { return rhs_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// True when A x = b holds exactly.
  bool satisfied_by(const std::vector<FieldElem>& x) const;
  /// True when A x = 0 holds exactly.
  bool annihilates(const std::vector<FieldElem>& x) const;

 private:
  FieldElem zero_;
  std::size_t ncols_;
  std::vector<std::string> labels_;
  std::vector<std::vector<FieldElem>> matrix_;
  std::vector<FieldElem> rhs_;
};

template <class T>
struct SolutionSpace {
  bool feasible = false;
  std::vector<T> particular;
  std::vector<std::vector<T>> kernel;
  std::size_t rank = 0;
  /// Rank of [A | b]; exceeds rank exactly when infeasible.
  std::size_t augmented_rank = 0;
};

using LinearSolution = SolutionSpace<FieldElem>;

/// Exact Gauss-Jordan elimination. The particular solution sets free
/// unknowns to zero; the kernel basis has one vector per free column.
LinearSolution gauss_solve(const LinearSystem& sys);

/// Sparse-input system over F_p solved by dense elimination; rows are
/// reduced as they arrive so memory stays proportional to the rank.
class FpSystem {
 public:
  FpSystem(fp_t p, std::size_t ncols);

  /// Adds sum(entries) = rhs. Entries may repeat columns; they are summed.
  void add_row(const std::vector<std::pair<std::size_t, fp_t>>& entries, fp_t rhs = 0);

  std::size_t cols() const noexcept { return ncols_; }
  std::size_t rows_added() const noexcept { return rows_added_; }
  fp_t characteristic() const noexcept { return p_; }

  SolutionSpace<fp_t> solve() const;

 private:
  using Row = std::vector<std::uint64_t>;  // bit-packed for p = 2
  using Dense = std::vector<fp_t>;

  fp_t p_;
  std::size_t ncols_;
  std::size_t rows_added_ = 0;
  bool inconsistent_ = false;
  // Echelon rows keyed by pivot column (index into rows). The last column is
  // the right-hand side.
  std::vector<long> pivot_row_;
  std::vector<Row> bits_;
  std::vector<Dense> dense_;
  std::vector<std::size_t> pivots_;
};

}  // namespace hasse
