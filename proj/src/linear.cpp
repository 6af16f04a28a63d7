#include "hasse/linear.hpp"

#include <algorithm>
#include <bit>

namespace hasse {

LinearSystem::LinearSystem(FieldElem zero, std::size_t ncols, std::vector<std::string> labels)
    : zero_(std::move(zero)), ncols_(ncols), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != ncols_) throw ArgumentError("label count does not match unknowns");
}

void LinearSystem::add_row(std::vector<FieldElem> row, FieldElem rhs) {
  if (row.size() != ncols_) throw ArgumentError("row length does not match unknown count");
  matrix_.push_back(std::move(row));
  rhs_.push_back(std::move(rhs));
}

bool LinearSystem::satisfied_by(const std::vector<FieldElem>& x) const {
  if (x.size() != ncols_) throw ArgumentError("solution length does not match unknown count");
  for (std::size_t r = 0; r < matrix_.size(); ++r) {
    FieldElem s = zero_;
    for (std::size_t c = 0; c < ncols_; ++c)
      if (!matrix_[r][c].is_zero() && !x[c].is_zero()) s += matrix_[r][c] * x[c];
    if (!(s == rhs_[r])) return false;
  }
  return true;
}

bool LinearSystem::annihilates(const std::vector<FieldElem>& x) const {
  if (x.size() != ncols_) throw ArgumentError("vector length does not match unknown count");
  for (const auto& row : matrix_) {
    FieldElem s = zero_;
    for (std::size_t c = 0; c < ncols_; ++c)
      if (!row[c].is_zero() && !x[c].is_zero()) s += row[c] * x[c];
    if (!s.is_zero()) return false;
  }
  return true;
}

LinearSolution gauss_solve(const LinearSystem& sys) {
  const std::size_t n = sys.cols();
  std::vector<std::vector<FieldElem>> a;
  a.reserve(sys.rows());
  for (std::size_t r = 0; r < sys.rows(); ++r) {
    auto row = sys.matrix()[r];
    row.push_back(sys.rhs()[r]);
    a.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t rank_rows = 0;
  for (std::size_t c = 0; c <= n && rank_rows < a.size(); ++c) {
    std::size_t best = a.size();
    int best_deg = 0;
    for (std::size_t r = rank_rows; r < a.size(); ++r) {
      if (a[r][c].is_zero()) continue;
      const int d = a[r][c].param_degree();
      if (best == a.size() || d < best_deg) {
        best = r;
        best_deg = d;
      }
    }
    if (best == a.size()) continue;
    std::swap(a[rank_rows], a[best]);
    auto& prow = a[rank_rows];
    const FieldElem inv = prow[c].inv();
    for (std::size_t k = c; k <= n; ++k)
      if (!prow[k].is_zero()) prow[k] = prow[k] * inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank_rows || a[r][c].is_zero()) continue;
      const FieldElem f = a[r][c];
      for (std::size_t k = c; k <= n; ++k)
        if (!prow[k].is_zero()) a[r][k] = a[r][k] - f * prow[k];
    }
    pivot_cols.push_back(c);
    ++rank_rows;
  }

  LinearSolution sol;
  sol.augmented_rank = pivot_cols.size();
  const bool rhs_pivot = !pivot_cols.empty() && pivot_cols.back() == n;
  sol.rank = sol.augmented_rank - (rhs_pivot ? 1 : 0);
  sol.feasible = !rhs_pivot;
  if (rhs_pivot) pivot_cols.pop_back();

  std::vector<long> row_of(n, -1);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) row_of[pivot_cols[i]] = static_cast<long>(i);
  if (sol.feasible) {
    sol.particular.assign(n, sys.zero());
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) sol.particular[pivot_cols[i]] = a[i][n];
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (row_of[f] >= 0) continue;
    std::vector<FieldElem> v(n, sys.zero());
    v[f] = FieldElem::one_like(sys.zero());
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
      if (!a[i][f].is_zero()) v[pivot_cols[i]] = -a[i][f];
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

FpSystem::FpSystem(fp_t p, std::size_t ncols) : p_(p), ncols_(ncols), pivot_row_(ncols + 1, -1) {
  if (!is_prime(p)) throw ArgumentError("characteristic must be prime");
}

namespace {

inline bool bit_get(const std::vector<std::uint64_t>& r, std::size_t c) { return (r[c >> 6] >> (c & 63)) & 1U; }

std::size_t first_bit(const std::vector<std::uint64_t>& r, std::size_t from) {
  std::size_t w = from >> 6;
  if (w >= r.size()) return r.size() * 64;
  std::uint64_t word = r[w] & (~0ULL << (from & 63));
  while (true) {
    if (word != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
    if (++w == r.size()) return r.size() * 64;
    word = r[w];
  }
}

}  // namespace

void FpSystem::add_row(const std::vector<std::pair<std::size_t, fp_t>>& entries, fp_t rhs) {
  ++rows_added_;
  const std::size_t width = ncols_ + 1;
  if (p_ == 2) {
    std::vector<std::uint64_t> row((width + 63) / 64, 0);
    for (const auto& [c, v] : entries) {
      if (c >= ncols_) throw ArgumentError("column index out of range");
      if (v & 1U) row[c >> 6] ^= 1ULL << (c & 63);
    }
    if (rhs & 1U) row[ncols_ >> 6] ^= 1ULL << (ncols_ & 63);
    std::size_t c = first_bit(row, 0);
    while (c < width && pivot_row_[c] >= 0) {
      const auto& pr = bits_[static_cast<std::size_t>(pivot_row_[c])];
      for (std::size_t w = c >> 6; w < row.size(); ++w) row[w] ^= pr[w];
      c = first_bit(row, c + 1);
    }
    if (c >= width) return;
    if (c == ncols_) inconsistent_ = true;
    pivot_row_[c] = static_cast<long>(bits_.size());
    bits_.push_back(std::move(row));
    pivots_.push_back(c);
    return;
  }
  std::vector<fp_t> row(width, 0);
  for (const auto& [c, v] : entries) {
    if (c >= ncols_) throw ArgumentError("column index out of range");
    row[c] = fp_add(row[c], v % p_, p_);
  }
  row[ncols_] = rhs % p_;
  std::size_t c = 0;
  while (true) {
    while (c < width && row[c] == 0) ++c;
    if (c >= width) return;
    if (pivot_row_[c] < 0) break;
    const auto& pr = dense_[static_cast<std::size_t>(pivot_row_[c])];
    const fp_t f = row[c];  // pivot rows are normalized to leading 1
    for (std::size_t k = c; k < width; ++k)
      if (pr[k] != 0) row[k] = fp_sub(row[k], fp_mul(f, pr[k], p_), p_);
  }
  const fp_t inv = fp_inv(row[c], p_);
  for (std::size_t k = c; k < width; ++k) row[k] = fp_mul(row[k], inv, p_);
  if (c == ncols_) inconsistent_ = true;
  pivot_row_[c] = static_cast<long>(dense_.size());
  dense_.push_back(std::move(row));
  pivots_.push_back(c);
}

SolutionSpace<fp_t> FpSystem::solve() const {
  SolutionSpace<fp_t> sol;
  sol.augmented_rank = pivots_.size();
  sol.rank = sol.augmented_rank - (inconsistent_ ? 1 : 0);
  sol.feasible = !inconsistent_;

  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < ncols_; ++c)
    if (pivot_row_[c] >= 0) order.push_back(c);
  const std::size_t width = ncols_ + 1;

  // Back substitution into reduced echelon form, highest pivot first.
  if (p_ == 2) {
    auto rows = bits_;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t c = *it;
      const auto& pr = rows[static_cast<std::size_t>(pivot_row_[c])];
      for (std::size_t c2 : order) {
        if (c2 >= c) break;
        auto& r = rows[static_cast<std::size_t>(pivot_row_[c2])];
        if (bit_get(r, c))
          for (std::size_t w = c >> 6; w < r.size(); ++w) r[w] ^= pr[w];
      }
    }
    if (sol.feasible) {
      sol.particular.assign(ncols_, 0);
      for (std::size_t c : order) sol.particular[c] = bit_get(rows[static_cast<std::size_t>(pivot_row_[c])], ncols_);
    }
    for (std::size_t f = 0; f < ncols_; ++f) {
      if (pivot_row_[f] >= 0) continue;
      std::vector<fp_t> v(ncols_, 0);
      v[f] = 1;
      for (std::size_t c : order) {
        if (c > f) break;
        if (bit_get(rows[static_cast<std::size_t>(pivot_row_[c])], f)) v[c] = 1;
      }
      sol.kernel.push_back(std::move(v));
    }
    return sol;
  }

  auto rows = dense_;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t c = *it;
    const auto& pr = rows[static_cast<std::size_t>(pivot_row_[c])];
    for (std::size_t c2 : order) {
      if (c2 >= c) break;
      auto& r = rows[static_cast<std::size_t>(pivot_row_[c2])];
      const fp_t f = r[c];
      if (f == 0) continue;
      for (std::size_t k = c; k < width; ++k)
        if (pr[k] != 0) r[k] = fp_sub(r[k], fp_mul(f, pr[k], p_), p_);
    }
  }
  if (sol.feasible) {
    sol.particular.assign(ncols_, 0);
    for (std::size_t c : order) sol.particular[c] = rows[static_cast<std::size_t>(pivot_row_[c])][ncols_];
  }
  for (std::size_t f = 0; f < ncols_; ++f) {
    if (pivot_row_[f] >= 0) continue;
    std::vector<fp_t> v(ncols_, 0);
    v[f] = 1;
    for (std::size_t c : order) {
      if (c > f) break;
      v[c] = fp_neg(rows[static_cast<std::size_t>(pivot_row_[c])][f], p_);
    }
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

}  // namespace hasse
