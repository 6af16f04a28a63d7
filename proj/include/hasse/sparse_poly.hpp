#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "hasse/errors.hpp"
#include "hasse/monomial.hpp"

namespace hasse {

/// Sparse multivariate polynomial over a coefficient type C. Terms are kept
/// in strictly decreasing graded-lex order with no zero coefficients.
///
/// C must provide +, -, *, unary -, ==, is_zero() and is_one(). The zero
/// coefficient is stored so that constants can be created without a separate
/// context object.
template <class C>
class SparsePoly {
 public:
  using Term = std::pair<Monomial, C>;

  SparsePoly() = default;
  SparsePoly(std::size_t nvars, C zero) : nvars_(nvars), zero_(std::move(zero)) {}

  static SparsePoly constant(std::size_t nvars, C zero, C value) {
    SparsePoly r(nvars, std::move(zero));
    if (!value.is_zero()) r.terms_.emplace_back(Monomial(nvars), std::move(value));
    return r;
  }

  static SparsePoly monomial(std::size_t nvars, C zero, Monomial m, C value) {
    SparsePoly r(nvars, std::move(zero));
    if (!value.is_zero()) r.terms_.emplace_back(std::move(m), std::move(value));
    return r;
  }

  /// Builds a canonical polynomial from unsorted, possibly repeated terms.
  static SparsePoly from_terms(std::size_t nvars, C zero, std::vector<Term> terms) {
    SparsePoly r(nvars, std::move(zero));
    r.terms_ = std::move(terms);
    r.canonicalize();
    return r;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const C& zero_coeff() const noexcept { return zero_; }
  const std::vector<Term>& terms() const& noexcept { return terms_; }
  std::vector<Term> terms() && { return std::move(terms_); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_one());
  }

  /// Constant coefficient (zero when absent).
  C constant_term() const {
    if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
    return zero_;
  }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw ArgumentError("leading monomial of zero polynomial");
    return terms_.front().first;
  }
  const C& leading_coeff() const {
    if (terms_.empty()) throw ArgumentError("leading coefficient of zero polynomial");
    return terms_.front().second;
  }

  /// Total degree, -1 for the zero polynomial.
  int degree() const noexcept { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.degree()); }

  int degree_in(std::size_t var) const noexcept {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
    return d;
  }

  C coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.first > key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return zero_;
  }

  SparsePoly operator-() const {
    SparsePoly r(nvars_, zero_);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) r.terms_.emplace_back(m, -c);
    return r;
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, false); }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, true); }

  SparsePoly& operator+=(const SparsePoly& o) { return *this = merge(*this, o, false); }
  SparsePoly& operator-=(const SparsePoly& o) { return *this = merge(*this, o, true); }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    check_compatible(a, b);
    SparsePoly r(a.nvars_, a.zero_);
    if (a.is_zero() || b.is_zero()) return r;
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].first, b.terms_[0].second);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].first, a.terms_[0].second);
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.terms_.emplace_back(ma * mb, ca * cb);
    r.canonicalize();
    return r;
  }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  /// Multiplication by a single term; order is preserved so no re-sort.
  SparsePoly mul_term(const Monomial& m, const C& c) const {
    SparsePoly r(nvars_, zero_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [tm, tc] : terms_) {
      C v = tc * c;
      if (!v.is_zero()) r.terms_.emplace_back(tm * m, std::move(v));
    }
    return r;
  }

  SparsePoly scaled(const C& c) const { return mul_term(Monomial(nvars_), c); }

  SparsePoly pow(unsigned e) const {
    SparsePoly result = constant(nvars_, zero_, one_like());
    SparsePoly base = *this;
    while (e > 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e > 0) base *= base;
    }
    return result;
  }

  C one_like() const { return C::one_like(zero_); }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

  /// Keeps only terms accepted by the predicate on the monomial.
  template <class Pred>
  SparsePoly filtered(Pred pred) const {
    SparsePoly r(nvars_, zero_);
    for (const auto& t : terms_)
      if (pred(t.first)) r.terms_.push_back(t);
    return r;
  }

  /// Direct access for callers that maintain the invariant themselves.
  std::vector<Term>& mutable_terms() noexcept { return terms_; }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first > y.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
      } else {
        if (!out.empty() && out.back().second.is_zero()) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().second.is_zero()) out.pop_back();
    terms_ = std::move(out);
  }

 private:
  static void check_compatible(const SparsePoly& a, const SparsePoly& b) {
    if (a.nvars_ != b.nvars_) throw ArgumentError("polynomials over different variable sets");
  }

  static SparsePoly merge(const SparsePoly& a, const SparsePoly& b, bool subtract) {
    check_compatible(a, b);
    SparsePoly r(a.nvars_, a.zero_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first > b.terms_[j].first)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].first > a.terms_[i].first) {
        r.terms_.emplace_back(b.terms_[j].first, subtract ? -b.terms_[j].second : b.terms_[j].second);
        ++j;
      } else {
        C c = subtract ? a.terms_[i].second - b.terms_[j].second : a.terms_[i].second + b.terms_[j].second;
        if (!c.is_zero()) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::size_t nvars_ = 0;
  C zero_{};
  std::vector<Term> terms_;
};

}  // namespace hasse
