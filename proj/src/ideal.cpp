#include "hasse/ideal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>

namespace hasse {

namespace {

MPoly monic(const MPoly& f) {
  if (f.is_zero() || f.leading_coeff().is_one()) return f;
  return f.scaled(f.leading_coeff().inv());
}

MPoly s_polynomial(const MPoly& f, const MPoly& g) {
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  const FieldElem one = FieldElem::one_like(f.zero_coeff());
  // Both inputs are monic.
  return f.mul_term(f.leading_monomial().quotient_of(l), one) - g.mul_term(g.leading_monomial().quotient_of(l), one);
}

}  // namespace

MPoly reduce(const MPoly& f, const std::vector<MPoly>& basis) {
  if (f.is_zero() || basis.empty()) return f;
  using Acc = std::map<Monomial, FieldElem, std::greater<Monomial>>;
  Acc work;
  for (const auto& [m, c] : f.terms()) work.emplace(m, c);
  std::vector<MPoly::Term> rem;
  while (!work.empty()) {
    auto it = work.begin();
    const Monomial lm = it->first;
    const FieldElem lc = it->second;
    work.erase(it);
    const MPoly* div = nullptr;
    for (const auto& g : basis)
      if (g.leading_monomial().divides(lm)) {
        div = &g;
        break;
      }
    if (div == nullptr) {
      rem.emplace_back(lm, lc);
      continue;
    }
    const Monomial q = div->leading_monomial().quotient_of(lm);
    const auto& gt = div->terms();
    for (std::size_t k = 1; k < gt.size(); ++k) {
      const Monomial m = gt[k].first * q;
      FieldElem c = -(gt[k].second * lc);
      auto [pos, inserted] = work.emplace(m, c);
      if (!inserted) {
        pos->second += c;
        if (pos->second.is_zero()) work.erase(pos);
      }
    }
  }
  MPoly r(f.nvars(), f.zero_coeff());
  r.mutable_terms() = std::move(rem);
  return r;
}

std::vector<MPoly> groebner_basis(const std::vector<MPoly>& polys) {
  std::vector<MPoly> G;
  for (const auto& f : polys)
    if (!f.is_zero()) G.push_back(monic(f));
  if (G.empty()) return G;
  for (const auto& g : G)
    if (g.is_constant()) return {g};

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 1; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace(i, j);
  std::set<std::pair<std::size_t, std::size_t>> done;

  auto chain_skip = [&](std::size_t i, std::size_t j) {
    // Skip (i, j) if some k has LM(k) | lcm and both (i,k), (k,j) were treated.
    const Monomial l = G[i].leading_monomial().lcm(G[j].leading_monomial());
    for (std::size_t k = 0; k < G.size(); ++k) {
      if (k == i || k == j) continue;
      if (!G[k].leading_monomial().divides(l)) continue;
      const auto a = std::minmax(i, k), b = std::minmax(j, k);
      if (done.count({a.first, a.second}) && done.count({b.first, b.second})) return true;
    }
    return false;
  };

  while (!pairs.empty()) {
    // Pick the pair with the smallest lcm (normal selection strategy).
    auto best = pairs.begin();
    Monomial best_l = G[best->first].leading_monomial().lcm(G[best->second].leading_monomial());
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      const Monomial l = G[it->first].leading_monomial().lcm(G[it->second].leading_monomial());
      if (l < best_l) {
        best = it;
        best_l = l;
      }
    }
    const auto [i, j] = *best;
    pairs.erase(best);
    if (chain_skip(i, j)) {
      done.emplace(i, j);
      continue;
    }
    done.emplace(i, j);
    MPoly r = reduce(s_polynomial(G[i], G[j]), G);
    if (r.is_zero()) continue;
    r = monic(r);
    if (r.is_constant()) return {r};
    G.push_back(r);
    for (std::size_t k = 0; k + 1 < G.size(); ++k) pairs.emplace(k, G.size() - 1);
  }

  // Minimalize then inter-reduce.
  std::vector<MPoly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& a = G[j].leading_monomial();
      const Monomial& b = G[i].leading_monomial();
      if (a.divides(b) && (!(a == b) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::vector<MPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const MPoly& g = minimal[i];
    const MPoly tail = g - MPoly::monomial(g.nvars(), g.zero_coeff(), g.leading_monomial(), g.leading_coeff());
    reduced.push_back(MPoly::monomial(g.nvars(), g.zero_coeff(), g.leading_monomial(), g.leading_coeff()) +
                      reduce(tail, others));
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const MPoly& a, const MPoly& b) { return a.leading_monomial() < b.leading_monomial(); });
  return reduced;
}

IdealPresentation::IdealPresentation(RingPtr ring, std::vector<MPoly> generators)
    : ring_(std::move(ring)), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.nvars() != ring_->nvars() || !(g.zero_coeff() == ring_->zero_coeff()))
      throw ArgumentError("ideal generator is not in the given ring");
  basis_ = hasse::groebner_basis(generators_);
}

MPoly IdealPresentation::normal_form(const MPoly& f) const {
  if (f.nvars() != ring_->nvars()) throw ArgumentError("polynomial is not in the ideal's ring");
  return reduce(f, basis_);
}

bool IdealPresentation::is_unit_ideal() const { return basis_.size() == 1 && basis_[0].is_constant(); }

bool membership(const IdealPresentation& I, const MPoly& f) { return I.contains(f); }

}  // namespace hasse
