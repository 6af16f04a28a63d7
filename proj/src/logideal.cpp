#include "hasse/logideal.hpp"

#include <vector>

namespace hasse {

bool is_r_log(const HSDerivation& D, const IdealPresentation& I, unsigned r) {
  require_same_ring(*D.ring(), *I.ring());
  if (r > D.length()) throw ArgumentError("logarithmic level exceeds derivation length");
  if (r == 0) return true;
  const HSDerivation T = r == D.length() ? D : truncate(D, r);
  for (const auto& h : I.generators()) {
    const JetSeries v = eval_phi(T, h);
    for (unsigned i = 1; i <= r; ++i)
      if (!I.contains(v[i])) return false;
  }
  return true;
}

bool is_log(const HSDerivation& D, const IdealPresentation& I) { return is_r_log(D, I, D.length()); }

unsigned log_level(const HSDerivation& D, const IdealPresentation& I) {
  require_same_ring(*D.ring(), *I.ring());
  unsigned level = D.length();
  for (const auto& h : I.generators()) {
    const JetSeries v = eval_phi(D, h);
    for (unsigned i = 1; i <= level; ++i)
      if (!I.contains(v[i])) {
        level = i - 1;
        break;
      }
  }
  return level;
}

QuotientHS::QuotientHS(IdealPresentation ideal, HSDerivation representative)
    : ideal_(std::move(ideal)), rep_(reduce_images(representative, ideal_)) {}

HSDerivation reduce_images(const HSDerivation& D, const IdealPresentation& I) {
  require_same_ring(*D.ring(), *I.ring());
  std::vector<JetSeries> images;
  for (const auto& img : D.images()) {
    JetSeries r = img;
    for (unsigned i = 1; i <= D.length(); ++i) r[i] = I.normal_form(img[i]);
    images.push_back(std::move(r));
  }
  return HSDerivation::from_images(D.ring(), D.length(), std::move(images));
}

QuotientHS pushforward_hs(const HSDerivation& D, const IdealPresentation& I) {
  if (!is_log(D, I)) throw MathError("HS-derivation is not logarithmic for the ideal");
  return QuotientHS(I, D);
}

QuotientHS compose(const QuotientHS& a, const QuotientHS& b) {
  return QuotientHS(a.ideal(), compose(a.representative(), b.representative()));
}

QuotientHS subst_action(const SubstitutionMap& psi, const QuotientHS& D) {
  return QuotientHS(D.ideal(), subst_action(psi, D.representative()));
}

HSDerivation lift_hs_from_quotient(const QuotientHS& E) { return E.representative(); }

bool preserves_ideal(const std::function<MPoly(const MPoly&)>& op, const IdealPresentation& I, unsigned deg) {
  const Ring& r = *I.ring();
  const auto rv = r.ring_vars();
  std::vector<Monomial> monos;
  std::vector<unsigned> e(rv.size(), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == rv.size()) {
      Monomial m(r.nvars());
      for (std::size_t k = 0; k < rv.size(); ++k) m.set(rv[k], e[k]);
      monos.push_back(m);
      return;
    }
    for (unsigned a = 0; a <= left; ++a) {
      e[i] = a;
      rec(i + 1, left - a);
    }
    e[i] = 0;
  };
  rec(0, deg);
  const FieldElem one = r.scalar(1);
  for (const auto& h : I.generators())
    for (const auto& m : monos)
      if (!I.contains(op(h.mul_term(m, one)))) return false;
  return true;
}

}  // namespace hasse
