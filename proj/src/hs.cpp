#include "hasse/hs.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <string>

namespace hasse {

std::ostream& operator<<(std::ostream& os, const HsOrder& o) {
  if (o.infinite) return os << "inf";
  return os << o.value;
}

namespace {

// Binomial coefficient modulo p via Lucas' theorem.
fp_t binomial_mod(unsigned n, unsigned k, fp_t p) {
  fp_t r = 1;
  while (n > 0 || k > 0) {
    const unsigned a = n % p, b = k % p;
    if (b > a) return 0;
    fp_t num = 1, den = 1;
    for (unsigned i = 0; i < b; ++i) {
      num = fp_mul(num, (a - i) % p, p);
      den = fp_mul(den, (i + 1) % p, p);
    }
    r = fp_mul(r, fp_mul(num, fp_inv(den, p), p), p);
    n /= p;
    k /= p;
  }
  return r;
}

// Evaluates phi_D on polynomials, caching (x_j + eps_j)^a expansions.
class PhiEvaluator {
 public:
  explicit PhiEvaluator(const HSDerivation& D) : D_(D), rv_(D.ring()->ring_vars()) {
    const RingPtr& r = D.ring();
    eps_.reserve(rv_.size());
    for (std::size_t j = 0; j < rv_.size(); ++j) {
      JetSeries e = D.image(j);
      e[0] = r->zero();
      trivial_.push_back(e.is_zero());
      eps_.push_back(std::move(e));
    }
    eps_powers_.resize(rv_.size());
    cache_.resize(rv_.size());
  }

  JetSeries operator()(const MPoly& f) {
    const RingPtr& r = D_.ring();
    const unsigned m = D_.length();
    JetSeries out(r, m);
    for (const auto& [mono, c] : f.terms()) {
      Monomial fixed = mono;
      bool any = false;
      for (std::size_t j = 0; j < rv_.size(); ++j) {
        if (mono[rv_[j]] != 0 && !trivial_[j]) {
          fixed.set(rv_[j], 0);
          any = true;
        }
      }
      if (!any) {
        out[0] += r->term(mono, c);
        continue;
      }
      JetSeries acc = JetSeries::constant(r, m, r->term(fixed, c));
      for (std::size_t j = 0; j < rv_.size(); ++j) {
        const unsigned a = mono[rv_[j]];
        if (a == 0 || trivial_[j]) continue;
        acc = jet_mul(acc, expansion(j, a));
      }
      out += acc;
    }
    return out;
  }

 private:
  const JetSeries& eps_power(std::size_t j, unsigned k) {
    auto& pw = eps_powers_[j];
    const RingPtr& r = D_.ring();
    if (pw.empty()) pw.push_back(JetSeries::constant(r, D_.length(), r->one()));
    while (pw.size() <= k) pw.push_back(jet_mul(pw.back(), eps_[j]));
    return pw[k];
  }

  const JetSeries& expansion(std::size_t j, unsigned a) {
    auto it = cache_[j].find(a);
    if (it != cache_[j].end()) return it->second;
    const RingPtr& r = D_.ring();
    const unsigned m = D_.length();
    const fp_t p = r->p;
    JetSeries e(r, m);
    const unsigned kmax = std::min(a, m);
    for (unsigned k = 0; k <= kmax; ++k) {
      const fp_t b = binomial_mod(a, k, p);
      if (b == 0) continue;
      const MPoly lead = r->term(Monomial::variable(r->nvars(), rv_[j], a - k), r->scalar(b));
      const JetSeries& ek = eps_power(j, k);
      for (unsigned i = k; i <= m; ++i)
        if (!ek[i].is_zero()) e[i] += ek[i] * lead;
    }
    return cache_[j].emplace(a, std::move(e)).first->second;
  }

  const HSDerivation& D_;
  std::vector<std::size_t> rv_;
  std::vector<JetSeries> eps_;
  std::vector<bool> trivial_;
  std::vector<std::vector<JetSeries>> eps_powers_;
  std::vector<std::map<unsigned, JetSeries>> cache_;
};

void require_compatible(const HSDerivation& a, const HSDerivation& b) {
  require_same_ring(*a.ring(), *b.ring());
  if (a.length() != b.length())
    throw ArgumentError("HS-derivation lengths differ (" + std::to_string(a.length()) + " vs " +
                        std::to_string(b.length()) + ")");
}

}  // namespace

HSDerivation HSDerivation::from_images(RingPtr ring, unsigned m, std::vector<JetSeries> images) {
  const auto rv = ring->ring_vars();
  if (images.size() != rv.size()) throw ArgumentError("need one image per ring variable");
  for (std::size_t j = 0; j < rv.size(); ++j) {
    require_same_ring(*images[j].ring(), *ring);
    if (images[j].order() != m) throw ArgumentError("image order differs from derivation length");
    if (!(images[j][0] == ring->var(rv[j])))
      throw ArgumentError("image of " + ring->vars[rv[j]] + " must have constant term " + ring->vars[rv[j]]);
  }
  return HSDerivation(std::move(ring), m, std::move(images));
}

HSDerivation HSDerivation::identity(RingPtr ring, unsigned m) {
  std::vector<JetSeries> images;
  for (std::size_t v : ring->ring_vars()) images.push_back(JetSeries::constant(ring, m, ring->var(v)));
  return HSDerivation(std::move(ring), m, std::move(images));
}

HSDerivation HSDerivation::from_derivation(RingPtr ring, const std::vector<MPoly>& values) {
  HSDerivation d = identity(ring, 1);
  if (values.size() != d.images_.size()) throw ArgumentError("need one derivation value per ring variable");
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j].nvars() != ring->nvars()) throw ArgumentError("derivation value from a different ring");
    d.images_[j][1] = values[j];
  }
  return d;
}

std::vector<MPoly> HSDerivation::component_values(unsigned i) const {
  std::vector<MPoly> out;
  for (const auto& img : images_) out.push_back(img[i]);
  return out;
}

bool HSDerivation::is_identity() const {
  for (const auto& img : images_)
    for (unsigned i = 1; i <= m_; ++i)
      if (!img[i].is_zero()) return false;
  return true;
}

bool operator==(const HSDerivation& a, const HSDerivation& b) {
  return a.m_ == b.m_ && a.ring_->same_as(*b.ring_) && a.images_ == b.images_;
}

JetSeries eval_phi(const HSDerivation& D, const MPoly& f) {
  if (f.nvars() != D.ring()->nvars()) throw ArgumentError("polynomial is not in the derivation's ring");
  return PhiEvaluator(D)(f);
}

MPoly component(const HSDerivation& D, unsigned i, const MPoly& f) {
  if (i > D.length()) throw ArgumentError("component index exceeds derivation length");
  return eval_phi(D, f)[i];
}

JetSeries extend_phi(const HSDerivation& D, const JetSeries& f) {
  require_same_ring(*D.ring(), *f.ring());
  if (f.order() != D.length()) throw ArgumentError("series order differs from derivation length");
  PhiEvaluator ev(D);
  const unsigned m = D.length();
  JetSeries out(D.ring(), m);
  for (unsigned i = 0; i <= m; ++i) {
    if (f[i].is_zero()) continue;
    const JetSeries v = ev(f[i]);
    for (unsigned k = 0; i + k <= m; ++k) out[i + k] += v[k];
  }
  return out;
}

HSDerivation compose(const HSDerivation& D, const HSDerivation& E) {
  require_compatible(D, E);
  PhiEvaluator ev(D);
  const unsigned m = D.length();
  std::vector<JetSeries> images;
  for (const auto& img : E.images()) {
    JetSeries out(D.ring(), m);
    for (unsigned i = 0; i <= m; ++i) {
      if (img[i].is_zero()) continue;
      const JetSeries v = ev(img[i]);
      for (unsigned k = 0; i + k <= m; ++k) out[i + k] += v[k];
    }
    images.push_back(std::move(out));
  }
  return HSDerivation::from_images(D.ring(), m, std::move(images));
}

HSDerivation compose_all(const std::vector<HSDerivation>& list, RingPtr ring, unsigned m) {
  HSDerivation acc = HSDerivation::identity(std::move(ring), m);
  for (const auto& d : list) acc = compose(acc, d);
  return acc;
}

HSDerivation invert(const HSDerivation& D) {
  const RingPtr& r = D.ring();
  const unsigned m = D.length();
  PhiEvaluator ev(D);
  std::vector<JetSeries> images;
  for (std::size_t j = 0; j < D.num_generators(); ++j) {
    JetSeries e(r, m);
    e[0] = D.image(j)[0];
    // acc[N] accumulates sum_{n<N} D_{N-n}(e_n).
    JetSeries acc(r, m);
    for (unsigned n = 0; n < m; ++n) {
      if (n > 0) e[n] = -acc[n];
      if (e[n].is_zero()) continue;
      const JetSeries v = ev(e[n]);
      for (unsigned k = 1; n + k <= m; ++k) acc[n + k] += v[k];
    }
    e[m] = -acc[m];
    images.push_back(std::move(e));
  }
  return HSDerivation::from_images(r, m, std::move(images));
}

HsOrder order(const HSDerivation& D) {
  unsigned best = D.length() + 1;
  for (const auto& img : D.images())
    for (unsigned i = 1; i < best; ++i)
      if (!img[i].is_zero()) {
        best = i;
        break;
      }
  if (best > D.length()) return HsOrder::infinity();
  return HsOrder::finite(best);
}

HSDerivation subst_action(const SubstitutionMap& psi, const HSDerivation& D) {
  require_same_ring(*psi.ring(), *D.ring());
  if (psi.source_order() != D.length()) throw ArgumentError("substitution source order differs from derivation length");
  std::vector<JetSeries> images;
  for (const auto& img : D.images()) images.push_back(apply_subst(psi, img));
  return HSDerivation::from_images(D.ring(), psi.target_order(), std::move(images));
}

HSDerivation scale(const MPoly& a, const HSDerivation& D) {
  return subst_action(SubstitutionMap::scale(D.ring(), D.length(), a), D);
}

HSDerivation scale(const FieldElem& a, const HSDerivation& D) { return scale(D.ring()->constant(a), D); }

HSDerivation truncate(const HSDerivation& D, unsigned n) {
  if (n > D.length()) throw ArgumentError("truncation length exceeds derivation length");
  std::vector<JetSeries> images;
  for (const auto& img : D.images()) images.push_back(img.with_order(n));
  return HSDerivation::from_images(D.ring(), n, std::move(images));
}

HSDerivation stretch(const HSDerivation& D, unsigned k) {
  if (k == 0) throw ArgumentError("stretch factor must be positive");
  const unsigned m = D.length();
  std::vector<JetSeries> images;
  for (const auto& img : D.images()) {
    JetSeries s(D.ring(), m * k);
    for (unsigned i = 0; i <= m; ++i) s[i * k] = img[i];
    images.push_back(std::move(s));
  }
  return HSDerivation::from_images(D.ring(), m * k, std::move(images));
}

HSDerivation residual_derivation(const HSDerivation& D, const HSDerivation& E) {
  require_compatible(D, E);
  const unsigned m = D.length();
  std::vector<MPoly> values;
  for (std::size_t j = 0; j < D.num_generators(); ++j) {
    for (unsigned i = 1; i < m; ++i)
      if (!(D.image(j)[i] == E.image(j)[i]))
        throw ArgumentError("derivations differ below the top component");
    // D = E o (Id, delta)[m] gives D_m = E_m + delta.
    values.push_back(D.image(j)[m] - E.image(j)[m]);
  }
  return HSDerivation::from_derivation(D.ring(), values);
}

MPoly apply_derivation(const HSDerivation& delta, const MPoly& f) {
  if (delta.length() < 1) throw ArgumentError("derivation needs length at least 1");
  // Only the first component is needed: delta(f) = sum_j d f/dx_j delta(x_j).
  const auto rv = delta.ring()->ring_vars();
  MPoly out = delta.ring()->zero();
  for (std::size_t j = 0; j < rv.size(); ++j) {
    const MPoly& v = delta.image(j)[1];
    if (v.is_zero()) continue;
    out += partial(f, rv[j]) * v;
  }
  return out;
}

}  // namespace hasse
