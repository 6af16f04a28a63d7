#include "hasse/jets.hpp"

#include <string>

namespace hasse {

namespace {

void require_compatible(const JetSeries& a, const JetSeries& b) {
  require_same_ring(*a.ring(), *b.ring());
  if (a.order() != b.order())
    throw ArgumentError("jet orders differ (" + std::to_string(a.order()) + " vs " + std::to_string(b.order()) + ")");
}

}  // namespace

JetSeries::JetSeries(RingPtr ring, unsigned order) : ring_(std::move(ring)), order_(order) {
  c_.assign(order_ + 1, ring_->zero());
}

JetSeries::JetSeries(RingPtr ring, unsigned order, std::vector<MPoly> coeffs)
    : ring_(std::move(ring)), order_(order), c_(std::move(coeffs)) {
  if (c_.size() != order_ + 1) throw ArgumentError("jet needs exactly order+1 coefficients");
  for (const auto& f : c_)
    if (f.nvars() != ring_->nvars()) throw ArgumentError("jet coefficient from a different ring");
}

JetSeries JetSeries::constant(RingPtr ring, unsigned order, MPoly f) {
  JetSeries j(std::move(ring), order);
  j.c_[0] = std::move(f);
  return j;
}

bool JetSeries::is_zero() const {
  for (const auto& f : c_)
    if (!f.is_zero()) return false;
  return true;
}

unsigned JetSeries::valuation() const {
  for (unsigned i = 0; i <= order_; ++i)
    if (!c_[i].is_zero()) return i;
  return order_ + 1;
}

JetSeries JetSeries::with_order(unsigned order) const {
  JetSeries r(ring_, order);
  for (unsigned i = 0; i <= order && i <= order_; ++i) r.c_[i] = c_[i];
  return r;
}

JetSeries JetSeries::operator-() const {
  JetSeries r = *this;
  for (auto& f : r.c_) f = -f;
  return r;
}

JetSeries operator+(const JetSeries& a, const JetSeries& b) {
  require_compatible(a, b);
  JetSeries r = a;
  for (unsigned i = 0; i <= a.order_; ++i) r.c_[i] += b.c_[i];
  return r;
}

JetSeries operator-(const JetSeries& a, const JetSeries& b) {
  require_compatible(a, b);
  JetSeries r = a;
  for (unsigned i = 0; i <= a.order_; ++i) r.c_[i] -= b.c_[i];
  return r;
}

bool operator==(const JetSeries& a, const JetSeries& b) {
  return a.order_ == b.order_ && a.ring_->same_as(*b.ring_) && a.c_ == b.c_;
}

JetSeries JetSeries::scaled(const MPoly& f) const {
  JetSeries r = *this;
  for (auto& c : r.c_)
    if (!c.is_zero()) c *= f;
  return r;
}

JetSeries jet_mul(const JetSeries& f, const JetSeries& g) {
  require_compatible(f, g);
  const unsigned m = f.order();
  JetSeries r(f.ring(), m);
  for (unsigned i = 0; i <= m; ++i) {
    if (f[i].is_zero()) continue;
    for (unsigned j = 0; i + j <= m; ++j)
      if (!g[j].is_zero()) r[i + j] += f[i] * g[j];
  }
  return r;
}

JetSeries jet_pow(const JetSeries& f, unsigned e) {
  JetSeries result = JetSeries::constant(f.ring(), f.order(), f.ring()->one());
  JetSeries base = f;
  while (e > 0) {
    if (e & 1U) result = jet_mul(result, base);
    e >>= 1U;
    if (e > 0) base = jet_mul(base, base);
  }
  return result;
}

SubstitutionMap::SubstitutionMap(unsigned source_order, JetSeries image)
    : source_(source_order), image_(std::move(image)), constant_(true) {
  if (!image_[0].is_zero()) throw ArgumentError("substitution image of mu must have zero constant term");
  const unsigned v = image_.valuation();
  if (v <= image_.order() && static_cast<unsigned long>(v) * (source_ + 1) <= image_.order())
    throw ArgumentError("substitution map is not well defined for these orders");
  const auto rv = image_.ring()->ring_vars();
  for (const auto& c : image_.coeffs())
    if (degree_in_vars(c, rv) > 0) constant_ = false;
}

SubstitutionMap SubstitutionMap::scale(RingPtr ring, unsigned m, const MPoly& a) {
  return monomial(std::move(ring), m, m, a, 1);
}

SubstitutionMap SubstitutionMap::projection(RingPtr ring, unsigned m, unsigned n) {
  if (n > m) throw ArgumentError("projection target order exceeds source order");
  return monomial(ring, m, n, ring->one(), 1);
}

SubstitutionMap SubstitutionMap::stretch(RingPtr ring, unsigned m, unsigned k) {
  if (k == 0) throw ArgumentError("stretch factor must be positive");
  return monomial(ring, m, m * k, ring->one(), k);
}

SubstitutionMap SubstitutionMap::monomial(RingPtr ring, unsigned m, unsigned n, const MPoly& c, unsigned k) {
  if (k == 0) throw ArgumentError("substitution exponent must be positive");
  JetSeries img(ring, n);
  if (k <= n) img[k] = c;
  return SubstitutionMap(m, std::move(img));
}

JetSeries apply_subst(const SubstitutionMap& psi, const JetSeries& f) {
  if (f.order() != psi.source_order()) throw ArgumentError("series order does not match substitution source order");
  require_same_ring(*f.ring(), *psi.ring());
  const unsigned n = psi.target_order();
  const JetSeries& s = psi.image();
  JetSeries r = JetSeries::constant(f.ring(), n, f[0]);
  // pw holds psi(mu)^i; its valuation grows with i so we can stop early.
  JetSeries pw = JetSeries::constant(f.ring(), n, f.ring()->one());
  for (unsigned i = 1; i <= f.order(); ++i) {
    pw = jet_mul(pw, s);
    if (pw.is_zero()) break;
    if (f[i].is_zero()) continue;
    for (unsigned k = 0; k <= n; ++k)
      if (!pw[k].is_zero()) r[k] += f[i] * pw[k];
  }
  return r;
}

SubstitutionMap compose_subst(const SubstitutionMap& psi, const SubstitutionMap& phi) {
  if (phi.target_order() != psi.source_order())
    throw ArgumentError("composed substitution maps have incompatible orders");
  return SubstitutionMap(phi.source_order(), apply_subst(psi, phi.image()));
}

}  // namespace hasse
