#include "hasse/basechange.hpp"

#include <algorithm>
#include <map>

namespace hasse {

BaseExtension BaseExtension::polynomial(RingPtr source, const std::vector<std::string>& t_names) {
  if (t_names.empty()) throw ArgumentError("polynomial extension needs at least one new variable");
  BaseExtension e;
  e.kind_ = Kind::Polynomial;
  std::vector<std::string> vars = source->vars;
  std::vector<VarRole> roles = source->roles;
  for (const auto& t : t_names) {
    e.new_vars_.push_back(vars.size());
    vars.push_back(t);
    roles.push_back(VarRole::Extension);
  }
  e.target_ = Ring::make(source->p, source->params, vars, roles);
  e.var_map_.resize(source->nvars());
  for (std::size_t i = 0; i < source->nvars(); ++i) e.var_map_[i] = i;
  e.source_ = std::move(source);
  return e;
}

BaseExtension BaseExtension::frobenius_twist(RingPtr source, const std::vector<std::string>& new_params, unsigned e) {
  if (new_params.size() != source->nparams())
    throw ArgumentError("Frobenius twist needs one new parameter per source parameter");
  if (e == 0) throw ArgumentError("Frobenius twist exponent must be positive");
  BaseExtension x;
  x.kind_ = Kind::FrobeniusTwist;
  x.twist_ = e;
  x.target_ = Ring::make(source->p, new_params, source->vars, source->roles);
  x.var_map_.resize(source->nvars());
  for (std::size_t i = 0; i < source->nvars(); ++i) x.var_map_[i] = i;
  x.source_ = std::move(source);
  return x;
}

std::size_t BaseExtension::basis_rank() const {
  return kind_ == Kind::Polynomial ? new_vars_.size() : target_->nparams();
}

FieldElem BaseExtension::map_coeff(const FieldElem& c) const {
  // s_i = a_i^(p^e): f(s) = f(a)^(p^e) since F_p is fixed by Frobenius.
  return kind_ == Kind::Polynomial ? c : c.frobenius(twist_);
}

MPoly BaseExtension::map(const MPoly& f) const {
  if (f.nvars() != source_->nvars()) throw ArgumentError("polynomial does not belong to the source ring");
  return map_poly(f, *target_, var_map_, [this](const FieldElem& c) { return map_coeff(c); });
}

IdealPresentation BaseExtension::extend_ideal(const IdealPresentation& I) const {
  require_same_ring(*I.ring(), *source_);
  std::vector<MPoly> gens;
  for (const auto& g : I.generators()) gens.push_back(map(g));
  return IdealPresentation(target_, std::move(gens));
}

MPoly BaseExtension::basis_element(const std::vector<unsigned>& alpha) const {
  if (alpha.size() != basis_rank()) throw ArgumentError("basis index has the wrong length");
  if (kind_ == Kind::Polynomial) {
    Monomial m(target_->nvars());
    for (std::size_t i = 0; i < alpha.size(); ++i) m.set(new_vars_[i], alpha[i]);
    return target_->term(m, target_->scalar(1));
  }
  FieldElem c = target_->scalar(1);
  unsigned bound = 1;
  for (unsigned i = 0; i < twist_; ++i) bound *= target_->p;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] >= bound) throw ArgumentError("twist basis index out of range");
    c *= target_->param(i).pow(alpha[i]);
  }
  return target_->constant(c);
}

HSDerivation extend_hs(const HSDerivation& D, const BaseExtension& ext) {
  require_same_ring(*D.ring(), *ext.source());
  std::vector<JetSeries> images;
  for (const auto& img : D.images()) {
    std::vector<MPoly> cs;
    for (const auto& c : img.coeffs()) cs.push_back(ext.map(c));
    images.emplace_back(ext.target(), D.length(), std::move(cs));
  }
  return HSDerivation::from_images(ext.target(), D.length(), std::move(images));
}

SubstitutionMap extend_subst(const SubstitutionMap& psi, const BaseExtension& ext) {
  require_same_ring(*psi.ring(), *ext.source());
  std::vector<MPoly> cs;
  for (const auto& c : psi.image().coeffs()) cs.push_back(ext.map(c));
  return SubstitutionMap(psi.source_order(), JetSeries(ext.target(), psi.target_order(), std::move(cs)));
}

namespace {

using Index = std::vector<unsigned>;

// Splits a target coefficient into source coefficients indexed by the twist
// basis: c = sum_r a^r * map(c_r).
std::map<Index, FieldElem> split_twisted(const FieldElem& c, const BaseExtension& ext) {
  const Ring& src = *ext.source();
  const std::size_t n = src.nparams();
  unsigned q = 1;
  for (unsigned i = 0; i < ext.twist_exponent(); ++i) q *= src.p;
  const ParamPoly num = c.numerator(), den = c.denominator();
  // c = num * den^(q-1) / den^q and den^q is a polynomial in a^q.
  const ParamPoly top = num * den.pow(q - 1);
  std::vector<ParamPoly::Term> dterms;
  for (const auto& [m, v] : hasse::frobenius(den, ext.twist_exponent()).terms()) {
    Monomial s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, m[i] / q);
    dterms.emplace_back(s, v);
  }
  const ParamPoly sden = ParamPoly::from_terms(n, Zp{0, src.p}, std::move(dterms));
  std::map<Index, std::vector<ParamPoly::Term>> parts;
  for (const auto& [m, v] : top.terms()) {
    Index r(n);
    Monomial s(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = m[i] % q;
      s.set(i, m[i] / q);
    }
    parts[r].emplace_back(s, v);
  }
  std::map<Index, FieldElem> out;
  for (auto& [r, ts] : parts)
    out.emplace(r, reduce_fraction(ParamPoly::from_terms(n, Zp{0, src.p}, std::move(ts)), sden));
  return out;
}

}  // namespace

std::vector<BasisComponent> basis_decompose_derivation(const HSDerivation& eps, const BaseExtension& ext) {
  require_same_ring(*eps.ring(), *ext.target());
  if (eps.length() != 1) throw ArgumentError("expected a derivation (length 1)");
  const Ring& src = *ext.source();
  const std::size_t ngen = eps.num_generators();
  if (src.ring_vars().size() != ngen) throw ArgumentError("extension changes the ring variables");
  std::map<Index, std::vector<std::vector<MPoly::Term>>> acc;
  auto slot = [&](const Index& idx) -> std::vector<std::vector<MPoly::Term>>& {
    auto it = acc.find(idx);
    if (it == acc.end()) it = acc.emplace(idx, std::vector<std::vector<MPoly::Term>>(ngen)).first;
    return it->second;
  };
  for (std::size_t j = 0; j < ngen; ++j) {
    for (const auto& [m, c] : eps.image(j)[1].terms()) {
      Monomial base(src.nvars());
      for (std::size_t i = 0; i < src.nvars(); ++i) base.set(i, m[i]);
      if (ext.kind() == BaseExtension::Kind::Polynomial) {
        Index idx;
        for (std::size_t v : ext.new_vars()) idx.push_back(m[v]);
        slot(idx)[j].emplace_back(base, c);
      } else {
        for (auto& [r, v] : split_twisted(c, ext)) slot(r)[j].emplace_back(base, v);
      }
    }
  }
  std::vector<BasisComponent> out;
  for (auto& [idx, per_gen] : acc) {
    std::vector<MPoly> values;
    bool nonzero = false;
    for (auto& ts : per_gen) {
      values.push_back(MPoly::from_terms(src.nvars(), src.zero_coeff(), std::move(ts)));
      nonzero = nonzero || !values.back().is_zero();
    }
    if (nonzero) out.push_back({idx, HSDerivation::from_derivation(ext.source(), values)});
  }
  return out;
}

HSDerivation basis_recombine(const std::vector<BasisComponent>& parts, const BaseExtension& ext) {
  const RingPtr& tgt = ext.target();
  std::vector<MPoly> values(tgt->ring_vars().size(), tgt->zero());
  for (const auto& part : parts) {
    const MPoly b = ext.basis_element(part.index);
    const HSDerivation e = extend_hs(part.derivation, ext);
    for (std::size_t j = 0; j < values.size(); ++j) values[j] += b * e.image(j)[1];
  }
  return HSDerivation::from_derivation(tgt, values);
}

bool is_power_of(unsigned n, unsigned p) {
  if (n < p || p < 2) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

LeapReport leap_scan(const IdealPresentation& I, unsigned m_max, const std::vector<HSDerivation>& witnesses,
                     const std::vector<std::string>& labels, const SearchBounds& bounds) {
  if (m_max < 2) throw ArgumentError("leap scan needs a maximal length of at least 2");
  if (!labels.empty() && labels.size() != witnesses.size()) throw ArgumentError("one label per witness expected");
  LeapReport rep;
  rep.max_length = m_max;
  unsigned extra = 0;
  for (const auto& w : witnesses)
    for (const auto& img : w.images()) extra = std::max(extra, static_cast<unsigned>(std::max(img[1].degree(), 0)));
  rep.bounds = resolve_bounds(bounds, I, extra);
  const fp_t p = I.ring()->p;
  for (std::size_t w = 0; w < witnesses.size(); ++w) {
    LeapEntry e;
    e.witness = labels.empty() ? "witness " + std::to_string(w + 1) : labels[w];
    const ObstructionReport r = find_log_integral(witnesses[w], I, m_max, bounds);
    e.status = r.status;
    e.integrable_to = r.stage_reached;
    e.failed_length = r.failed_stage;
    e.note = r.note;
    if (r.status == SearchStatus::Infeasible) {
      rep.flagged.push_back(r.failed_stage);
    } else if (r.status == SearchStatus::Inconclusive) {
      rep.inconclusive.push_back(r.failed_stage);
    }
    rep.entries.push_back(std::move(e));
  }
  for (auto* v : {&rep.flagged, &rep.inconclusive}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  for (unsigned s : rep.flagged)
    if (!is_power_of(s, p)) rep.flags_at_prime_powers_only = false;
  return rep;
}

}  // namespace hasse
