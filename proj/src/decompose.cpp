#include "hasse/decompose.hpp"

#include <stdexcept>

namespace hasse {

HSDerivation FactorizationCertificate::recompose() const {
  std::vector<HSDerivation> list;
  for (const auto& f : factors) list.push_back(f.applied);
  return compose_all(list, input.ring(), input.length());
}

bool FactorizationCertificate::valid() const {
  if (!recomposes || !top_relation || !f_attested) return false;
  for (const auto& f : factors)
    if (!f.log_attested) return false;
  return true;
}

namespace {

struct CharPContext {
  const IdealPresentation& I;
  unsigned p;
  unsigned l;
  unsigned top;     // p^l
  unsigned coarse;  // p^(l-1)
  SearchBounds bounds;
};

// D = T[p] o detail[0] o detail[1] o ...
struct Split {
  HSDerivation T;
  std::vector<FactorEntry> detail;
};

HSDerivation derivation_at(const HSDerivation& D, unsigned i) {
  return HSDerivation::from_derivation(D.ring(), D.component_values(i));
}

HSDerivation integral_of(const CharPContext& ctx, const HSDerivation& delta, unsigned n,
                         const std::vector<MPoly>& target = {}) {
  const ObstructionReport rep = find_log_integral(delta, ctx.I, n, ctx.bounds, target);
  if (!rep.feasible())
    throw BoundExhausted("no logarithmic integral of length " + std::to_string(n) + " found within bounds (" +
                         to_string(rep.status) + " at stage " + std::to_string(rep.failed_stage) + ")");
  return *rep.witness;
}

Split split(const CharPContext& ctx, const HSDerivation& D) {
  const RingPtr& r = D.ring();
  const HsOrder ell = order(D);
  if (ell.infinite) return {HSDerivation::identity(r, ctx.coarse), {}};
  const unsigned i = ell.value;
  if (i == ctx.top) return {stretch(derivation_at(D, i), ctx.coarse), {}};

  auto next = [&](const HSDerivation& Dn) {
    if (order(Dn).at_least(i + 1)) return split(ctx, Dn);
    throw std::logic_error("decomposition step did not raise the order");
  };

  if (is_power_of(i, ctx.p)) {
    // F integrates D_i to length p^l / i with F_top = D_{p^l} modulo I.
    std::vector<MPoly> target;
    for (const auto& h : ctx.I.generators()) target.push_back(component(D, ctx.top, h));
    const HSDerivation F = integral_of(ctx, derivation_at(D, i), ctx.top / i, target);
    Split rest = next(compose(invert(stretch(F, i)), D));
    return {compose(stretch(F, i / ctx.p), rest.T), std::move(rest.detail)};
  }

  const unsigned s = c_set_max(ctx.p, ctx.l, i);
  const unsigned len = ipow(ctx.p, s + 1);
  const HSDerivation F = pad_integral(integral_of(ctx, derivation_at(D, i), len - 1), len);
  const HSDerivation G = subst_action(SubstitutionMap::monomial(r, len, ctx.top, r->one(), i), F);
  if (i % ctx.p != 0) {
    Split rest = next(compose(D, invert(G)));
    FactorEntry e{i, {}, F, G, len - 1, is_r_log(F, ctx.I, len - 1)};
    rest.detail.push_back(std::move(e));
    return rest;
  }
  Split rest = next(compose(invert(G), D));
  return {compose(truncate(stretch(F, i / ctx.p), ctx.coarse), rest.T), std::move(rest.detail)};
}

}  // namespace

FactorizationCertificate decompose_char_p(const HSDerivation& D, const IdealPresentation& I, unsigned p, unsigned l,
                                          const SearchBounds& bounds) {
  require_same_ring(*D.ring(), *I.ring());
  if (l < 1) throw ArgumentError("l must be positive");
  if (D.ring()->p != p) throw ArgumentError("ring characteristic differs from p");
  const unsigned top = ipow(p, l);
  if (D.length() != top) throw ArgumentError("derivation length must be p^l");
  if (!is_r_log(D, I, top - 1)) throw MathError("derivation is not (p^l - 1)-logarithmic");
  if (!order(D).at_least(2)) throw ArgumentError("decomposition needs l(D) > 1");

  const CharPContext ctx{I, p, l, top, top / p, bounds};
  Split parts = split(ctx, D);

  FactorizationCertificate cert(D);
  cert.p = p;
  cert.l = l;
  const unsigned coarse_level = ctx.coarse - 1;
  cert.factors.push_back(
      FactorEntry{p, {}, parts.T, stretch(parts.T, p), coarse_level, is_r_log(parts.T, I, coarse_level)});
  std::vector<HSDerivation> fs;
  for (auto& e : parts.detail) {
    fs.push_back(e.applied);
    cert.factors.push_back(std::move(e));
  }
  const HSDerivation F = compose_all(fs, D.ring(), top);
  cert.coarse_t = parts.T;
  cert.coarse_f = F;
  cert.f_attested = is_log(F, I) && order(F).at_least(2);
  cert.top_relation = true;
  for (const auto& h : I.generators())
    if (!I.contains(component(parts.T, ctx.coarse, h) - component(D, top, h))) cert.top_relation = false;
  cert.recomposes = cert.recompose() == D && compose(stretch(parts.T, p), F) == D;
  return cert;
}

FactorizationCertificate factor_over_poly_extension(const HSDerivation& D, const BaseExtension& ext,
                                                    const std::optional<IdealPresentation>& I) {
  if (ext.kind() != BaseExtension::Kind::Polynomial) throw ArgumentError("factorization needs a polynomial extension");
  require_same_ring(*D.ring(), *ext.target());
  if (I) require_same_ring(*I->ring(), *ext.source());
  const unsigned m = D.length();
  const RingPtr& tgt = ext.target();

  struct Slot {
    MultiIndex alpha;
    HSDerivation N;
  };
  std::vector<std::vector<Slot>> levels(m + 1);
  auto apply = [&](unsigned n, const Slot& s, unsigned len) {
    const SubstitutionMap psi = SubstitutionMap::monomial(tgt, s.N.length(), len, ext.basis_element(s.alpha), n);
    return subst_action(psi, extend_hs(s.N, ext));
  };

  for (unsigned mm = 1; mm <= m; ++mm) {
    for (unsigned n = 1; n < mm; ++n)
      if (mm % n == 0)
        for (auto& s : levels[n]) s.N = pad_integral(s.N, mm / n);
    std::vector<HSDerivation> current;
    for (unsigned n = 1; n < mm; ++n)
      for (const auto& s : levels[n]) current.push_back(apply(n, s, mm));
    const HSDerivation E = compose_all(current, tgt, mm);
    const HSDerivation delta = residual_derivation(mm == m ? D : truncate(D, mm), E);
    for (auto& part : basis_decompose_derivation(delta, ext)) {
      if (!p_set_member(mm, part.index)) {
        levels[mm].push_back({part.index, part.derivation});
        continue;
      }
      const unsigned n = n_beta(mm, part.index);
      MultiIndex alpha = part.index;
      for (auto& a : alpha) a = a * n / mm;
      const HSDerivation M = stretch(part.derivation, mm / n);
      bool merged = false;
      for (auto& s : levels[n])
        if (s.alpha == alpha) {
          s.N = compose(s.N, M);
          merged = true;
          break;
        }
      if (!merged) levels[n].push_back({alpha, M});
    }
  }

  FactorizationCertificate cert(D);
  bool attest = false;
  if (I) {
    attest = is_log(D, ext.extend_ideal(*I));
    if (!attest) cert.note = "input is not logarithmic for the extended ideal; factors not attested";
  }
  for (unsigned n = 1; n <= m; ++n)
    for (const auto& s : levels[n]) {
      if (p_set_member(n, s.alpha)) throw std::logic_error("factor index lies in P_n");
      FactorEntry e{n, s.alpha, s.N, apply(n, s, m), 0, true};
      if (attest) {
        e.required_log_level = m / n;
        e.log_attested = is_r_log(s.N, *I, m / n);
      }
      cert.factors.push_back(std::move(e));
    }
  cert.recomposes = cert.recompose() == D;
  return cert;
}

std::vector<PreimageTerm> phi_preimage(const HSDerivation& delta, const FactorizationCertificate& cert,
                                       const BaseExtension& ext) {
  require_same_ring(*delta.ring(), *ext.target());
  if (delta.length() != 1) throw ArgumentError("expected a derivation (length 1)");
  if (!cert.recomposes || !(truncate(cert.input, 1) == delta))
    throw ArgumentError("certificate is not about the given derivation");
  std::vector<PreimageTerm> out;
  std::vector<BasisComponent> parts;
  for (const auto& f : cert.factors)
    if (f.n == 1) {
      out.push_back({f.alpha, f.base});
      parts.push_back({f.alpha, truncate(f.base, 1)});
    }
  const HSDerivation back = parts.empty() ? HSDerivation::identity(ext.target(), 1) : basis_recombine(parts, ext);
  if (!(back == delta)) throw ArgumentError("certificate factors do not add up to the derivation");
  return out;
}

}  // namespace hasse
