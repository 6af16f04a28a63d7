#include "hasse/counterexample.hpp"

#include <sstream>

#include "hasse/text.hpp"

namespace hasse {

namespace {

MPoly instance_h(const Ring& r, const MPoly& x, const MPoly& y) {
  return x * x + y * y + x.pow(4).scaled(r.param(r.param_index("t"))) +
         y.pow(4).scaled(r.param(r.param_index("s")));
}

// phi(h) for x -> x + sum u_i mu^i, y -> y + sum v_i mu^i with the u_i, v_i
// as free symbols, read coefficient by coefficient.
void coefficient_steps(KSideReport& k) {
  std::vector<std::string> vars{"x", "y"};
  std::vector<VarRole> roles{VarRole::Ring, VarRole::Ring};
  for (const char* base : {"u", "v"})
    for (unsigned i = 1; i <= 4; ++i) {
      vars.push_back(base + std::to_string(i));
      roles.push_back(VarRole::Extension);
    }
  const RingPtr r = Ring::make(2, {"s", "t"}, vars, roles);
  const MPoly x = r->var(0), y = r->var(1);
  auto u = [&](unsigned i) { return r->var(1 + i); };
  auto v = [&](unsigned i) { return r->var(5 + i); };
  JetSeries ix = JetSeries::constant(r, 4, x), iy = JetSeries::constant(r, 4, y);
  for (unsigned i = 1; i <= 4; ++i) {
    ix[i] = u(i);
    iy[i] = v(i);
  }
  const HSDerivation D = HSDerivation::from_images(r, 4, {ix, iy});
  const MPoly h = instance_h(*r, x, y);
  const JetSeries phi = eval_phi(D, h);
  const FieldElem s = r->param(0), t = r->param(1);

  const MPoly c2 = u(1) * u(1) + v(1) * v(1);
  const MPoly c4 = u(2) * u(2) + v(2) * v(2) + u(1).pow(4).scaled(t) + v(1).pow(4).scaled(s);
  k.steps.push_back({1, format_poly(phi[1], *r), "no condition: both partial derivatives of h vanish",
                     phi[1].is_zero()});
  k.steps.push_back({2, format_poly(phi[2], *r),
                     "(u1 + v1)^2 in (h); h irreducible gives u1 = v1 in A, so delta = u (d/dx + d/dy)",
                     phi[2] == c2});
  k.steps.push_back({3, format_poly(phi[3], *r), "no condition", phi[3].is_zero()});

  // With v1 = u1 = U and W = u2 + v2 the mu^4 coefficient is W^2 + (t+s) U^4.
  std::vector<MPoly> sub;
  for (std::size_t i = 0; i < r->nvars(); ++i) sub.push_back(r->var(i));
  sub[6] = u(1);
  const MPoly reduced = substitute(phi[4], sub, r->one());
  const MPoly W = u(2) + v(2);
  const MPoly ecu = W * W + u(1).pow(4).scaled(s + t);
  k.steps.push_back({4, format_poly(phi[4], *r),
                     "with U = u1 = v1 and W = u2 + v2: W^2 + (t+s) U^4 = h G for some G",
                     phi[4] == c4 && reduced == ecu});
}

void solve_equation(KSideReport& k, const IdealPresentation& I, unsigned xy, unsigned st) {
  const Ring& r = *k.ring;
  const fp_t p = r.p;
  const std::size_t n = flat_size(r);
  const FlatPoly h = flatten(k.h, r);
  const FlatPoly s = param_variable(n, p, 2), t = param_variable(n, p, 3);
  const std::vector<DegreeBound> bounds{DegreeBound{{0, 1}, xy}, DegreeBound{{2, 3}, st}};
  FrobeniusProblem prob;
  prob.p = p;
  prob.nbase = n;
  prob.symbols = {{"W", bounds}, {"U", bounds}, {"G", bounds}};
  prob.equations.push_back({param_zero(n, p),
                            {AdditiveTerm{0, 2, param_constant(n, p, 1)}, AdditiveTerm{1, 4, s + t},
                             AdditiveTerm{2, 1, h}}});
  const FrobeniusSolution sol = frobenius_linear_solve(prob);
  k.equation = "W^2 + (t+s)*U^4 = h*G";
  k.xy_degree = xy;
  k.st_degree = st;
  k.unknowns = sol.unknowns;
  k.rows = sol.rows;
  k.rank = sol.rank;
  k.augmented_rank = sol.augmented_rank;
  k.kernel_dimension = sol.kernel.size();
  k.system_feasible = sol.feasible;
  std::vector<const FlatPoly*> us;
  if (sol.feasible) us.push_back(&sol.particular[1]);
  for (const auto& v : sol.kernel) us.push_back(&v[1]);
  for (const FlatPoly* u : us) {
    if (u->is_zero()) continue;
    ++k.u_nonzero;
    if (!I.contains(unflatten(*u, r))) ++k.u_outside_h;
  }
  k.u_forced = sol.feasible && k.u_outside_h == 0;
}

KSideReport k_side(const CounterexampleOptions& o) {
  KSideReport k;
  k.ring = Ring::make(2, {"s", "t"}, {"x", "y"});
  k.h = instance_h(*k.ring, k.ring->var(0), k.ring->var(1));
  const IdealPresentation I(k.ring, {k.h});
  coefficient_steps(k);
  solve_equation(k, I, o.xy_degree, o.st_degree);
  const HSDerivation diag = HSDerivation::from_derivation(k.ring, {k.ring->one(), k.ring->one()});
  k.diagonal_search = find_log_integral(diag, I, 4, o.search);
  return k;
}

LSideReport l_side(const RingPtr& k_ring, const MPoly& k_h, const CounterexampleOptions& o) {
  const BaseExtension ext = BaseExtension::frobenius_twist(k_ring, {"a", "b"}, 1);
  LSideReport l;
  l.ring = ext.target();
  const Ring& r = *l.ring;
  const MPoly x = r.var(0), y = r.var(1);
  const FieldElem a = r.param(0), b = r.param(1);
  l.H = x + y + x.pow(2).scaled(b) + y.pow(2).scaled(a);
  l.h = ext.map(k_h);
  l.h_is_square = l.H * l.H == l.h;
  const IdealPresentation IH(l.ring, {l.H});
  const IdealPresentation Ih(l.ring, {l.h});

  const std::vector<std::pair<std::string, HSDerivation>> gens{
      {"d/dx + d/dy", HSDerivation::from_derivation(l.ring, {r.one(), r.one()})},
      {"H d/dx", HSDerivation::from_derivation(l.ring, {l.H, r.zero()})}};
  for (const auto& [label, delta] : gens) {
    LSideWitness w{label, delta, false, false, false, {}, false};
    w.log_for_H = is_log(delta, IH);
    w.log_for_h = is_log(delta, Ih);
    w.nonzero_on_quotient = !Ih.contains(delta.image(0)[1]) || !Ih.contains(delta.image(1)[1]);
    w.search = find_log_integral(delta, Ih, 4, o.search);
    w.verified = w.search.witness && verify_integral_witness(*w.search.witness, delta, Ih);
    l.witnesses.push_back(std::move(w));
  }

  const MPoly ab = r.constant(a + b);
  l.published = HSDerivation::from_images(
      l.ring, 4,
      {JetSeries(l.ring, 4, {x, r.one(), ab, r.zero(), r.zero()}),
       JetSeries(l.ring, 4, {y, r.one(), r.zero(), r.zero(), r.zero()})});
  l.published_verified = verify_integral_witness(*l.published, gens[0].second, Ih);
  l.published_fixes_h = eval_phi(*l.published, l.h) == JetSeries::constant(l.ring, 4, l.h);
  return l;
}

}  // namespace

CounterexampleReport counterexample_report(const CounterexampleOptions& options) {
  CounterexampleReport rep;
  rep.k = k_side(options);
  rep.l = l_side(rep.k.ring, rep.k.h, options);

  bool steps = true;
  for (const auto& s : rep.k.steps) steps = steps && s.checked;
  bool l_ok = rep.l.h_is_square && rep.l.witnesses.size() == 2;
  for (const auto& w : rep.l.witnesses) l_ok = l_ok && w.log_for_H && w.log_for_h && w.nonzero_on_quotient && w.verified;
  rep.not_surjective = steps && rep.k.u_forced && l_ok;
  std::ostringstream c;
  if (rep.not_surjective) {
    c << "Phi_4 is not surjective: no nonzero k-derivation of A within the bounds is 4-integrable, "
         "while d/dx + d/dy and H d/dx induce 4-integrable derivations of A_L.";
  } else {
    c << "not established within the bounds:";
    if (!steps) c << " coefficient expansion mismatch;";
    if (!rep.k.u_forced) c << " k-side solution space has U outside (h);";
    if (!l_ok) c << " L-side witness missing or unverified;";
  }
  rep.conclusion = c.str();
  return rep;
}

std::string counterexample_text(const CounterexampleReport& rep) {
  const KSideReport& k = rep.k;
  const LSideReport& l = rep.l;
  std::ostringstream os;
  os << "k = F_2(s,t), h = " << format_poly(k.h, *k.ring) << "\n\n";
  os << "k-side. A 4-integral of delta = u1 d/dx + v1 d/dy sends x -> x + u1 mu + u2 mu^2 + ...,\n"
     << "y -> y + v1 mu + v2 mu^2 + ...; the coefficients of phi(h) must lie in (h).\n";
  for (const auto& s : k.steps) {
    os << "  mu^" << s.power << ": " << s.coefficient << "\n"
       << "        " << s.consequence << (s.checked ? "" : "  [expansion mismatch]") << "\n";
  }
  os << "\nEquation " << k.equation << " with deg_{x,y} <= " << k.xy_degree << ", deg_{s,t} <= " << k.st_degree
     << ":\n"
     << "  " << k.unknowns << " unknowns, " << k.rows << " rows, rank " << k.rank << ", solution space of dimension "
     << k.kernel_dimension << "\n"
     << "  basis elements with U != 0: " << k.u_nonzero << ", with U outside (h): " << k.u_outside_h << "\n"
     << "  " << (k.u_forced ? "every solution has U = 0 mod h, so u1 = 0 in A: no nonzero k-derivation of A is "
                              "4-integrable within the bounds"
                            : "some solution has U outside (h)")
     << "\n";
  const ObstructionReport& d = k.diagonal_search;
  os << "  staged search for d/dx + d/dy: " << to_string(d.status) << ", integrable to length " << d.stage_reached;
  if (d.failed_stage) os << ", fails at length " << d.failed_stage;
  os << " (ring degree <= " << d.bounds.ring_degree << ", parameter degree <= " << d.bounds.param_degree << ")\n\n";

  os << "L-side. L = F_2(a,b) with s = a^2, t = b^2.\n"
     << "  H = " << format_poly(l.H, *l.ring) << "\n"
     << "  h = H^2: " << (l.h_is_square ? "yes" : "no") << "\n";
  for (const auto& w : l.witnesses) {
    os << "  " << w.label << ": H-logarithmic " << (w.log_for_H ? "yes" : "no") << ", h-logarithmic "
       << (w.log_for_h ? "yes" : "no") << ", nonzero on A_L " << (w.nonzero_on_quotient ? "yes" : "no")
       << ", 4-integral " << (w.verified ? "found and verified" : to_string(w.search.status)) << "\n";
    if (w.search.witness) {
      std::istringstream lines(format_derivation(*w.search.witness));
      std::string line;
      std::getline(lines, line);
      while (std::getline(lines, line)) os << "      " << line << "\n";
    }
  }
  if (l.published) {
    os << "  x -> x + mu + (a+b)*mu^2, y -> y + mu: integral " << (l.published_verified ? "verified" : "rejected")
       << ", phi(h) = h " << (l.published_fixes_h ? "exactly" : "fails") << "\n";
  }
  os << "\nConclusion: " << rep.conclusion << "\n";
  return os.str();
}

}  // namespace hasse
