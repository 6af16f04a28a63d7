#include "hasse/integrate.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hasse {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Feasible:
      return "feasible";
    case SearchStatus::Infeasible:
      return "infeasible";
    case SearchStatus::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

SearchBounds parse_bounds(const std::string& text) {
  SearchBounds b;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ArgumentError("bad bound entry '" + item + "' (expected key=value)");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(val, &used);
      if (used != val.size() || v < 0) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw ArgumentError("bad bound value '" + val + "'");
    }
    if (key == "ring")
      b.ring_degree = v;
    else if (key == "param")
      b.param_degree = v;
    else if (key == "depth")
      b.depth = static_cast<unsigned>(v);
    else
      throw ArgumentError("unknown bound '" + key + "'");
  }
  return b;
}

SearchBounds bounds_from_env() {
  const char* env = std::getenv("HS_DEFAULT_BOUNDS");
  if (env == nullptr || *env == '\0') return {};
  return parse_bounds(env);
}

ResolvedBounds resolve_bounds(const SearchBounds& b, const IdealPresentation& I, unsigned extra_degree) {
  ResolvedBounds r;
  unsigned gdeg = 0, pdeg = 0;
  for (const auto& g : I.generators()) {
    gdeg = std::max(gdeg, static_cast<unsigned>(std::max(g.degree(), 0)));
    pdeg = std::max(pdeg, static_cast<unsigned>(param_degree(g)));
  }
  r.ring_degree = b.ring_degree >= 0 ? static_cast<unsigned>(b.ring_degree) : std::max({gdeg, 4U, extra_degree});
  r.param_degree = b.param_degree >= 0 ? static_cast<unsigned>(b.param_degree) : 2 * pdeg;
  r.depth = b.depth;
  return r;
}

ExtensionProblem::ExtensionProblem(HSDerivation current_, IdealPresentation ideal_, unsigned stage_,
                                   SearchBounds bounds_, std::vector<MPoly> top_target_)
    : current(std::move(current_)),
      ideal(std::move(ideal_)),
      stage(stage_),
      bounds(bounds_),
      top_target(std::move(top_target_)) {
  require_same_ring(*current.ring(), *ideal.ring());
  if (stage < 2 || current.length() + 1 != stage)
    throw ArgumentError("extension step needs a derivation of length stage-1");
  if (!top_target.empty() && top_target.size() != ideal.generators().size())
    throw ArgumentError("top target needs one value per generator");
  if (!is_r_log(current, ideal, stage - 1)) throw ArgumentError("derivation is not (stage-1)-logarithmic");
}

HSDerivation pad_integral(const HSDerivation& D, unsigned n) {
  if (n <= D.length()) throw ArgumentError("padding length must exceed the current length");
  std::vector<JetSeries> images;
  for (const auto& img : D.images()) images.push_back(img.with_order(n));
  return HSDerivation::from_images(D.ring(), n, std::move(images));
}

bool gradient_vanishes(const IdealPresentation& I) {
  for (const auto& h : I.generators())
    for (std::size_t v : I.ring()->ring_vars())
      if (!I.contains(partial(h, v))) return false;
  return true;
}

namespace {

struct MembershipSolve {
  LinearSolution solution;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

// Solves sum_c u_c columns[c][g] = rhs[g] for every generator g, all
// entries already in normal form, by matching monomial coefficients.
MembershipSolve solve_membership(const std::vector<std::vector<MPoly>>& columns, const std::vector<MPoly>& rhs,
                                 const FieldElem& zero) {
  const std::size_t ncols = columns.size();
  LinearSystem sys(zero, ncols);
  for (std::size_t g = 0; g < rhs.size(); ++g) {
    std::map<Monomial, std::size_t, std::greater<Monomial>> row_of;
    for (const auto& col : columns)
      for (const auto& [m, c] : col[g].terms()) row_of.emplace(m, 0);
    for (const auto& [m, c] : rhs[g].terms()) row_of.emplace(m, 0);
    std::vector<std::vector<FieldElem>> rows(row_of.size(), std::vector<FieldElem>(ncols, zero));
    std::vector<FieldElem> b(row_of.size(), zero);
    std::size_t idx = 0;
    for (auto& kv : row_of) kv.second = idx++;
    for (std::size_t c = 0; c < ncols; ++c)
      for (const auto& [m, v] : columns[c][g].terms()) rows[row_of[m]][c] = v;
    for (const auto& [m, v] : rhs[g].terms()) b[row_of[m]] = v;
    for (std::size_t r = 0; r < rows.size(); ++r) sys.add_row(std::move(rows[r]), b[r]);
  }
  MembershipSolve out;
  out.rows = sys.rows();
  out.cols = ncols;
  out.solution = gauss_solve(sys);
  return out;
}

class StageSolver {
 public:
  StageSolver(const IdealPresentation& I, ResolvedBounds rb) : I_(I), rb_(rb), ring_(I.ring()) {
    rv_ = ring_->ring_vars();
    std::vector<std::size_t> all(ring_->nvars());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    ansatz_ = ansatz_monomials(ring_->nvars(), {DegreeBound{all, rb_.ring_degree}});
    const FieldElem one = ring_->scalar(1);
    for (std::size_t j = 0; j < rv_.size(); ++j)
      for (const auto& a : ansatz_) {
        std::vector<MPoly> col;
        for (const auto& h : I_.generators()) col.push_back(I_.normal_form(partial(h, rv_[j]).mul_term(a, one)));
        grad_cols_.push_back(std::move(col));
      }
  }

  std::size_t generator_count() const { return I_.generators().size(); }
  const std::vector<std::vector<MPoly>>& gradient_columns() const { return grad_cols_; }

  // Coefficient polynomials for ring variable j from a solution vector.
  std::vector<MPoly> values_from(const std::vector<FieldElem>& u, std::size_t offset = 0) const {
    std::vector<MPoly> vals;
    for (std::size_t j = 0; j < rv_.size(); ++j) {
      std::vector<MPoly::Term> ts;
      for (std::size_t a = 0; a < ansatz_.size(); ++a) {
        const FieldElem& c = u[offset + j * ansatz_.size() + a];
        if (!c.is_zero()) ts.emplace_back(ansatz_[a], c);
      }
      vals.push_back(MPoly::from_terms(ring_->nvars(), ring_->zero_coeff(), std::move(ts)));
    }
    return vals;
  }

  struct Outcome {
    SearchStatus status = SearchStatus::Infeasible;
    std::optional<HSDerivation> extension;
    std::vector<StageCertificate> certs;
    std::string note;
  };

  Outcome solve(const HSDerivation& D, unsigned k, const std::vector<MPoly>& target) const {
    Outcome out;
    const HSDerivation Dp = pad_integral(D, k);
    std::vector<MPoly> known, rhs;
    for (std::size_t g = 0; g < generator_count(); ++g) {
      MPoly v = component(Dp, k, I_.generators()[g]);
      if (!target.empty()) v -= target[g];
      known.push_back(I_.normal_form(v));
      rhs.push_back(-known.back());
    }

    // Linear branch: only the new coefficients move.
    const MembershipSolve lin = solve_membership(grad_cols_, rhs, ring_->zero_coeff());
    out.certs.push_back(certificate(k, "linear", 0, lin));
    if (lin.solution.feasible) {
      out.status = SearchStatus::Feasible;
      out.extension = with_stage(Dp, k, values_from(lin.solution.particular));
      return out;
    }

    bool inconclusive = false;
    // Re-open stage k-1 along bounded logarithmic derivations. For k >= 3
    // the stage-k condition is affine in the shift, so columns are obtained
    // by difference.
    if (rb_.depth >= 1 && k >= 3 && !lin.solution.kernel.empty()) {
      std::vector<std::vector<MPoly>> cols = grad_cols_;
      std::vector<std::vector<MPoly>> shifts;
      for (const auto& kv : lin.solution.kernel) {
        const std::vector<MPoly> theta = values_from(kv);
        const HSDerivation Dt = add_at_stage(Dp, k - 1, theta);
        std::vector<MPoly> col;
        for (std::size_t g = 0; g < generator_count(); ++g) {
          MPoly v = component(Dt, k, I_.generators()[g]);
          if (!target.empty()) v -= target[g];
          col.push_back(I_.normal_form(v) - known[g]);
        }
        cols.push_back(std::move(col));
        shifts.push_back(theta);
      }
      const MembershipSolve re = solve_membership(cols, rhs, ring_->zero_coeff());
      out.certs.push_back(certificate(k, "reopen", k - 1, re));
      if (re.solution.feasible) {
        std::vector<MPoly> shift(rv_.size(), ring_->zero());
        const std::size_t base = grad_cols_.size();
        for (std::size_t i = 0; i < shifts.size(); ++i) {
          const FieldElem& lam = re.solution.particular[base + i];
          if (lam.is_zero()) continue;
          for (std::size_t j = 0; j < rv_.size(); ++j) shift[j] += shifts[i][j].scaled(lam);
        }
        HSDerivation ext = with_stage(add_at_stage(Dp, k - 1, shift), k, values_from(re.solution.particular));
        if (stage_holds(ext, k, target)) {
          out.status = SearchStatus::Feasible;
          out.extension = std::move(ext);
          return out;
        }
        out.certs.back().feasible = false;
        out.certs.back().note = "candidate failed verification";
        inconclusive = true;
      }
    }

    // Re-open an earlier stage r with k = r p^e; its coefficients enter the
    // later conditions through p^e-th powers.
    const fp_t p = ring_->p;
    for (unsigned q = p; q <= k; q *= p) {
      if (k % q != 0 || k / q < 2) continue;
      const unsigned r = k / q;
      try {
        auto res = frobenius_branch(Dp, r, k, target);
        out.certs.push_back(res.first);
        if (res.second) {
          out.status = SearchStatus::Feasible;
          out.extension = std::move(res.second);
          return out;
        }
      } catch (const NonAdditiveError& e) {
        StageCertificate c;
        c.stage = k;
        c.branch = "frobenius";
        c.reopened_stage = r;
        c.note = std::string("not additive: ") + e.what();
        out.certs.push_back(c);
        inconclusive = true;
      }
    }
    out.status = inconclusive ? SearchStatus::Inconclusive : SearchStatus::Infeasible;
    return out;
  }

  bool stage_holds(const HSDerivation& E, unsigned k, const std::vector<MPoly>& target) const {
    for (std::size_t g = 0; g < generator_count(); ++g) {
      const JetSeries v = eval_phi(E, I_.generators()[g]);
      for (unsigned i = 1; i < k; ++i)
        if (!I_.contains(v[i])) return false;
      MPoly top = v[k];
      if (!target.empty()) top -= target[g];
      if (!I_.contains(top)) return false;
    }
    return true;
  }

 private:
  static StageCertificate certificate(unsigned k, const char* branch, unsigned reopened, const MembershipSolve& s) {
    StageCertificate c;
    c.stage = k;
    c.branch = branch;
    c.reopened_stage = reopened;
    c.rows = s.rows;
    c.unknowns = s.cols;
    c.rank = s.solution.rank;
    c.augmented_rank = s.solution.augmented_rank;
    c.feasible = s.solution.feasible;
    return c;
  }

  HSDerivation with_stage(const HSDerivation& D, unsigned k, const std::vector<MPoly>& vals) const {
    std::vector<JetSeries> images = D.images();
    for (std::size_t j = 0; j < images.size(); ++j) images[j][k] = vals[j];
    return HSDerivation::from_images(D.ring(), D.length(), std::move(images));
  }

  HSDerivation add_at_stage(const HSDerivation& D, unsigned k, const std::vector<MPoly>& vals) const {
    std::vector<JetSeries> images = D.images();
    for (std::size_t j = 0; j < images.size(); ++j) images[j][k] += vals[j];
    return HSDerivation::from_images(D.ring(), D.length(), std::move(images));
  }

  std::pair<StageCertificate, std::optional<HSDerivation>> frobenius_branch(const HSDerivation& Dp, unsigned r,
                                                                            unsigned k,
                                                                            const std::vector<MPoly>& target) const {
    const Ring& base = *ring_;
    const std::size_t nv = base.nvars(), np = base.nparams(), nr = rv_.size();
    // Auxiliary ring: base variables, then S_j (correction at stage r) and
    // V_j (new coefficient at stage k), all fixed by the derivation.
    std::vector<std::string> names = base.vars;
    std::vector<VarRole> roles = base.roles;
    for (std::size_t j = 0; j < nr; ++j) {
      names.push_back("_S" + std::to_string(j));
      roles.push_back(VarRole::Extension);
    }
    for (std::size_t j = 0; j < nr; ++j) {
      names.push_back("_V" + std::to_string(j));
      roles.push_back(VarRole::Extension);
    }
    const RingPtr aux = Ring::make(base.p, base.params, names, roles);
    std::vector<std::size_t> embed(nv);
    for (std::size_t i = 0; i < nv; ++i) embed[i] = i;
    auto up = [&](const MPoly& f) { return map_poly(f, *aux, embed, [](const FieldElem& c) { return c; }); };

    std::vector<JetSeries> images;
    for (std::size_t j = 0; j < nr; ++j) {
      std::vector<MPoly> cs;
      for (unsigned i = 0; i <= k; ++i) cs.push_back(up(Dp.image(j)[i]));
      cs[r] += aux->var(nv + j);
      cs[k] += aux->var(nv + nr + j);
      images.emplace_back(aux, k, std::move(cs));
    }
    const HSDerivation Da = HSDerivation::from_images(aux, k, std::move(images));

    const std::size_t nbase = nv + np;
    const std::size_t ngen = generator_count();
    FrobeniusProblem prob;
    prob.p = base.p;
    prob.nbase = nbase;
    std::vector<std::size_t> var_idx(nv), par_idx(np);
    for (std::size_t i = 0; i < nv; ++i) var_idx[i] = i;
    for (std::size_t i = 0; i < np; ++i) par_idx[i] = nv + i;
    auto symbol_bounds = [&](unsigned vdeg, unsigned pdeg) {
      std::vector<DegreeBound> b{DegreeBound{var_idx, vdeg}};
      if (np > 0) b.push_back(DegreeBound{par_idx, pdeg});
      return b;
    };
    for (std::size_t j = 0; j < nr; ++j) prob.symbols.push_back({"S" + std::to_string(j), symbol_bounds(rb_.ring_degree, rb_.param_degree)});
    for (std::size_t j = 0; j < nr; ++j) prob.symbols.push_back({"V" + std::to_string(j), symbol_bounds(rb_.ring_degree, rb_.param_degree)});

    std::vector<FlatPoly> gens_flat;
    for (const auto& g : I_.generators()) gens_flat.push_back(flatten(clear_denominators(g), base));

    std::vector<JetSeries> phis;
    for (const auto& h : I_.generators()) phis.push_back(eval_phi(Da, up(h)));

    auto flat_degree = [&](const FlatPoly& f, std::size_t from, std::size_t to) {
      int d = -1;
      for (const auto& [m, c] : f.terms()) {
        int s = 0;
        for (std::size_t i = from; i < to; ++i) s += static_cast<int>(m[i]);
        d = std::max(d, s);
      }
      return d;
    };

    for (unsigned st = r; st <= k; ++st) {
      for (std::size_t g = 0; g < ngen; ++g) {
        MPoly e = phis[g][st];
        if (st == k && !target.empty()) e -= up(target[g]);
        e = clear_denominators(e);
        // Reorder flat variables to [base vars, params, symbols].
        const FlatPoly raw = flatten(e, *aux);
        std::vector<FlatPoly::Term> ts;
        const std::size_t total = nbase + 2 * nr;
        for (const auto& [m, c] : raw.terms()) {
          Monomial mm(total);
          for (std::size_t i = 0; i < nv; ++i) mm.set(i, m[i]);
          for (std::size_t i = 0; i < np; ++i) mm.set(nv + i, m[nv + 2 * nr + i]);
          for (std::size_t i = 0; i < 2 * nr; ++i) mm.set(nbase + i, m[nv + i]);
          ts.emplace_back(mm, c);
        }
        const FlatPoly f = FlatPoly::from_terms(total, Zp{0, base.p}, std::move(ts));
        AdditiveEquation eq = additive_from_polynomial(f, nbase, base.p);
        int ex = flat_degree(eq.constant, 0, nv), ep = flat_degree(eq.constant, nv, nbase);
        for (const auto& t : eq.terms) {
          ex = std::max(ex, flat_degree(t.multiplier, 0, nv) + static_cast<int>(t.power * rb_.ring_degree));
          ep = std::max(ep, flat_degree(t.multiplier, nv, nbase) + static_cast<int>(t.power * rb_.param_degree));
        }
        if (ex < 0) continue;  // identically zero and free of unknowns
        for (std::size_t g2 = 0; g2 < ngen; ++g2) {
          const int gx = std::max(0, ex - flat_degree(gens_flat[g2], 0, nv));
          const std::size_t sym = prob.symbols.size();
          prob.symbols.push_back({"G" + std::to_string(st) + "_" + std::to_string(g) + "_" + std::to_string(g2),
                                  symbol_bounds(static_cast<unsigned>(gx), static_cast<unsigned>(std::max(ep, 0)))});
          eq.terms.push_back({sym, 1, gens_flat[g2]});
        }
        prob.equations.push_back(std::move(eq));
      }
    }

    const FrobeniusSolution sol = frobenius_linear_solve(prob);
    StageCertificate c;
    c.stage = k;
    c.branch = "frobenius";
    c.reopened_stage = r;
    c.rows = sol.rows;
    c.unknowns = sol.unknowns;
    c.rank = sol.rank;
    c.augmented_rank = sol.augmented_rank;
    c.feasible = sol.feasible;
    if (!sol.feasible) return {c, std::nullopt};

    std::vector<MPoly> S, V;
    for (std::size_t j = 0; j < nr; ++j) {
      S.push_back(unflatten(sol.particular[j], base));
      V.push_back(unflatten(sol.particular[nr + j], base));
    }
    HSDerivation ext = with_stage(add_at_stage(Dp, r, S), k, V);
    if (!stage_holds(ext, k, target)) {
      c.feasible = false;
      c.note = "candidate failed verification";
      return {c, std::nullopt};
    }
    return {c, std::move(ext)};
  }

  const IdealPresentation& I_;
  ResolvedBounds rb_;
  RingPtr ring_;
  std::vector<std::size_t> rv_;
  std::vector<Monomial> ansatz_;
  std::vector<std::vector<MPoly>> grad_cols_;
};

unsigned max_image_degree(const HSDerivation& D) {
  int d = 0;
  for (const auto& img : D.images())
    for (unsigned i = 1; i <= D.length(); ++i) d = std::max(d, img[i].degree());
  return static_cast<unsigned>(d);
}

}  // namespace

std::vector<HSDerivation> bounded_log_derivations(const IdealPresentation& I, unsigned degree) {
  ResolvedBounds rb;
  rb.ring_degree = degree;
  const StageSolver solver(I, rb);
  std::vector<MPoly> rhs(I.generators().size(), I.ring()->zero());
  const MembershipSolve s = solve_membership(solver.gradient_columns(), rhs, I.ring()->zero_coeff());
  std::vector<HSDerivation> out;
  for (const auto& v : s.solution.kernel) out.push_back(HSDerivation::from_derivation(I.ring(), solver.values_from(v)));
  return out;
}

ObstructionReport log_extend_step(const ExtensionProblem& prob) {
  ObstructionReport rep;
  rep.bounds = resolve_bounds(prob.bounds, prob.ideal, max_image_degree(prob.current));
  rep.gradient_vanishes = gradient_vanishes(prob.ideal);
  const StageSolver solver(prob.ideal, rep.bounds);
  auto out = solver.solve(prob.current, prob.stage, prob.top_target);
  rep.systems = std::move(out.certs);
  rep.status = out.status;
  if (out.status == SearchStatus::Feasible) {
    rep.stage_reached = prob.stage;
    rep.witness = std::move(out.extension);
  } else {
    rep.stage_reached = prob.stage - 1;
    rep.failed_stage = prob.stage;
  }
  return rep;
}

ObstructionReport find_log_integral(const HSDerivation& delta, const IdealPresentation& I, unsigned n,
                                    const SearchBounds& bounds, const std::vector<MPoly>& top_target) {
  require_same_ring(*delta.ring(), *I.ring());
  if (delta.length() != 1) throw ArgumentError("expected a derivation (length 1)");
  if (n == 0) throw ArgumentError("integral length must be positive");
  if (!top_target.empty() && top_target.size() != I.generators().size())
    throw ArgumentError("top target needs one value per generator");
  const bool shifted_first = !top_target.empty() && n == 1;
  for (std::size_t g = 0; g < I.generators().size(); ++g) {
    MPoly v = apply_derivation(delta, I.generators()[g]);
    if (shifted_first) v -= top_target[g];
    if (!I.contains(v)) throw MathError("derivation is not logarithmic for the ideal");
  }

  ObstructionReport rep;
  rep.bounds = resolve_bounds(bounds, I, max_image_degree(delta));
  rep.gradient_vanishes = gradient_vanishes(I);
  if (n == 1) {
    rep.status = SearchStatus::Feasible;
    rep.witness = delta;
    return rep;
  }
  if (delta.is_identity() && top_target.empty()) {
    rep.status = SearchStatus::Feasible;
    rep.stage_reached = n;
    rep.witness = HSDerivation::identity(delta.ring(), n);
    rep.note = "zero derivation";
    return rep;
  }

  const StageSolver solver(I, rep.bounds);
  HSDerivation D = delta;
  for (unsigned k = 2; k <= n; ++k) {
    static const std::vector<MPoly> none;
    auto out = solver.solve(D, k, k == n ? top_target : none);
    for (auto& c : out.certs) rep.systems.push_back(std::move(c));
    if (out.status != SearchStatus::Feasible) {
      rep.status = out.status;
      rep.stage_reached = k - 1;
      rep.failed_stage = k;
      rep.note = "no extension within bounds at stage " + std::to_string(k);
      return rep;
    }
    D = std::move(*out.extension);
    rep.stage_reached = k;
  }
  if (!(D.component_values(1) == delta.component_values(1)) || !solver.stage_holds(D, n, top_target))
    throw std::logic_error("integral search produced an unverified witness");
  rep.status = SearchStatus::Feasible;
  rep.witness = std::move(D);
  return rep;
}

bool verify_integral_witness(const HSDerivation& E, const HSDerivation& delta, const IdealPresentation& I) {
  require_same_ring(*E.ring(), *delta.ring());
  require_same_ring(*E.ring(), *I.ring());
  if (delta.length() < 1) return false;
  for (std::size_t j = 0; j < E.num_generators(); ++j)
    if (!(E.image(j)[1] == delta.image(j)[1])) return false;
  return is_log(E, I);
}

bool recheck(const ObstructionReport& report, const HSDerivation& delta, const IdealPresentation& I, unsigned n,
             const SearchBounds& bounds, const std::vector<MPoly>& top_target) {
  const ObstructionReport again = find_log_integral(delta, I, n, bounds, top_target);
  if (again.status != report.status || again.stage_reached != report.stage_reached ||
      again.failed_stage != report.failed_stage || !(again.bounds == report.bounds) ||
      again.systems != report.systems)
    return false;
  if (report.witness.has_value() != again.witness.has_value()) return false;
  return !report.witness || *report.witness == *again.witness;
}

}  // namespace hasse
