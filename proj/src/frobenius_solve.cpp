#include "hasse/frobenius_solve.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace hasse {

std::size_t flat_size(const Ring& r) { return r.nvars() + r.nparams(); }

FlatPoly flatten(const MPoly& f, const Ring& r) {
  const std::size_t n = flat_size(r);
  if (n > kMaxVars) throw ArgumentError("too many variables and parameters to flatten");
  std::vector<FlatPoly::Term> ts;
  for (const auto& [m, c] : f.terms()) {
    const ParamPoly den = c.denominator();
    if (!den.is_constant()) throw ArgumentError("cannot flatten a coefficient with a denominator");
    const Zp dinv = den.constant_term().inv();
    for (const auto& [pm, pc] : c.numerator().terms()) {
      Monomial fm(n);
      for (std::size_t i = 0; i < r.nvars(); ++i) fm.set(i, m[i]);
      for (std::size_t i = 0; i < r.nparams(); ++i) fm.set(r.nvars() + i, pm[i]);
      ts.emplace_back(fm, pc * dinv);
    }
  }
  return FlatPoly::from_terms(n, Zp{0, r.p}, std::move(ts));
}

MPoly unflatten(const FlatPoly& f, const Ring& r) {
  if (f.nvars() != flat_size(r)) throw ArgumentError("flat polynomial has the wrong number of variables");
  std::vector<MPoly::Term> ts;
  for (const auto& [m, c] : f.terms()) {
    Monomial vm(r.nvars());
    for (std::size_t i = 0; i < r.nvars(); ++i) vm.set(i, m[i]);
    Monomial pm(r.nparams());
    for (std::size_t i = 0; i < r.nparams(); ++i) pm.set(i, m[r.nvars() + i]);
    const ParamPoly num = ParamPoly::monomial(r.nparams(), Zp{0, r.p}, pm, c);
    ts.emplace_back(vm, FieldElem::from_poly(num));
  }
  return MPoly::from_terms(r.nvars(), r.zero_coeff(), std::move(ts));
}

ParamPoly common_denominator(const MPoly& f) {
  const FieldElem z = f.zero_coeff();
  ParamPoly l = param_constant(z.nparams(), z.characteristic(), 1);
  for (const auto& [m, c] : f.terms()) {
    const ParamPoly d = c.denominator();
    if (d.is_constant()) continue;
    l = divide_exact(l * d, gcd(l, d));
  }
  return make_monic(l);
}

MPoly clear_denominators(const MPoly& f) {
  const ParamPoly d = common_denominator(f);
  if (d.is_constant()) return f;
  return f.scaled(FieldElem::from_poly(d));
}

std::vector<Monomial> ansatz_monomials(std::size_t nbase, const std::vector<DegreeBound>& bounds) {
  std::vector<bool> allowed(nbase, false);
  for (const auto& b : bounds)
    for (std::size_t v : b.vars) {
      if (v >= nbase) throw ArgumentError("degree bound refers to an unknown variable");
      allowed[v] = true;
    }
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < nbase; ++i)
    if (allowed[i]) vars.push_back(i);
  std::vector<Monomial> out;
  Monomial cur(nbase);
  auto fits = [&](const Monomial& m) {
    for (const auto& b : bounds) {
      unsigned d = 0;
      for (std::size_t v : b.vars) d += m[v];
      if (d > b.max_degree) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0;; ++e) {
      cur.set(vars[i], e);
      if (!fits(cur)) break;
      rec(i + 1);
    }
    cur.set(vars[i], 0);
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return a > b; });
  return out;
}

FrobeniusSolution frobenius_linear_solve(const FrobeniusProblem& pr) {
  const fp_t p = pr.p;
  std::vector<std::vector<Monomial>> basis;
  std::vector<std::size_t> offset;
  std::size_t ncols = 0;
  for (const auto& s : pr.symbols) {
    offset.push_back(ncols);
    basis.push_back(ansatz_monomials(pr.nbase, s.bounds));
    ncols += basis.back().size();
  }
  for (const auto& eq : pr.equations)
    for (const auto& t : eq.terms) {
      if (t.symbol >= pr.symbols.size()) throw ArgumentError("additive term refers to an unknown symbol");
      unsigned q = t.power;
      while (q % p == 0) q /= p;
      if (q != 1) throw NonAdditiveError("symbol power is not a power of the characteristic");
    }

  FpSystem sys(p, ncols);
  FrobeniusSolution sol;
  for (const auto& eq : pr.equations) {
    // Rows are the monomials of the identity; collect sparse entries.
    std::unordered_map<Monomial, std::vector<std::pair<std::size_t, fp_t>>, MonomialHash> rows;
    std::unordered_map<Monomial, fp_t, MonomialHash> rhs;
    for (const auto& [m, c] : eq.constant.terms()) {
      rhs[m] = fp_neg(c.v, p);
      rows[m];
    }
    for (const auto& t : eq.terms) {
      const auto& mons = basis[t.symbol];
      for (std::size_t k = 0; k < mons.size(); ++k) {
        const Monomial mq = mons[k].scaled(t.power);
        for (const auto& [m, c] : t.multiplier.terms()) rows[m * mq].emplace_back(offset[t.symbol] + k, c.v);
      }
    }
    // Deterministic row order.
    std::vector<Monomial> keys;
    keys.reserve(rows.size());
    for (const auto& kv : rows) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end(), [](const Monomial& a, const Monomial& b) { return a > b; });
    for (const auto& k : keys) {
      auto it = rhs.find(k);
      sys.add_row(rows[k], it == rhs.end() ? 0 : it->second);
    }
  }
  const auto raw = sys.solve();
  sol.feasible = raw.feasible;
  sol.unknowns = ncols;
  sol.rows = sys.rows_added();
  sol.rank = raw.rank;
  sol.augmented_rank = raw.augmented_rank;

  auto to_polys = [&](const std::vector<fp_t>& v) {
    std::vector<FlatPoly> out;
    for (std::size_t s = 0; s < pr.symbols.size(); ++s) {
      std::vector<FlatPoly::Term> ts;
      for (std::size_t k = 0; k < basis[s].size(); ++k)
        if (v[offset[s] + k] != 0) ts.emplace_back(basis[s][k], Zp{v[offset[s] + k], p});
      FlatPoly f(pr.nbase, Zp{0, p});
      f.mutable_terms() = std::move(ts);  // basis is sorted decreasingly
      out.push_back(std::move(f));
    }
    return out;
  };
  if (sol.feasible) sol.particular = to_polys(raw.particular);
  for (const auto& v : raw.kernel) sol.kernel.push_back(to_polys(v));
  return sol;
}

AdditiveEquation additive_from_polynomial(const FlatPoly& f, std::size_t nbase, fp_t p) {
  AdditiveEquation eq;
  eq.constant = FlatPoly(nbase, Zp{0, p});
  std::vector<std::vector<FlatPoly::Term>> buckets;
  std::vector<std::pair<std::size_t, unsigned>> keys;
  std::vector<FlatPoly::Term> constant;
  for (const auto& [m, c] : f.terms()) {
    Monomial base(nbase);
    for (std::size_t i = 0; i < nbase; ++i) base.set(i, m[i]);
    std::size_t sym = f.nvars();
    unsigned power = 0;
    for (std::size_t i = nbase; i < f.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (sym != f.nvars()) throw NonAdditiveError("product of two unknowns in an additive identity");
      sym = i;
      power = m[i];
    }
    if (sym == f.nvars()) {
      constant.emplace_back(base, c);
      continue;
    }
    unsigned q = power;
    while (q % p == 0) q /= p;
    if (q != 1) throw NonAdditiveError("unknown raised to a power that is not a power of the characteristic");
    const std::pair<std::size_t, unsigned> key{sym - nbase, power};
    std::size_t idx = 0;
    while (idx < keys.size() && keys[idx] != key) ++idx;
    if (idx == keys.size()) {
      keys.push_back(key);
      buckets.emplace_back();
    }
    buckets[idx].emplace_back(base, c);
  }
  eq.constant = FlatPoly::from_terms(nbase, Zp{0, p}, std::move(constant));
  for (std::size_t i = 0; i < keys.size(); ++i)
    eq.terms.push_back({keys[i].first, keys[i].second, FlatPoly::from_terms(nbase, Zp{0, p}, std::move(buckets[i]))});
  return eq;
}

}  // namespace hasse
