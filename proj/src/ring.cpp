#include "hasse/ring.hpp"

#include <algorithm>
#include <map>

namespace hasse {

RingPtr Ring::make(fp_t p, std::vector<std::string> params, std::vector<std::string> vars,
                   std::vector<VarRole> roles) {
  if (!is_prime(p)) throw ArgumentError("characteristic must be prime");
  if (vars.size() > kMaxVars) throw ArgumentError("too many variables (max 16)");
  if (params.size() > kMaxVars) throw ArgumentError("too many parameters (max 16)");
  if (roles.empty()) roles.assign(vars.size(), VarRole::Ring);
  if (roles.size() != vars.size()) throw ArgumentError("role list does not match variables");
  std::vector<std::string> names = vars;
  names.insert(names.end(), params.begin(), params.end());
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    throw ArgumentError("duplicate variable or parameter name");
  for (const auto& n : names)
    if (n == "mu") throw ArgumentError("'mu' is reserved for the series variable");
  auto r = std::make_shared<Ring>();
  r->p = p;
  r->params = std::move(params);
  r->vars = std::move(vars);
  r->roles = std::move(roles);
  return r;
}

std::vector<std::size_t> Ring::ring_vars() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (roles[i] == VarRole::Ring) out.push_back(i);
  return out;
}

std::vector<std::size_t> Ring::extension_vars() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (roles[i] == VarRole::Extension) out.push_back(i);
  return out;
}

MPoly Ring::var(std::size_t i) const {
  if (i >= nvars()) throw ArgumentError("variable index out of range");
  return term(Monomial::variable(nvars(), i), scalar(1));
}

std::size_t Ring::var_index(const std::string& name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) throw ArgumentError("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - vars.begin());
}

std::size_t Ring::param_index(const std::string& name) const {
  auto it = std::find(params.begin(), params.end(), name);
  if (it == params.end()) throw ArgumentError("unknown parameter '" + name + "'");
  return static_cast<std::size_t>(it - params.begin());
}

bool Ring::same_as(const Ring& o) const {
  return this == &o || (p == o.p && params == o.params && vars == o.vars && roles == o.roles);
}

void require_same_ring(const Ring& a, const Ring& b) {
  if (!a.same_as(b)) throw ArgumentError("ring descriptors do not match");
}

MPoly partial(const MPoly& f, std::size_t var) {
  std::vector<MPoly::Term> ts;
  const fp_t p = f.zero_coeff().characteristic();
  for (const auto& [m, c] : f.terms()) {
    const unsigned e = m[var];
    if (e == 0 || e % p == 0) continue;
    Monomial d = m;
    d.set(var, e - 1);
    ts.emplace_back(d, c * FieldElem::from_int(p, c.nparams(), e));
  }
  return MPoly::from_terms(f.nvars(), f.zero_coeff(), std::move(ts));
}

MPoly frobenius(const MPoly& f, unsigned e) {
  const fp_t p = f.zero_coeff().characteristic();
  unsigned q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  std::vector<MPoly::Term> ts;
  ts.reserve(f.size());
  for (const auto& [m, c] : f.terms()) ts.emplace_back(m.scaled(q), c.frobenius(e));
  MPoly r(f.nvars(), f.zero_coeff());
  r.mutable_terms() = std::move(ts);
  return r;
}

int param_degree(const MPoly& f) {
  int d = 0;
  for (const auto& [m, c] : f.terms()) d = std::max(d, c.param_degree());
  return d;
}

int degree_in_vars(const MPoly& f, const std::vector<std::size_t>& vars) {
  int d = -1;
  for (const auto& [m, c] : f.terms()) {
    int s = 0;
    for (std::size_t v : vars) s += static_cast<int>(m[v]);
    d = std::max(d, s);
  }
  return d;
}

MPoly scale(const MPoly& f, const FieldElem& c) { return f.scaled(c); }

bool has_polynomial_coefficients(const MPoly& f) {
  for (const auto& [m, c] : f.terms())
    if (!c.denominator().is_constant()) return false;
  return true;
}

MPoly map_poly(const MPoly& f, const Ring& target, const std::vector<std::size_t>& var_map,
               const std::function<FieldElem(const FieldElem&)>& coeff_map) {
  if (var_map.size() != f.nvars()) throw ArgumentError("variable map has wrong size");
  std::vector<MPoly::Term> ts;
  ts.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Monomial t(target.nvars());
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t.set(var_map[i], t[var_map[i]] + m[i]);
    ts.emplace_back(t, coeff_map(c));
  }
  return MPoly::from_terms(target.nvars(), target.zero_coeff(), std::move(ts));
}

MPoly substitute(const MPoly& f, const std::vector<MPoly>& images, const MPoly& one) {
  if (images.size() != f.nvars()) throw ArgumentError("substitution needs one image per variable");
  std::vector<std::map<unsigned, MPoly>> powers(images.size());
  auto power = [&](std::size_t i, unsigned e) -> const MPoly& {
    auto& cache = powers[i];
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    MPoly v = images[i].pow(e);
    return cache.emplace(e, std::move(v)).first->second;
  };
  MPoly acc = one.scaled(one.zero_coeff());
  for (const auto& [m, c] : f.terms()) {
    MPoly t = one.scaled(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t *= power(i, m[i]);
    acc += t;
  }
  return acc;
}

}  // namespace hasse
