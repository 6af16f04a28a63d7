#include "hasse/param_poly.hpp"

#include <map>
#include <vector>

namespace hasse {

ParamPoly param_zero(std::size_t nparams, fp_t p) { return ParamPoly(nparams, Zp{0, p}); }

ParamPoly param_constant(std::size_t nparams, fp_t p, fp_t value) {
  return ParamPoly::constant(nparams, Zp{0, p}, Zp{value % p, p});
}

ParamPoly param_variable(std::size_t nparams, fp_t p, std::size_t index) {
  return ParamPoly::monomial(nparams, Zp{0, p}, Monomial::variable(nparams, index), Zp{1, p});
}

fp_t characteristic(const ParamPoly& f) noexcept { return f.zero_coeff().p; }

ParamPoly make_monic(const ParamPoly& f) {
  if (f.is_zero() || f.leading_coeff().is_one()) return f;
  return f.scaled(f.leading_coeff().inv());
}

bool exact_divide(const ParamPoly& a, const ParamPoly& b, ParamPoly& q) {
  if (b.is_zero()) throw MathError("division by zero polynomial");
  q = ParamPoly(a.nvars(), a.zero_coeff());
  if (a.is_zero()) return true;
  if (b.is_constant()) {
    q = a.scaled(b.leading_coeff().inv());
    return true;
  }
  const Monomial& lb = b.leading_monomial();
  const Zp lc_inv = b.leading_coeff().inv();
  ParamPoly r = a;
  std::vector<ParamPoly::Term> quot;
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!lb.divides(lr)) return false;
    Monomial m = lb.quotient_of(lr);
    Zp c = r.leading_coeff() * lc_inv;
    r -= b.mul_term(m, c);
    quot.emplace_back(std::move(m), c);
  }
  // Quotient terms are produced in decreasing order already.
  q.mutable_terms() = std::move(quot);
  return true;
}

ParamPoly divide_exact(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly q;
  if (!exact_divide(a, b, q)) throw MathError("polynomial division is not exact");
  return q;
}

namespace {

// Coefficients of f as a polynomial in variable v; keys are degrees in v.
std::map<unsigned, ParamPoly> split_by(const ParamPoly& f, std::size_t v) {
  std::map<unsigned, std::vector<ParamPoly::Term>> buckets;
  for (const auto& [m, c] : f.terms()) {
    Monomial rest = m;
    rest.set(v, 0);
    buckets[m[v]].emplace_back(rest, c);
  }
  std::map<unsigned, ParamPoly> out;
  for (auto& [d, ts] : buckets) out.emplace(d, ParamPoly::from_terms(f.nvars(), f.zero_coeff(), std::move(ts)));
  return out;
}

ParamPoly monomial_content(const ParamPoly& f) {
  Monomial g = f.terms().front().first;
  for (const auto& [m, c] : f.terms()) g = g.gcd(m);
  return ParamPoly::monomial(f.nvars(), f.zero_coeff(), g, Zp::one_like(f.zero_coeff()));
}

ParamPoly content_in(const ParamPoly& f, std::size_t v) {
  ParamPoly g(f.nvars(), f.zero_coeff());
  for (auto& [d, c] : split_by(f, v)) {
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

// Sparse pseudo-remainder of a by b with respect to variable v.
ParamPoly pseudo_remainder(ParamPoly a, const ParamPoly& b, std::size_t v) {
  const int db = b.degree_in(v);
  auto bc = split_by(b, v);
  const ParamPoly lb = bc.rbegin()->second;
  const Zp one = Zp::one_like(a.zero_coeff());
  while (!a.is_zero() && a.degree_in(v) >= db) {
    const int da = a.degree_in(v);
    const ParamPoly la = split_by(a, v).rbegin()->second;
    const Monomial shift = Monomial::variable(a.nvars(), v, static_cast<unsigned>(da - db));
    a = lb * a - (la * b).mul_term(shift, one);
  }
  return a;
}

}  // namespace

ParamPoly gcd(const ParamPoly& a, const ParamPoly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  const Zp one = Zp::one_like(a.zero_coeff());
  const ParamPoly unit = ParamPoly::constant(a.nvars(), a.zero_coeff(), one);
  if (a.is_constant() || b.is_constant()) return unit;
  if (a.size() == 1 || b.size() == 1) {
    const ParamPoly ma = monomial_content(a);
    const ParamPoly mb = monomial_content(b);
    return ParamPoly::monomial(a.nvars(), a.zero_coeff(), ma.leading_monomial().gcd(mb.leading_monomial()), one);
  }
  ParamPoly q;
  if (exact_divide(a, b, q)) return make_monic(b);
  if (exact_divide(b, a, q)) return make_monic(a);

  std::size_t v = a.nvars();
  bool in_a = false, in_b = false;
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    in_a = a.degree_in(i) > 0;
    in_b = b.degree_in(i) > 0;
    if (in_a || in_b) {
      v = i;
      break;
    }
  }
  if (v == a.nvars()) return unit;
  if (!in_a) return gcd(a, content_in(b, v));
  if (!in_b) return gcd(content_in(a, v), b);

  const ParamPoly ca = content_in(a, v);
  const ParamPoly cb = content_in(b, v);
  ParamPoly pa = divide_exact(a, ca);
  ParamPoly pb = divide_exact(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (true) {
    ParamPoly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) <= 0) {
      pb = unit;
      break;
    }
    pa = std::move(pb);
    pb = divide_exact(r, content_in(r, v));
  }
  return make_monic(gcd(ca, cb) * pb);
}

ParamPoly frobenius(const ParamPoly& f, unsigned e) {
  const fp_t p = characteristic(f);
  unsigned q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  // Coefficients lie in F_p, so they are fixed by Frobenius.
  std::vector<ParamPoly::Term> ts;
  ts.reserve(f.size());
  for (const auto& [m, c] : f.terms()) ts.emplace_back(m.scaled(q), c);
  ParamPoly r(f.nvars(), f.zero_coeff());
  r.mutable_terms() = std::move(ts);
  return r;
}

}  // namespace hasse
