#include "hasse/field.hpp"

#include <algorithm>

namespace hasse {

FieldElem::FieldElem(fp_t p, std::size_t nparams) : p_(p), nparams_(nparams) {
  if (nparams_ > 0) {
    num_ = param_zero(nparams_, p_);
    den_ = param_constant(nparams_, p_, 1);
  }
}

FieldElem FieldElem::from_int(fp_t p, std::size_t nparams, long long v) {
  FieldElem r(p, nparams);
  if (nparams == 0)
    r.v_ = fp_from_int(v, p);
  else
    r.num_ = param_constant(nparams, p, fp_from_int(v, p));
  return r;
}

FieldElem FieldElem::param(fp_t p, std::size_t nparams, std::size_t index) {
  if (index >= nparams) throw ArgumentError("parameter index out of range");
  FieldElem r(p, nparams);
  r.num_ = param_variable(nparams, p, index);
  return r;
}

FieldElem FieldElem::from_poly(const ParamPoly& num) {
  FieldElem r(hasse::characteristic(num), num.nvars());
  if (num.nvars() == 0)
    r.v_ = num.constant_term().v;
  else
    r.num_ = num;
  return r;
}

bool FieldElem::is_one() const noexcept {
  if (nparams_ == 0) return v_ == 1;
  return num_.is_constant() && !num_.is_zero() && num_.leading_coeff().is_one() && den_.is_constant();
}

bool FieldElem::is_scalar() const noexcept { return nparams_ == 0 || (num_.is_constant() && den_.is_constant()); }

fp_t FieldElem::scalar_value() const {
  if (nparams_ == 0) return v_;
  if (!is_scalar()) throw ArgumentError("field element is not a constant");
  return num_.constant_term().v;
}

ParamPoly FieldElem::numerator() const {
  if (nparams_ == 0) return param_constant(0, p_, v_);
  return num_;
}

ParamPoly FieldElem::denominator() const {
  if (nparams_ == 0) return param_constant(0, p_, 1);
  return den_;
}

void FieldElem::check_same(const FieldElem& o) const {
  if (p_ != o.p_ || nparams_ != o.nparams_) throw ArgumentError("field elements from different fields");
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  if (nparams_ == 0)
    r.v_ = fp_neg(v_, p_);
  else
    r.num_ = -num_;
  return r;
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  a.check_same(b);
  if (a.nparams_ == 0) {
    FieldElem r = a;
    r.v_ = fp_add(a.v_, b.v_, a.p_);
    return r;
  }
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_constant()) {
      FieldElem r = a;
      r.num_ = a.num_ + b.num_;
      return r;
    }
    return reduce_fraction(a.num_ + b.num_, a.den_);
  }
  return reduce_fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  a.check_same(b);
  if (a.nparams_ == 0) {
    FieldElem r = a;
    r.v_ = fp_mul(a.v_, b.v_, a.p_);
    return r;
  }
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  if (a.den_.is_constant() && b.den_.is_constant()) {
    FieldElem r = a;
    r.num_ = a.num_ * b.num_;
    return r;
  }
  // Cross-cancel before multiplying to keep operands small.
  const ParamPoly g1 = gcd(a.num_, b.den_);
  const ParamPoly g2 = gcd(b.num_, a.den_);
  FieldElem r(a.p_, a.nparams_);
  r.num_ = divide_exact(a.num_, g1) * divide_exact(b.num_, g2);
  r.den_ = divide_exact(a.den_, g2) * divide_exact(b.den_, g1);
  const Zp lc = r.den_.leading_coeff();
  if (!lc.is_one()) {
    const Zp li = lc.inv();
    r.num_ = r.num_.scaled(li);
    r.den_ = r.den_.scaled(li);
  }
  return r;
}

FieldElem FieldElem::inv() const {
  if (is_zero()) throw MathError("inverse of zero");
  if (nparams_ == 0) {
    FieldElem r = *this;
    r.v_ = fp_inv(v_, p_);
    return r;
  }
  FieldElem r(p_, nparams_);
  const Zp li = num_.leading_coeff().inv();
  r.num_ = den_.scaled(li);
  r.den_ = num_.scaled(li);
  return r;
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }

FieldElem FieldElem::pow(unsigned long long e) const {
  FieldElem result = one_like(*this);
  FieldElem base = *this;
  while (e > 0) {
    if (e & 1ULL) result *= base;
    e >>= 1ULL;
    if (e > 0) base *= base;
  }
  return result;
}

FieldElem FieldElem::frobenius(unsigned e) const {
  if (nparams_ == 0) return *this;
  FieldElem r(p_, nparams_);
  r.num_ = hasse::frobenius(num_, e);
  r.den_ = hasse::frobenius(den_, e);
  return r;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.p_ != b.p_ || a.nparams_ != b.nparams_) return false;
  if (a.nparams_ == 0) return a.v_ == b.v_;
  return a.num_ == b.num_ && a.den_ == b.den_;
}

int FieldElem::param_degree() const noexcept {
  if (nparams_ == 0) return 0;
  return std::max(num_.degree(), den_.degree());
}

FieldElem reduce_fraction(const ParamPoly& num, const ParamPoly& den) {
  if (den.is_zero()) throw MathError("zero denominator");
  const fp_t p = hasse::characteristic(den);
  const std::size_t k = den.nvars();
  FieldElem r(p, k);
  if (k == 0) {
    r.v_ = fp_mul(num.constant_term().v, fp_inv(den.constant_term().v, p), p);
    return r;
  }
  if (num.is_zero()) return r;
  ParamPoly n = num, d = den;
  if (!d.is_constant()) {
    const ParamPoly g = gcd(n, d);
    if (!g.is_constant()) {
      n = divide_exact(n, g);
      d = divide_exact(d, g);
    }
  }
  const Zp li = d.leading_coeff().inv();
  r.num_ = n.scaled(li);
  r.den_ = d.scaled(li);
  return r;
}

}  // namespace hasse
