#include "hasse/text.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace hasse {

namespace {

constexpr unsigned kMaxExponent = 4096;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string strip_comment(const std::string& s) {
  const auto pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

bool blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out = split(text, '\n');
  for (auto& l : out) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
  }
  return out;
}

bool looks_like_header(const std::string& s) { return s.find('=') != std::string::npos && s.find("->") == std::string::npos; }

unsigned parse_unsigned(const std::string& v, std::size_t line, std::size_t col, const std::string& what) {
  if (v.empty() || v.size() > 9) throw ParseError("bad " + what + " '" + v + "'", line, col);
  for (char c : v)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad " + what + " '" + v + "'", line, col);
  return static_cast<unsigned>(std::stoul(v));
}

// Recursive descent evaluator over truncated series; plain polynomials are
// series of order 0 with mu disabled.
class ExprParser {
 public:
  ExprParser(const std::string& s, RingPtr r, unsigned order, bool allow_mu, std::size_t line, std::size_t col0)
      : s_(s), r_(std::move(r)), order_(order), allow_mu_(allow_mu), line_(line), col0_(col0) {}

  JetSeries parse() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    JetSeries v = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  JetSeries constant(const MPoly& f) const { return JetSeries::constant(r_, order_, f); }

  JetSeries expr() {
    JetSeries acc = signed_term();
    for (;;) {
      if (eat('+')) {
        acc = acc + signed_term();
      } else if (eat('-')) {
        acc = acc - signed_term();
      } else {
        return acc;
      }
    }
  }

  JetSeries signed_term() {
    if (eat('-')) return -term();
    if (eat('+')) return term();
    return term();
  }

  JetSeries term() {
    JetSeries acc = power();
    for (;;) {
      if (eat('*')) {
        acc = jet_mul(acc, power());
      } else if (eat('/')) {
        const std::size_t at = pos_;
        const JetSeries d = power();
        bool constant_divisor = d[0].is_constant();
        for (unsigned i = 1; i <= order_; ++i) constant_divisor = constant_divisor && d[i].is_zero();
        if (!constant_divisor) {
          pos_ = at;
          fail("division by a non-constant");
        }
        if (d[0].is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc = acc.scaled(r_->constant(d[0].constant_term().inv()));
      } else {
        return acc;
      }
    }
  }

  JetSeries power() {
    JetSeries base = atom();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      const std::string digits = s_.substr(start, pos_ - start);
      if (digits.size() > 5 || std::stoul(digits) > kMaxExponent) {
        pos_ = start;
        fail("exponent too large");
      }
      return jet_pow(base, static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  JetSeries atom() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      JetSeries v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      fp_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = fp_add(fp_mul(v, 10 % r_->p, r_->p), static_cast<fp_t>(s_[pos_] - '0') % r_->p, r_->p);
        ++pos_;
      }
      return constant(r_->constant(r_->scalar(v)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "mu") {
        if (!allow_mu_) {
          pos_ = start;
          fail("'mu' is only allowed in series");
        }
        JetSeries j(r_, order_);
        if (order_ >= 1) j[1] = r_->one();
        return j;
      }
      for (std::size_t i = 0; i < r_->nvars(); ++i)
        if (r_->vars[i] == name) return constant(r_->var(i));
      for (std::size_t i = 0; i < r_->nparams(); ++i)
        if (r_->params[i] == name) return constant(r_->constant(r_->param(i)));
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  RingPtr r_;
  unsigned order_;
  bool allow_mu_;
  std::size_t line_, col0_;
  std::size_t pos_ = 0;
};

std::string format_monomial(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

std::string format_param_poly(const ParamPoly& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::vector<std::string> parts;
  for (const auto& [m, c] : f.terms()) {
    if (m.is_one()) {
      parts.push_back(std::to_string(c.v));
    } else if (c.v == 1) {
      parts.push_back(format_monomial(m, names));
    } else {
      parts.push_back(std::to_string(c.v) + "*" + format_monomial(m, names));
    }
  }
  return join(parts, " + ");
}

// A coefficient that can be followed by "*" without parentheses.
std::string coeff_factor(const FieldElem& c, const Ring& r) {
  const std::string s = format_coeff(c, r);
  if (c.is_scalar()) return s;
  const ParamPoly num = c.numerator();
  if (num.size() > 1 && c.denominator().is_constant()) return "(" + s + ")";
  return s;
}

std::string header_fields(const Ring& r) {
  std::string out = "p=" + std::to_string(r.p);
  std::vector<std::string> rv, ev;
  for (std::size_t i : r.ring_vars()) rv.push_back(r.vars[i]);
  for (std::size_t i : r.extension_vars()) ev.push_back(r.vars[i]);
  out += " vars=" + join(rv, ",");
  if (!r.params.empty()) out += " params=" + join(r.params, ",");
  if (!ev.empty()) out += " ext=" + join(ev, ",");
  return out;
}

// Ring variables first, then extension variables; Ring::make keeps order,
// so any interleaving in a header-less ring is printed in that order too.
RingPtr ring_from_fields(fp_t p, const std::vector<std::string>& params, const std::vector<std::string>& vars,
                         const std::vector<std::string>& ext, std::size_t line) {
  std::vector<std::string> all = vars;
  std::vector<VarRole> roles(vars.size(), VarRole::Ring);
  for (const auto& e : ext) {
    all.push_back(e);
    roles.push_back(VarRole::Extension);
  }
  try {
    return Ring::make(p, params, all, roles);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), line, 1);
  }
}

std::size_t first_nonblank(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

}  // namespace

RingHeader parse_header(const std::string& text, std::size_t line) {
  std::optional<fp_t> p;
  std::vector<std::string> vars, params, ext;
  bool have_vars = false;
  RingHeader h;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::string field = text.substr(start, pos - start);
    const std::size_t col = start + 1;
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in header", line, col);
    const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    auto names = [&]() {
      std::vector<std::string> v = split(value, ',');
      for (const auto& n : v) {
        bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
        for (char c : n) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok) throw ParseError("bad name '" + n + "' in header", line, col + eq + 1);
      }
      return v;
    };
    if (key == "p") {
      p = parse_unsigned(value, line, col + 2, "characteristic");
      if (!is_prime(*p)) throw ParseError("characteristic must be prime", line, col + 2);
    } else if (key == "vars") {
      vars = names();
      have_vars = true;
    } else if (key == "params") {
      params = value.empty() ? std::vector<std::string>{} : names();
    } else if (key == "ext") {
      ext = value.empty() ? std::vector<std::string>{} : names();
    } else if (key == "len") {
      h.len = parse_unsigned(value, line, col + 4, "length");
    } else if (key == "from") {
      h.from = parse_unsigned(value, line, col + 5, "order");
    } else if (key == "to") {
      h.to = parse_unsigned(value, line, col + 3, "order");
    } else {
      throw ParseError("unknown header key '" + key + "'", line, col);
    }
  }
  if (!p) throw ParseError("header lacks p=", line, 1);
  if (!have_vars) throw ParseError("header lacks vars=", line, 1);
  h.ring = ring_from_fields(*p, params, vars, ext, line);
  return h;
}

std::string format_header(const Ring& r) { return header_fields(r); }

std::string format_coeff(const FieldElem& c, const Ring& r) {
  if (c.is_scalar()) return std::to_string(c.scalar_value());
  const ParamPoly num = c.numerator(), den = c.denominator();
  std::string out = format_param_poly(num, r.params);
  if (den.is_constant()) return out;
  if (num.size() > 1) out = "(" + out + ")";
  const auto& dt = den.terms();
  // A single parameter power needs no parentheses.
  bool atomic = false;
  if (dt.size() == 1) {
    std::size_t nz = 0;
    for (std::size_t i = 0; i < r.nparams(); ++i) nz += dt[0].first[i] ? 1 : 0;
    atomic = nz == 1;
  }
  const std::string d = format_param_poly(den, r.params);
  return out + "/" + (atomic ? d : "(" + d + ")");
}

std::string format_poly(const MPoly& f, const Ring& r) {
  if (f.is_zero()) return "0";
  std::vector<std::string> parts;
  for (const auto& [m, c] : f.terms()) {
    if (m.is_one()) {
      const std::string s = format_coeff(c, r);
      parts.push_back(c.is_scalar() || c.numerator().size() == 1 || !c.denominator().is_constant() ? s
                                                                                                   : "(" + s + ")");
    } else if (c.is_one()) {
      parts.push_back(format_monomial(m, r.vars));
    } else {
      parts.push_back(coeff_factor(c, r) + "*" + format_monomial(m, r.vars));
    }
  }
  return join(parts, " + ");
}

MPoly parse_poly(const std::string& text, const RingPtr& r, std::size_t line, std::size_t column) {
  ExprParser ps(text, r, 0, false, line, column);
  return ps.parse()[0];
}

std::string format_derivation(const HSDerivation& D) {
  const Ring& r = *D.ring();
  std::ostringstream os;
  os << header_fields(r) << " len=" << D.length() << "\n";
  const auto rv = r.ring_vars();
  for (std::size_t j = 0; j < rv.size(); ++j) {
    const JetSeries& img = D.image(j);
    os << r.vars[rv[j]] << " -> " << r.vars[rv[j]];
    for (unsigned i = 1; i <= D.length(); ++i) {
      if (img[i].is_zero()) continue;
      const std::string mu = i == 1 ? "mu" : "mu^" + std::to_string(i);
      os << " + ";
      if (img[i] == r.one()) {
        os << mu;
      } else {
        const std::string body = format_poly(img[i], r);
        os << (img[i].size() > 1 ? "(" + body + ")" : body) << "*" << mu;
      }
    }
    os << "\n";
  }
  return os.str();
}

HSDerivation parse_derivation(const std::string& text) {
  const auto lines = lines_of(text);
  std::optional<RingHeader> header;
  std::vector<std::optional<JetSeries>> images;
  std::vector<std::size_t> rv;
  std::size_t last_line = 1;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string line = strip_comment(lines[ln]);
    const std::size_t lno = ln + 1;
    if (blank(line)) continue;
    last_line = lno;
    if (!header) {
      header = parse_header(line, lno);
      if (!header->len) throw ParseError("derivation header lacks len=", lno, 1);
      if (*header->len == 0) throw ParseError("derivation length must be positive", lno, 1);
      rv = header->ring->ring_vars();
      images.assign(rv.size(), std::nullopt);
      continue;
    }
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError("expected 'var -> series'", lno, first_nonblank(line) + 1);
    std::string lhs = line.substr(0, arrow);
    const std::size_t lstart = first_nonblank(lhs);
    lhs = lhs.substr(lstart);
    while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) lhs.pop_back();
    const Ring& r = *header->ring;
    std::size_t j = rv.size();
    for (std::size_t k = 0; k < rv.size(); ++k)
      if (r.vars[rv[k]] == lhs) j = k;
    if (j == rv.size()) throw ParseError("'" + lhs + "' is not a ring variable", lno, lstart + 1);
    if (images[j]) throw ParseError("variable '" + lhs + "' given twice", lno, lstart + 1);
    const std::string rhs = line.substr(arrow + 2);
    ExprParser ps(rhs, header->ring, *header->len, true, lno, arrow + 3);
    JetSeries img = ps.parse();
    if (!(img[0] == r.var(rv[j])))
      throw ParseError("constant term of the image of '" + lhs + "' must be '" + lhs + "'", lno,
                       arrow + 3 + first_nonblank(rhs));
    images[j] = std::move(img);
  }
  if (!header) throw ParseError("missing header", 1, 1);
  std::vector<JetSeries> out;
  for (std::size_t k = 0; k < rv.size(); ++k) {
    if (!images[k]) throw ParseError("no image given for '" + header->ring->vars[rv[k]] + "'", last_line + 1, 1);
    out.push_back(std::move(*images[k]));
  }
  return HSDerivation::from_images(header->ring, *header->len, std::move(out));
}

std::string format_ideal(const IdealPresentation& I) {
  std::ostringstream os;
  os << header_fields(*I.ring()) << "\n";
  for (const auto& g : I.generators()) os << format_poly(g, *I.ring()) << "\n";
  return os.str();
}

IdealPresentation parse_ideal(const std::string& text, const RingPtr& ring) {
  const auto lines = lines_of(text);
  RingPtr r = ring;
  bool seen_content = false;
  std::vector<MPoly> gens;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string line = strip_comment(lines[ln]);
    const std::size_t lno = ln + 1;
    if (blank(line)) continue;
    if (!seen_content && looks_like_header(line)) {
      seen_content = true;
      const RingHeader h = parse_header(line, lno);
      if (ring && !ring->same_as(*h.ring)) throw ParseError("ideal header does not match the ring", lno, 1);
      r = h.ring;
      continue;
    }
    seen_content = true;
    if (!r) throw ParseError("missing header", lno, 1);
    gens.push_back(parse_poly(line, r, lno, 1));
  }
  if (!r) throw ParseError("missing header", 1, 1);
  return IdealPresentation(r, std::move(gens));
}

std::string format_subst(const SubstitutionMap& psi) {
  const Ring& r = *psi.ring();
  std::ostringstream os;
  os << header_fields(r) << " from=" << psi.source_order() << " to=" << psi.target_order() << "\n";
  os << "mu -> ";
  bool first = true;
  for (unsigned i = 1; i <= psi.target_order(); ++i) {
    const MPoly& c = psi.image()[i];
    if (c.is_zero()) continue;
    const std::string mu = i == 1 ? "mu" : "mu^" + std::to_string(i);
    if (!first) os << " + ";
    first = false;
    if (c == r.one()) {
      os << mu;
    } else {
      const std::string body = format_poly(c, r);
      os << (c.size() > 1 ? "(" + body + ")" : body) << "*" << mu;
    }
  }
  if (first) os << "0";
  os << "\n";
  return os.str();
}

SubstitutionMap parse_subst(const std::string& text, const RingPtr& ring) {
  const auto lines = lines_of(text);
  std::optional<RingHeader> header;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string line = strip_comment(lines[ln]);
    const std::size_t lno = ln + 1;
    if (blank(line)) continue;
    if (!header) {
      header = parse_header(line, lno);
      if (!header->from || !header->to) throw ParseError("substitution header needs from= and to=", lno, 1);
      if (ring && !ring->same_as(*header->ring)) throw ParseError("substitution ring does not match", lno, 1);
      continue;
    }
    const auto arrow = line.find("->");
    const std::size_t s = first_nonblank(line);
    if (arrow == std::string::npos || line.substr(s, 2) != "mu")
      throw ParseError("expected 'mu -> series'", lno, s + 1);
    ExprParser ps(line.substr(arrow + 2), header->ring, *header->to, true, lno, arrow + 3);
    JetSeries img = ps.parse();
    try {
      return SubstitutionMap(*header->from, std::move(img));
    } catch (const ArgumentError& e) {
      throw ParseError(e.what(), lno, arrow + 3);
    }
  }
  throw ParseError(header ? "missing 'mu -> series' line" : "missing header", lines.size(), 1);
}

}  // namespace hasse
