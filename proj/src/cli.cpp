#include "hasse/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "hasse/serialize.hpp"
#include "hasse/text.hpp"

namespace hasse {

namespace {

using nlohmann::json;

// Unreadable files and inconsistent option combinations.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical outcome that is reported with exit status 1.
struct Outcome {
  std::string code = "ok";
  json body;
  std::string text;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

HSDerivation load_derivation(const std::string& path) {
  try {
    return parse_derivation(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.line(), e.column(), path);
  }
}

IdealPresentation load_ideal(const std::string& path, const RingPtr& ring) {
  try {
    return parse_ideal(read_file(path), ring);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.line(), e.column(), path);
  }
}

SubstitutionMap load_subst(const std::string& path, const RingPtr& ring) {
  try {
    return parse_subst(read_file(path), ring);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.line(), e.column(), path);
  }
}

std::string order_text(const HsOrder& o) { return o.infinite ? "infinity" : std::to_string(o.value); }

json order_json(const HsOrder& o) { return o.infinite ? json("infinity") : json(o.value); }

Outcome derivation_outcome(const HSDerivation& D) {
  Outcome o;
  o.body = {{"derivation", format_derivation(D)}, {"length", D.length()}, {"order", order_json(order(D))}};
  o.text = format_derivation(D);
  return o;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// The ring of a derivation over k[t][x] with the listed extension
// variables removed.
RingPtr base_ring_of(const Ring& r, const std::vector<std::string>& t_names) {
  std::vector<std::string> vars;
  std::vector<VarRole> roles;
  for (std::size_t i = 0; i < r.nvars(); ++i) {
    if (std::find(t_names.begin(), t_names.end(), r.vars[i]) != t_names.end()) {
      if (r.roles[i] != VarRole::Extension) throw InputError("'" + r.vars[i] + "' must be declared with ext=");
      continue;
    }
    vars.push_back(r.vars[i]);
    roles.push_back(r.roles[i]);
  }
  return Ring::make(r.p, r.params, vars, roles);
}

std::string report_text(const ObstructionReport& r) {
  std::ostringstream os;
  os << "status: " << to_string(r.status) << "\n"
     << "stage reached: " << r.stage_reached << "\n";
  if (r.failed_stage) os << "failed stage: " << r.failed_stage << "\n";
  os << "bounds: ring=" << r.bounds.ring_degree << ",param=" << r.bounds.param_degree << ",depth=" << r.bounds.depth
     << "\n";
  for (const auto& c : r.systems)
    os << "  stage " << c.stage << " " << c.branch << ": " << c.rows << " rows, " << c.unknowns << " unknowns, rank "
       << c.rank << "/" << c.augmented_rank << (c.feasible ? ", feasible" : ", infeasible") << "\n";
  if (!r.note.empty()) os << "note: " << r.note << "\n";
  if (r.witness) os << format_derivation(*r.witness);
  return os.str();
}

std::string certificate_text(const FactorizationCertificate& c) {
  std::ostringstream os;
  os << "factors (composition order, leftmost first): " << c.factors.size() << "\n";
  for (const auto& f : c.factors) {
    os << "# n=" << f.n;
    if (!f.alpha.empty()) {
      os << " alpha=";
      for (std::size_t i = 0; i < f.alpha.size(); ++i) os << (i ? "," : "") << f.alpha[i];
    }
    if (f.required_log_level) os << " log-level=" << f.required_log_level << (f.log_attested ? " (attested)" : " (FAILED)");
    os << "\n" << format_derivation(f.applied);
  }
  os << "recomposes: " << (c.recomposes ? "yes" : "no") << "\n";
  if (c.p) {
    os << "top relation: " << (c.top_relation ? "yes" : "no") << "\n"
       << "F attested: " << (c.f_attested ? "yes" : "no") << "\n";
  }
  os << "valid: " << (c.valid() ? "yes" : "no") << "\n";
  return os.str();
}

std::string leap_text(const LeapReport& r) {
  std::ostringstream os;
  for (const auto& e : r.entries) {
    os << e.witness << ": integrable to " << e.integrable_to;
    if (e.failed_length) os << ", " << to_string(e.status) << " at " << e.failed_length;
    os << "\n";
  }
  os << "flagged:";
  for (unsigned s : r.flagged) os << " " << s;
  os << "\ninconclusive:";
  for (unsigned s : r.inconclusive) os << " " << s;
  os << "\nflags at prime powers only: " << (r.flags_at_prime_powers_only ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hasse-Schmidt derivations: composition, integrals, decompositions"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string bounds_text;
  app.add_flag("--json", as_json, "emit a JSON document");
  app.add_option("--bounds", bounds_text, "search bounds, e.g. ring=4,param=2,depth=1 (default: HS_DEFAULT_BOUNDS)");

  std::string a_path, b_path, d_path, ideal_path, subst_path, ext_names, twist_names;
  std::vector<std::string> witness_paths;
  unsigned p = 0, l = 0, len = 0, twist_e = 1, level = 0, max_len = 4, xy_degree = 8, st_degree = 4;

  std::map<std::string, std::function<Outcome()>> handlers;
  auto bounds = [&]() { return bounds_text.empty() ? bounds_from_env() : parse_bounds(bounds_text); };

  auto* compose_cmd = app.add_subcommand("compose", "print A o B");
  compose_cmd->add_option("-a", a_path, "left factor")->required();
  compose_cmd->add_option("-b", b_path, "right factor")->required();
  handlers["compose"] = [&]() { return derivation_outcome(compose(load_derivation(a_path), load_derivation(b_path))); };

  auto* invert_cmd = app.add_subcommand("invert", "print the inverse");
  invert_cmd->add_option("-d,--deriv", d_path)->required();
  handlers["invert"] = [&]() { return derivation_outcome(invert(load_derivation(d_path))); };

  auto* subst_cmd = app.add_subcommand("subst", "apply a substitution map to a derivation");
  subst_cmd->add_option("--subst", subst_path, "substitution file")->required();
  subst_cmd->add_option("-d,--deriv", d_path)->required();
  handlers["subst"] = [&]() {
    const HSDerivation D = load_derivation(d_path);
    return derivation_outcome(subst_action(load_subst(subst_path, D.ring()), D));
  };

  auto* order_cmd = app.add_subcommand("order", "order of D - Id");
  order_cmd->add_option("-d,--deriv", d_path)->required();
  handlers["order"] = [&]() {
    const HsOrder o = order(load_derivation(d_path));
    return Outcome{"ok", {{"order", order_json(o)}}, order_text(o) + "\n"};
  };

  auto* check_cmd = app.add_subcommand("check-log", "check that D is logarithmic for an ideal");
  check_cmd->add_option("-d,--deriv", d_path)->required();
  check_cmd->add_option("--ideal", ideal_path)->required();
  check_cmd->add_option("--level", level, "check r-logarithmicity only (default: full length)");
  handlers["check-log"] = [&]() {
    const HSDerivation D = load_derivation(d_path);
    const IdealPresentation I = load_ideal(ideal_path, D.ring());
    const unsigned r = level ? level : D.length();
    const bool ok = is_r_log(D, I, r);
    const unsigned lv = log_level(D, I);
    Outcome o{ok ? "ok" : "not_logarithmic",
              {{"logarithmic", ok}, {"checked_level", r}, {"log_level", lv}, {"length", D.length()}},
              ""};
    o.text = std::string(ok ? "logarithmic" : "not logarithmic") + " (level " + std::to_string(lv) + " of " +
             std::to_string(D.length()) + ")\n";
    return o;
  };

  auto* push_cmd = app.add_subcommand("push", "push D down to R/I (images reduced modulo I)");
  push_cmd->add_option("-d,--deriv", d_path)->required();
  push_cmd->add_option("--ideal", ideal_path)->required();
  handlers["push"] = [&]() {
    const HSDerivation D = load_derivation(d_path);
    const IdealPresentation I = load_ideal(ideal_path, D.ring());
    return derivation_outcome(pushforward_hs(D, I).representative());
  };

  auto* lift_cmd = app.add_subcommand("lift", "lift an HS-derivation of R/I given by representatives");
  lift_cmd->add_option("-d,--deriv", d_path)->required();
  lift_cmd->add_option("--ideal", ideal_path)->required();
  handlers["lift"] = [&]() {
    const HSDerivation D = load_derivation(d_path);
    const IdealPresentation I = load_ideal(ideal_path, D.ring());
    if (!is_log(D, I)) throw MathError("representatives do not define an HS-derivation of R/I");
    Outcome o = derivation_outcome(lift_hs_from_quotient(QuotientHS(I, D)));
    o.body["logarithmic"] = true;
    return o;
  };

  auto* integrate_cmd = app.add_subcommand("integrate", "search a logarithmic integral of a derivation");
  integrate_cmd->add_option("-d,--deriv", d_path, "derivation (len=1)")->required();
  integrate_cmd->add_option("--ideal", ideal_path)->required();
  integrate_cmd->add_option("--len", len, "integral length")->required();
  handlers["integrate"] = [&]() {
    const HSDerivation D = load_derivation(d_path);
    const IdealPresentation I = load_ideal(ideal_path, D.ring());
    const ObstructionReport r = find_log_integral(D, I, len, bounds());
    std::string code = "ok";
    if (r.status == SearchStatus::Infeasible) code = "infeasible";
    if (r.status == SearchStatus::Inconclusive) code = "inconclusive";
    return Outcome{code, to_json(r), report_text(r)};
  };

  auto* decompose_cmd = app.add_subcommand("decompose", "char-p decomposition D = T[p] o F");
  decompose_cmd->add_option("--p", p)->required();
  decompose_cmd->add_option("--l", l)->required();
  decompose_cmd->add_option("-d,--deriv", d_path)->required();
  decompose_cmd->add_option("--ideal", ideal_path)->required();
  handlers["decompose"] = [&]() {
    const HSDerivation D = load_derivation(d_path);
    const IdealPresentation I = load_ideal(ideal_path, D.ring());
    const FactorizationCertificate c = decompose_char_p(D, I, p, l, bounds());
    return Outcome{c.valid() ? "ok" : "invalid_certificate", to_json(c), certificate_text(c)};
  };

  auto* factor_cmd = app.add_subcommand("factor-ext", "factor D over k[t][x] through substitutions mu -> t^a mu^n");
  factor_cmd->add_option("-d,--deriv", d_path)->required();
  factor_cmd->add_option("--ext", ext_names, "comma separated extension variables")->required();
  factor_cmd->add_option("--ideal", ideal_path, "ideal of the base ring (enables log attestation)");
  handlers["factor-ext"] = [&]() {
    const HSDerivation D = load_derivation(d_path);
    const auto names = split_names(ext_names);
    const BaseExtension ext = BaseExtension::polynomial(base_ring_of(*D.ring(), names), names);
    if (!D.ring()->same_as(*ext.target())) throw InputError("derivation ring must list the base variables, then ext=");
    std::optional<IdealPresentation> I;
    if (!ideal_path.empty()) I = load_ideal(ideal_path, ext.source());
    const FactorizationCertificate c = factor_over_poly_extension(D, ext, I);
    return Outcome{c.valid() ? "ok" : "invalid_certificate", to_json(c), certificate_text(c)};
  };

  auto* extend_cmd = app.add_subcommand("extend", "extend a derivation along k -> k[t] or a Frobenius twist");
  extend_cmd->add_option("-d,--deriv", d_path)->required();
  auto* ext_opt = extend_cmd->add_option("--ext", ext_names, "new polynomial variables");
  auto* twist_opt = extend_cmd->add_option("--twist", twist_names, "new parameters a_i with s_i = a_i^(p^e)");
  extend_cmd->add_option("--e", twist_e, "twist exponent");
  ext_opt->excludes(twist_opt);
  handlers["extend"] = [&]() {
    const HSDerivation D = load_derivation(d_path);
    if (ext_names.empty() == twist_names.empty()) throw InputError("give exactly one of --ext and --twist");
    const BaseExtension ext = ext_names.empty()
                                  ? BaseExtension::frobenius_twist(D.ring(), split_names(twist_names), twist_e)
                                  : BaseExtension::polynomial(D.ring(), split_names(ext_names));
    return derivation_outcome(extend_hs(D, ext));
  };

  auto* ce_cmd = app.add_subcommand("counterexample", "the non-surjectivity instance over F_2(s,t)");
  ce_cmd->add_option("--xy-degree", xy_degree, "degree bound in x,y for W, U, G");
  ce_cmd->add_option("--st-degree", st_degree, "degree bound in s,t for W, U, G");
  handlers["counterexample"] = [&]() {
    CounterexampleOptions opt;
    opt.xy_degree = xy_degree;
    opt.st_degree = st_degree;
    opt.search = bounds();
    const CounterexampleReport r = counterexample_report(opt);
    return Outcome{r.not_surjective ? "ok" : "not_established", to_json(r), counterexample_text(r)};
  };

  auto* leaps_cmd = app.add_subcommand("leaps", "scan witness derivations for lengths where integrability stops");
  leaps_cmd->add_option("--ideal", ideal_path)->required();
  leaps_cmd->add_option("--witness", witness_paths, "derivation files (len=1)")->required();
  leaps_cmd->add_option("--max-len", max_len, "largest length scanned");
  handlers["leaps"] = [&]() {
    std::vector<HSDerivation> ws;
    for (const auto& w : witness_paths) ws.push_back(load_derivation(w));
    const IdealPresentation I = load_ideal(ideal_path, ws.front().ring());
    const LeapReport r = leap_scan(I, max_len, ws, witness_paths, bounds());
    return Outcome{"ok", to_json(r), leap_text(r)};
  };

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv{"hs"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (as_json) out << json_document("error", {{"message", e.what()}}, "usage_error");
    return kExitInput;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  auto fail = [&](int status, const std::string& code, const std::string& message) {
    err << "hs " << name << ": " << message << "\n";
    if (as_json) out << json_document(name, {{"message", message}}, code);
    return status;
  };
  try {
    const Outcome o = handlers.at(name)();
    if (as_json) {
      out << json_document(name, o.body, o.code);
    } else {
      out << o.text;
    }
    return o.code == "ok" ? kExitOk : kExitMath;
  } catch (const ParseError& e) {
    return fail(kExitInput, "parse_error", e.what());
  } catch (const InputError& e) {
    return fail(kExitInput, "input_error", e.what());
  } catch (const BoundExhausted& e) {
    return fail(kExitMath, "bound_exhausted", e.what());
  } catch (const MathError& e) {
    const std::string what = e.what();
    return fail(kExitMath, what.find("logarithmic") != std::string::npos ? "not_logarithmic" : "math_error", what);
  } catch (const ArgumentError& e) {
    return fail(kExitInput, "input_error", e.what());
  }
}

}  // namespace hasse
