#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hasse/cli.hpp"
#include "hasse/decompose.hpp"
#include "hasse/text.hpp"
#include "support/random_hs.hpp"

using namespace hasse;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int st = run_command(args, out, err);
  return {st, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("hs_test_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& body) const {
    const auto p = path_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

ParseError parse_error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError("", 0, 0);
}

}  // namespace

TEST_CASE("polynomial grammar") {
  auto r = Ring::make(5, {"s", "t"}, {"x", "y"});
  const MPoly x = r->var(0), y = r->var(1);
  const FieldElem s = r->param(0), t = r->param(1);
  const MPoly f = parse_poly("3*x^2*y + (s+1)/t * x", r);
  const MPoly expect = (x * x * y).scaled(r->scalar(3)) + x.scaled((s + r->scalar(1)) / t);
  CHECK(f == expect);
  CHECK(parse_poly("-1", r) == r->constant(r->scalar(4)));
  CHECK(parse_poly("7", r) == r->constant(r->scalar(2)));
  CHECK(parse_poly("(x+y)^2 - x^2 - y^2", r) == (x * y).scaled(r->scalar(2)));
  CHECK(parse_poly("x/2", r) == x.scaled(r->scalar(3)));
  CHECK(parse_poly("x^0", r) == r->one());
  CHECK(parse_poly("0", r).is_zero());
}

TEST_CASE("polynomial grammar errors carry locations") {
  auto r = Ring::make(2, {"s"}, {"x", "y"});
  auto at = [&](const std::string& text) { return parse_error_of([&] { parse_poly(text, r, 3); }); };
  ParseError e = at("x + z");
  CHECK(e.line() == 3U);
  CHECK(e.column() == 5U);
  CHECK(at("x +").column() == 4U);
  CHECK(at("x/y").column() == 3U);
  CHECK(at("x/(s+s)").column() == 3U);
  CHECK(at("x*mu").column() == 3U);
  CHECK(at("x^").column() == 3U);
  CHECK(at("(x + y").column() == 7U);
  CHECK(at("x y").column() == 3U);
  CHECK(at("x^99999").column() == 3U);
}

TEST_CASE("printing is canonical") {
  auto r = Ring::make(3, {"s", "t"}, {"x", "y"});
  // text -> normalized text
  const std::vector<std::pair<std::string, std::string>> corpus{
      {"0", "0"},
      {"y + x", "x + y"},
      {"x*y*x - 1", "x^2*y + 2"},
      {"(s+t)*x", "(s + t)*x"},
      {"x*(s+1)/t", "(s + 1)/t*x"},
      {"s/(s*t)", "1/t"},
      {"2*s*x/(t^2+1)", "2*s/(t^2 + 1)*x"},
      {"s^2/t^2 + y", "y + s^2/t^2"},
      {"(s + t)", "(s + t)"},
      {"x^3 - x^3 + 4", "1"},
  };
  for (const auto& [in, out] : corpus) {
    const MPoly f = parse_poly(in, r);
    CHECK(format_poly(f, *r) == out);
    CHECK(parse_poly(format_poly(f, *r), r) == f);
  }
}

TEST_CASE("derivation files") {
  const std::string text =
      "p=2 vars=x,y params=s,t len=4\n"
      "# comment\n"
      "x -> x + 1*mu^1 + (s+t)*mu^2\n"
      "\n"
      "y -> y + x*mu^3 + mu^7   # beyond the length, dropped\n";
  const HSDerivation D = parse_derivation(text);
  CHECK(D.length() == 4U);
  const auto& r = D.ring();
  CHECK(D.image(0)[1] == r->one());
  CHECK(D.image(0)[2] == r->constant(r->param(0) + r->param(1)));
  CHECK(D.image(1)[3] == r->var(0));
  CHECK(D.image(1)[4].is_zero());
  CHECK(format_derivation(D) ==
        "p=2 vars=x,y params=s,t len=4\nx -> x + mu + (s + t)*mu^2\ny -> y + x*mu^3\n");

  const HSDerivation E = parse_derivation("p=2 vars=x,y len=4\nx -> x + mu\ny -> y + mu\n");
  CHECK(E.ring()->nparams() == 0U);
  CHECK(order(E).value == 1U);

  SUBCASE("products of series are truncated") {
    const HSDerivation F = parse_derivation("p=3 vars=x len=2\nx -> x + (x + mu)^3 - x^3 + mu\n");
    CHECK(F.image(0)[1] == F.ring()->one());
    CHECK(F.image(0)[2].is_zero());
  }
  SUBCASE("malformed constant term") {
    const ParseError e = parse_error_of([] { parse_derivation("p=2 vars=x,y len=2\nx -> 1 + x + mu\ny -> y\n"); });
    CHECK(e.line() == 2U);
    CHECK(e.column() == 6U);
    CHECK(std::string(e.what()).find("constant term") != std::string::npos);
  }
  SUBCASE("structural errors") {
    CHECK(parse_error_of([] { parse_derivation("p=2 vars=x len=2\n"); }).line() == 2U);
    CHECK(parse_error_of([] { parse_derivation("p=2 vars=x\nx -> x\n"); }).line() == 1U);
    CHECK(parse_error_of([] { parse_derivation("p=4 vars=x len=1\nx -> x\n"); }).column() == 3U);
    CHECK(parse_error_of([] { parse_derivation("p=2 vars=x len=1 colour=red\nx -> x\n"); }).column() == 18U);
    CHECK(parse_error_of([] { parse_derivation("p=2 vars=x len=1\nx -> x\nx -> x\n"); }).line() == 3U);
    CHECK(parse_error_of([] { parse_derivation("p=2 vars=x len=1\ny -> y\n"); }).column() == 1U);
    CHECK(parse_error_of([] { parse_derivation("p=2 vars=x len=1\nx = x\n"); }).line() == 2U);
    CHECK(parse_error_of([] { parse_derivation("p=2 vars=x,x len=1\n"); }).line() == 1U);
    CHECK(parse_error_of([] { parse_derivation(""); }).line() == 1U);
  }
}

TEST_CASE("print then parse is the identity on random derivations") {
  std::mt19937_64 rng(11);
  const std::vector<RingPtr> rings{
      Ring::make(2, {}, {"x", "y"}), Ring::make(3, {"s", "t"}, {"x", "y"}), Ring::make(5, {"a"}, {"x"}),
      Ring::make(3, {}, {"x", "y", "t"}, {VarRole::Ring, VarRole::Ring, VarRole::Extension})};
  for (const auto& r : rings)
    for (int trial = 0; trial < 15; ++trial) {
      const unsigned m = 1 + static_cast<unsigned>(rng() % 4);
      const HSDerivation D = random_hs(rng, r, m, 3);
      const std::string text = format_derivation(D);
      const HSDerivation back = parse_derivation(text);
      CHECK(back.ring()->same_as(*r));
      CHECK(back == D);
      CHECK(format_derivation(back) == text);
    }
}

TEST_CASE("ideal and substitution files") {
  auto r = Ring::make(2, {"s", "t"}, {"x", "y"});
  const IdealPresentation I = parse_ideal("p=2 vars=x,y params=s,t\nx^2 + y^2 + t*x^4 + s*y^4\n\n");
  CHECK(I.ring()->same_as(*r));
  CHECK(I.generators().size() == 1U);
  const IdealPresentation J = parse_ideal(format_ideal(I));
  CHECK(J.generators() == I.generators());
  // Without a header the ring comes from the caller.
  const IdealPresentation K = parse_ideal("x*y\ny^2 # second\n", r);
  CHECK(K.generators().size() == 2U);
  CHECK(parse_error_of([] { parse_ideal("x*y\n"); }).line() == 1U);
  CHECK(parse_error_of([&] { parse_ideal("x*y\nx*q\n", r); }).line() == 2U);
  CHECK(parse_error_of([&] { parse_ideal("p=3 vars=x,y params=s,t\nx\n", r); }).line() == 1U);

  const SubstitutionMap psi = parse_subst("p=2 vars=x,y params=s,t from=2 to=4\nmu -> mu^2 + s*mu^3\n", r);
  CHECK(psi.source_order() == 2U);
  CHECK(psi.target_order() == 4U);
  CHECK(psi.image()[3] == r->constant(r->param(0)));
  const SubstitutionMap back = parse_subst(format_subst(psi), r);
  CHECK(back.image() == psi.image());
  // mu -> 1 + mu has a constant term.
  CHECK(parse_error_of([&] { parse_subst("p=2 vars=x from=1 to=1\nmu -> 1 + mu\n"); }).line() == 2U);
}

TEST_CASE("command line front end") {
  TempDir dir;
  const std::string d_text = "p=2 vars=x,y len=4\nx -> x + mu + x*y*mu^2\ny -> y + (x+1)*mu^3\n";
  const std::string d = dir.write("d.hs", d_text);
  const std::string delta =
      dir.write("delta.hs", "p=2 vars=x,y params=s,t len=1\nx -> x + mu\ny -> y + mu\n");
  const std::string h = dir.write("h.id", "p=2 vars=x,y params=s,t\nx^2 + y^2 + t*x^4 + s*y^4\n");
  const std::string bad = dir.write("bad.hs", "p=2 vars=x,y len=2\nx -> 1 + x + mu\ny -> y\n");

  SUBCASE("compose, invert and order") {
    const Run c = run({"compose", "-a", d, "-b", d});
    CHECK(c.status == kExitOk);
    const HSDerivation D = parse_derivation(d_text);
    CHECK(parse_derivation(c.out) == compose(D, D));
    const Run i = run({"invert", "-d", d, "--json"});
    CHECK(i.status == kExitOk);
    const json j = json::parse(i.out);
    CHECK(j["code"] == "ok");
    CHECK(j["version"] == "1");
    CHECK(compose(D, parse_derivation(j["result"]["derivation"].get<std::string>())).is_identity());
    CHECK(run({"order", "-d", d}).out == "1\n");
  }
  SUBCASE("integrate reports and re-validates") {
    const Run r = run({"integrate", "-d", delta, "--ideal", h, "--len", "4", "--json"});
    CHECK(r.status == kExitMath);
    const json j = json::parse(r.out);
    CHECK(j["code"] == "infeasible");
    CHECK(j["result"]["failed_stage"] == 4);
    CHECK(j["result"]["witness"].is_null());
    // Determinism.
    CHECK(run({"integrate", "-d", delta, "--ideal", h, "--len", "4", "--json"}).out == r.out);

    const Run ok = run({"integrate", "-d", delta, "--ideal", h, "--len", "3", "--json"});
    CHECK(ok.status == kExitOk);
    const json k = json::parse(ok.out);
    const HSDerivation W = parse_derivation(k["result"]["witness"].get<std::string>());
    const HSDerivation dd = parse_derivation("p=2 vars=x,y params=s,t len=1\nx -> x + mu\ny -> y + mu\n");
    CHECK(verify_integral_witness(W, dd, IdealPresentation(W.ring(), {parse_poly("x^2 + y^2 + t*x^4 + s*y^4", W.ring())})));
  }
  SUBCASE("bounds from the environment and the command line") {
    ::setenv("HS_DEFAULT_BOUNDS", "ring=2,param=0", 1);
    const json j = json::parse(run({"integrate", "-d", delta, "--ideal", h, "--len", "4", "--json"}).out);
    ::unsetenv("HS_DEFAULT_BOUNDS");
    CHECK(j["result"]["bounds"]["ring_degree"] == 2);
    const json k = json::parse(run({"integrate", "-d", delta, "--ideal", h, "--len", "4", "--json", "--bounds", "ring=3"}).out);
    CHECK(k["result"]["bounds"]["ring_degree"] == 3);
    CHECK(run({"integrate", "-d", delta, "--ideal", h, "--len", "4", "--bounds", "ring=x"}).status == kExitInput);
  }
  SUBCASE("decompose emits a certificate that recomposes") {
    const std::string cusp = dir.write("cusp.id", "y^2 + x^3\n");
    const std::string D4 = dir.write("D4.hs", "p=2 vars=x,y len=4\nx -> x + x*mu^4\ny -> y + y*mu^2 + y*mu^4\n");
    const Run r = run({"decompose", "--p", "2", "--l", "2", "--ideal", cusp, "--deriv", D4, "--json"});
    CHECK(r.status == kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["result"]["recomposes"] == true);
    CHECK(j["result"]["valid"] == true);
    const HSDerivation in = parse_derivation(j["result"]["input"].get<std::string>());
    HSDerivation acc = HSDerivation::identity(in.ring(), in.length());
    for (const auto& f : j["result"]["factors"]) acc = compose(acc, parse_derivation(f["derivation"].get<std::string>()));
    CHECK(acc == in);
    CHECK(j["result"]["order"].size() == j["result"]["factors"].size());

    const Run tight = run({"decompose", "--p", "2", "--l", "2", "--ideal", cusp, "--deriv", D4, "--json", "--bounds",
                           "ring=0,param=0"});
    CHECK(tight.status == kExitMath);
    CHECK(json::parse(tight.out)["code"] == "bound_exhausted");
  }
  SUBCASE("check-log, push and lift") {
    const std::string xy = dir.write("xy.id", "x*y\n");
    const std::string toric = dir.write("t.hs", "p=3 vars=x,y len=2\nx -> x + x*mu\ny -> y + 2*y*mu + x*y*mu^2\n");
    const std::string xy3 = dir.write("xy3.id", "p=3 vars=x,y\nx*y\n");
    const Run c = run({"check-log", "-d", toric, "--ideal", xy3, "--json"});
    CHECK(c.status == kExitOk);
    CHECK(json::parse(c.out)["result"]["log_level"] == 2);
    const Run n = run({"check-log", "-d", d, "--ideal", xy, "--json"});
    CHECK(n.status == kExitMath);
    CHECK(json::parse(n.out)["code"] == "not_logarithmic");
    const Run p = run({"push", "-d", toric, "--ideal", xy3});
    CHECK(p.status == kExitOk);
    CHECK(parse_derivation(p.out).image(1)[2].is_zero());
    CHECK(run({"push", "-d", d, "--ideal", xy, "--json"}).status == kExitMath);
    CHECK(run({"lift", "-d", toric, "--ideal", xy3}).status == kExitOk);
  }
  SUBCASE("base change commands") {
    const std::string over_t =
        dir.write("ext.hs", "p=3 vars=x,y ext=t len=2\nx -> x + t*mu + t^2*mu^2\ny -> y + mu^2\n");
    const Run f = run({"factor-ext", "-d", over_t, "--ext", "t", "--json"});
    CHECK(f.status == kExitOk);
    CHECK(json::parse(f.out)["result"]["valid"] == true);
    const std::string base = dir.write("base.hs", "p=2 vars=x,y params=s,t len=1\nx -> x + s*mu\ny -> y + mu\n");
    const Run e = run({"extend", "-d", base, "--twist", "a,b"});
    CHECK(e.status == kExitOk);
    CHECK(e.out.find("a^2*mu") != std::string::npos);
    CHECK(run({"extend", "-d", base}).status == kExitInput);
    CHECK(run({"extend", "-d", base, "--ext", "u"}).status == kExitOk);
  }
  SUBCASE("leaps") {
    const std::string dx = dir.write("dx.hs", "p=2 vars=x,y params=s,t len=1\nx -> x + mu\ny -> y\n");
    const Run r = run({"leaps", "--ideal", h, "--witness", delta, "--witness", dx, "--max-len", "4", "--json"});
    CHECK(r.status == kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["result"]["flagged"] == json::array({2, 4}));
    CHECK(j["result"]["flags_at_prime_powers_only"] == true);
  }
  SUBCASE("input errors") {
    const Run b = run({"order", "-d", bad, "--json"});
    CHECK(b.status == kExitInput);
    const json j = json::parse(b.out);
    CHECK(j["code"] == "parse_error");
    CHECK(j["result"]["message"].get<std::string>().find("line 2, column 6") != std::string::npos);
    CHECK(run({"order", "-d", "/nonexistent/file.hs"}).status == kExitInput);
    CHECK(run({}).status == kExitInput);
    CHECK(run({"frobnicate"}).status == kExitInput);
    CHECK(run({"order", "-d", d, "--no-such-flag"}).status == kExitInput);
    CHECK(run({"compose", "-a", d, "-b", delta}).status == kExitInput);
  }
}
