#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hasse/basechange.hpp"
#include "support/random_log.hpp"

using namespace hasse;

namespace {

RingPtr plain(fp_t p) { return Ring::make(p, {}, {"x", "y"}); }

// sum_i b_i * extend(delta_i), computed coefficient by coefficient.
HSDerivation combine(const std::vector<std::pair<MPoly, HSDerivation>>& parts, const BaseExtension& ext) {
  const RingPtr& t = ext.target();
  std::vector<MPoly> values(t->ring_vars().size(), t->zero());
  for (const auto& [b, d] : parts)
    for (std::size_t j = 0; j < values.size(); ++j) values[j] += b * ext.map(d.image(j)[1]);
  return HSDerivation::from_derivation(t, values);
}

}  // namespace

TEST_CASE("extension examples") {
  auto r = plain(2);
  const BaseExtension ext = BaseExtension::polynomial(r, {"t"});
  CHECK(ext.target()->nvars() == 3U);
  CHECK(ext.target()->ring_vars().size() == 2U);
  const HSDerivation D = HSDerivation::from_images(
      r, 1, {JetSeries(r, 1, {r->var(0), r->one()}), JetSeries(r, 1, {r->var(1), r->zero()})});
  const HSDerivation E = extend_hs(D, ext);
  const RingPtr& t = ext.target();
  CHECK(E.image(0)[1] == t->one());
  CHECK(E.image(0)[0] == t->var(0));
  CHECK(E.image(1)[1].is_zero());

  auto k = Ring::make(2, {"s", "t"}, {"x", "y"});
  const BaseExtension tw = BaseExtension::frobenius_twist(k, {"a", "b"}, 1);
  const MPoly sx = k->var(0).scaled(k->param(0) / k->param(1));
  const FieldElem a = tw.target()->param(0), b = tw.target()->param(1);
  CHECK(tw.map(sx) == tw.target()->var(0).scaled(a * a / (b * b)));
  CHECK_THROWS_AS(BaseExtension::frobenius_twist(k, {"a"}, 1), ArgumentError);
  CHECK_THROWS_AS(BaseExtension::polynomial(k, {}), ArgumentError);
  CHECK_THROWS_AS(extend_hs(E, ext), ArgumentError);
}

TEST_CASE("extension is a homomorphism compatible with substitutions") {
  std::mt19937_64 rng(5);
  for (fp_t p : {2U, 3U}) {
    auto r = Ring::make(p, {"s"}, {"x", "y"});
    const std::vector<BaseExtension> exts{BaseExtension::polynomial(r, {"t"}),
                                          BaseExtension::polynomial(r, {"t", "u"}),
                                          BaseExtension::frobenius_twist(r, {"a"}, 1)};
    for (const auto& ext : exts)
      for (int trial = 0; trial < 8; ++trial) {
        const unsigned m = 1 + static_cast<unsigned>(rng() % 4);
        const HSDerivation D = random_hs(rng, r, m, 2), E = random_hs(rng, r, m, 2);
        CHECK(extend_hs(compose(D, E), ext) == compose(extend_hs(D, ext), extend_hs(E, ext)));
        CHECK(extend_hs(invert(D), ext) == invert(extend_hs(D, ext)));
        const unsigned n = m + static_cast<unsigned>(rng() % 3);
        const SubstitutionMap psi = random_constant_subst(rng, r, m, n);
        CHECK(extend_hs(subst_action(psi, D), ext) == subst_action(extend_subst(psi, ext), extend_hs(D, ext)));
      }
  }
}

TEST_CASE("logarithmic derivations stay logarithmic after extension") {
  std::mt19937_64 rng(8);
  for (fp_t p : {2U, 3U}) {
    auto r = plain(p);
    const MPoly x = r->var(0), y = r->var(1);
    for (const MPoly& g : {x * y, y * y + x.pow(3)}) {
      const IdealPresentation I(r, {g});
      const BaseExtension ext = BaseExtension::polynomial(r, {"t"});
      const IdealPresentation Ie = ext.extend_ideal(I);
      for (int trial = 0; trial < 6; ++trial) {
        const unsigned m = 2 + static_cast<unsigned>(rng() % 3);
        const HSDerivation D = random_log_hs(rng, I, m, 2, g == x * y);
        REQUIRE(is_log(D, I));
        const HSDerivation De = extend_hs(D, ext);
        CHECK(is_r_log(De, Ie, m));
        // Extension commutes with pushing down to the quotient.
        CHECK(pushforward_hs(De, Ie).representative() == extend_hs(pushforward_hs(D, I).representative(), ext));
      }
    }
  }
}

TEST_CASE("integrals transport along the extension") {
  auto r = plain(3);
  const MPoly x = r->var(0), y = r->var(1);
  const IdealPresentation I(r, {x * y});
  const BaseExtension ext = BaseExtension::polynomial(r, {"t"});
  const IdealPresentation Ie = ext.extend_ideal(I);
  for (const auto& delta : {HSDerivation::from_derivation(r, {x, r->zero()}),
                            HSDerivation::from_derivation(r, {x, y.scaled(r->scalar(2))}),
                            HSDerivation::from_derivation(r, {x * x, x * y})}) {
    const ObstructionReport rep = find_log_integral(delta, I, 4);
    REQUIRE(rep.feasible());
    CHECK(verify_integral_witness(*rep.witness, delta, I));
    CHECK(verify_integral_witness(extend_hs(*rep.witness, ext), extend_hs(delta, ext), Ie));
  }
}

TEST_CASE("basis decomposition examples") {
  auto r = plain(2);
  const BaseExtension ext = BaseExtension::polynomial(r, {"t"});
  const RingPtr& T = ext.target();
  const MPoly t = T->var(2);

  const auto a = basis_decompose_derivation(HSDerivation::from_derivation(T, {t, T->zero()}), ext);
  REQUIRE(a.size() == 1U);
  CHECK(a[0].index == std::vector<unsigned>{1});
  CHECK(a[0].derivation == HSDerivation::from_derivation(r, {r->one(), r->zero()}));

  const auto b = basis_decompose_derivation(HSDerivation::from_derivation(T, {T->zero(), T->one() + t * t}), ext);
  REQUIRE(b.size() == 2U);
  CHECK(b[0].index == std::vector<unsigned>{0});
  CHECK(b[1].index == std::vector<unsigned>{2});
  const HSDerivation dy = HSDerivation::from_derivation(r, {r->zero(), r->one()});
  CHECK(b[0].derivation == dy);
  CHECK(b[1].derivation == dy);

  CHECK(basis_decompose_derivation(HSDerivation::from_derivation(T, {T->zero(), T->zero()}), ext).empty());
}

TEST_CASE("basis decomposition round-trips and recovers the pieces") {
  std::mt19937_64 rng(13);
  auto r = plain(3);
  const MPoly x = r->var(0), y = r->var(1);
  const IdealPresentation I(r, {y * y - x.pow(3)});
  const auto logs = bounded_log_derivations(I, 2);
  REQUIRE(logs.size() >= 2U);
  const BaseExtension ext = BaseExtension::polynomial(r, {"t"});
  const IdealPresentation Ie = ext.extend_ideal(I);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<MPoly, HSDerivation>> parts;
    std::map<unsigned, HSDerivation> expect;
    for (unsigned i = 0; i < 3; ++i) {
      if (rng() % 2) continue;
      std::vector<MPoly> vals(2, r->zero());
      for (const auto& l : logs) {
        const MPoly c = r->constant(r->scalar(static_cast<long long>(rng() % 3)));
        vals[0] += c * l.image(0)[1];
        vals[1] += c * l.image(1)[1];
      }
      const HSDerivation d = HSDerivation::from_derivation(r, vals);
      if (d.is_identity()) continue;
      parts.emplace_back(ext.basis_element({i}), d);
      expect.emplace(i, d);
    }
    const HSDerivation eps = combine(parts, ext);
    const auto dec = basis_decompose_derivation(eps, ext);
    CHECK(basis_recombine(dec, ext) == eps);
    CHECK(dec.empty() == eps.is_identity());
    CHECK(dec.size() == expect.size());
    CHECK(is_log(eps, Ie));
    for (const auto& c : dec) {
      REQUIRE(expect.count(c.index[0]));
      CHECK(c.derivation == expect.at(c.index[0]));
      CHECK(is_log(c.derivation, I));
    }
  }
}

TEST_CASE("basis decomposition over a Frobenius twist") {
  std::mt19937_64 rng(21);
  auto k = Ring::make(2, {"s", "t"}, {"x", "y"});
  const BaseExtension ext = BaseExtension::frobenius_twist(k, {"a", "b"}, 1);
  const RingPtr& L = ext.target();
  const FieldElem a = L->param(0), b = L->param(1);
  const HSDerivation eps = HSDerivation::from_derivation(
      L, {L->var(0).scaled(a), L->var(1).scaled((a + b) / b) + L->constant(a * b * b)});
  const auto dec = basis_decompose_derivation(eps, ext);
  CHECK(basis_recombine(dec, ext) == eps);
  for (const auto& c : dec)
    for (unsigned i : c.index) CHECK(i < 2U);
  for (int trial = 0; trial < 10; ++trial) {
    const HSDerivation e = random_derivation(rng, L, 2);
    const auto d = basis_decompose_derivation(e, ext);
    CHECK(basis_recombine(d, ext) == e);
    CHECK(d.empty() == e.is_identity());
  }
}

TEST_CASE("leap scan") {
  auto k = Ring::make(2, {"s", "t"}, {"x", "y"});
  const MPoly x = k->var(0), y = k->var(1);
  const MPoly h = x * x + y * y + x.pow(4).scaled(k->param(1)) + y.pow(4).scaled(k->param(0));
  const IdealPresentation I(k, {h});
  const HSDerivation diag = HSDerivation::from_derivation(k, {k->one(), k->one()});
  const HSDerivation dx = HSDerivation::from_derivation(k, {k->one(), k->zero()});

  const LeapReport only = leap_scan(I, 4, {diag}, {"d/dx + d/dy"});
  CHECK(only.flagged == std::vector<unsigned>{4});
  CHECK(only.flags_at_prime_powers_only);
  CHECK(only.entries[0].integrable_to == 3U);

  const LeapReport family = leap_scan(I, 4, {diag, dx});
  CHECK(family.flagged == std::vector<unsigned>{2, 4});
  CHECK(family.flags_at_prime_powers_only);
  CHECK(family.entries[1].witness == "witness 2");

  const LeapReport zero = leap_scan(I, 4, {HSDerivation::identity(k, 1)});
  CHECK(zero.flagged.empty());
  CHECK(zero.entries[0].integrable_to == 4U);

  auto r = plain(2);
  const IdealPresentation X(r, {r->var(0)});
  const LeapReport smooth = leap_scan(
      X, 4,
      {HSDerivation::from_derivation(r, {r->zero(), r->one()}), HSDerivation::from_derivation(r, {r->var(0), r->var(1)})});
  CHECK(smooth.flagged.empty());
  CHECK(smooth.inconclusive.empty());

  CHECK_THROWS_AS(leap_scan(I, 1, {diag}), ArgumentError);
  CHECK(is_power_of(8, 2));
  CHECK_FALSE(is_power_of(6, 2));
  CHECK_FALSE(is_power_of(1, 2));
}
