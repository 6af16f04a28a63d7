#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hasse/jets.hpp"
#include "support/random_hs.hpp"

using namespace hasse;

namespace {

JetSeries jet(const RingPtr& r, std::vector<MPoly> c) {
  const unsigned m = static_cast<unsigned>(c.size() - 1);
  return JetSeries(r, m, std::move(c));
}

}  // namespace

TEST_CASE("jet_mul truncates") {
  auto r = Ring::make(2, {}, {"x"});
  const MPoly x = r->var(0), one = r->one(), zero = r->zero();
  const JetSeries f = jet(r, {x, one});
  CHECK(jet_mul(f, f) == jet(r, {x * x, zero}));

  auto r5 = Ring::make(5, {}, {"x"});
  const MPoly o5 = r5->one(), z5 = r5->zero();
  const JetSeries a = jet(r5, {o5, o5, z5});
  const JetSeries b = jet(r5, {o5, -o5, z5});
  CHECK(jet_mul(a, b) == jet(r5, {o5, z5, r5->constant(r5->scalar(4))}));

  CHECK_THROWS_AS(jet_mul(a, jet(r5, {o5, o5})), ArgumentError);
}

TEST_CASE("jet_mul by one is the identity") {
  std::mt19937_64 rng(1);
  auto r = Ring::make(3, {"s"}, {"x", "y"});
  for (int i = 0; i < 50; ++i) {
    const JetSeries f = random_image(rng, r, 0, 3, 3);
    CHECK(jet_mul(f, JetSeries::constant(r, 3, r->one())) == f);
  }
}

TEST_CASE("apply_subst examples") {
  auto r = Ring::make(2, {}, {"x"});
  const MPoly x = r->var(0), one = r->one(), zero = r->zero();
  CHECK(apply_subst(SubstitutionMap::stretch(r, 1, 2), jet(r, {x, one})) == jet(r, {x, zero, one}));

  auto rt = Ring::make(2, {"t"}, {"x"});
  const MPoly xt = rt->var(0), t = rt->constant(rt->param(0)), o = rt->one();
  CHECK(apply_subst(SubstitutionMap::scale(rt, 2, t), jet(rt, {xt, o, o})) == jet(rt, {xt, t, t * t}));

  const SubstitutionMap psi(2, jet(r, {zero, one, one}));
  CHECK(apply_subst(psi, jet(r, {one, one, zero})) == jet(r, {one, one, one}));
}

TEST_CASE("substitution maps must be well defined") {
  auto r = Ring::make(2, {}, {"x"});
  const MPoly one = r->one(), zero = r->zero();
  CHECK_THROWS_AS(SubstitutionMap(2, jet(r, {one, one, zero})), ArgumentError);
  // mu -> mu from order 1 to order 2 would not kill mu^2.
  CHECK_THROWS_AS(SubstitutionMap(1, jet(r, {zero, one, zero})), ArgumentError);
  CHECK_NOTHROW(SubstitutionMap(1, jet(r, {zero, zero, one})));
}

TEST_CASE("constant coefficient flag") {
  auto r = Ring::make(2, {"a"}, {"x", "t"}, {VarRole::Ring, VarRole::Extension});
  CHECK(SubstitutionMap::scale(r, 2, r->var(1)).constant_coefficients());
  CHECK(SubstitutionMap::scale(r, 2, r->constant(r->param(0))).constant_coefficients());
  CHECK_FALSE(SubstitutionMap::scale(r, 2, r->var(0)).constant_coefficients());
}

TEST_CASE("compose_subst examples") {
  auto r = Ring::make(5, {}, {"x"});
  const auto s2 = SubstitutionMap::stretch(r, 6, 2);
  const auto s3 = SubstitutionMap::stretch(r, 2, 3);
  CHECK(compose_subst(s2, s3).image() == SubstitutionMap::stretch(r, 2, 6).image());

  const MPoly a = r->constant(r->scalar(2)), b = r->constant(r->scalar(3));
  const auto c = compose_subst(SubstitutionMap::scale(r, 3, a), SubstitutionMap::scale(r, 3, b));
  CHECK(c.image() == SubstitutionMap::scale(r, 3, a * b).image());
  CHECK(c.constant_coefficients());
  CHECK_THROWS_AS(compose_subst(s3, s2), ArgumentError);
}

TEST_CASE("apply_subst is a ring homomorphism") {
  std::mt19937_64 rng(7);
  auto r = Ring::make(5, {}, {"x", "y"});
  for (int i = 0; i < 200; ++i) {
    const unsigned m = 1 + static_cast<unsigned>(rng() % 4);
    const unsigned n = m + static_cast<unsigned>(rng() % 3);
    const SubstitutionMap psi = random_constant_subst(rng, r, m, n);
    const JetSeries f = random_image(rng, r, 0, m, 3);
    const JetSeries g = random_image(rng, r, 1, m, 3);
    REQUIRE(apply_subst(psi, jet_mul(f, g)) == jet_mul(apply_subst(psi, f), apply_subst(psi, g)));
    REQUIRE(apply_subst(psi, f + g) == apply_subst(psi, f) + apply_subst(psi, g));
    REQUIRE(apply_subst(psi, JetSeries::constant(r, m, r->one())) == JetSeries::constant(r, n, r->one()));
  }
}

TEST_CASE("projection then substitution equals the composed map") {
  std::mt19937_64 rng(8);
  auto r = Ring::make(3, {}, {"x"});
  for (int i = 0; i < 50; ++i) {
    const unsigned m = 2 + static_cast<unsigned>(rng() % 4);
    const unsigned n = 1 + static_cast<unsigned>(rng() % (m - 1));
    const auto proj = SubstitutionMap::projection(r, m, n);
    const auto psi = random_constant_subst(rng, r, n, n + 1);
    const JetSeries f = random_image(rng, r, 0, m, 2);
    REQUIRE(apply_subst(psi, apply_subst(proj, f)) == apply_subst(compose_subst(psi, proj), f));
  }
}
