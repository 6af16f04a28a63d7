#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/random_decompose.hpp"

using namespace hasse;

namespace {

// Exhaustive oracle: all n | m with 1 <= n < m and beta n/m integral and not in P_n.
std::vector<unsigned> n_beta_candidates(unsigned m, const MultiIndex& beta) {
  std::vector<unsigned> out;
  for (unsigned n = 1; n < m; ++n) {
    if (m % n != 0) continue;
    MultiIndex a = beta;
    bool integral = true;
    for (auto& x : a) {
      integral = integral && (x * n) % m == 0;
      x = x * n / m;
    }
    if (integral && !p_set_member(n, a)) out.push_back(n);
  }
  return out;
}

}  // namespace

TEST_CASE("index set helpers") {
  CHECK(c_set_max(2, 3, 3) == 1U);
  CHECK(c_set_max(2, 3, 1) == 2U);
  CHECK(3U * ipow(2, c_set_max(2, 3, 3) + 1) > 8U);
  CHECK(c_set(3, 2, 2) == std::vector<unsigned>{0, 1});
  CHECK_THROWS_AS(c_set_max(2, 3, 8), ArgumentError);
  CHECK_THROWS_AS(c_set_max(2, 3, 0), ArgumentError);

  CHECK(p_set_member(6, {3, 3}));
  CHECK_FALSE(p_set_member(6, {1, 2}));
  CHECK_FALSE(p_set_member(1, {2, 4}));
  CHECK(p_set_member(4, {0, 0}));

  CHECK(n_beta(12, {2, 0}) == 6U);
  CHECK(n_beta(4, {2, 0}) == 2U);
  CHECK(n_beta(4, {4, 0}) == 1U);
  CHECK(n_beta(4, {0, 0}) == 1U);
  CHECK_THROWS_AS(n_beta(6, {1, 2}), ArgumentError);
  CHECK_THROWS_AS(n_beta(1, {2}), ArgumentError);
  for (unsigned m = 2; m <= 36; ++m)
    for (unsigned a = 0; a <= 8; ++a)
      for (unsigned b = 0; b <= 8; ++b) {
        const MultiIndex beta{a, b};
        if (!p_set_member(m, beta)) continue;
        const auto c = n_beta_candidates(m, beta);
        REQUIRE(c.size() == 1U);
        CHECK(n_beta(m, beta) == c.front());
      }

  CHECK(j_set(2, 2, HsOrder::finite(2)) == std::vector<unsigned>{3});
  CHECK(j_set(3, 1, HsOrder::finite(1)) == std::vector<unsigned>{1, 2});
  CHECK(j_set(2, 3, HsOrder::infinity()).empty());
}

TEST_CASE("char-p decomposition base cases") {
  auto r = Ring::make(2, {}, {"x", "y"});
  const MPoly x = r->var(0), y = r->var(1);
  const IdealPresentation I(r, {x * y});
  const HSDerivation D = HSDerivation::from_images(
      r, 2, {JetSeries(r, 2, {x, r->zero(), x * x}), JetSeries(r, 2, {y, r->zero(), r->one()})});
  const FactorizationCertificate c = decompose_char_p(D, I, 2, 1);
  REQUIRE(c.coarse_t);
  CHECK(*c.coarse_t == HSDerivation::from_derivation(r, {x * x, r->one()}));
  CHECK(c.coarse_f->is_identity());
  CHECK(c.valid());
  CHECK(c.factors.size() == 1U);

  const FactorizationCertificate id = decompose_char_p(HSDerivation::identity(r, 4), I, 2, 2);
  CHECK(id.coarse_t->is_identity());
  CHECK(id.coarse_t->length() == 2U);
  CHECK(id.coarse_f->is_identity());
  CHECK(id.valid());

  CHECK_THROWS_AS(decompose_char_p(D, I, 2, 2), ArgumentError);
  CHECK_THROWS_AS(decompose_char_p(HSDerivation::from_derivation(r, {x, y}), I, 2, 0), ArgumentError);
  const HSDerivation not_log = pad_integral(HSDerivation::from_derivation(r, {r->one(), r->zero()}), 2);
  CHECK_THROWS_AS(decompose_char_p(stretch(HSDerivation::from_derivation(r, {x, y}), 2), I, 3, 1), ArgumentError);
  CHECK_THROWS_AS(decompose_char_p(not_log, I, 2, 1), MathError);
}

TEST_CASE("char-p decomposition on the cusp over F_2") {
  std::mt19937_64 rng(2024);
  auto r = Ring::make(2, {}, {"x", "y"});
  const MPoly x = r->var(0), y = r->var(1);
  const IdealPresentation I(r, {y * y + x.pow(3)});
  const auto logs = bounded_log_derivations(I, 3);
  REQUIRE_FALSE(logs.empty());
  int seen_power = 0, seen_odd = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const HSDerivation D = random_char_p_instance(rng, I, 2, 2, 1, logs);
    REQUIRE(is_r_log(D, I, 3));
    const HsOrder ell = order(D);
    if (!ell.infinite && ell.value == 2) ++seen_power;
    if (!ell.infinite && ell.value == 3) ++seen_odd;
    const FactorizationCertificate c = decompose_char_p(D, I, 2, 2);
    CHECK(c.recomposes);
    CHECK(compose(stretch(*c.coarse_t, 2), *c.coarse_f) == D);
    CHECK(is_r_log(*c.coarse_t, I, 1));
    CHECK(is_log(*c.coarse_f, I));
    CHECK(order(*c.coarse_f).at_least(2));
    CHECK(c.top_relation);
    CHECK(c.valid());
    for (std::size_t k = 1; k < c.factors.size(); ++k) {
      CHECK(c.factors[k].n % 2 == 1U);
      if (k > 1) CHECK(c.factors[k].n < c.factors[k - 1].n);
    }
  }
  CHECK(seen_power > 0);
  CHECK(seen_odd + seen_power > 2);
}

TEST_CASE("char-p decomposition over F_3 exercises every case") {
  std::mt19937_64 rng(77);
  auto r = Ring::make(3, {}, {"x", "y"});
  const MPoly x = r->var(0), y = r->var(1);
  const IdealPresentation I(r, {x * y});
  const auto logs = bounded_log_derivations(I, 1);
  for (int trial = 0; trial < 4; ++trial) {
    const HSDerivation D = random_char_p_instance(rng, I, 3, 2, 1, logs);
    const FactorizationCertificate c = decompose_char_p(D, I, 3, 2);
    CHECK(c.valid());
    CHECK(c.recompose() == D);
  }
  // l(D) = 6 is divisible by p but not a power of p.
  const HSDerivation six = shifted_derivation(HSDerivation::from_derivation(r, {x, y}), 6, 9);
  const FactorizationCertificate c6 = decompose_char_p(six, I, 3, 2);
  CHECK(c6.valid());
  CHECK(c6.factors.size() == 1U);
  CHECK(c6.coarse_t->component_values(2) == std::vector<MPoly>{x, y});
}

TEST_CASE("factorization over a polynomial extension") {
  auto base = Ring::make(2, {}, {"x"});
  const BaseExtension ext = BaseExtension::polynomial(base, {"t"});
  const RingPtr& r = ext.target();
  const MPoly x = r->var(0), t = r->var(1);

  SUBCASE("t mu + t^2 mu^2") {
    const HSDerivation D = HSDerivation::from_images(r, 2, {JetSeries(r, 2, {x, t, t * t})});
    const FactorizationCertificate c = factor_over_poly_extension(D, ext);
    CHECK(c.recomposes);
    REQUIRE(c.factors.size() == 1U);
    CHECK(c.factors[0].n == 1U);
    CHECK(c.factors[0].alpha == MultiIndex{1});
    const MPoly bx = base->var(0);
    CHECK(c.factors[0].base == HSDerivation::from_images(base, 2, {JetSeries(base, 2, {bx, base->one(), base->one()})}));
    CHECK(scale(t, extend_hs(c.factors[0].base, ext)) == D);
  }
  SUBCASE("t mu^2") {
    const HSDerivation D = HSDerivation::from_images(r, 2, {JetSeries(r, 2, {x, r->zero(), t})});
    const FactorizationCertificate c = factor_over_poly_extension(D, ext);
    CHECK(c.recomposes);
    REQUIRE(c.factors.size() == 1U);
    CHECK(c.factors[0].n == 2U);
    CHECK(c.factors[0].alpha == MultiIndex{1});
    CHECK(c.factors[0].base == HSDerivation::from_derivation(base, {base->one()}));
  }
  SUBCASE("identity") {
    const FactorizationCertificate c = factor_over_poly_extension(HSDerivation::identity(r, 3), ext);
    CHECK(c.factors.empty());
    CHECK(c.recomposes);
  }
}

TEST_CASE("factorization over F_3[t] recomposes and attests") {
  std::mt19937_64 rng(5);
  auto base = Ring::make(3, {}, {"x", "y"});
  const BaseExtension ext = BaseExtension::polynomial(base, {"t"});
  const RingPtr& r = ext.target();
  const MPoly bx = base->var(0), by = base->var(1);
  const IdealPresentation I(base, {by * by - bx.pow(3)});
  const IdealPresentation Ie = ext.extend_ideal(I);
  for (int trial = 0; trial < 6; ++trial) {
    const HSDerivation D = random_hs(rng, r, 4, 2);
    const FactorizationCertificate c = factor_over_poly_extension(D, ext, I);
    CHECK(c.recomposes);
    for (const auto& f : c.factors) {
      CHECK_FALSE(p_set_member(f.n, f.alpha));
      CHECK(f.base.length() == 4U / f.n);
    }
  }
  const auto logs = bounded_log_derivations(Ie, 2);
  REQUIRE_FALSE(logs.empty());
  int integrated = 0;
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<HSDerivation> pieces;
    for (unsigned j = 1; j <= 4; ++j) {
      if (rng() % 3 == 0) continue;
      const HSDerivation delta = random_log_derivation(rng, r, logs, 1);
      // integrate to length 4/j so the stretched piece stays logarithmic
      const ObstructionReport rep = find_log_integral(delta, Ie, 4 / j);
      if (!rep.feasible()) continue;  // the cusp has leaps in characteristic 3
      ++integrated;
      const HSDerivation s = stretch(*rep.witness, j);
      pieces.push_back(s.length() >= 4 ? truncate(s, 4) : pad_integral(s, 4));
    }
    pieces.push_back(random_ideal_perturbation(rng, Ie, 4, 1));
    std::shuffle(pieces.begin(), pieces.end(), rng);
    const HSDerivation D = compose_all(pieces, r, 4);
    REQUIRE(is_log(D, Ie));
    const FactorizationCertificate c = factor_over_poly_extension(D, ext, I);
    CHECK(c.valid());
    for (const auto& f : c.factors) CHECK(f.required_log_level == 4U / f.n);
  }
  CHECK(integrated > 0);
}

TEST_CASE("reading a derivation back from its factors") {
  auto base = Ring::make(3, {}, {"x", "y"});
  const BaseExtension ext = BaseExtension::polynomial(base, {"t"});
  const RingPtr& r = ext.target();
  const MPoly t = r->var(2);
  const HSDerivation delta = HSDerivation::from_derivation(r, {t, r->one()});
  const FactorizationCertificate c = factor_over_poly_extension(pad_integral(delta, 3), ext);
  const auto terms = phi_preimage(delta, c, ext);
  REQUIRE(terms.size() == 2U);
  CHECK(terms[0].alpha == MultiIndex{0});
  CHECK(truncate(terms[0].integral, 1) == HSDerivation::from_derivation(base, {base->zero(), base->one()}));
  CHECK(terms[1].alpha == MultiIndex{1});
  CHECK(truncate(terms[1].integral, 1) == HSDerivation::from_derivation(base, {base->one(), base->zero()}));

  const HSDerivation zero = HSDerivation::identity(r, 1);
  CHECK(phi_preimage(zero, factor_over_poly_extension(HSDerivation::identity(r, 2), ext), ext).empty());
  CHECK_THROWS_AS(phi_preimage(zero, c, ext), ArgumentError);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const HSDerivation E = random_hs(rng, r, 3, 2);
    const HSDerivation d = truncate(E, 1);
    const auto back = phi_preimage(d, factor_over_poly_extension(E, ext), ext);
    std::vector<BasisComponent> parts;
    for (const auto& term : back) parts.push_back({term.alpha, truncate(term.integral, 1)});
    CHECK(basis_recombine(parts, ext) == d);
  }
}
