#include <algorithm>
#include <set>

#include "../oracles.hpp"
#include "curvecount/factor.hpp"
#include "curvecount/resultant.hpp"
#include "support.hpp"

namespace cc = curvecount;
using cc::UnivariatePoly;

namespace {

std::uint64_t eval_u(const UnivariatePoly& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::size_t k = f.coeffs.size(); k-- > 0;) acc = (oracle::mulm(acc, x, p) + f.coeffs[k]) % p;
  return acc;
}

UnivariatePoly random_upoly(oracle::Rng& rng, std::uint64_t p, int deg) {
  UnivariatePoly f;
  for (int i = 0; i <= deg; ++i) f.coeffs.push_back(rng.below(p));
  if (f.coeffs.back() == 0) f.coeffs.back() = 1;
  return f;
}

// True when f (monic, small p) has no monic factor of degree 1..deg/2, by trial
// division against every monic polynomial of that degree.
bool irreducible_by_trial(const UnivariatePoly& f, std::uint64_t p) {
  const cc::UPolyRing<cc::FieldContext> ring(cc::FieldContext::make(p));
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      UnivariatePoly g;
      std::uint64_t c = code;
      for (int i = 0; i < d; ++i) {
        g.coeffs.push_back(c % p);
        c /= p;
      }
      g.coeffs.push_back(1);
      if (ring.divmod(f, g).second.is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("univariate factorization examples") {
  const auto f13 = cc::FieldContext::make(13);
  auto fac = cc::factor_univariate(f13, UnivariatePoly{{1, 0, 1}});
  REQUIRE(fac.factors.size() == 2);
  std::set<std::uint64_t> roots;
  for (const auto& [g, e] : fac.factors) {
    CHECK(e == 1);
    CHECK(g.degree() == 1);
    roots.insert((13 - g.coeffs[0]) % 13);
  }
  CHECK(roots == std::set<std::uint64_t>{5, 8});
  const auto f7 = cc::FieldContext::make(7);
  fac = cc::factor_univariate(f7, UnivariatePoly{{1, 0, 1}});
  CHECK(fac.factors.size() == 1);
  CHECK(fac.factors[0].first.degree() == 2);
  fac = cc::factor_univariate(cc::FieldContext::make(5), UnivariatePoly{{0, 4, 0, 1}});
  CHECK(fac.factors.size() == 3);
}

TEST_CASE("factorizations reconstruct the input with irreducible factors") {
  oracle::Rng rng(71);
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL}) {
    const auto ctx = cc::FieldContext::make(p);
    const cc::UPolyRing<cc::FieldContext> ring(ctx);
    for (int i = 0; i < 40; ++i) {
      // Products of random pieces give repeated and mixed-degree factors.
      UnivariatePoly f = ring.one();
      const auto pieces = 1 + rng.below(3);
      for (std::uint64_t k = 0; k < pieces; ++k) f = ring.mul(f, random_upoly(rng, p, 1 + static_cast<int>(rng.below(4))));
      if (rng.below(3) == 0) f = ring.mul(f, f);
      const auto fac = cc::factor_univariate(ctx, f);
      UnivariatePoly prod = ring.constant(fac.unit);
      for (const auto& [g, e] : fac.factors) {
        CHECK(g.coeffs.back() == 1);
        CHECK(irreducible_by_trial(g, p));
        for (unsigned k = 0; k < e; ++k) prod = ring.mul(prod, g);
      }
      CHECK(prod == f);
    }
  }
}

TEST_CASE("factorization over an extension field") {
  const auto base = cc::FieldContext::make(7);
  const auto f49 = cc::ExtensionField::make(base, 2);
  using P = cc::UPoly<cc::ExtensionField>;
  const P x2p1{{f49.one(), f49.zero(), f49.one()}};
  const auto fac = cc::factor_univariate(f49, x2p1);
  CHECK(fac.factors.size() == 2);
}

TEST_CASE("roots in the prime field match a scan") {
  oracle::Rng rng(4);
  for (std::uint64_t p : {13ULL, 101ULL, 997ULL, 65537ULL}) {
    const auto ctx = cc::FieldContext::make(p);
    for (int i = 0; i < 30; ++i) {
      const auto f = random_upoly(rng, p, 1 + static_cast<int>(rng.below(6)));
      auto got = cc::roots_in_prime_field(ctx, f);
      std::sort(got.begin(), got.end());
      if (p <= 1000) {
        std::vector<std::uint64_t> want;
        for (std::uint64_t x = 0; x < p; ++x)
          if (eval_u(f, x, p) == 0) want.push_back(x);
        CHECK(got == want);
      } else {
        for (auto r : got) CHECK(eval_u(f, r, p) == 0);
      }
    }
  }
  // Large characteristic: planted roots are all recovered.
  const std::uint64_t big = (std::uint64_t{1} << 61) - 1;
  const auto ctx = cc::FieldContext::make(big);
  const cc::UPolyRing<cc::FieldContext> ring(ctx);
  UnivariatePoly f = ring.one();
  const std::vector<std::uint64_t> planted{3, 123456789012345ULL, big - 1};
  for (auto r : planted) f = ring.mul(f, UnivariatePoly{{ctx.neg(r), 1}});
  f = ring.mul(f, UnivariatePoly{{ctx.neg(ctx.primitive_root()), 0, 1}});  // X^2 - g has no roots
  auto got = cc::roots_in_prime_field(ctx, f);
  std::sort(got.begin(), got.end());
  CHECK(got == planted);
}

TEST_CASE("bivariate irreducibility over F_p") {
  CHECK(cc::is_irreducible_bivariate(mod_poly("Y - X^2", 13)));
  CHECK_FALSE(cc::is_irreducible_bivariate(mod_poly("(Y - X)*(Y + X)", 13)));
  CHECK(cc::is_irreducible_bivariate(mod_poly("X^2 + Y^2", 7)));
  CHECK_FALSE(cc::is_irreducible_bivariate(mod_poly("X^2 + Y^2", 13)));
  CHECK(cc::is_irreducible_bivariate(mod_poly("X*Y - 1", 13)));
  CHECK_FALSE(cc::is_irreducible_bivariate(mod_poly("X^2*Y + X", 13)));
  CHECK_CODE(cc::is_irreducible_bivariate(mod_poly("3", 13)), ZeroPolynomial);
  CHECK_CODE(cc::is_irreducible_bivariate(mod_poly("X^7 + Y", 13)), DegreeTooLarge);
}

TEST_CASE("planted products are reducible and certificates multiply back") {
  oracle::Rng rng(606);
  const auto dom = cc::CoeffDomain::modular(31);
  const auto& field = dom.field();
  int checked = 0;
  while (checked < 40) {
    const auto a = oracle::random_poly(rng, dom, 1 + static_cast<unsigned>(rng.below(2)), 4, 0, 30);
    const auto b = oracle::random_poly(rng, dom, 1 + static_cast<unsigned>(rng.below(2)), 4, 0, 30);
    if (a.total_degree() < 1 || b.total_degree() < 1) continue;
    const auto f = a * b;
    CHECK_FALSE(cc::is_irreducible_bivariate(f));
    const auto cert = cc::irreducibility_certificate(field, f.to_field());
    REQUIRE_FALSE(cert.irreducible);
    const cc::BiPolyRing<cc::FieldContext> ring(field);
    CHECK(cc::BivariatePoly::from_field(dom, ring.mul(*cert.factor, *cert.cofactor)) == f);
    ++checked;
  }
}

TEST_CASE("absolute irreducibility") {
  const auto r7 = cc::absolute_irreducibility(mod_poly("X^2 + Y^2", 7));
  CHECK_FALSE(r7.absolutely_irreducible);
  CHECK(r7.split_level == 2);
  CHECK(r7.certificate_verified);
  const auto r13 = cc::absolute_irreducibility(mod_poly("X^2 + Y^2", 13));
  CHECK(r13.split_level == 1);
  CHECK(cc::is_absolutely_irreducible(mod_poly("X*Y - 1", 13)));
  CHECK(cc::is_absolutely_irreducible(mod_poly("Y^2 - X^3 - 2", 13)));
  CHECK(cc::is_irreducible_over_extension(mod_poly("X^2 + Y^2", 7), 1));
  CHECK_FALSE(cc::is_irreducible_over_extension(mod_poly("X^2 + Y^2", 7), 2));
  // Y^3 - 2 X^3 has no linear factor over F_7 (2 is a non-cube) but splits over F_{7^3}.
  const auto cube = cc::absolute_irreducibility(mod_poly("Y^3 - 2*X^3", 7));
  CHECK_FALSE(cube.absolutely_irreducible);
  CHECK(cube.split_level == 3);
}

TEST_CASE("F(X, Y^n) hypothesis") {
  const auto h1 = cc::check_fxyn_hypothesis(mod_poly("Y - X - 1", 13), 3);
  CHECK(h1.holds);
  CHECK(h1.verified_up_to == 3);
  const auto h2 = cc::check_fxyn_hypothesis(mod_poly("Y^2 - X^2", 13), 1);
  CHECK_FALSE(h2.holds);
  CHECK(h2.first_failure == 1u);
  const auto h3 = cc::check_fxyn_hypothesis(mod_poly("Y - X^2", 13), 2);
  CHECK_FALSE(h3.holds);
  CHECK(h3.first_failure == 2u);
}

TEST_CASE("torsion forms") {
  const auto t = cc::is_torsion_form(mod_poly("3*X^2*Y^3 + 5", 7));
  REQUIRE(t);
  CHECK(t->shape == cc::TorsionForm::Shape::Product);
  CHECK(t->m == 2);
  CHECK(t->n == 3);
  CHECK(t->alpha == 3);
  CHECK(t->beta == 5);
  const auto s = cc::is_torsion_form(mod_poly("2*X^3 + 4*Y", 7));
  REQUIRE(s);
  CHECK(s->shape == cc::TorsionForm::Shape::Split);
  CHECK(s->m == 3);
  CHECK(s->n == 1);
  CHECK_FALSE(cc::is_torsion_form(mod_poly("X*Y - X", 7)));
  CHECK(t->to_poly(cc::CoeffDomain::modular(7)) == mod_poly("3*X^2*Y^3 + 5", 7));
}

TEST_CASE("torsion divisors") {
  const auto planted = cc::divisible_by_torsion_form(mod_poly("(X*Y + 3)*(X + Y)", 13));
  REQUIRE(planted);
  CHECK(planted->to_poly(cc::CoeffDomain::modular(13)) == mod_poly("X*Y + 3", 13));
  CHECK_FALSE(cc::divisible_by_torsion_form(mod_poly("X*Y - X + Y", 13)));
  const auto split = cc::divisible_by_torsion_form(mod_poly("X^2 - 5*Y^3", 13));
  REQUIRE(split);
  CHECK(split->shape == cc::TorsionForm::Shape::Split);
  CHECK(split->alpha == 1);
  CHECK(split->beta == 8);
}

TEST_CASE("hyperbola resultants are torsion-free for every shift") {
  for (std::uint64_t p : {13ULL, 17ULL}) {
    for (std::uint64_t c = 1; c < p; ++c)
      for (std::uint64_t a = 1; a < p; ++a)
        CHECK_FALSE(cc::divisible_by_torsion_form(cc::shifted_resultant(mod_poly("X*Y - " + std::to_string(c), p), a)));
  }
}
