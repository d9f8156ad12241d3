#include "curvecount/factor.hpp"

#include <algorithm>
#include <functional>

namespace curvecount {

namespace {

template <class F>
bool coeff_less(const F& field, const UPoly<F>& a, const UPoly<F>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs.size(); i-- > 0;) {
    if (!field.equal(a.coeffs[i], b.coeffs[i])) return a.coeffs[i] < b.coeffs[i];
  }
  return false;
}

// p-th root of a polynomial whose exponents are all multiples of p.
template <class F>
UPoly<F> pth_root(const F& field, const UPoly<F>& a) {
  const std::uint64_t p = field.characteristic();
  std::vector<typename F::Elem> c;
  for (std::size_t i = 0; i < a.coeffs.size(); i += p) c.push_back(field.frobenius_root(a.coeffs[i]));
  return UPolyRing<F>(field).from_coeffs(std::move(c));
}

template <class F>
void squarefree(const F& field, const UPoly<F>& f, unsigned scale, std::vector<std::pair<UPoly<F>, unsigned>>& out) {
  UPolyRing<F> ring(field);
  if (f.degree() < 1) return;
  const UPoly<F> g = ring.derivative(f);
  if (g.is_zero()) {
    squarefree(field, pth_root(field, f), scale * static_cast<unsigned>(field.characteristic()), out);
    return;
  }
  UPoly<F> c = ring.gcd(f, g);
  UPoly<F> w = ring.quo(f, c);
  unsigned i = 1;
  while (w.degree() > 0) {
    UPoly<F> y = ring.gcd(w, c);
    UPoly<F> fac = ring.quo(w, y);
    if (fac.degree() > 0) out.emplace_back(ring.monic(fac), i * scale);
    w = std::move(y);
    c = ring.quo(c, w);
    ++i;
  }
  if (c.degree() > 0) {
    squarefree(field, pth_root(field, c), scale * static_cast<unsigned>(field.characteristic()), out);
  }
}

// Splits a squarefree monic f into products of irreducibles of equal degree.
template <class F>
std::vector<std::pair<UPoly<F>, unsigned>> distinct_degree(const F& field, UPoly<F> f) {
  UPolyRing<F> ring(field);
  std::vector<std::pair<UPoly<F>, unsigned>> out;
  const BigInt q = field.order();
  UPoly<F> h = ring.rem(ring.x(), f);
  for (unsigned i = 1; f.degree() >= 2 * static_cast<int>(i); ++i) {
    h = ring.powmod(h, q, f);
    UPoly<F> g = ring.gcd(ring.sub(h, ring.x()), f);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = ring.quo(f, g);
      h = ring.rem(h, f);
    }
  }
  if (f.degree() > 0) out.emplace_back(ring.monic(f), static_cast<unsigned>(f.degree()));
  return out;
}

template <class F>
void equal_degree(const F& field, const UPoly<F>& g, unsigned d, Rng& rng, std::vector<UPoly<F>>& out) {
  UPolyRing<F> ring(field);
  if (g.degree() == static_cast<int>(d)) {
    out.push_back(ring.monic(g));
    return;
  }
  BigInt e;
  mpz_pow_ui(e.get_mpz_t(), field.order().get_mpz_t(), d);
  e = (e - 1) / 2;
  for (;;) {
    UPoly<F> a = ring.random(rng, g.degree() - 1);
    if (a.degree() < 1) continue;
    UPoly<F> b = ring.sub(ring.powmod(a, e, g), ring.one());
    UPoly<F> h = ring.gcd(b, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(field, h, d, rng, out);
      equal_degree(field, ring.quo(g, h), d, rng, out);
      return;
    }
  }
}

}  // namespace

template <class F>
Factorization<F> factor_univariate(const F& field, const UPoly<F>& f, std::uint64_t seed) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "factor_univariate of zero");
  UPolyRing<F> ring(field);
  Factorization<F> result{ring.lead(f), {}, field.degree()};
  std::vector<std::pair<UPoly<F>, unsigned>> sqf;
  squarefree(field, ring.monic(f), 1, sqf);
  Rng rng(seed);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : distinct_degree(field, part)) {
      std::vector<UPoly<F>> pieces;
      equal_degree(field, block, d, rng, pieces);
      for (auto& piece : pieces) result.factors.emplace_back(std::move(piece), mult);
    }
  }
  // Merge equal factors produced from different squarefree layers.
  std::sort(result.factors.begin(), result.factors.end(),
            [&](const auto& a, const auto& b) { return coeff_less(field, a.first, b.first); });
  std::vector<std::pair<UPoly<F>, unsigned>> merged;
  for (auto& fm : result.factors) {
    if (!merged.empty() && merged.back().first == fm.first) {
      merged.back().second += fm.second;
    } else {
      merged.push_back(std::move(fm));
    }
  }
  result.factors = std::move(merged);
  return result;
}

template Factorization<FieldContext> factor_univariate(const FieldContext&, const UPoly<FieldContext>&, std::uint64_t);
template Factorization<ExtensionField> factor_univariate(const ExtensionField&, const UPoly<ExtensionField>&,
                                                         std::uint64_t);

std::vector<std::uint64_t> roots_in_prime_field(const FieldContext& field, const UnivariatePoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of zero polynomial");
  UPolyRing<FieldContext> ring(field);
  std::vector<std::uint64_t> roots;
  if (f.degree() == 0) return roots;
  if (f.degree() == 1) {
    roots.push_back(field.mul(field.neg(f.coeffs[0]), field.inv(f.coeffs[1])));
    return roots;
  }
  const UnivariatePoly mf = ring.monic(f);
  const UnivariatePoly xp = ring.powmod(ring.x(), field.order(), mf);
  const UnivariatePoly g = ring.gcd(ring.sub(xp, ring.x()), mf);
  if (g.degree() < 1) return roots;
  std::vector<UnivariatePoly> linear;
  Rng rng(seed);
  equal_degree(field, g, 1, rng, linear);
  for (const auto& l : linear) roots.push_back(field.neg(l.coeffs[0]));
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

template <class F>
struct KroneckerSearch {
  const F& field;
  const BiPolyRing<F>& bring;
  const UPolyRing<F>& ring;
  const BiPoly<F>& target;
  unsigned base;
  int half_degree;
  std::vector<std::pair<UPoly<F>, unsigned>> items;
  std::uint64_t budget;
  std::uint64_t tried = 0;
  std::optional<std::pair<BiPoly<F>, BiPoly<F>>> found;

  void run(std::size_t idx, const UPoly<F>& prod, int deg) {
    if (found) return;
    if (idx == items.size()) {
      if (deg < 1) return;
      if (++tried > budget) throw Error(ErrorCode::BudgetExceeded, "Kronecker recombination budget exhausted");
      BiPoly<F> cand = bring.kronecker_inverse(prod, base);
      if (bring.total_degree(cand) < 1) return;
      cand = bring.monic(cand);
      if (auto q = bring.exact_divide(target, cand); q && bring.total_degree(*q) >= 1) {
        found.emplace(std::move(cand), std::move(*q));
      }
      return;
    }
    const auto& [poly, mult] = items[idx];
    UPoly<F> acc = prod;
    for (unsigned e = 0; e <= mult; ++e) {
      if (deg + static_cast<int>(e) * poly.degree() > half_degree) break;
      run(idx + 1, acc, deg + static_cast<int>(e) * poly.degree());
      if (found) return;
      acc = ring.mul(acc, poly);
    }
  }
};

// Returns a nontrivial factorization of f, if any; f is content-free and
// depends on both variables.
template <class F>
std::optional<std::pair<BiPoly<F>, BiPoly<F>>> kronecker_factor(const F& field, const BiPoly<F>& f,
                                                                const IrreducibilityOptions& opts) {
  BiPolyRing<F> bring(field);
  UPolyRing<F> ring(field);
  const auto dx = static_cast<unsigned>(bring.degree_x(f));
  const auto dy = static_cast<unsigned>(bring.degree_y(f));
  const int image_xy = bring.kronecker(f, dx + 1).degree();
  const int image_yx = bring.kronecker(bring.swap_xy(f), dy + 1).degree();
  const bool swapped = image_yx < image_xy;
  const BiPoly<F> g = swapped ? bring.swap_xy(f) : f;
  const unsigned base = (swapped ? dy : dx) + 1;
  const UPoly<F> image = bring.kronecker(g, base);
  Factorization<F> fac = factor_univariate(field, image, opts.seed);
  KroneckerSearch<F> search{field, bring, ring, g, base, image.degree() / 2, std::move(fac.factors), opts.subset_budget, 0, std::nullopt};
  search.run(0, ring.one(), 0);
  if (!search.found) return std::nullopt;
  auto [a, b] = *search.found;
  if (swapped) return std::make_pair(bring.swap_xy(a), bring.swap_xy(b));
  return std::make_pair(std::move(a), std::move(b));
}

template <class F>
IrreducibilityCertificate<F> reducible(const BiPolyRing<F>& bring, const BiPoly<F>& f, BiPoly<F> factor) {
  auto q = bring.exact_divide(f, factor);
  if (!q) throw Error(ErrorCode::InvalidArgument, "internal: certificate does not divide");
  return {false, std::move(factor), std::move(*q)};
}

}  // namespace

template <class F>
IrreducibilityCertificate<F> irreducibility_certificate(const F& field, const BiPoly<F>& f,
                                                        const IrreducibilityOptions& opts) {
  BiPolyRing<F> bring(field);
  UPolyRing<F> ring(field);
  const int d = bring.total_degree(f);
  if (d < 1) throw Error(ErrorCode::ZeroPolynomial, "irreducibility of a constant");
  if (static_cast<unsigned>(d) > opts.degree_cap) {
    throw Error(ErrorCode::DegreeTooLarge,
                "total degree " + std::to_string(d) + " exceeds cap " + std::to_string(opts.degree_cap));
  }
  const int dx = bring.degree_x(f), dy = bring.degree_y(f);

  // Univariate cases.
  if (dy == 0 || dx == 0) {
    const bool in_x = dy == 0;
    const UPoly<F> u = in_x ? bring.specialize_y(f, field.zero()) : bring.specialize_x(f, field.zero());
    const auto fac = factor_univariate(field, u, opts.seed);
    if (fac.factors.size() == 1 && fac.factors[0].second == 1) return {};
    return reducible(bring, f, bring.from_univariate(fac.factors[0].first, !in_x));
  }

  // Monomial factors X or Y.
  const bool x_divides = std::all_of(f.terms.begin(), f.terms.end(), [](const auto& t) { return t.first.x > 0; });
  if (x_divides) return reducible(bring, f, bring.monomial(field.one(), 1, 0));
  const bool y_divides = std::all_of(f.terms.begin(), f.terms.end(), [](const auto& t) { return t.first.y > 0; });
  if (y_divides) return reducible(bring, f, bring.monomial(field.one(), 0, 1));

  // Content with respect to Y (a polynomial in X) and with respect to X.
  for (bool swap : {false, true}) {
    const BiPoly<F> g = swap ? bring.swap_xy(f) : f;
    UPoly<F> content;
    for (const auto& c : bring.coeffs_in_y(g)) content = ring.gcd(content, c);
    if (content.degree() > 0) {
      BiPoly<F> factor = bring.from_univariate(content, false);
      return reducible(bring, f, swap ? bring.swap_xy(factor) : factor);
    }
  }

  // Content-free and of degree one in some variable.
  if (dx == 1 || dy == 1) return {};

  if (auto split = kronecker_factor(field, f, opts)) return {false, std::move(split->first), std::move(split->second)};
  return {};
}

template IrreducibilityCertificate<FieldContext> irreducibility_certificate(const FieldContext&,
                                                                            const BiPoly<FieldContext>&,
                                                                            const IrreducibilityOptions&);
template IrreducibilityCertificate<ExtensionField> irreducibility_certificate(const ExtensionField&,
                                                                              const BiPoly<ExtensionField>&,
                                                                              const IrreducibilityOptions&);

namespace {

BiPoly<ExtensionField> embed(const ExtensionField& ext, const BivariatePoly& f) {
  BiPoly<ExtensionField> r;
  for (const auto& [e, c] : f.terms()) r.terms.emplace(e, ext.embed(c.get_ui()));
  return r;
}

std::string ext_poly_text(const ExtensionField& ext, const BiPoly<ExtensionField>& g) {
  std::vector<std::pair<Exponent, ExtensionField::Elem>> terms(g.terms.begin(), g.terms.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const unsigned da = a.first.x + a.first.y, db = b.first.x + b.first.y;
    return da != db ? da > db : a.first.x > b.first.x;
  });
  auto power = [](const char* v, unsigned e) {
    if (e == 0) return std::string();
    return std::string("*") + v + (e > 1 ? "^" + std::to_string(e) : "");
  };
  std::string s;
  for (const auto& [e, c] : terms) {
    if (!s.empty()) s += " + ";
    s += ext.to_string(c) + power("X", e.x) + power("Y", e.y);
  }
  return s.empty() ? "0" : s;
}

void require_modular(const BivariatePoly& f) {
  if (!f.domain().is_modular()) throw Error(ErrorCode::DomainMismatch, "irreducibility tests need a polynomial mod p");
}

}  // namespace

bool is_irreducible_bivariate(const BivariatePoly& f, const IrreducibilityOptions& opts) {
  require_modular(f);
  return irreducibility_certificate(f.domain().field(), f.to_field(), opts).irreducible;
}

bool is_irreducible_over_extension(const BivariatePoly& f, unsigned k, const IrreducibilityOptions& opts) {
  require_modular(f);
  if (k <= 1) return is_irreducible_bivariate(f, opts);
  const ExtensionField ext = ExtensionField::make(f.domain().field(), k, opts.seed, std::max(k, kDefaultExtensionCap));
  return irreducibility_certificate(ext, embed(ext, f), opts).irreducible;
}

AbsoluteIrreducibility absolute_irreducibility(const BivariatePoly& f, const IrreducibilityOptions& opts) {
  require_modular(f);
  const FieldContext& base = f.domain().field();
  const int d = f.total_degree();
  if (d < 1) throw Error(ErrorCode::ZeroPolynomial, "irreducibility of a constant");
  if (static_cast<unsigned>(d) > opts.degree_cap) {
    throw Error(ErrorCode::DegreeTooLarge, "total degree " + std::to_string(d) + " exceeds cap");
  }
  AbsoluteIrreducibility out;
  {
    BiPolyRing<FieldContext> bring(base);
    const auto cert = irreducibility_certificate(base, f.to_field(), opts);
    if (!cert.irreducible) {
      out.absolutely_irreducible = false;
      out.split_level = 1;
      out.factor_text = BivariatePoly::from_field(f.domain(), *cert.factor).to_string();
      out.cofactor_text = BivariatePoly::from_field(f.domain(), *cert.cofactor).to_string();
      out.certificate_verified = bring.mul(*cert.factor, *cert.cofactor) == f.to_field();
      return out;
    }
  }
  for (unsigned k = 2; k <= static_cast<unsigned>(d); ++k) {
    const ExtensionField ext = ExtensionField::make(base, k, opts.seed, std::max(k, kDefaultExtensionCap));
    BiPolyRing<ExtensionField> bring(ext);
    const BiPoly<ExtensionField> g = embed(ext, f);
    const auto cert = irreducibility_certificate(ext, g, opts);
    if (!cert.irreducible) {
      out.absolutely_irreducible = false;
      out.split_level = k;
      out.factor_text = ext_poly_text(ext, *cert.factor);
      out.cofactor_text = ext_poly_text(ext, *cert.cofactor);
      out.certificate_verified = bring.mul(*cert.factor, *cert.cofactor) == g;
      return out;
    }
  }
  return out;
}

FxynCheck check_fxyn_hypothesis(const BivariatePoly& f, unsigned n_max, const IrreducibilityOptions& opts) {
  require_modular(f);
  FxynCheck out;
  for (unsigned n = 1; n <= n_max; ++n) {
    const BivariatePoly g = substitute_y_power(f, n);
    if (static_cast<unsigned>(g.total_degree()) > opts.degree_cap) {
      throw Error(ErrorCode::DegreeTooLarge, "F(X, Y^" + std::to_string(n) + ") has degree " +
                                                 std::to_string(g.total_degree()) + " above the cap");
    }
    if (!is_irreducible_bivariate(g, opts)) {
      out.holds = false;
      out.first_failure = n;
      return out;
    }
    out.verified_up_to = n;
  }
  return out;
}

BivariatePoly TorsionForm::to_poly(const CoeffDomain& d) const {
  const BigInt a(static_cast<unsigned long>(alpha)), b(static_cast<unsigned long>(beta));
  if (shape == Shape::Product) {
    return BivariatePoly::monomial(d, a, m, n) + BivariatePoly::constant(d, b);
  }
  return BivariatePoly::monomial(d, a, m, 0) + BivariatePoly::monomial(d, b, 0, n);
}

std::string to_string(const TorsionForm& t) {
  std::string s = t.shape == TorsionForm::Shape::Product ? "product" : "split";
  return s + " m=" + std::to_string(t.m) + " n=" + std::to_string(t.n) + " alpha=" + std::to_string(t.alpha) +
         " beta=" + std::to_string(t.beta);
}

std::optional<TorsionForm> is_torsion_form(const BivariatePoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "is_torsion_form of zero");
  if (f.num_terms() != 2) return std::nullopt;
  const auto& lo = *f.terms().begin();
  const auto& hi = *f.terms().rbegin();
  auto to_u64 = [&](const BigInt& c) -> std::uint64_t {
    if (f.domain().is_modular()) return c.get_ui();
    return c.fits_ulong_p() ? c.get_ui() : 0;
  };
  // Product shape: a nonconstant monomial plus a constant.
  if (lo.first == Exponent{0, 0}) {
    return TorsionForm{TorsionForm::Shape::Product, hi.first.x, hi.first.y, to_u64(hi.second), to_u64(lo.second)};
  }
  // Split shape: a pure X power and a pure Y power. Lex order puts X^m last.
  if (hi.first.y == 0 && lo.first.x == 0 && hi.first.x >= 1 && lo.first.y >= 1) {
    return TorsionForm{TorsionForm::Shape::Split, hi.first.x, lo.first.y, to_u64(hi.second), to_u64(lo.second)};
  }
  return std::nullopt;
}

std::optional<TorsionForm> divisible_by_torsion_form(const BivariatePoly& r, std::uint64_t modulus_cap) {
  require_modular(r);
  if (r.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "torsion search on zero polynomial");
  const FieldContext& field = r.domain().field();
  const std::uint64_t p = field.modulus();
  if (p > modulus_cap) {
    throw Error(ErrorCode::ModulusTooLarge, "p = " + std::to_string(p) + " exceeds the enumeration cap");
  }
  BiPolyRing<FieldContext> bring(field);
  const BiPoly<FieldContext> target = r.to_field();
  const auto du = static_cast<unsigned>(std::max(r.degree_x(), 0));
  const auto dv = static_cast<unsigned>(std::max(r.degree_y(), 0));
  for (auto shape : {TorsionForm::Shape::Product, TorsionForm::Shape::Split}) {
    for (unsigned m = 1; m <= du; ++m) {
      for (unsigned n = 1; n <= dv; ++n) {
        for (std::uint64_t beta = 1; beta < p; ++beta) {
          BiPoly<FieldContext> cand = bring.monomial(1, m, shape == TorsionForm::Shape::Product ? n : 0);
          bring.add_term(cand, shape == TorsionForm::Shape::Product ? Exponent{0, 0} : Exponent{0, n}, beta);
          if (bring.divides(cand, target)) return TorsionForm{shape, m, n, 1, beta};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace curvecount
