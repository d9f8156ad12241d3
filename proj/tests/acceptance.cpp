// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "curvecount/counting.hpp"
#include "curvecount/dynamics.hpp"
#include "curvecount/experiments.hpp"
#include "curvecount/factor.hpp"
#include "curvecount/parse.hpp"
#include "curvecount/resultant.hpp"
#include "oracles.hpp"

namespace cc = curvecount;
using cc::BigInt;
using cc::BivariatePoly;
using cc::CoeffDomain;
using cc::Exponent;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

BivariatePoly poly(const std::string& text, std::uint64_t p) {
  return cc::parse_poly(text, p == 0 ? CoeffDomain::integers() : CoeffDomain::modular(p));
}

// ---------------------------------------------------------------------------

Outcome delta_formula() {
  for (unsigned n = 1; n <= 10; ++n) {
    const auto f = poly("X^" + std::to_string(n) + " + Y^" + std::to_string(n) + " + X*Y", 101);
    const auto got = cc::delta(f);
    if (got != 2 * n + 2) return {false, fmt("n=%u: delta=%zu, expected %u", n, got, 2 * n + 2)};
  }
  return {true, "delta = 2n+2 for n = 1..10"};
}

cc::PointSet random_set(oracle::Rng& rng, const cc::FieldContext& ctx) {
  const std::uint64_t p = ctx.modulus();
  if (rng.below(2) == 0) {
    const auto divs = oracle::divisors(p - 1);
    return cc::PointSet::subgroup(ctx, divs[rng.below(divs.size())]);
  }
  return cc::PointSet::interval(ctx, rng.below(p), rng.below(p));
}

Outcome counting_oracle() {
  oracle::Rng rng(20241);
  const auto primes = oracle::small_primes(3, 499);
  std::size_t mismatches = 0, total_solutions = 0, root_path = 0;
  std::string first;
  for (int inst = 0; inst < 500; ++inst) {
    const std::uint64_t p = primes[rng.below(primes.size())];
    const auto ctx = cc::FieldContext::make(p);
    const auto dom = CoeffDomain::modular(ctx);
    BivariatePoly f(dom);
    while (f.is_zero()) {
      const auto d = static_cast<unsigned>(1 + rng.below(4));
      f = oracle::random_poly(rng, dom, d, 1 + static_cast<unsigned>(rng.below(8)), 0, static_cast<std::int64_t>(p) - 1);
    }
    const auto a = random_set(rng, ctx);
    const auto b = random_set(rng, ctx);
    cc::CountOptions row;
    if (inst % 2 == 1) {
      row.scan_modulus = 0;  // exercise root finding instead of scanning
      ++root_path;
    }
    row.workers = 1 + static_cast<unsigned>(rng.below(3));
    cc::CountOptions dbl;
    dbl.method = cc::CountMethod::DoubleLoop;
    const auto r1 = cc::count_solutions(f, a, b, row).count;
    const auto r2 = cc::count_solutions(f, a, b, dbl).count;
    const auto r3 = oracle::naive_count(f, a.elements(), b.elements());
    total_solutions += r3;
    if (r1 != r2 || r2 != r3) {
      if (mismatches++ == 0)
        first = fmt("p=%llu F=%s A=%s B=%s row=%llu double=%llu naive=%llu", (unsigned long long)p,
                    f.to_string().c_str(), a.describe().c_str(), b.describe().c_str(), (unsigned long long)r1,
                    (unsigned long long)r2, (unsigned long long)r3);
    }
  }
  if (mismatches) return {false, fmt("%zu mismatches; first: %s", mismatches, first.c_str())};
  return {true, fmt("500 instances agree (%zu via root finding), %zu solutions total", root_path, total_solutions)};
}

Outcome subgroup_machinery() {
  oracle::Rng rng(77);
  std::size_t checks = 0;
  for (std::uint64_t p : {13ULL, 61ULL, 211ULL}) {
    const auto ctx = cc::FieldContext::make(p);
    for (auto e : oracle::divisors(p - 1)) {
      const auto sg = cc::subgroup_of_order(ctx, e);
      const auto expect = oracle::roots_of_unity(p, e);
      const std::set<std::uint64_t> got(sg.elements()->begin(), sg.elements()->end());
      if (got != expect || sg.order() != e) return {false, fmt("p=%llu e=%llu: subgroup mismatch", (unsigned long long)p, (unsigned long long)e)};
      for (std::uint64_t x = 1; x < p; ++x)
        if (sg.contains(x) != expect.contains(x)) return {false, fmt("p=%llu e=%llu: contains(%llu)", (unsigned long long)p, (unsigned long long)e, (unsigned long long)x)};
      // Generator sets drawn from the subgroup generate a subgroup of it.
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<std::uint64_t> gens;
        const auto k = 1 + rng.below(3);
        for (std::uint64_t i = 0; i < k; ++i) gens.push_back((*sg.elements())[rng.below(e)]);
        const auto got_order = cc::generated_subgroup_order(ctx, gens);
        const auto want = oracle::closure_size(p, gens);
        if (got_order != want)
          return {false, fmt("p=%llu: generated order %llu, closure %zu", (unsigned long long)p, (unsigned long long)got_order, want)};
        ++checks;
      }
    }
    // Arbitrary generator sets from all of F_p^*.
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::uint64_t> gens;
      const auto k = 1 + rng.below(4);
      for (std::uint64_t i = 0; i < k; ++i) gens.push_back(1 + rng.below(p - 1));
      if (cc::generated_subgroup_order(ctx, gens) != oracle::closure_size(p, gens))
        return {false, fmt("p=%llu: random generator set mismatch", (unsigned long long)p)};
      ++checks;
    }
  }
  return {true, fmt("all divisors of p-1 for p in {13, 61, 211}; %zu generated-order checks", checks)};
}

Outcome resultant_dual_path() {
  oracle::Rng rng(4242);
  int pairs = 0;
  while (pairs < 200) {
    const std::uint64_t p = pairs % 2 == 0 ? 101 : 257;
    const auto dom = CoeffDomain::modular(p);
    const auto a = oracle::random_poly(rng, dom, 1 + static_cast<unsigned>(rng.below(4)), 6, 0, static_cast<std::int64_t>(p) - 1);
    const auto b = oracle::random_poly(rng, dom, 1 + static_cast<unsigned>(rng.below(4)), 6, 0, static_cast<std::int64_t>(p) - 1);
    if (a.degree_x() < 1 || b.degree_x() < 1) continue;
    const auto r1 = cc::resultant_x(a, b, cc::ResultantMethod::Interpolation);
    const auto r2 = cc::resultant_x(a, b, cc::ResultantMethod::Sylvester);
    if (!(r1 == r2))
      return {false, fmt("A=%s B=%s: %s vs %s", a.to_string().c_str(), b.to_string().c_str(), r1.to_string().c_str(),
                         r2.to_string().c_str())};
    ++pairs;
  }
  // Hyperbola: Res_X(F(X, U), F(X + a, V)) for F = XY - c.
  const std::uint64_t p = 101;
  const auto dom = CoeffDomain::modular(p);
  for (std::uint64_t c : {1ULL, 2ULL, 5ULL, 77ULL}) {
    const auto f = poly("X*Y - " + std::to_string(c), p);
    for (std::uint64_t a = 1; a < p; ++a) {
      const BigInt cb(static_cast<unsigned long>(c));
      const auto want = BivariatePoly::monomial(dom, BigInt(static_cast<unsigned long>(a)), 1, 1) +
                        BivariatePoly::monomial(dom, -cb, 1, 0) + BivariatePoly::monomial(dom, cb, 0, 1);
      for (auto m : {cc::ResultantMethod::Interpolation, cc::ResultantMethod::Sylvester}) {
        const auto got = cc::shifted_resultant(f, a, m);
        if (!(got == want))
          return {false, fmt("c=%llu a=%llu: R_a = %s", (unsigned long long)c, (unsigned long long)a, got.to_string("U", "V").c_str())};
      }
    }
  }
  return {true, "200 random pairs agree; R_a = aUV - cU + cV for p=101, 4 values of c, all a"};
}

Outcome torsion_screen() {
  const std::uint64_t p = 13;
  std::size_t exceptional = 0, checked = 0;
  for (std::uint64_t c = 1; c < p; ++c) {
    const auto f = poly("X*Y - " + std::to_string(c), p);
    for (std::uint64_t a = 1; a < p; ++a) {
      const auto r = cc::shifted_resultant(f, a);
      if (cc::divisible_by_torsion_form(r)) ++exceptional;
      ++checked;
    }
  }
  return {exceptional == 0, fmt("%zu of %zu pairs (c, a) have a torsion divisor", exceptional, checked)};
}

// Recomputes the congruences, the vanishing at the sampled points, and the
// height bound from the raw lift data, squaring both sides of
// |c| <= delta! (2 d H / sqrt(N))^(d (delta - 1)).
bool independent_lift_check(const cc::LiftChainReport& rep, std::uint64_t p) {
  const BigInt pb(static_cast<unsigned long>(p));
  const auto& lift = rep.lift;
  const BigInt f_pivot = rep.shifted.coefficient(lift.pivot);
  for (const auto& [e, c] : rep.shifted.terms()) {
    if (e == lift.pivot) continue;
    const auto it = lift.u.find(e);
    const BigInt u = it == lift.u.end() ? BigInt(0) : it->second;
    const BigInt diff = lift.v * c - u * f_pivot;
    if (diff % pb != 0) return false;
  }
  for (const auto& pt : lift.points)
    if (lift.lifted.eval(BigInt(static_cast<long>(pt.x)), BigInt(static_cast<long>(pt.y))) != 0) return false;
  if (lift.lifted.coefficient(lift.pivot) != lift.v) return false;
  const unsigned long power = rep.d * (rep.delta - 1);
  BigInt fact = 1;
  for (std::size_t i = 2; i <= rep.delta; ++i) fact *= static_cast<unsigned long>(i);
  BigInt rhs, lhs_scale, base = BigInt(static_cast<unsigned long>(2 * rep.d)) * static_cast<unsigned long>(rep.h);
  mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), 2 * power);
  rhs *= fact * fact;
  const BigInt nb(static_cast<unsigned long>(rep.n));
  mpz_pow_ui(lhs_scale.get_mpz_t(), nb.get_mpz_t(), power);
  for (const auto& [e, c] : lift.lifted.terms())
    if (c * c * lhs_scale > rhs) return false;
  return true;
}

Outcome lift_congruence() {
  oracle::Rng rng(10007);
  const std::vector<std::uint64_t> primes{9973, 10007, 10009};
  int done = 0, rejected_reducible = 0, skipped = 0;
  std::size_t max_delta = 0;
  while (done < 50) {
    const std::uint64_t p = primes[rng.below(primes.size())];
    const auto dom = CoeffDomain::modular(p);
    const auto d = static_cast<unsigned>(2 + rng.below(2));
    auto f = oracle::random_poly(rng, dom, d, 2 + static_cast<unsigned>(rng.below(5)), 0, static_cast<std::int64_t>(p) - 1);
    if (f.total_degree() < 2 || f.degree_y() < 1 || f.degree_x() < 1) continue;
    if (!cc::is_absolutely_irreducible(f)) {
      ++rejected_reducible;
      continue;
    }
    std::optional<cc::LiftChainReport> found;
    try {
      found = cc::lift_chain(f, rng.next());
    } catch (const cc::Error& e) {
      if (e.code() == cc::ErrorCode::InsufficientPoints || e.code() == cc::ErrorCode::InvalidArgument) {
        ++skipped;
        continue;
      }
      return {false, fmt("F=%s: %s", f.to_string().c_str(), e.what())};
    }
    const auto& rep = *found;
    if (!rep.congruences || !rep.height_bound)
      return {false, fmt("F=%s p=%llu: congruences=%d height=%d", f.to_string().c_str(), (unsigned long long)p,
                         rep.congruences, rep.height_bound)};
    if (!independent_lift_check(rep, p))
      return {false, fmt("F=%s p=%llu: direct recomputation of the lift checks failed", f.to_string().c_str(),
                         (unsigned long long)p)};
    max_delta = std::max(max_delta, rep.delta);
    ++done;
  }
  return {true, fmt("50 polynomials (delta up to %zu); %d reducible and %d without a dense sub-square skipped",
                    max_delta, rejected_reducible, skipped)};
}

Outcome interval_trend() {
  const auto f = poly("X*Y - 1", 10007);
  const auto rep = cc::theorem_II_experiment(f, 200, {8, 16, 32, 64}, 1, 4);
  std::string maxima;
  bool slack_ok = true;
  for (const auto& row : rep.rows) {
    maxima += fmt(" H=%llu:%llu", (unsigned long long)row.h, (unsigned long long)row.max_count);
    if (static_cast<double>(row.max_count) > 4.0 * std::sqrt(static_cast<double>(row.h))) slack_ok = false;
  }
  if (!rep.fit) return {false, "no fit: " + rep.fit_error + ";" + maxima};
  const bool slope_ok = rep.fit->slope <= 0.85;
  return {slope_ok && slack_ok, fmt("fitted exponent %.3f (limit 0.85), max counts%s%s", rep.fit->slope,
                                    maxima.c_str(), slack_ok ? "" : " EXCEED 4*sqrt(H)")};
}

Outcome bombieri() {
  const auto f = poly("X*Y - 1", 1009);
  const auto chk = cc::bombieri_sanity(f, 700, 3);
  const bool ok = chk.ratio >= 1.0 / 3.0 && chk.ratio <= 3.0;
  return {ok, fmt("N=%llu, H^2/p=%.1f, ratio %.3f", (unsigned long long)chk.count, chk.main_term, chk.ratio)};
}

Outcome integer_box() {
  const auto cusp = cc::count_integer_box(poly("Y^2 - X^3", 0), 0, 0, 100);
  if (cusp.count != 5) return {false, fmt("Y^2 - X^3 on [0,100]^2 gave %llu points", (unsigned long long)cusp.count)};
  oracle::Rng rng(99);
  const auto zz = CoeffDomain::integers();
  std::uint64_t total = 0;
  for (int i = 0; i < 100; ++i) {
    // A random factor times a curve with many integer points.
    const auto base = oracle::random_poly(rng, zz, 1 + static_cast<unsigned>(rng.below(2)), 3, -5, 5);
    BivariatePoly planted(zz);
    switch (rng.below(4)) {
      case 0: planted = poly("Y - " + std::to_string(rng.between(-3, 3)) + "*X^2 - " + std::to_string(rng.between(-20, 20)), 0); break;
      case 1: planted = poly("X*Y - " + std::to_string(rng.between(1, 400)), 0); break;
      case 2: planted = poly("X - " + std::to_string(rng.between(-60, 60)), 0); break;
      default: planted = poly("Y^2 - X^3 - " + std::to_string(rng.between(-10, 10)), 0); break;
    }
    auto f = base.is_zero() ? planted : base * planted;
    if (f.is_zero()) f = planted;
    const auto h = static_cast<std::uint64_t>(rng.between(i < 10 ? 1 : 65, 200));
    const auto k = rng.between(-120, 60), l = rng.between(-120, 60);
    const auto got = cc::count_integer_box(f, k, l, h).count;
    const auto want = oracle::naive_box(f, k, l, h);
    if (got != want)
      return {false, fmt("F=%s box [%lld,+%llu]x[%lld,+%llu]: %llu vs scan %llu", f.to_string().c_str(), (long long)k,
                         (unsigned long long)h, (long long)l, (unsigned long long)h, (unsigned long long)got,
                         (unsigned long long)want)};
    total += want;
  }
  return {true, fmt("cusp has 5 points; 100 random boxes match the scan (%llu points)", (unsigned long long)total)};
}

cc::RationalMap random_map(oracle::Rng& rng, const cc::FieldContext& ctx, bool allow_den) {
  const std::uint64_t p = ctx.modulus();
  for (;;) {
    const auto dn = 1 + rng.below(3);
    std::vector<std::uint64_t> num(dn + 1), den{1};
    for (auto& c : num) c = rng.below(p);
    if (allow_den && rng.below(3) == 0) {
      den.assign(2 + rng.below(2), 0);
      for (auto& c : den) c = rng.below(p);
    }
    cc::UnivariatePoly n{num}, g{den};
    while (!n.coeffs.empty() && n.coeffs.back() == 0) n.coeffs.pop_back();
    while (!g.coeffs.empty() && g.coeffs.back() == 0) g.coeffs.pop_back();
    try {
      cc::RationalMap m(ctx, n, g);
      if (!m.is_power_form()) return m;
    } catch (const cc::Error&) {
    }
  }
}

cc::MapSystem random_system(oracle::Rng& rng, const cc::FieldContext& ctx, std::size_t s, bool allow_den) {
  std::vector<cc::RationalMap> maps;
  for (std::size_t i = 0; i < s; ++i) maps.push_back(random_map(rng, ctx, allow_den));
  return cc::MapSystem(std::move(maps));
}

// Every choice sequence of length n; poles drop the path.
std::vector<std::vector<std::uint64_t>> all_paths(const cc::MapSystem& sys, std::uint64_t u, std::uint64_t n) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> path{u};
  std::function<void()> walk = [&]() {
    if (path.size() == n + 1) {
      out.push_back(path);
      return;
    }
    for (std::size_t j = 0; j < sys.size(); ++j) {
      const auto v = sys[j](path.back());
      if (v == cc::kPole) continue;
      path.push_back(v);
      walk();
      path.pop_back();
    }
  };
  walk();
  return out;
}

Outcome dynamics_oracles() {
  oracle::Rng rng(31337);
  const auto primes = oracle::small_primes(3, 101);
  for (int i = 0; i < 100; ++i) {
    const auto ctx = cc::FieldContext::make(primes[rng.below(primes.size())]);
    const auto sys = random_system(rng, ctx, 1 + rng.below(3), true);
    const auto u = rng.below(ctx.modulus());
    const auto cap = 1 + rng.below(10);
    cc::SearchOptions ex, pr;
    ex.mode = cc::SearchMode::Exhaustive;
    pr.mode = cc::SearchMode::Pruned;
    pr.workers = 2;
    const auto te = cc::collision_time(sys, u, cap, ex);
    const auto tp = cc::collision_time(sys, u, cap, pr);
    const auto tn = oracle::naive_collision_time(sys, u, cap);
    if (te.value != tp.value || tp.value != tn || !te.exact || !tp.exact)
      return {false, fmt("T mismatch p=%llu system %s u=%llu cap=%llu: exhaustive %llu pruned %llu naive %llu",
                         (unsigned long long)ctx.modulus(), sys.degrees_text().c_str(), (unsigned long long)u,
                         (unsigned long long)cap, (unsigned long long)te.value, (unsigned long long)tp.value,
                         (unsigned long long)tn)};
  }
  const auto primes211 = oracle::small_primes(3, 211);
  int orbits = 0;
  std::size_t path_checks = 0;
  while (orbits < 200) {
    const auto ctx = cc::FieldContext::make(primes211[rng.below(primes211.size())]);
    const std::uint64_t p = ctx.modulus();
    const auto sys = random_system(rng, ctx, 1 + rng.below(2), true);
    const auto u = rng.below(p);
    const auto n = 1 + rng.below(5);
    const auto paths = all_paths(sys, u, n);
    if (paths.empty()) continue;
    std::uint64_t best_l = p, best_g = p;
    for (const auto& vals : paths) {
      const auto l1 = cc::enclosing_radius(vals, p);
      const auto l2 = oracle::naive_radius(vals, p);
      const auto g1 = cc::ratio_group_order(ctx, vals);
      const auto g2 = oracle::naive_ratio_group(vals, p);
      if (l1 != l2 || g1 != g2)
        return {false, fmt("p=%llu orbit of length %zu: L %llu vs %llu, G %llu vs %llu", (unsigned long long)p,
                           vals.size(), (unsigned long long)l1, (unsigned long long)l2, (unsigned long long)g1,
                           (unsigned long long)g2)};
      best_l = std::min(best_l, l2);
      best_g = std::min(best_g, g2);
      ++path_checks;
    }
    cc::SearchOptions ex;
    ex.mode = cc::SearchMode::Exhaustive;
    const auto lr = cc::interval_metric_L(sys, u, n, ex);
    const auto gr = cc::group_metric_G(sys, u, n, ex);
    if (lr.value != best_l || gr.value != best_g)
      return {false, fmt("p=%llu N=%llu: searched L=%llu G=%llu, brute force L=%llu G=%llu", (unsigned long long)p,
                         (unsigned long long)n, (unsigned long long)lr.value, (unsigned long long)gr.value,
                         (unsigned long long)best_l, (unsigned long long)best_g)};
    ++orbits;
  }
  return {true, fmt("100 T instances agree three ways; 200 orbit searches and %zu paths match brute force for L and G",
                    path_checks)};
}

Outcome classical_consistency() {
  oracle::Rng rng(8080);
  const auto primes = oracle::small_primes(3, 499);
  for (int i = 0; i < 100; ++i) {
    const auto ctx = cc::FieldContext::make(primes[rng.below(primes.size())]);
    const auto sys = random_system(rng, ctx, 1, false);
    const auto u = rng.below(ctx.modulus());
    const auto t = cc::collision_time(sys, u);
    const auto rho = oracle::floyd_rho([&](std::uint64_t x) { return sys[0](x); }, u);
    if (t.value != rho)
      return {false, fmt("p=%llu map %s u=%llu: T=%llu, Floyd %llu", (unsigned long long)ctx.modulus(),
                         sys[0].to_string().c_str(), (unsigned long long)u, (unsigned long long)t.value,
                         (unsigned long long)rho)};
  }
  return {true, "T equals tail + cycle for 100 random polynomial maps"};
}

Outcome power_form_guard() {
  const auto ctx = cc::FieldContext::make(101);
  int refused = 0;
  for (const char* text : {"3*X^2", "X^2 + 1; 5*X^3", "7 / X^2; X^2 + X", "X^4; X^4 + 2; X^4 + 3"}) {
    const auto sys = cc::MapSystem::parse(ctx, text);
    try {
      (void)cc::theorem_orbit_experiments(sys, 1, {4}, 1, false, true);
    } catch (const cc::Error& e) {
      if (e.code() == cc::ErrorCode::PowerFormExcluded) ++refused;
    }
  }
  if (refused != 4) return {false, fmt("only %d of 4 power-form systems refused", refused)};
  oracle::Rng rng(5150);
  const auto primes = oracle::small_primes(53, 211);
  int rows = 0;
  for (int i = 0; i < 30; ++i) {
    const auto c = cc::FieldContext::make(primes[rng.below(primes.size())]);
    const auto s = 1 + rng.below(3);
    std::vector<cc::RationalMap> maps;
    const auto d = 1 + rng.below(3);
    while (maps.size() < s) {
      auto m = random_map(rng, c, false);
      if (m.degree() == d) maps.push_back(m);
    }
    const cc::MapSystem sys(std::move(maps));
    const auto rep = cc::theorem_orbit_experiments(sys, 1 + rng.below(c.modulus() - 1), {2, 4, 6}, 1, false, true);
    for (const auto& row : rep.rows) {
      if (row.metric != cc::Metric::G || !row.report.exact) continue;
      if (!std::isfinite(row.ratio) || row.ratio <= 0) return {false, fmt("ratio %g for N=%llu", row.ratio, (unsigned long long)row.n)};
      ++rows;
    }
  }
  return {true, fmt("4 power-form systems refused; %d exact G rows with finite positive ratio", rows)};
}

Outcome absolute_irreducibility() {
  const auto r13 = cc::absolute_irreducibility(poly("X^2 + Y^2", 13));
  const auto r7 = cc::absolute_irreducibility(poly("X^2 + Y^2", 7));
  const bool irr7 = cc::is_irreducible_bivariate(poly("X^2 + Y^2", 7));
  const auto hyp13 = cc::absolute_irreducibility(poly("X*Y - 1", 13));
  const auto hyp7 = cc::absolute_irreducibility(poly("X*Y - 1", 7));
  const bool ok = !r13.absolutely_irreducible && r13.split_level == 1 && r13.certificate_verified && irr7 &&
                  !r7.absolutely_irreducible && r7.split_level == 2 && r7.certificate_verified &&
                  hyp13.absolutely_irreducible && hyp7.absolutely_irreducible;
  return {ok, fmt("F_13 splits at k=%u (%s)(%s); F_7 irreducible=%d, splits at k=%u; XY-1 absolutely irreducible=%d",
                  r13.split_level, r13.factor_text.c_str(), r13.cofactor_text.c_str(), irr7, r7.split_level,
                  hyp13.absolutely_irreducible && hyp7.absolutely_irreducible)};
}

std::string strip_column(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  std::string line, out;
  int drop = -1;
  bool header = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (header) {
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i] == column) drop = static_cast<int>(i);
      header = false;
    }
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (static_cast<int>(i) != drop) out += cells[i] + ",";
    out += "\n";
  }
  return out;
}

Outcome reproducibility() {
  const auto base = std::filesystem::temp_directory_path() / "curvecount_acceptance";
  std::filesystem::remove_all(base);
  const std::string json = R"({
    "name": "repro", "seed": 424242, "modulus": [1009], "polynomials": ["X*Y - 1", "X^2 + X*Y + 3*Y - 1"],
    "systems": ["X^2 + 1; X^2 + 3", "X^3 + X; 2*X^3 + 1"], "H": [8, 16, 32], "e": [4, 8],
    "N": [3, 5], "nu": 1, "trials": 20, "budget": {"nodes": 200000}, "waivers": []
  })";
  std::vector<std::string> bodies;
  for (unsigned workers : {1U, 3U}) {
    auto c = cc::parse_campaign(json);
    c.workers = workers;
    c.output_dir = (base / ("run" + std::to_string(workers))).string();
    const auto res = cc::run_campaign(c);
    if (res.counting_rows == 0 || res.dynamics_rows == 0) return {false, "campaign produced no rows"};
    bodies.push_back(strip_column(res.counting_csv, "elapsed_ms") + strip_column(res.dynamics_csv, "elapsed_ms"));
  }
  std::filesystem::remove_all(base);
  const bool same = bodies[0] == bodies[1];
  return {same, same ? fmt("two runs (1 and 3 workers) give identical CSV bodies, %zu bytes", bodies[0].size())
                     : std::string("CSV bodies differ between runs")};
}

}  // namespace

int main() {
  unsetenv("CURVECOUNT_SEED");
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no time limit
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "delta formula", 1, delta_formula},
      {2, "counting oracle equivalence", 60, counting_oracle},
      {3, "subgroup machinery", 0, subgroup_machinery},
      {4, "resultant dual path", 0, resultant_dual_path},
      {5, "torsion screen", 0, torsion_screen},
      {6, "lift congruence and height", 0, lift_congruence},
      {7, "interval trend", 300, interval_trend},
      {8, "large-interval sanity", 10, bombieri},
      {9, "integer box counter", 0, integer_box},
      {10, "dynamics oracles", 0, dynamics_oracles},
      {11, "classical cycle consistency", 0, classical_consistency},
      {12, "power-form guard", 0, power_form_guard},
      {13, "absolute irreducibility", 10, absolute_irreducibility},
      {14, "reproducibility", 0, reproducibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.pass = false;
      o.detail += fmt(" [over time limit %.0f s]", c.limit_s);
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %-30s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 14 criteria passed\n", 14 - failures);
  return failures == 0 ? 0 : 1;
}
