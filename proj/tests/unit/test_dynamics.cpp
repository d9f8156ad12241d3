#include <cmath>

#include "../oracles.hpp"
#include "curvecount/dynamics.hpp"
#include "support.hpp"

namespace cc = curvecount;

namespace {

cc::MapSystem sys(std::uint64_t p, const char* text) { return cc::MapSystem::parse(cc::FieldContext::make(p), text); }

cc::SearchOptions mode(cc::SearchMode m) {
  cc::SearchOptions o;
  o.mode = m;
  return o;
}

}  // namespace

TEST_CASE("map evaluation and poles") {
  const auto ctx = cc::FieldContext::make(7);
  const auto inv = cc::RationalMap::parse(ctx, "1 / X");
  CHECK(inv(3) == 5);
  CHECK(inv(0) == cc::kPole);
  CHECK(cc::RationalMap::parse(ctx, "X + 1")(6) == 0);
  CHECK(inv.degree() == 1);
  CHECK_CODE(cc::RationalMap::parse(ctx, "X^2 / X"), NotCoprime);
  CHECK_CODE(cc::RationalMap::parse(ctx, "3"), InvalidArgument);
  CHECK_CODE(cc::RationalMap::parse(ctx, "X / 0"), ZeroPolynomial);
  CHECK(cc::RationalMap::parse(ctx, "3*X^2").is_power_form());
  CHECK(cc::RationalMap::parse(ctx, "2 / X^3").is_power_form());
  CHECK_FALSE(cc::RationalMap::parse(ctx, "X^2 + 1").is_power_form());
  CHECK_FALSE(cc::RationalMap::parse(ctx, "X / (X + 1)").is_power_form());
}

TEST_CASE("system parsing") {
  const auto s = cc::MapSystem::parse(cc::FieldContext::make(13), "X^2 + 1  # first\n\n(X + 1) / X; 3*X^2");
  CHECK(s.size() == 3);
  CHECK(s.degrees_text() == "2;1;2");
  CHECK_FALSE(s.all_same_degree());
  CHECK(s.any_power_form());
  CHECK(s.max_degree() == 2);
}

TEST_CASE("composition") {
  const auto s1 = sys(13, "X + 1");
  CHECK(cc::compose(s1, {1, 1}) == cc::RationalMap::parse(s1.field(), "X + 2"));
  const auto s2 = sys(13, "1 / X; X + 1");
  CHECK(cc::compose(s2, {1, 2}) == cc::RationalMap::parse(s2.field(), "(X + 1) / X"));
  CHECK_CODE(cc::compose(sys(13, "X^2"), {1, 1, 1, 1}, 8), DegreeCapExceeded);
  CHECK_CODE(cc::compose(s2, {3}), InvalidArgument);
}

TEST_CASE("composition is associative and matches stepwise evaluation") {
  oracle::Rng rng(17);
  const auto s = sys(101, "X^2 + 3; (X + 1) / (X + 7); 5*X^3 + X");
  for (int i = 0; i < 50; ++i) {
    std::vector<unsigned> w1, w2;
    for (auto n = rng.below(3) + 1; n > 0; --n) w1.push_back(1 + static_cast<unsigned>(rng.below(3)));
    for (auto n = rng.below(3) + 1; n > 0; --n) w2.push_back(1 + static_cast<unsigned>(rng.below(3)));
    std::vector<unsigned> w = w1;
    w.insert(w.end(), w2.begin(), w2.end());
    const auto whole = cc::compose(s, w, 4096);
    const auto split = cc::compose_maps(cc::compose(s, w2, 4096), cc::compose(s, w1, 4096));
    CHECK(whole == split);
    for (std::uint64_t x = 0; x < 101; x += 7) {
      std::uint64_t y = x;
      for (unsigned j : w) y = y == cc::kPole ? y : s[j - 1](y);
      const auto z = whole(x);
      if (y != cc::kPole && z != cc::kPole) CHECK(z == y);
    }
  }
}

TEST_CASE("collision time examples") {
  CHECK(cc::collision_time(sys(7, "X + 1"), 0).value == 7);
  CHECK(cc::collision_time(sys(13, "X^2; X"), 1).value == 1);
  const auto r = cc::collision_time(sys(5, "X + 1; X + 2"), 0, std::nullopt, mode(cc::SearchMode::Exhaustive));
  CHECK(r.value == 3);
  CHECK(r.exact);
  CHECK(cc::resimulate(sys(5, "X + 1; X + 2"), 0, cc::Metric::T, r.witness, 5) == 3);
}

TEST_CASE("L and G examples") {
  CHECK(cc::interval_metric_L(sys(7, "X + 1"), 0, 6).value == 3);
  CHECK(cc::interval_metric_L(sys(7, "X + 1"), 0, 0).value == 0);
  CHECK(cc::group_metric_G(sys(7, "X + 1"), 1, 1).value == 3);
  CHECK(cc::group_metric_G(sys(7, "X + 1"), 1, 0).value == 1);
  // Integer distance on representatives differs from circular distance on wrapped orbits.
  CHECK(cc::enclosing_radius({1, 12}, 13) == 1);
  CHECK(cc::enclosing_radius({1, 12}, 13, true) == 6);
  bool zero = false;
  CHECK(cc::ratio_group_order(cc::FieldContext::make(7), {0, 0}, &zero) == 1);
  CHECK(zero);
}

TEST_CASE("small orbit searches agree with double brute force") {
  struct Case {
    std::uint64_t p;
    const char* text;
    std::uint64_t u, n;
    cc::Metric metric;
  };
  for (const Case& c : {Case{11, "X + 1; X + 3", 0, 3, cc::Metric::L}, Case{13, "X^2; X + 1", 2, 2, cc::Metric::G}}) {
    const auto s = sys(c.p, c.text);
    std::uint64_t best = c.p;
    for (unsigned code = 0; code < (1U << c.n); ++code) {
      std::vector<std::uint64_t> vals{c.u};
      for (unsigned k = 0; k < c.n; ++k) vals.push_back(s[(code >> k) & 1](vals.back()));
      best = std::min(best, c.metric == cc::Metric::L ? oracle::naive_radius(vals, c.p) : oracle::naive_ratio_group(vals, c.p));
    }
    const auto o = mode(cc::SearchMode::Exhaustive);
    const auto got = c.metric == cc::Metric::L ? cc::interval_metric_L(s, c.u, c.n, o) : cc::group_metric_G(s, c.u, c.n, o);
    CHECK(got.value == best);
    CHECK(cc::resimulate(s, c.u, c.metric, got.witness, c.n) == got.value);
  }
}

TEST_CASE("witnesses re-simulate to the reported value") {
  oracle::Rng rng(44);
  const auto s = sys(101, "X^2 + 1; X^2 + 3; 2*X^2 + X");
  for (auto metric : {cc::Metric::T, cc::Metric::L, cc::Metric::G}) {
    for (auto m : {cc::SearchMode::Exhaustive, cc::SearchMode::Pruned, cc::SearchMode::Sampled}) {
      auto o = mode(m);
      o.workers = 3;
      o.samples = 200;
      const auto u = rng.below(101);
      cc::MetricReport r;
      if (metric == cc::Metric::T) r = cc::collision_time(s, u, 8, o);
      if (metric == cc::Metric::L) r = cc::interval_metric_L(s, u, 6, o);
      if (metric == cc::Metric::G) r = cc::group_metric_G(s, u, 6, o);
      CHECK(cc::resimulate(s, u, metric, r.witness, metric == cc::Metric::T ? 8 : 6) == r.value);
      CHECK(r.exact == (m != cc::SearchMode::Sampled));
    }
  }
}

TEST_CASE("pruned results are deterministic across worker counts") {
  const auto s = sys(97, "X^2 + 5; X^2 + 11; X^2 + 2*X");
  auto o1 = mode(cc::SearchMode::Pruned), o4 = o1;
  o4.workers = 4;
  const auto a = cc::interval_metric_L(s, 3, 7, o1), b = cc::interval_metric_L(s, 3, 7, o4);
  CHECK(a.value == b.value);
  CHECK(a.witness == b.witness);
}

TEST_CASE("sampling gives an upper bound on the exact minimum") {
  const auto s = sys(101, "X^2 + 1; X^2 + 3");
  auto so = mode(cc::SearchMode::Sampled);
  so.samples = 50;
  const auto exact = cc::interval_metric_L(s, 2, 8, mode(cc::SearchMode::Exhaustive));
  const auto sampled = cc::interval_metric_L(s, 2, 8, so);
  CHECK(sampled.value >= exact.value);
  CHECK_FALSE(sampled.exact);
}

TEST_CASE("node budget") {
  auto o = mode(cc::SearchMode::Exhaustive);
  o.node_budget = 100;
  const auto r = cc::interval_metric_L(sys(101, "X^2 + 1; X^2 + 3; X^2 + 7"), 1, 12, o);
  CHECK(r.budget_exhausted);
  CHECK_FALSE(r.exact);
  CHECK(r.nodes <= 100 + 3);
}

TEST_CASE("poles truncate paths") {
  // From u = 0 the only map hits a pole immediately.
  const auto s = sys(7, "1 / X");
  CHECK(cc::collision_time(s, 0).value == 1);
  CHECK_CODE(cc::interval_metric_L(s, 0, 2), NoCompletePath);
  const auto mixed = cc::interval_metric_L(sys(7, "1 / X; X + 1"), 0, 2, mode(cc::SearchMode::Exhaustive));
  CHECK(mixed.pole_paths > 0);
}

TEST_CASE("orbit experiments") {
  CHECK_CODE(cc::theorem_orbit_experiments(sys(101, "3*X^2"), 1, {4}, 1, false, true), PowerFormExcluded);
  const auto rep = cc::theorem_orbit_experiments(sys(101, "X^2 + 1; X^2 + 3"), 2, {2, 4}, 1, true, true);
  CHECK(rep.rows.size() == 4);
  for (const auto& row : rep.rows) {
    CHECK(row.comparable);
    CHECK(std::isfinite(row.ratio));
    CHECK(row.bound_value > 0);
  }
  const auto mixed = cc::theorem_orbit_experiments(sys(101, "X^2 + 1; X^3 + 3"), 2, {2}, 1, true, false);
  CHECK_FALSE(mixed.rows.at(0).comparable);
}
