#include "curvecount/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "curvecount/bipoly.hpp"
#include "curvecount/parse.hpp"
#include "curvecount/poly.hpp"

namespace curvecount {

namespace {

using Ring = UPolyRing<FieldContext>;

std::string upoly_text(const FieldContext& ctx, const UnivariatePoly& u) {
  BiPolyRing<FieldContext> bring(ctx);
  return BivariatePoly::from_field(CoeffDomain::modular(ctx), bring.from_univariate(u, false)).to_string();
}

UnivariatePoly parse_univariate(const FieldContext& ctx, std::string_view text) {
  const BivariatePoly f = parse_poly(text, CoeffDomain::modular(ctx));
  if (f.degree_y() > 0) throw Error(ErrorCode::InvalidArgument, "map \"" + std::string(text) + "\" uses Y");
  return BiPolyRing<FieldContext>(ctx).specialize_y(f.to_field(), 0);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_monomial(const UnivariatePoly& u) {
  return !u.is_zero() && std::count_if(u.coeffs.begin(), u.coeffs.end(), [](std::uint64_t c) { return c != 0; }) == 1;
}

}  // namespace

RationalMap::RationalMap(const FieldContext& ctx, UnivariatePoly num, UnivariatePoly den) : ctx_(ctx) {
  Ring ring(ctx_);
  num = ring.normalize(std::move(num));
  den = ring.normalize(std::move(den));
  if (den.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "denominator is zero");
  const UnivariatePoly g = ring.gcd(num, den);
  if (g.degree() > 0) throw Error(ErrorCode::NotCoprime, "numerator and denominator share " + upoly_text(ctx_, g));
  const std::uint64_t inv = ctx_.inv(ring.lead(den));
  num_ = ring.scale(num, inv);
  den_ = ring.scale(den, inv);
  degree_ = static_cast<unsigned>(std::max({num_.degree(), den_.degree(), 0}));
  if (degree_ == 0) throw Error(ErrorCode::InvalidArgument, "rational map has degree 0");
}

RationalMap RationalMap::parse(const FieldContext& ctx, std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return RationalMap(ctx, parse_univariate(ctx, text), Ring(ctx).one());
  return RationalMap(ctx, parse_univariate(ctx, text.substr(0, slash)), parse_univariate(ctx, text.substr(slash + 1)));
}

bool RationalMap::is_power_form() const noexcept {
  const bool den_one = den_.degree() == 0;
  if (den_one) return is_monomial(num_) && num_.degree() >= 1;
  return num_.degree() == 0 && is_monomial(den_);
}

std::uint64_t RationalMap::operator()(std::uint64_t x) const {
  Ring ring(ctx_);
  x %= ctx_.modulus();
  const std::uint64_t g = ring.eval(den_, x);
  if (g == 0) return kPole;
  return ctx_.mul(ring.eval(num_, x), ctx_.inv(g));
}

std::string RationalMap::to_string() const {
  if (den_.degree() == 0) return upoly_text(ctx_, num_);
  return "(" + upoly_text(ctx_, num_) + ") / (" + upoly_text(ctx_, den_) + ")";
}

RationalMap compose_maps(const RationalMap& psi, const RationalMap& phi) {
  const FieldContext& ctx = psi.field();
  Ring ring(ctx);
  const unsigned d = psi.degree();
  // psi(a / b) = (sum f_k a^k b^(d-k)) / (sum g_k a^k b^(d-k))
  std::vector<UnivariatePoly> a_pow(d + 1), b_pow(d + 1);
  a_pow[0] = b_pow[0] = ring.one();
  for (unsigned k = 1; k <= d; ++k) {
    a_pow[k] = ring.mul(a_pow[k - 1], phi.num());
    b_pow[k] = ring.mul(b_pow[k - 1], phi.den());
  }
  auto homogenize = [&](const UnivariatePoly& f) {
    UnivariatePoly acc;
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
      if (f.coeffs[k] == 0) continue;
      acc = ring.add(acc, ring.scale(ring.mul(a_pow[k], b_pow[d - k]), f.coeffs[k]));
    }
    return acc;
  };
  UnivariatePoly num = homogenize(psi.num());
  UnivariatePoly den = homogenize(psi.den());
  const UnivariatePoly g = ring.gcd(num, den);
  if (g.degree() > 0) {
    num = ring.quo(num, g);
    den = ring.quo(den, g);
  }
  return RationalMap(ctx, std::move(num), std::move(den));
}

MapSystem::MapSystem(std::vector<RationalMap> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw Error(ErrorCode::InvalidArgument, "a map system needs at least one map");
  for (const auto& m : maps_) {
    if (!(m.field() == maps_.front().field())) throw Error(ErrorCode::DomainMismatch, "maps over different fields");
    same_degree_ = same_degree_ && m.degree() == maps_.front().degree();
    power_form_ = power_form_ || m.is_power_form();
  }
}

MapSystem MapSystem::parse(const FieldContext& ctx, std::string_view text) {
  std::vector<RationalMap> maps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find_first_of("\n;", pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) maps.push_back(RationalMap::parse(ctx, line));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return MapSystem(std::move(maps));
}

unsigned MapSystem::max_degree() const noexcept {
  unsigned d = 0;
  for (const auto& m : maps_) d = std::max(d, m.degree());
  return d;
}

std::string MapSystem::degrees_text() const {
  std::string s;
  for (const auto& m : maps_) s += (s.empty() ? "" : ";") + std::to_string(m.degree());
  return s;
}

RationalMap compose(const MapSystem& sys, const std::vector<unsigned>& word, unsigned cap) {
  if (word.empty()) throw Error(ErrorCode::InvalidArgument, "empty composition word");
  std::uint64_t degree = 1;
  for (unsigned w : word) {
    if (w < 1 || w > sys.size()) {
      throw Error(ErrorCode::InvalidArgument, "map index " + std::to_string(w) + " out of range");
    }
    degree *= sys[w - 1].degree();
    if (degree > cap) {
      throw Error(ErrorCode::DegreeCapExceeded,
                  "composed degree exceeds cap " + std::to_string(cap));
    }
  }
  RationalMap acc = sys[word.front() - 1];
  for (std::size_t i = 1; i < word.size(); ++i) acc = compose_maps(sys[word[i] - 1], acc);
  return acc;
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::T: return "T";
    case Metric::L: return "L";
    case Metric::G: return "G";
  }
  return "?";
}

std::string_view to_string(SearchMode m) {
  switch (m) {
    case SearchMode::Exhaustive: return "exhaustive";
    case SearchMode::Pruned: return "pruned";
    case SearchMode::Sampled: return "sampled";
  }
  return "?";
}

Metric parse_metric(std::string_view s) {
  if (s == "T") return Metric::T;
  if (s == "L") return Metric::L;
  if (s == "G") return Metric::G;
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(s) + "'");
}

SearchMode parse_mode(std::string_view s) {
  if (s == "exhaustive") return SearchMode::Exhaustive;
  if (s == "pruned") return SearchMode::Pruned;
  if (s == "sampled") return SearchMode::Sampled;
  throw Error(ErrorCode::InvalidArgument, "unknown search mode '" + std::string(s) + "'");
}

std::uint64_t enclosing_radius(std::vector<std::uint64_t> values, std::uint64_t p, bool integer_distance) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (integer_distance) return (values.back() - values.front() + 1) / 2;
  std::uint64_t gap = p - values.back() + values.front();
  for (std::size_t i = 1; i < values.size(); ++i) gap = std::max(gap, values[i] - values[i - 1]);
  return (p - gap + 1) / 2;
}

std::uint64_t ratio_group_order(const FieldContext& ctx, const std::vector<std::uint64_t>& values, bool* all_zero) {
  std::uint64_t ref = 0;
  std::uint64_t order = 1;
  for (std::uint64_t v : values) {
    if (v == 0) continue;
    if (ref == 0) {
      ref = ctx.inv(v);
      continue;
    }
    order = lcm_u64(order, ctx.element_order(ctx.mul(v, ref)));
  }
  if (all_zero) *all_zero = ref == 0;
  return order;
}

std::vector<std::uint64_t> simulate_path(const MapSystem& sys, std::uint64_t u, const std::vector<unsigned>& choices) {
  std::vector<std::uint64_t> vals{u % sys.field().modulus()};
  for (unsigned j : choices) {
    if (j < 1 || j > sys.size()) throw Error(ErrorCode::InvalidArgument, "choice out of range");
    const std::uint64_t v = sys[j - 1](vals.back());
    vals.push_back(v);
    if (v == kPole) break;
  }
  return vals;
}

std::uint64_t resimulate(const MapSystem& sys, std::uint64_t u, Metric metric, const std::vector<unsigned>& choices,
                         std::uint64_t cap, bool integer_distance) {
  const std::vector<std::uint64_t> vals = simulate_path(sys, u, choices);
  const std::uint64_t p = sys.field().modulus();
  if (metric == Metric::T) {
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] == kPole || !seen.insert(vals[i]).second) return i;
    }
    return std::min<std::uint64_t>(vals.size(), cap + 1);
  }
  if (!vals.empty() && vals.back() == kPole) {
    throw Error(ErrorCode::NoCompletePath, "path hits a pole");
  }
  if (metric == Metric::L) return enclosing_radius(vals, p, integer_distance);
  return ratio_group_order(sys.field(), vals);
}

namespace {

struct Best {
  std::uint64_t value = ~std::uint64_t{0};
  std::vector<unsigned> witness;
  bool found = false;

  void offer(std::uint64_t v, const std::vector<unsigned>& path) {
    if (!found || v < value || (v == value && path < witness)) {
      value = v;
      witness = path;
      found = true;
    }
  }
};

// Shared state of one tree search.
struct SearchShared {
  const MapSystem& sys;
  const SearchOptions& opts;
  Metric metric;
  std::uint64_t depth_limit;  // T: cap; L/G: N
  std::atomic<std::uint64_t> bound{~std::uint64_t{0}};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> pole_paths{0};
  std::atomic<bool> exhausted{false};

  void lower_bound(std::uint64_t v) {
    std::uint64_t cur = bound.load(std::memory_order_relaxed);
    while (v < cur && !bound.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  }

  bool spend() {
    if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > opts.node_budget) {
      exhausted.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }
};

// Value of a partial path for L/G (monotone under extension).
class PartialMetric {
 public:
  PartialMetric(const SearchShared& sh) : sh_(sh), p_(sh.sys.field().modulus()) {}

  void push(std::uint64_t v) {
    vals_.push_back(v);
    if (sh_.metric == Metric::L) {
      values_.push_back(enclosing_radius(vals_, p_, sh_.opts.integer_distance));
      return;
    }
    const FieldContext& ctx = sh_.sys.field();
    std::uint64_t ref = refs_.empty() ? 0 : refs_.back();
    std::uint64_t order = values_.empty() ? 1 : values_.back();
    if (v != 0) {
      if (ref == 0) {
        ref = ctx.inv(v);
      } else {
        order = lcm_u64(order, ctx.element_order(ctx.mul(v, ref)));
      }
    }
    refs_.push_back(ref);
    values_.push_back(order);
  }
  void pop() {
    vals_.pop_back();
    values_.pop_back();
    if (!refs_.empty()) refs_.pop_back();
  }
  std::uint64_t value() const { return values_.back(); }

 private:
  const SearchShared& sh_;
  std::uint64_t p_;
  std::vector<std::uint64_t> vals_;
  std::vector<std::uint64_t> values_;
  std::vector<std::uint64_t> refs_;
};

// Depth-first search over the subtree whose first choice is `first` (0-based).
Best search_subtree(SearchShared& sh, std::uint64_t u, unsigned first) {
  const MapSystem& sys = sh.sys;
  const bool prune = sh.opts.mode == SearchMode::Pruned;
  const std::size_t s = sys.size();
  Best best;
  auto offer = [&](std::uint64_t v, const std::vector<unsigned>& path) {
    best.offer(v, path);
    sh.lower_bound(v);
  };

  struct Frame {
    std::uint64_t value;
    unsigned next;
    unsigned end;
  };
  std::vector<Frame> frames{{u, first, first + 1}};
  std::vector<unsigned> choices;
  std::unordered_set<std::uint64_t> visited{u};
  PartialMetric partial(sh);
  if (sh.metric != Metric::T) partial.push(u);

  while (!frames.empty()) {
    Frame& top = frames.back();
    const std::uint64_t n = frames.size() - 1;
    // Ties are kept so that every worker reports its lexicographically first optimum.
    const bool hopeless =
        prune && (sh.metric == Metric::T ? n + 1 > sh.bound.load(std::memory_order_relaxed)
                                         : partial.value() > sh.bound.load(std::memory_order_relaxed));
    if (top.next == top.end || hopeless || sh.exhausted.load(std::memory_order_relaxed)) {
      if (sh.metric == Metric::T) {
        visited.erase(top.value);
      } else {
        partial.pop();
      }
      frames.pop_back();
      if (!choices.empty()) choices.pop_back();
      continue;
    }
    const unsigned j = top.next++;
    if (!sh.spend()) continue;
    const std::uint64_t v = sys[j](top.value);
    choices.push_back(j + 1);
    if (sh.metric == Metric::T) {
      if (v == kPole || visited.contains(v)) {
        offer(n + 1, choices);
      } else if (n + 1 == sh.depth_limit) {
        offer(n + 2, choices);
      } else {
        visited.insert(v);
        frames.push_back({v, 0, static_cast<unsigned>(s)});
        continue;
      }
    } else if (v == kPole) {
      sh.pole_paths.fetch_add(1, std::memory_order_relaxed);
    } else {
      partial.push(v);
      if (n + 1 == sh.depth_limit) {
        offer(partial.value(), choices);
        partial.pop();
      } else {
        frames.push_back({v, 0, static_cast<unsigned>(s)});
        continue;
      }
    }
    choices.pop_back();
  }
  return best;
}

Best sample_paths(SearchShared& sh, std::uint64_t u) {
  const MapSystem& sys = sh.sys;
  Rng rng(sh.opts.seed);
  Best best;
  for (std::uint64_t t = 0; t < sh.opts.samples; ++t) {
    std::vector<unsigned> choices;
    std::unordered_set<std::uint64_t> visited{u};
    std::vector<std::uint64_t> vals{u};
    std::uint64_t x = u;
    bool pole = false;
    for (std::uint64_t n = 0; n < sh.depth_limit; ++n) {
      const auto j = static_cast<unsigned>(rng.below(sys.size()));
      choices.push_back(j + 1);
      sh.nodes.fetch_add(1, std::memory_order_relaxed);
      x = sys[j](x);
      if (x == kPole) {
        pole = true;
        break;
      }
      if (sh.metric == Metric::T && !visited.insert(x).second) break;
      vals.push_back(x);
    }
    if (sh.metric == Metric::T) {
      best.offer(resimulate(sys, u, Metric::T, choices, sh.depth_limit), choices);
    } else if (pole) {
      sh.pole_paths.fetch_add(1, std::memory_order_relaxed);
    } else if (sh.metric == Metric::L) {
      best.offer(enclosing_radius(vals, sys.field().modulus(), sh.opts.integer_distance), choices);
    } else {
      best.offer(ratio_group_order(sys.field(), vals), choices);
    }
  }
  return best;
}

MetricReport run_search(const MapSystem& sys, std::uint64_t u, Metric metric, std::uint64_t depth,
                        const SearchOptions& opts) {
  const std::uint64_t p = sys.field().modulus();
  u %= p;
  SearchShared sh{sys, opts, metric, depth};
  MetricReport report;
  report.metric = metric;
  report.mode = opts.mode;

  Best best;
  if (depth == 0) {
    // Only the root: T = 1 (cap 0), L = 0, G = 1.
    const std::vector<std::uint64_t> root{u};
    best.offer(metric == Metric::T ? 1 : metric == Metric::L ? 0 : ratio_group_order(sys.field(), root), {});
  } else if (opts.mode == SearchMode::Sampled) {
    best = sample_paths(sh, u);
  } else {
    const auto s = static_cast<unsigned>(sys.size());
    const unsigned workers = std::max(1u, std::min(opts.workers, s));
    std::vector<Best> results(s);
    if (workers == 1) {
      for (unsigned j = 0; j < s; ++j) results[j] = search_subtree(sh, u, j);
    } else {
      std::vector<std::thread> pool;
      std::atomic<unsigned> next{0};
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (unsigned j = next.fetch_add(1); j < s; j = next.fetch_add(1)) results[j] = search_subtree(sh, u, j);
        });
      }
      for (auto& t : pool) t.join();
    }
    for (const auto& r : results) {
      if (r.found) best.offer(r.value, r.witness);
    }
  }

  report.nodes = sh.nodes.load();
  report.pole_paths = sh.pole_paths.load();
  report.budget_exhausted = sh.exhausted.load();
  report.exact = opts.mode != SearchMode::Sampled && !report.budget_exhausted;
  if (!best.found) {
    if (report.budget_exhausted) throw Error(ErrorCode::BudgetExceeded, "node budget spent before any complete path");
    throw Error(ErrorCode::NoCompletePath, "every path of length " + std::to_string(depth) + " hits a pole");
  }
  report.value = best.value;
  report.witness = std::move(best.witness);
  if (metric == Metric::G) ratio_group_order(sys.field(), simulate_path(sys, u, report.witness), &report.all_zero_orbit);
  return report;
}

}  // namespace

MetricReport collision_time(const MapSystem& sys, std::uint64_t u, std::optional<std::uint64_t> cap,
                            const SearchOptions& opts) {
  return run_search(sys, u, Metric::T, cap.value_or(sys.field().modulus()), opts);
}

MetricReport interval_metric_L(const MapSystem& sys, std::uint64_t u, std::uint64_t n, const SearchOptions& opts) {
  return run_search(sys, u, Metric::L, n, opts);
}

MetricReport group_metric_G(const MapSystem& sys, std::uint64_t u, std::uint64_t n, const SearchOptions& opts) {
  return run_search(sys, u, Metric::G, n, opts);
}

double orbit_L_bound(std::uint64_t p, unsigned d, unsigned nu, std::uint64_t n) {
  const long double dn = std::pow(static_cast<long double>(d), static_cast<long double>(nu));
  const long double a = std::pow(static_cast<long double>(n), dn);
  const long double b = std::pow(static_cast<long double>(p), 1.0L / (2 * dn * dn + dn - 0.5L));
  return static_cast<double>(std::min(a, b));
}

double orbit_G_bound(std::uint64_t p, unsigned d, std::size_t s, std::uint64_t n) {
  const long double N = static_cast<long double>(n), P = static_cast<long double>(p);
  const long double D = d, S = static_cast<long double>(s);
  const long double a = std::sqrt(N) * std::sqrt(P) / (D * std::sqrt(S));
  const long double b = std::pow(N, 1.5L) / (D * D * std::pow(S, 1.5L));
  return static_cast<double>(std::min(a, b));
}

namespace {

std::string most_frequent_block(const std::vector<unsigned>& path, unsigned nu) {
  if (nu == 0 || path.size() < nu) return "";
  std::map<std::vector<unsigned>, std::size_t> freq;
  for (std::size_t i = 0; i + nu <= path.size(); ++i) ++freq[{path.begin() + i, path.begin() + i + nu}];
  const auto best = std::max_element(freq.begin(), freq.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
  std::string s;
  for (unsigned j : best->first) s += (s.empty() ? "" : ".") + std::to_string(j);
  return s;
}

}  // namespace

OrbitReport theorem_orbit_experiments(const MapSystem& sys, std::uint64_t u, const std::vector<std::uint64_t>& n_schedule,
                                      unsigned nu, bool with_l, bool with_g, const SearchOptions& opts) {
  if (with_g && sys.any_power_form()) {
    throw Error(ErrorCode::PowerFormExcluded, "system contains a map of the form alpha X^m");
  }
  if (nu == 0) throw Error(ErrorCode::InvalidArgument, "nu must be at least 1");
  OrbitReport out;
  out.p = sys.field().modulus();
  out.u = u % out.p;
  out.nu = nu;
  out.collision = collision_time(sys, u, std::nullopt, opts);
  const std::size_t s = sys.size();
  const unsigned d = sys.max_degree();

  for (std::uint64_t n : n_schedule) {
    const bool within_t = out.collision.exact && n <= out.collision.value;
    auto fill = [&](Metric metric, MetricReport rep) {
      OrbitRow row;
      row.metric = metric;
      row.n = n;
      if (metric == Metric::L) {
        row.bound_value = orbit_L_bound(out.p, d, nu, n);
        row.comparable = sys.all_same_degree() && d >= 2 && within_t;
      } else {
        row.bound_value = orbit_G_bound(out.p, std::max(d, 2u), s, n);
        row.comparable = within_t;
      }
      row.ratio = row.bound_value > 0 ? static_cast<double>(rep.value) / row.bound_value : 0;
      row.pigeonhole = n >= nu ? static_cast<double>(n - nu) / std::pow(static_cast<double>(s), nu) : 0;
      row.frequent_block = most_frequent_block(rep.witness, nu);
      row.report = std::move(rep);
      out.rows.push_back(std::move(row));
    };
    if (with_l) fill(Metric::L, interval_metric_L(sys, u, n, opts));
    if (with_g) fill(Metric::G, group_metric_G(sys, u, n, opts));
  }
  return out;
}

}  // namespace curvecount
