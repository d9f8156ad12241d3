#include "curvecount/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "curvecount/bipoly.hpp"
#include "curvecount/factor.hpp"
#include "curvecount/rng.hpp"

namespace curvecount {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Runs body(chunk_begin, chunk_end, chunk_index) over `workers` contiguous chunks of [0, n).
template <class Body>
void parallel_chunks(std::size_t n, unsigned workers, Body body) {
  workers = std::max(1u, static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    body(std::size_t{0}, n, 0u);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t per = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(n, w * per), hi = std::min(n, lo + per);
    pool.emplace_back([=, &body] { body(lo, hi, w); });
  }
  for (auto& t : pool) t.join();
}

void require_same_field(const BivariatePoly& f, const PointSet& a, const PointSet& b) {
  if (!f.domain().is_modular()) throw Error(ErrorCode::DomainMismatch, "counting needs a polynomial mod p");
  if (a.context().modulus() != f.domain().modulus() || b.context().modulus() != f.domain().modulus()) {
    throw Error(ErrorCode::DomainMismatch, "point sets and polynomial use different primes");
  }
}

}  // namespace

PointSet PointSet::interval(const FieldContext& ctx, std::uint64_t start, std::uint64_t length) {
  if (length >= ctx.modulus()) {
    throw Error(ErrorCode::InvalidArgument, "interval length H = " + std::to_string(length) + " must be below p");
  }
  PointSet s(ctx, Kind::Interval);
  s.start_ = start % ctx.modulus();
  s.length_ = length;
  return s;
}

PointSet PointSet::subgroup(const FieldContext& ctx, std::uint64_t order) {
  PointSet s(ctx, Kind::Subgroup);
  s.subgroup_.emplace(ctx, order);
  s.length_ = order;
  return s;
}

PointSet PointSet::explicit_list(const FieldContext& ctx, std::vector<std::uint64_t> elems) {
  PointSet s(ctx, Kind::Explicit);
  for (auto& x : elems) x %= ctx.modulus();
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  s.list_ = std::move(elems);
  return s;
}

std::uint64_t PointSet::size() const noexcept {
  switch (kind_) {
    case Kind::Interval: return length_ + 1;
    case Kind::Subgroup: return length_;
    case Kind::Explicit: return list_.size();
  }
  return 0;
}

bool PointSet::contains(std::uint64_t x) const {
  const std::uint64_t p = ctx_.modulus();
  if (x >= p) return false;
  switch (kind_) {
    case Kind::Interval: {
      const std::uint64_t offset = x >= start_ ? x - start_ : x + p - start_;
      return offset <= length_;
    }
    case Kind::Subgroup: return subgroup_->contains(x);
    case Kind::Explicit: return std::binary_search(list_.begin(), list_.end(), x);
  }
  return false;
}

std::vector<std::uint64_t> PointSet::elements() const {
  const std::uint64_t p = ctx_.modulus();
  switch (kind_) {
    case Kind::Interval: {
      std::vector<std::uint64_t> out(length_ + 1);
      for (std::uint64_t i = 0; i <= length_; ++i) out[i] = (start_ + i) % p;
      return out;
    }
    case Kind::Subgroup: {
      if (subgroup_->elements()) return *subgroup_->elements();
      std::vector<std::uint64_t> out;
      out.reserve(length_);
      std::uint64_t x = 1;
      for (std::uint64_t i = 0; i < length_; ++i, x = ctx_.mul(x, subgroup_->generator())) out.push_back(x);
      std::sort(out.begin(), out.end());
      return out;
    }
    case Kind::Explicit: return list_;
  }
  return {};
}

std::string PointSet::describe() const {
  switch (kind_) {
    case Kind::Interval: return "interval:" + std::to_string(start_) + "," + std::to_string(length_);
    case Kind::Subgroup: return "subgroup:" + std::to_string(length_);
    case Kind::Explicit: return "list:" + std::to_string(list_.size()) + " elements";
  }
  return "";
}

std::string_view to_string(CountMethod m) { return m == CountMethod::RowSolve ? "row-solve" : "double-loop"; }

CountResult count_solutions(const BivariatePoly& f, const PointSet& a, const PointSet& b, const CountOptions& opts) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "count_solutions of the zero polynomial");
  require_same_field(f, a, b);
  const auto t0 = Clock::now();
  const FieldContext& field = f.domain().field();
  const std::uint64_t p = field.modulus();
  const BiPoly<FieldContext> ff = f.to_field();
  BiPolyRing<FieldContext> bring(field);
  UPolyRing<FieldContext> ring(field);
  const std::vector<std::uint64_t> rows = a.elements();
  const std::vector<std::uint64_t> cols = b.elements();

  struct Chunk {
    std::uint64_t count = 0;
    std::uint64_t rows_done = 0;
    bool stopped = false;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> witnesses;
  };
  const unsigned workers = std::max(1u, opts.workers);
  std::vector<Chunk> chunks(workers);

  parallel_chunks(rows.size(), workers, [&](std::size_t lo, std::size_t hi, unsigned w) {
    Chunk& c = chunks[w];
    auto hit = [&](std::uint64_t x, std::uint64_t y) {
      ++c.count;
      if (c.witnesses.size() < kMaxWitnesses) c.witnesses.emplace_back(x, y);
    };
    for (std::size_t r = lo; r < hi; ++r) {
      if (opts.budget_ms > 0 && millis_since(t0) > static_cast<double>(opts.budget_ms)) {
        c.stopped = true;
        return;
      }
      const std::uint64_t x = rows[r];
      if (opts.method == CountMethod::DoubleLoop) {
        for (std::uint64_t y : cols) {
          if (bring.eval(ff, x, y) == 0) hit(x, y);
        }
      } else {
        const UnivariatePoly row = bring.specialize_x(ff, x);
        if (row.is_zero()) {
          for (std::uint64_t y : cols) hit(x, y);
        } else if (row.degree() > 0) {
          std::vector<std::uint64_t> roots;
          if (p <= opts.scan_modulus) {
            for (std::uint64_t y = 0; y < p; ++y) {
              if (ring.eval(row, y) == 0) roots.push_back(y);
            }
          } else {
            roots = roots_in_prime_field(field, row);
          }
          for (std::uint64_t y : roots) {
            if (b.contains(y)) hit(x, y);
          }
        }
      }
      ++c.rows_done;
    }
  });

  CountResult out;
  out.method = opts.method;
  std::uint64_t rows_done = 0;
  bool stopped = false;
  for (auto& c : chunks) {
    out.count += c.count;
    rows_done += c.rows_done;
    stopped = stopped || c.stopped;
    for (auto& wt : c.witnesses) {
      if (out.witnesses.size() < kMaxWitnesses) out.witnesses.push_back(wt);
    }
  }
  out.elapsed_ms = millis_since(t0);
  if (stopped) {
    throw BudgetExceeded("count stopped after " + std::to_string(rows_done) + " of " + std::to_string(rows.size()) +
                             " rows",
                         out.count, rows_done);
  }
  return out;
}

CountResult count_rational_image(const RationalMap& psi, const PointSet& i, const PointSet& j) {
  const std::uint64_t p = psi.field().modulus();
  if (i.context().modulus() != p || j.context().modulus() != p) {
    throw Error(ErrorCode::DomainMismatch, "point sets and map use different primes");
  }
  const auto t0 = Clock::now();
  std::set<std::uint64_t> image;
  CountResult out;
  out.method = CountMethod::RowSolve;
  for (std::uint64_t x : i.elements()) {
    const std::uint64_t v = psi(x);
    if (v == kPole || !j.contains(v)) continue;
    if (image.insert(v).second && out.witnesses.size() < kMaxWitnesses) out.witnesses.emplace_back(x, v);
  }
  out.count = image.size();
  out.elapsed_ms = millis_since(t0);
  return out;
}

namespace {

// Primes just below 2^61 used to locate integer roots through roots mod q.
const FieldContext& root_prime(std::size_t index) {
  static std::mutex mu;
  static std::vector<FieldContext> primes;
  std::lock_guard lock(mu);
  while (primes.size() <= index) {
    std::uint64_t q = primes.empty() ? (std::uint64_t{1} << 61) - 1 : primes.back().modulus() - 2;
    while (!is_prime_u64(q)) q -= 2;
    primes.push_back(FieldContext::make(q));
  }
  return primes[index];
}

BigInt horner(const std::vector<BigInt>& c, const BigInt& y) {
  BigInt acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * y + c[i];
  return acc;
}

// Integer roots of sum c[j] Y^j lying in [lo, hi]; c is not identically zero.
std::vector<std::int64_t> integer_roots_in(const std::vector<BigInt>& c, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  std::size_t low = 0;
  while (c[low] == 0) ++low;
  if (low > 0 && lo <= 0 && 0 <= hi) out.push_back(0);
  if (c.size() - 1 == low) return out;
  const std::vector<BigInt> rest(c.begin() + static_cast<std::ptrdiff_t>(low), c.end());

  for (std::size_t k = 0;; ++k) {
    const FieldContext& q = root_prime(k);
    const BigInt qb(static_cast<unsigned long>(q.modulus()));
    std::vector<std::uint64_t> red(rest.size());
    for (std::size_t j = 0; j < rest.size(); ++j) {
      BigInt r = rest[j] % qb;
      if (r < 0) r += qb;
      red[j] = r.get_ui();
    }
    const UnivariatePoly u = UPolyRing<FieldContext>(q).from_coeffs(std::move(red));
    if (u.is_zero()) continue;
    for (std::uint64_t r : roots_in_prime_field(q, u)) {
      // |y| < 2^60 < q / 2, so each residue has at most one candidate in range.
      const std::int64_t y = r <= q.modulus() / 2 ? static_cast<std::int64_t>(r)
                                                   : -static_cast<std::int64_t>(q.modulus() - r);
      if (y == 0 || y < lo || y > hi) continue;
      if (horner(rest, BigInt(static_cast<long>(y))) == 0) out.push_back(y);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
}

}  // namespace

BoxCount count_integer_box(const BivariatePoly& fz, std::int64_t k, std::int64_t l, std::uint64_t h,
                           bool collect_points) {
  if (!fz.domain().is_integer()) throw Error(ErrorCode::DomainMismatch, "box counting needs an integer polynomial");
  if (fz.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "box count of the zero polynomial");
  if (h > kMaxBoxSide) throw Error(ErrorCode::InvalidArgument, "box side exceeds 10^6");
  constexpr std::int64_t kCoordLimit = std::int64_t{1} << 59;
  if (std::llabs(k) > kCoordLimit || std::llabs(l) > kCoordLimit) {
    throw Error(ErrorCode::InvalidArgument, "box corner out of range");
  }
  const auto hi_y = l + static_cast<std::int64_t>(h);
  const auto dy = static_cast<std::size_t>(std::max(fz.degree_y(), 0));
  // coeff_terms[j] lists (i, a_ij) for the Y^j coefficient.
  std::vector<std::vector<std::pair<unsigned, BigInt>>> coeff_terms(dy + 1);
  for (const auto& [e, c] : fz.terms()) coeff_terms[e.y].emplace_back(e.x, c);

  BoxCount out;
  std::vector<BigInt> c(dy + 1);
  for (std::uint64_t i = 0; i <= h; ++i) {
    const std::int64_t x = k + static_cast<std::int64_t>(i);
    const BigInt xb(static_cast<long>(x));
    bool all_zero = true;
    for (std::size_t j = 0; j <= dy; ++j) {
      c[j] = 0;
      for (const auto& [ex, a] : coeff_terms[j]) {
        BigInt xp;
        mpz_pow_ui(xp.get_mpz_t(), xb.get_mpz_t(), ex);
        c[j] += a * xp;
      }
      all_zero = all_zero && c[j] == 0;
    }
    if (all_zero) {
      out.degenerate_rows.push_back(x);
      out.count += h + 1;
      if (collect_points) {
        for (std::int64_t y = l; y <= hi_y; ++y) out.points.push_back({x, y});
      }
      continue;
    }
    std::vector<std::int64_t> ys;
    if (h <= kBoxScanLimit) {
      for (std::int64_t y = l; y <= hi_y; ++y) {
        if (horner(c, BigInt(static_cast<long>(y))) == 0) ys.push_back(y);
      }
    } else {
      ys = integer_roots_in(c, l, hi_y);
    }
    out.count += ys.size();
    if (collect_points) {
      for (std::int64_t y : ys) out.points.push_back({x, y});
    }
  }
  return out;
}

double admissible_interval_length(std::uint64_t p, unsigned d, std::size_t delta) {
  const long double expo = 1.0L / ((d - 0.5L) * static_cast<long double>(delta) + 0.5L);
  return static_cast<double>(std::pow(static_cast<long double>(p), expo));
}

IntervalReport theorem_II_experiment(const BivariatePoly& f, std::uint64_t trials,
                                     const std::vector<std::uint64_t>& h_schedule, std::uint64_t seed,
                                     unsigned workers) {
  if (!f.domain().is_modular()) throw Error(ErrorCode::DomainMismatch, "interval experiment needs F mod p");
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "interval experiment on the zero polynomial");
  const FieldContext& field = f.domain().field();
  IntervalReport rep;
  rep.p = field.modulus();
  rep.d = static_cast<unsigned>(f.total_degree());
  rep.delta = delta(f);
  rep.admissible_h = admissible_interval_length(rep.p, rep.d, rep.delta);
  rep.seed = seed;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> fit_points;
  for (std::size_t hi = 0; hi < h_schedule.size(); ++hi) {
    const auto t0 = Clock::now();
    IntervalRow row;
    row.h = h_schedule[hi];
    row.trials = trials;
    row.trial_seed = Rng::derive(seed, hi);
    row.admissible = static_cast<double>(row.h) <= rep.admissible_h;
    Rng rng(row.trial_seed);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> corners(trials);
    for (auto& [k, l] : corners) {
      k = rng.below(rep.p);
      l = rng.below(rep.p);
    }
    row.counts.assign(trials, 0);
    parallel_chunks(trials, workers, [&](std::size_t lo, std::size_t hi2, unsigned) {
      for (std::size_t t = lo; t < hi2; ++t) {
        row.counts[t] = count_solutions(f, PointSet::interval(field, corners[t].first, row.h),
                                        PointSet::interval(field, corners[t].second, row.h))
                            .count;
      }
    });
    if (trials > 0) {
      row.max_count = *std::max_element(row.counts.begin(), row.counts.end());
      row.mean_count = static_cast<double>(std::accumulate(row.counts.begin(), row.counts.end(), std::uint64_t{0})) /
                       static_cast<double>(trials);
    }
    row.bound_value = std::pow(static_cast<double>(row.h), 1.0 / rep.d);
    row.ratio = row.bound_value > 0 ? static_cast<double>(row.max_count) / row.bound_value : 0;
    row.elapsed_ms = millis_since(t0);
    if (row.h >= 1 && trials > 0) fit_points.emplace_back(row.h, row.max_count);
    rep.rows.push_back(std::move(row));
  }
  try {
    rep.fit = fit_exponent(fit_points);
  } catch (const Error& e) {
    rep.fit_error = e.what();
  }
  return rep;
}

BombieriCheck bombieri_sanity(const BivariatePoly& f, std::uint64_t h, std::uint64_t seed) {
  if (!f.domain().is_modular()) throw Error(ErrorCode::DomainMismatch, "sanity check needs F mod p");
  const FieldContext& field = f.domain().field();
  Rng rng(seed);
  BombieriCheck out;
  out.k = rng.below(field.modulus());
  out.l = rng.below(field.modulus());
  out.count =
      count_solutions(f, PointSet::interval(field, out.k, h), PointSet::interval(field, out.l, h)).count;
  out.main_term = static_cast<double>(h) * static_cast<double>(h) / static_cast<double>(field.modulus());
  out.ratio = out.main_term > 0 ? static_cast<double>(out.count) / out.main_term : 0;
  return out;
}

double subgroup_bound(std::uint64_t p, unsigned d, int d_x, int d_y, std::uint64_t h, std::uint64_t e) {
  const double dx = d_x, dyy = d_y, dd = d, ee = static_cast<double>(e);
  const double inner = std::max({dd * ee / std::sqrt(static_cast<double>(p)), std::pow(dd, 2.0 / 3.0) * std::cbrt(ee),
                                 std::sqrt(dx) * dyy * dyy});
  return std::sqrt(dx) * std::sqrt(static_cast<double>(h)) * inner;
}

SubgroupReport theorem_IG_experiment(const BivariatePoly& f, const std::vector<std::uint64_t>& h_schedule,
                                     const std::vector<std::uint64_t>& e_schedule, unsigned n_max, unsigned workers) {
  if (!f.domain().is_modular()) throw Error(ErrorCode::DomainMismatch, "subgroup experiment needs F mod p");
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "subgroup experiment on the zero polynomial");
  const FieldContext& field = f.domain().field();
  SubgroupReport rep;
  rep.p = field.modulus();
  rep.d = static_cast<unsigned>(f.total_degree());
  rep.d_x = f.degree_x();
  rep.d_y = f.degree_y();
  rep.n_max = n_max;
  IrreducibilityOptions iopts;
  iopts.degree_cap = std::max(iopts.degree_cap, rep.d * std::max(n_max, 1u));
  const FxynCheck check = check_fxyn_hypothesis(f, n_max, iopts);
  rep.hypothesis_holds = check.holds;
  rep.hypothesis_failure = check.first_failure;

  CountOptions copts;
  copts.workers = workers;
  for (std::uint64_t h : h_schedule) {
    if (h < 1 || h >= rep.p) throw Error(ErrorCode::InvalidArgument, "need 1 <= H < p for the interval [1, H]");
    for (std::uint64_t e : e_schedule) {
      const auto t0 = Clock::now();
      SubgroupRow row;
      row.h = h;
      row.e = e;
      row.count = count_solutions(f, PointSet::interval(field, 1, h - 1), PointSet::subgroup(field, e), copts).count;
      row.bound_value = subgroup_bound(rep.p, rep.d, rep.d_x, rep.d_y, h, e);
      row.ratio = static_cast<double>(row.count) / row.bound_value;
      row.elapsed_ms = millis_since(t0);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

LiftChainReport lift_chain(const BivariatePoly& f, std::uint64_t seed, unsigned max_resamples) {
  if (!f.domain().is_modular()) throw Error(ErrorCode::DomainMismatch, "lift chain needs F mod p");
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "lift chain of the zero polynomial");
  const FieldContext& field = f.domain().field();
  const std::uint64_t p = field.modulus();
  const auto h = static_cast<std::int64_t>((p - 1) / 2);

  LiftChainReport rep{static_cast<std::uint64_t>(h), 0, 0, 0, 0, delta(f), static_cast<unsigned>(f.total_degree()),
                      LiftedPoly{BivariatePoly(CoeffDomain::integers()), {}, 0, {}, p, {}},
                      BivariatePoly(f.domain()), false, false, false, 0};

  // All solutions, with representatives in [-h, h].
  std::vector<IntPoint> sols;
  const PointSet all = PointSet::interval(field, 0, p - 1);
  BiPolyRing<FieldContext> bring(field);
  const BiPoly<FieldContext> ff = f.to_field();
  for (std::uint64_t x = 0; x < p; ++x) {
    const UnivariatePoly row = bring.specialize_x(ff, x);
    if (row.degree() < 1) {
      if (row.is_zero()) throw Error(ErrorCode::InvalidArgument, "F has a vertical line component");
      continue;
    }
    for (std::uint64_t y : roots_in_prime_field(field, row)) {
      auto sym = [&](std::uint64_t t) {
        return t <= static_cast<std::uint64_t>(h) ? static_cast<std::int64_t>(t)
                                                  : static_cast<std::int64_t>(t) - static_cast<std::int64_t>(p);
      };
      sols.push_back({sym(x), sym(y)});
    }
  }
  rep.n = sols.size();
  if (rep.n == 0) throw Error(ErrorCode::InsufficientPoints, "F has no solutions");

  // side = floor(2 d h / sqrt(N)), exactly.
  BigInt num = BigInt(static_cast<unsigned long>(2 * rep.d)) * static_cast<unsigned long>(h);
  num = num * num / static_cast<unsigned long>(rep.n);
  BigInt side;
  mpz_sqrt(side.get_mpz_t(), num.get_mpz_t());
  rep.side = side.get_ui();
  if (rep.side == 0) throw Error(ErrorCode::InsufficientPoints, "sub-square side is zero");
  const auto s = static_cast<std::int64_t>(rep.side);

  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<IntPoint>> tiles;
  for (const IntPoint& pt : sols) tiles[{(pt.x + h) / s, (pt.y + h) / s}].push_back(pt);
  std::vector<std::pair<std::int64_t, std::int64_t>> order;
  for (const auto& [key, pts] : tiles) {
    if (pts.size() + 1 >= rep.delta) order.push_back(key);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](const auto& a, const auto& b) { return tiles[a].size() > tiles[b].size(); });
  if (order.empty()) {
    throw Error(ErrorCode::InsufficientPoints,
                "no sub-square of side " + std::to_string(rep.side) + " holds delta - 1 solutions");
  }

  Rng rng(seed);
  for (const auto& key : order) {
    const std::int64_t x0 = -h + key.first * s - 1;
    const std::int64_t y0 = -h + key.second * s - 1;
    const BivariatePoly shifted = shift(f, field.from_int(x0), field.from_int(y0));
    std::vector<IntPoint> pts;
    for (const IntPoint& pt : tiles[key]) pts.push_back({pt.x - x0, pt.y - y0});
    const Exponent pivot = shifted.terms().rbegin()->first;
    for (unsigned attempt = 0; attempt < max_resamples; ++attempt) {
      for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.below(i)]);
      try {
        rep.lift = lift_construction(shifted, pivot, pts);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularSystem) throw;
        ++rep.resamples;
        continue;
      }
      rep.x0 = x0;
      rep.y0 = y0;
      rep.shifted = shifted;
      rep.congruences = lift_congruences_hold(rep.lift, shifted);
      rep.height_bound = lift_height_bound_holds(rep.lift.v, rep.delta, rep.d, rep.h, rep.n);
      for (const auto& [e, u] : rep.lift.u) {
        rep.height_bound = rep.height_bound && lift_height_bound_holds(u, rep.delta, rep.d, rep.h, rep.n);
      }
      std::uint64_t reach = 0;
      for (const IntPoint& pt : sols) {
        reach = std::max<std::uint64_t>(reach, static_cast<std::uint64_t>(std::max(std::llabs(pt.x - x0),
                                                                                    std::llabs(pt.y - y0))));
      }
      const BigInt limit = lift_quotient_numerator(rep.lift, reach);
      const BigInt pb(static_cast<unsigned long>(p));
      rep.quotients = std::all_of(sols.begin(), sols.end(), [&](const IntPoint& pt) {
        const BigInt val = rep.lift.lifted.eval(BigInt(static_cast<long>(pt.x - x0)), BigInt(static_cast<long>(pt.y - y0)));
        return val % pb == 0 && abs(val) <= limit;
      });
      return rep;
    }
  }
  throw Error(ErrorCode::SingularSystem, "every sampled system was singular");
}

}  // namespace curvecount
