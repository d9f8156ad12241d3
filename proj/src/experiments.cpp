#include "curvecount/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "curvecount/counting.hpp"
#include "curvecount/dynamics.hpp"
#include "curvecount/factor.hpp"
#include "curvecount/parse.hpp"
#include "curvecount/rng.hpp"

namespace curvecount {

FitResult fit_exponent(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& points) {
  FitResult fit;
  std::set<std::uint64_t> distinct;
  for (const auto& [h, count] : points) {
    if (count == 0 || h == 0) {
      ++fit.zero_counts_excluded;
      continue;
    }
    fit.points.emplace_back(h, count);
    distinct.insert(h);
  }
  if (distinct.size() < 3) {
    throw Error(ErrorCode::InsufficientPoints,
                "need at least 3 distinct H with nonzero counts, have " + std::to_string(distinct.size()));
  }
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<long double>(fit.points.size());
  for (const auto& [h, count] : fit.points) {
    const long double x = std::log(static_cast<long double>(h));
    const long double y = std::log(static_cast<long double>(count));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const long double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const long double intercept = (sy - slope * sx) / n;
  long double rss = 0;
  for (const auto& [h, count] : fit.points) {
    const long double r =
        std::log(static_cast<long double>(count)) - (intercept + slope * std::log(static_cast<long double>(h)));
    rss += r * r;
  }
  fit.slope = static_cast<double>(slope);
  fit.intercept = static_cast<double>(intercept);
  fit.residual = static_cast<double>(std::sqrt(rss));
  return fit;
}

bool Campaign::waived(std::string_view hypothesis) const {
  return std::find(waivers.begin(), waivers.end(), hypothesis) != waivers.end();
}

Campaign parse_campaign(std::string_view json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("campaign JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "campaign must be a JSON object");
  static const std::set<std::string> known{"name",   "seed",   "modulus", "polynomials", "systems", "H",
                                           "e",      "N",      "nu",      "trials",      "budget",  "waivers",
                                           "u",      "n_max",  "workers", "output"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw Error(ErrorCode::InvalidArgument, "unknown campaign key '" + key + "'");
  }
  Campaign c;
  try {
    c.name = j.value("name", c.name);
    c.seed = j.value("seed", c.seed);
    c.moduli = j.value("modulus", c.moduli);
    c.polynomials = j.value("polynomials", c.polynomials);
    c.systems = j.value("systems", c.systems);
    c.h = j.value("H", c.h);
    c.e = j.value("e", c.e);
    c.n = j.value("N", c.n);
    c.nu = j.value("nu", c.nu);
    c.trials = j.value("trials", c.trials);
    c.waivers = j.value("waivers", c.waivers);
    c.u = j.value("u", c.u);
    c.n_max = j.value("n_max", c.n_max);
    c.workers = j.value("workers", c.workers);
    c.output_dir = j.value("output", c.output_dir);
    if (j.contains("budget")) {
      const json& b = j.at("budget");
      c.node_budget = b.value("nodes", c.node_budget);
      c.time_budget_ms = b.value("ms", c.time_budget_ms);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("campaign field: ") + e.what());
  }
  if (c.node_budget == 0) throw Error(ErrorCode::InvalidArgument, "budget.nodes must be positive");
  if (c.nu == 0) throw Error(ErrorCode::InvalidArgument, "nu must be at least 1");
  for (const auto& w : c.waivers) {
    if (w != "absolute_irreducibility" && w != "fxyn" && w != "same_degree") {
      throw Error(ErrorCode::InvalidArgument, "unknown waiver '" + w + "'");
    }
  }
  return c;
}

Campaign load_campaign(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_campaign(ss.str());
}

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) row += (i ? "," : "") + csv_field(fields[i]);
  return row + "\n";
}

std::string error_status(const Error& e) { return "error:" + std::string(to_string(e.code())); }

struct PolyInfo {
  std::uint64_t p;
  std::string source;
  BivariatePoly poly;
  std::optional<bool> absolutely_irreducible;
  std::optional<bool> fxyn;
};

struct SystemInfo {
  std::uint64_t p;
  std::string source;
  std::optional<MapSystem> sys;
  std::optional<MetricReport> collision;
};

enum class CellKind { Interval, Subgroup, Orbit };

struct Cell {
  CellKind kind;
  std::size_t item;  // index into polys or systems
  std::uint64_t h = 0, e = 0, n = 0;
};

struct CellOutput {
  std::string counting;
  std::string dynamics;
  std::size_t counting_rows = 0, dynamics_rows = 0;
  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  std::optional<std::pair<std::uint64_t, std::uint64_t>> fit_point;
};

class Appender {
 public:
  Appender(const std::string& counting, const std::string& dynamics, std::size_t cells)
      : counting_(counting, std::ios::trunc), dynamics_(dynamics, std::ios::trunc), ready_(cells) {
    if (!counting_ || !dynamics_) throw Error(ErrorCode::IoError, "cannot open campaign CSV output");
    counting_ << kCountingCsvHeader << '\n';
    dynamics_ << kDynamicsCsvHeader << '\n';
    counting_.flush();
    dynamics_.flush();
  }

  void deliver(std::size_t index, CellOutput out) {
    std::lock_guard lock(mu_);
    ready_[index] = std::move(out);
    while (next_ < ready_.size() && ready_[next_]) {
      counting_ << ready_[next_]->counting;
      dynamics_ << ready_[next_]->dynamics;
      ++next_;
    }
    counting_.flush();
    dynamics_.flush();
  }

  std::vector<std::optional<CellOutput>>& results() { return ready_; }

 private:
  std::mutex mu_;
  std::ofstream counting_, dynamics_;
  std::vector<std::optional<CellOutput>> ready_;
  std::size_t next_ = 0;
};

}  // namespace

CampaignResult run_campaign(const Campaign& c) {
  using nlohmann::ordered_json;
  CampaignResult res;
  res.seed = c.seed;
  std::string seed_source = "config";
  if (const char* env = std::getenv("CURVECOUNT_SEED"); env && *env) {
    try {
      res.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, std::string("CURVECOUNT_SEED is not an integer: ") + env);
    }
    seed_source = "CURVECOUNT_SEED";
  }

  // Parse everything up front; a campaign with a malformed input does not start.
  std::vector<PolyInfo> polys;
  std::vector<SystemInfo> systems;
  ordered_json hypotheses = ordered_json::array();
  ordered_json errors = ordered_json::array();
  std::vector<FieldContext> fields;
  for (std::uint64_t p : c.moduli) {
    const FieldContext field = FieldContext::make(p);
    const CoeffDomain dom = CoeffDomain::modular(field);
    for (const auto& text : c.polynomials) polys.push_back({p, text, parse_poly(text, dom), {}, {}});
    for (const auto& text : c.systems) systems.push_back({p, text, MapSystem::parse(field, text), {}});
  }

  SearchOptions sopts;
  sopts.node_budget = c.node_budget;
  sopts.workers = 1;

  // Hypothesis stamps.
  for (auto& info : polys) {
    ordered_json stamp{{"p", info.p}, {"source", info.source}};
    if (c.trials > 0 && !c.h.empty()) {
      try {
        const AbsoluteIrreducibility ai = absolute_irreducibility(info.poly);
        info.absolutely_irreducible = ai.absolutely_irreducible;
        stamp["absolute_irreducibility"] = {{"holds", ai.absolutely_irreducible},
                                            {"split_level", ai.split_level},
                                            {"waived", c.waived("absolute_irreducibility")}};
      } catch (const Error& e) {
        info.absolutely_irreducible = false;
        stamp["absolute_irreducibility"] = {{"holds", false}, {"error", e.what()},
                                            {"waived", c.waived("absolute_irreducibility")}};
      }
    }
    if (!c.e.empty() && !c.h.empty()) {
      try {
        IrreducibilityOptions io;
        io.degree_cap = std::max<unsigned>(io.degree_cap, static_cast<unsigned>(info.poly.total_degree()) * c.n_max);
        const FxynCheck fx = check_fxyn_hypothesis(info.poly, c.n_max, io);
        info.fxyn = fx.holds;
        stamp["fxyn"] = {{"holds", fx.holds}, {"verified_up_to", fx.verified_up_to}, {"waived", c.waived("fxyn")}};
        if (fx.first_failure) stamp["fxyn"]["first_failure"] = *fx.first_failure;
      } catch (const Error& e) {
        info.fxyn = false;
        stamp["fxyn"] = {{"holds", false}, {"error", e.what()}, {"waived", c.waived("fxyn")}};
      }
    }
    hypotheses.push_back(std::move(stamp));
  }
  for (auto& info : systems) {
    ordered_json stamp{{"p", info.p},
                       {"source", info.source},
                       {"same_degree", info.sys->all_same_degree()},
                       {"power_form", info.sys->any_power_form()}};
    if (!c.n.empty()) {
      try {
        info.collision = collision_time(*info.sys, c.u, std::nullopt, sopts);
        stamp["T"] = {{"value", info.collision->value}, {"exact", info.collision->exact}};
      } catch (const Error& e) {
        stamp["T"] = {{"error", e.what()}};
      }
    }
    hypotheses.push_back(std::move(stamp));
  }

  // Grid cells, in a fixed order.
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (c.trials > 0) {
      for (std::uint64_t h : c.h) cells.push_back({CellKind::Interval, i, h, 0, 0});
    }
    for (std::uint64_t h : c.h) {
      for (std::uint64_t e : c.e) cells.push_back({CellKind::Subgroup, i, h, e, 0});
    }
  }
  for (std::size_t i = 0; i < systems.size(); ++i) {
    for (std::uint64_t n : c.n) cells.push_back({CellKind::Orbit, i, 0, 0, n});
  }

  std::filesystem::create_directories(c.output_dir.empty() ? "." : c.output_dir);
  const std::filesystem::path dir(c.output_dir.empty() ? "." : c.output_dir);
  res.counting_csv = (dir / (c.name + "_counting.csv")).string();
  res.dynamics_csv = (dir / (c.name + "_dynamics.csv")).string();
  res.summary_json = (dir / (c.name + "_summary.json")).string();
  Appender appender(res.counting_csv, res.dynamics_csv, cells.size());

  auto run_cell = [&](std::size_t index) {
    const Cell& cell = cells[index];
    const std::uint64_t cell_seed = res.seed ^ index;
    CellOutput out;
    auto record_error = [&](const Error& e) {
      out.errors.push_back({{"cell", index}, {"code", std::string(to_string(e.code()))}, {"message", e.what()}});
    };
    if (cell.kind != CellKind::Orbit) {
      const PolyInfo& info = polys[cell.item];
      const FieldContext& field = info.poly.domain().field();
      const auto d = static_cast<unsigned>(info.poly.total_degree());
      const std::size_t dl = delta(info.poly);
      std::vector<std::string> row{std::to_string(info.p), std::to_string(d), std::to_string(dl),
                                   std::to_string(cell.h)};
      const bool interval = cell.kind == CellKind::Interval;
      row.push_back(interval ? "" : std::to_string(cell.e));
      const auto t0 = Clock::now();
      const bool blocked = interval ? !info.absolutely_irreducible.value_or(true) &&
                                          !c.waived("absolute_irreducibility")
                                    : !info.fxyn.value_or(true) && !c.waived("fxyn");
      std::vector<std::string> tail;
      if (blocked) {
        tail = {interval ? std::to_string(Rng::derive(cell_seed, 0)) : "", "", "", "", "0"};
        tail.push_back(interval ? "interval" : "subgroup");
        tail.push_back(info.source);
        tail.push_back("hypothesis_failed");
      } else {
        try {
          if (interval) {
            const IntervalReport rep = theorem_II_experiment(info.poly, c.trials, {cell.h}, cell_seed);
            const IntervalRow& r = rep.rows.front();
            tail = {std::to_string(r.trial_seed), std::to_string(r.max_count), num(r.bound_value), num(r.ratio),
                    num(r.elapsed_ms), "interval", info.source, r.admissible ? "ok" : "out_of_range"};
            out.fit_point.emplace(cell.h, r.max_count);
          } else {
            if (cell.h < 1 || cell.h >= info.p) {
              throw Error(ErrorCode::InvalidArgument, "need 1 <= H < p for the interval [1, H]");
            }
            CountOptions co;
            co.budget_ms = c.time_budget_ms;
            const CountResult cr = count_solutions(info.poly, PointSet::interval(field, 1, cell.h - 1),
                                                   PointSet::subgroup(field, cell.e), co);
            const double bound = subgroup_bound(info.p, d, info.poly.degree_x(), info.poly.degree_y(), cell.h, cell.e);
            const double elapsed = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            tail = {"", std::to_string(cr.count), num(bound), num(static_cast<double>(cr.count) / bound),
                    num(elapsed), "subgroup", info.source, "ok"};
          }
        } catch (const Error& e) {
          record_error(e);
          tail = {"", "", "", "", "0", interval ? "interval" : "subgroup", info.source, error_status(e)};
        }
      }
      row.insert(row.end(), tail.begin(), tail.end());
      out.counting = join_row(row);
      out.counting_rows = 1;
    } else {
      const SystemInfo& info = systems[cell.item];
      const MapSystem& sys = *info.sys;
      SearchOptions so = sopts;
      so.seed = cell_seed;
      const bool within_t = info.collision && info.collision->exact && cell.n <= info.collision->value;
      const unsigned d = sys.max_degree();
      for (Metric metric : {Metric::L, Metric::G}) {
        std::vector<std::string> row{std::to_string(info.p), std::to_string(sys.size()), sys.degrees_text(),
                                     std::to_string(c.u % info.p), std::to_string(cell.n),
                                     std::string(to_string(metric))};
        try {
          if (metric == Metric::G && sys.any_power_form()) {
            throw Error(ErrorCode::PowerFormExcluded, "system contains a map of the form alpha X^m");
          }
          const MetricReport rep = metric == Metric::L ? interval_metric_L(sys, c.u, cell.n, so)
                                                       : group_metric_G(sys, c.u, cell.n, so);
          const double bound = metric == Metric::L ? orbit_L_bound(info.p, d, c.nu, cell.n)
                                                   : orbit_G_bound(info.p, std::max(d, 2u), sys.size(), cell.n);
          bool comparable = within_t && rep.exact;
          if (metric == Metric::L) {
            comparable = comparable && d >= 2 && (sys.all_same_degree() || c.waived("same_degree"));
          }
          const std::string status = rep.budget_exhausted ? "budget_exhausted"
                                     : rep.all_zero_orbit ? "all_zero_orbit"
                                                          : "ok";
          row.insert(row.end(), {std::to_string(rep.value), rep.exact ? "1" : "0", std::string(to_string(rep.mode)),
                                 std::to_string(cell_seed), num(bound),
                                 num(bound > 0 ? static_cast<double>(rep.value) / bound : 0), comparable ? "1" : "0",
                                 info.source, status});
        } catch (const Error& e) {
          record_error(e);
          row.insert(row.end(), {"", "0", std::string(to_string(so.mode)), std::to_string(cell_seed), "", "", "0",
                                 info.source, error_status(e)});
        }
        out.dynamics += join_row(row);
        ++out.dynamics_rows;
      }
    }
    appender.deliver(index, std::move(out));
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(c.workers, static_cast<unsigned>(cells.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) run_cell(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Fits of max count against H per (p, polynomial).
  std::map<std::size_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>> fit_points;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const CellOutput& out = *appender.results()[i];
    res.counting_rows += out.counting_rows;
    res.dynamics_rows += out.dynamics_rows;
    res.error_rows += out.errors.size();
    for (const auto& e : out.errors) errors.push_back(e);
    if (out.fit_point) fit_points[cells[i].item].push_back(*out.fit_point);
  }
  ordered_json fits = ordered_json::array();
  for (const auto& [item, pts] : fit_points) {
    ordered_json entry{{"p", polys[item].p}, {"source", polys[item].source}};
    try {
      const FitResult fit = fit_exponent(pts);
      entry["slope"] = fit.slope;
      entry["intercept"] = fit.intercept;
      entry["residual"] = fit.residual;
      entry["points"] = fit.points;
      entry["zero_counts_excluded"] = fit.zero_counts_excluded;
    } catch (const Error& e) {
      entry["error"] = e.what();
    }
    fits.push_back(std::move(entry));
  }

  ordered_json summary{{"name", c.name},
                       {"seed", res.seed},
                       {"seed_source", seed_source},
                       {"cells", cells.size()},
                       {"counting_rows", res.counting_rows},
                       {"dynamics_rows", res.dynamics_rows},
                       {"counting_csv", res.counting_csv},
                       {"dynamics_csv", res.dynamics_csv},
                       {"hypotheses", hypotheses},
                       {"fits", fits},
                       {"errors", errors}};
  res.summary = summary.dump(2);
  std::ofstream js(res.summary_json, std::ios::trunc);
  if (!js) throw Error(ErrorCode::IoError, "cannot write " + res.summary_json);
  js << res.summary << '\n';
  return res;
}

}  // namespace curvecount
