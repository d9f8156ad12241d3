// Command-line front end for the curvecount library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "curvecount/counting.hpp"
#include "curvecount/dynamics.hpp"
#include "curvecount/experiments.hpp"
#include "curvecount/factor.hpp"
#include "curvecount/lift.hpp"
#include "curvecount/parse.hpp"
#include "curvecount/resultant.hpp"

namespace cc = curvecount;
using ordered_json = nlohmann::ordered_json;

namespace {

// Malformed flag values; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Human, Csv, Json };

struct Common {
  std::string format = "human";
  unsigned workers = 1;
};

Format format_of(const Common& c) {
  if (c.format == "csv") return Format::Csv;
  if (c.format == "json") return Format::Json;
  return Format::Human;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

// "@path" reads the file; anything else is taken literally.
std::string resolve(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw cc::Error(cc::ErrorCode::IoError, "cannot read " + arg.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return trim(ss.str());
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t value) {
  if (opt->count() == 0) {
    if (const char* env = std::getenv("CURVECOUNT_SEED"); env && *env) return std::stoull(env);
  }
  return value;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(s, &used);
    if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

cc::PointSet parse_set(const cc::FieldContext& ctx, const std::string& spec, const std::string& flag) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError(flag + ": expected interval:K,H | subgroup:e | list:a,b,...");
  const std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
  if (kind == "interval") {
    const auto parts = split(rest, ',');
    if (parts.size() != 2) throw UsageError(flag + ": interval needs K,H");
    return cc::PointSet::interval(ctx, parse_u64(parts[0], flag + " start"), parse_u64(parts[1], flag + " length"));
  }
  if (kind == "subgroup") return cc::PointSet::subgroup(ctx, parse_u64(rest, flag + " order"));
  if (kind == "list") {
    std::vector<std::uint64_t> elems;
    for (const auto& part : split(rest, ',')) {
      if (!part.empty()) elems.push_back(parse_u64(part, flag + " element"));
    }
    return cc::PointSet::explicit_list(ctx, std::move(elems));
  }
  throw UsageError(flag + ": unknown set kind '" + kind + "'");
}

cc::CoeffDomain modular(std::uint64_t p) { return cc::CoeffDomain::modular(p); }

std::string csv_cell(const ordered_json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ";") + (x.is_string() ? x.get<std::string>() : x.dump());
    return csv_cell(ordered_json(s));
  }
  return v.dump();
}

// Emits one record (csv/json); human output is written by each command.
void emit_record(Format f, const ordered_json& rec) {
  if (f == Format::Json) {
    std::cout << rec.dump(2) << '\n';
    return;
  }
  std::string head, row;
  bool first = true;
  for (const auto& [k, v] : rec.items()) {
    head += (first ? "" : ",") + k;
    row += (first ? "" : ",") + csv_cell(v);
    first = false;
  }
  std::cout << head << '\n' << row << '\n';
}

void emit_table(Format f, const std::vector<std::string>& columns, const std::vector<ordered_json>& rows,
                const ordered_json& meta) {
  if (f == Format::Json) {
    ordered_json doc = meta;
    doc["rows"] = rows;
    std::cout << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) std::cout << (i ? "," : "") << columns[i];
  std::cout << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      std::cout << (i ? "," : "") << (r.contains(columns[i]) ? csv_cell(r[columns[i]]) : "");
    }
    std::cout << '\n';
  }
}

std::string point_list(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pts) {
  std::string s;
  for (const auto& [x, y] : pts) s += (s.empty() ? "" : " ") + ("(" + std::to_string(x) + "," + std::to_string(y) + ")");
  return s;
}

std::string word_text(const std::vector<unsigned>& w) {
  std::string s;
  for (unsigned j : w) s += (s.empty() ? "" : ",") + std::to_string(j);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact point counting on plane curves over F_p and metrics of semigroup dynamics"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"human", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--workers", common.workers, "Worker threads for library calls")->capture_default_str();

  std::uint64_t p = 0;
  std::string poly;
  auto add_p = [&](CLI::App* sub) { sub->add_option("--p", p, "Prime modulus")->required(); };
  auto add_poly = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("--poly", poly, "Polynomial in X, Y (inline or @file)");
    if (required) o->required();
    return o;
  };

  // delta
  auto* delta_cmd = app.add_subcommand("delta", "Size of the divisor closure of the support");
  bool delta_integer = false;
  delta_cmd->add_option("--p", p, "Prime modulus (omit with --integer)");
  delta_cmd->add_flag("--integer", delta_integer, "Read coefficients over the integers");
  add_poly(delta_cmd);

  // irreducible
  auto* irr_cmd = app.add_subcommand("irreducible", "Irreducibility over F_p, absolute irreducibility, F(X,Y^n)");
  bool irr_absolute = false;
  unsigned yn_max = 0;
  unsigned degree_cap = 6;
  add_p(irr_cmd);
  add_poly(irr_cmd);
  irr_cmd->add_flag("--absolute", irr_absolute, "Test over F_{p^k} for k up to the degree");
  irr_cmd->add_option("--yn-max", yn_max, "Also test F(X, Y^n) for n = 1..N");
  irr_cmd->add_option("--degree-cap", degree_cap, "Largest total degree accepted")->capture_default_str();

  // count
  auto* count_cmd = app.add_subcommand("count", "N_F(A, B) for intervals, subgroups or explicit sets");
  std::string set_a, set_b;
  bool oracle = false;
  bool verbose = false;
  std::uint64_t budget_ms = 0;
  add_p(count_cmd);
  add_poly(count_cmd);
  count_cmd->add_option("--set-a", set_a, "interval:K,H | subgroup:e | list:a,b,...")->required();
  count_cmd->add_option("--set-b", set_b, "interval:K,H | subgroup:e | list:a,b,...")->required();
  count_cmd->add_flag("--oracle", oracle, "Use the double loop instead of row solving");
  count_cmd->add_option("--budget-ms", budget_ms, "Wall-clock budget (0 = none)");
  count_cmd->add_flag("--verbose", verbose, "Print witnesses");

  // image-count
  auto* image_cmd = app.add_subcommand("image-count", "#(psi(I) ∩ J) for a rational map psi = f / g");
  std::string map_text, set_i, set_j;
  add_p(image_cmd);
  image_cmd->add_option("--map", map_text, "\"f / g\" or \"f\" in X (inline or @file)")->required();
  image_cmd->add_option("--set-i", set_i, "Source set")->required();
  image_cmd->add_option("--set-j", set_j, "Target set")->required();

  // resultant
  auto* res_cmd = app.add_subcommand("resultant", "Res_X(A(X,U), B(X,V)), or R_a for F with --shift");
  std::string poly_b;
  std::uint64_t shift_a = 0;
  std::string method = "auto";
  add_p(res_cmd);
  add_poly(res_cmd);
  auto* shift_opt = res_cmd->add_option("--shift", shift_a, "Compute R_a = Res_X(F(X,U), F(X+a,V))");
  auto* polyb_opt = res_cmd->add_option("--poly-b", poly_b, "Second polynomial B(X, Y)");
  shift_opt->excludes(polyb_opt);
  res_cmd->add_option("--method", method, "auto | interpolation | sylvester")
      ->check(CLI::IsMember({"auto", "interpolation", "sylvester"}));

  // torsion-check
  auto* tor_cmd = app.add_subcommand("torsion-check", "Torsion-form recognition and divisor search");
  std::uint64_t tor_shift = 0;
  bool tor_all = false;
  add_p(tor_cmd);
  add_poly(tor_cmd);
  auto* tor_shift_opt = tor_cmd->add_option("--shift", tor_shift, "Search divisors of R_a built from F");
  auto* tor_all_opt = tor_cmd->add_flag("--all-shifts", tor_all, "Search R_a for every a = 1..p-1");
  tor_shift_opt->excludes(tor_all_opt);

  // lift
  auto* lift_cmd = app.add_subcommand("lift", "Integer lift of F from small solutions, with its checks");
  std::uint64_t seed = 1;
  add_p(lift_cmd);
  add_poly(lift_cmd);
  auto* lift_seed = lift_cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();

  // box-count
  auto* box_cmd = app.add_subcommand("box-count", "Integer points of Fz = 0 in [K,K+H] x [L,L+H]");
  std::int64_t box_k = 0, box_l = 0;
  std::uint64_t box_h = 0;
  bool box_points = false;
  add_poly(box_cmd);
  box_cmd->add_option("--K", box_k, "Left end of the x range")->required();
  box_cmd->add_option("--L", box_l, "Left end of the y range")->required();
  box_cmd->add_option("--H", box_h, "Side length H")->required();
  box_cmd->add_flag("--points", box_points, "List the points");

  // orbit
  auto* orbit_cmd = app.add_subcommand("orbit", "Collision time T and the metrics L(N), G(N)");
  std::string system_text, metric_text = "T", mode_text = "pruned";
  std::uint64_t orbit_u = 0, orbit_n = 0, node_budget = 1000000, samples = 1000;
  std::optional<std::uint64_t> cap;
  unsigned nu = 1;
  bool integer_distance = false;
  add_p(orbit_cmd);
  orbit_cmd->add_option("--system", system_text, "Maps, one per line or ';'-separated (inline or @file)")
      ->required();
  orbit_cmd->add_option("--u", orbit_u, "Starting value")->required();
  orbit_cmd->add_option("--N", orbit_n, "Path length for L and G");
  orbit_cmd->add_option("--cap", cap, "Depth cap for T (default p)");
  orbit_cmd->add_option("--metric", metric_text, "T | L | G")->check(CLI::IsMember({"T", "L", "G"}))->capture_default_str();
  orbit_cmd->add_option("--mode", mode_text, "exhaustive | pruned | sampled")
      ->check(CLI::IsMember({"exhaustive", "pruned", "sampled"}))
      ->capture_default_str();
  orbit_cmd->add_option("--budget", node_budget, "Node budget")->capture_default_str();
  orbit_cmd->add_option("--samples", samples, "Paths drawn in sampled mode")->capture_default_str();
  auto* orbit_seed = orbit_cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  orbit_cmd->add_option("--nu", nu, "nu for the L bound column")->capture_default_str();
  orbit_cmd->add_flag("--integer-distance", integer_distance, "Use |a - b| on representatives");

  // campaign
  auto* camp_cmd = app.add_subcommand("campaign", "Run a verification campaign from a JSON file");
  std::string config, out_dir;
  camp_cmd->add_option("--config", config, "Campaign JSON")->required();
  camp_cmd->add_option("--out", out_dir, "Output directory (overrides the file)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  const Format fmt = format_of(common);
  try {
    if (delta_cmd->parsed()) {
      if (!delta_integer && p == 0) throw UsageError("--p is required unless --integer is given");
      const cc::BivariatePoly f =
          cc::parse_poly(resolve(poly), delta_integer ? cc::CoeffDomain::integers() : modular(p));
      const std::size_t d = cc::delta(f);
      if (fmt == Format::Human) {
        std::cout << d << '\n';
      } else {
        emit_record(fmt, {{"p", delta_integer ? 0 : p}, {"poly", f.to_string()}, {"delta", d}});
      }
    } else if (irr_cmd->parsed()) {
      const cc::BivariatePoly f = cc::parse_poly(resolve(poly), modular(p));
      cc::IrreducibilityOptions opts;
      opts.degree_cap = degree_cap;
      ordered_json rec{{"p", p}, {"poly", f.to_string()}, {"irreducible", cc::is_irreducible_bivariate(f, opts)}};
      if (irr_absolute) {
        const cc::AbsoluteIrreducibility ai = cc::absolute_irreducibility(f, opts);
        rec["absolutely_irreducible"] = ai.absolutely_irreducible;
        rec["split_level"] = ai.split_level;
        rec["factor"] = ai.factor_text;
        rec["cofactor"] = ai.cofactor_text;
        rec["certificate_verified"] = ai.certificate_verified;
      }
      if (yn_max > 0) {
        cc::IrreducibilityOptions yopts = opts;
        yopts.degree_cap = std::max(opts.degree_cap, static_cast<unsigned>(f.total_degree()) * yn_max);
        const cc::FxynCheck fx = cc::check_fxyn_hypothesis(f, yn_max, yopts);
        rec["fxyn_holds"] = fx.holds;
        rec["fxyn_verified_up_to"] = fx.verified_up_to;
        rec["fxyn_first_failure"] = fx.first_failure ? ordered_json(*fx.first_failure) : ordered_json();
      }
      if (fmt == Format::Human) {
        std::cout << "irreducible over F_" << p << ": " << (rec["irreducible"].get<bool>() ? "yes" : "no") << '\n';
        if (irr_absolute) {
          if (rec["absolutely_irreducible"].get<bool>()) {
            std::cout << "absolutely irreducible: yes (checked up to k = " << f.total_degree() << ")\n";
          } else {
            std::cout << "absolutely irreducible: no (splits over F_" << p << "^" << rec["split_level"] << ")\n"
                      << "  factor:   " << rec["factor"].get<std::string>() << '\n'
                      << "  cofactor: " << rec["cofactor"].get<std::string>() << '\n';
          }
        }
        if (yn_max > 0) {
          std::cout << "F(X, Y^n) irreducible for n <= " << yn_max << ": "
                    << (rec["fxyn_holds"].get<bool>() ? "yes" : "no");
          if (!rec["fxyn_first_failure"].is_null()) std::cout << " (first failure n = " << rec["fxyn_first_failure"] << ")";
          std::cout << '\n';
        }
      } else {
        emit_record(fmt, rec);
      }
    } else if (count_cmd->parsed()) {
      const cc::BivariatePoly f = cc::parse_poly(resolve(poly), modular(p));
      const cc::FieldContext& ctx = f.domain().field();
      const cc::PointSet a = parse_set(ctx, set_a, "--set-a");
      const cc::PointSet b = parse_set(ctx, set_b, "--set-b");
      cc::CountOptions opts;
      opts.method = oracle ? cc::CountMethod::DoubleLoop : cc::CountMethod::RowSolve;
      opts.workers = common.workers;
      opts.budget_ms = budget_ms;
      const cc::CountResult r = cc::count_solutions(f, a, b, opts);
      if (fmt == Format::Human) {
        std::cout << r.count << '\n';
        if (verbose) {
          std::cout << "method: " << cc::to_string(r.method) << "\nwitnesses: " << point_list(r.witnesses) << '\n';
        }
      } else {
        emit_record(fmt, {{"p", p},
                          {"set_a", a.describe()},
                          {"set_b", b.describe()},
                          {"method", std::string(cc::to_string(r.method))},
                          {"count", r.count},
                          {"witnesses", point_list(r.witnesses)}});
      }
    } else if (image_cmd->parsed()) {
      const cc::FieldContext ctx = cc::FieldContext::make(p);
      const cc::RationalMap psi = cc::RationalMap::parse(ctx, resolve(map_text));
      const cc::PointSet i = parse_set(ctx, set_i, "--set-i");
      const cc::PointSet j = parse_set(ctx, set_j, "--set-j");
      const cc::CountResult r = cc::count_rational_image(psi, i, j);
      if (fmt == Format::Human) {
        std::cout << r.count << '\n';
      } else {
        emit_record(fmt, {{"p", p},
                          {"map", psi.to_string()},
                          {"set_i", i.describe()},
                          {"set_j", j.describe()},
                          {"count", r.count}});
      }
    } else if (res_cmd->parsed()) {
      const cc::CoeffDomain dom = modular(p);
      const cc::BivariatePoly a = cc::parse_poly(resolve(poly), dom);
      const cc::ResultantMethod m = method == "interpolation" ? cc::ResultantMethod::Interpolation
                                    : method == "sylvester"   ? cc::ResultantMethod::Sylvester
                                                              : cc::ResultantMethod::Auto;
      cc::BivariatePoly r(dom);
      if (shift_opt->count() > 0) {
        r = cc::shifted_resultant(a, shift_a % p, m);
      } else {
        if (polyb_opt->count() == 0) throw UsageError("resultant needs --poly-b or --shift");
        r = cc::resultant_x(a, cc::parse_poly(resolve(poly_b), dom), m);
      }
      if (fmt == Format::Human) {
        std::cout << r.to_string("U", "V") << '\n';
      } else {
        emit_record(fmt, {{"p", p}, {"resultant", r.to_string("U", "V")}});
      }
    } else if (tor_cmd->parsed()) {
      const cc::BivariatePoly f = cc::parse_poly(resolve(poly), modular(p));
      std::vector<ordered_json> rows;
      auto check = [&](const cc::BivariatePoly& r, ordered_json row) {
        const auto form = cc::is_torsion_form(r);
        const auto div = cc::divisible_by_torsion_form(r);
        row["is_torsion_form"] = form.has_value();
        row["torsion_divisor"] = div ? cc::to_string(*div) : "";
        rows.push_back(std::move(row));
      };
      if (tor_all) {
        for (std::uint64_t a = 1; a < p; ++a) check(cc::shifted_resultant(f, a), {{"a", a}});
      } else if (tor_shift_opt->count() > 0) {
        check(cc::shifted_resultant(f, tor_shift % p), {{"a", tor_shift % p}});
      } else {
        check(f, {{"a", nullptr}});
      }
      std::size_t hits = 0;
      for (const auto& r : rows) hits += r["torsion_divisor"].get<std::string>().empty() ? 0 : 1;
      if (fmt == Format::Human) {
        if (rows.size() == 1) {
          std::cout << "torsion form: " << (rows[0]["is_torsion_form"].get<bool>() ? "yes" : "no") << '\n'
                    << "torsion divisor: "
                    << (hits ? rows[0]["torsion_divisor"].get<std::string>() : std::string("none")) << '\n';
        } else {
          std::cout << "shifts with a torsion divisor: " << hits << " of " << rows.size() << '\n';
          for (const auto& r : rows) {
            if (!r["torsion_divisor"].get<std::string>().empty()) {
              std::cout << "  a = " << r["a"] << ": " << r["torsion_divisor"].get<std::string>() << '\n';
            }
          }
        }
      } else {
        emit_table(fmt, {"a", "is_torsion_form", "torsion_divisor"}, rows, {{"p", p}, {"exceptional", hits}});
      }
    } else if (lift_cmd->parsed()) {
      const cc::BivariatePoly f = cc::parse_poly(resolve(poly), modular(p));
      const cc::LiftChainReport rep = cc::lift_chain(f, resolve_seed(lift_seed, seed));
      ordered_json u = ordered_json::object();
      for (const auto& [e, val] : rep.lift.u) {
        u["(" + std::to_string(e.x) + "," + std::to_string(e.y) + ")"] = val.get_str();
      }
      std::string pts;
      for (const auto& pt : rep.lift.points) {
        pts += (pts.empty() ? "" : " ") + ("(" + std::to_string(pt.x) + "," + std::to_string(pt.y) + ")");
      }
      ordered_json rec{{"p", p},
                       {"delta", rep.delta},
                       {"d", rep.d},
                       {"H", rep.h},
                       {"N", rep.n},
                       {"side", rep.side},
                       {"shift", std::to_string(rep.x0) + "," + std::to_string(rep.y0)},
                       {"pivot", std::to_string(rep.lift.pivot.x) + "," + std::to_string(rep.lift.pivot.y)},
                       {"points", pts},
                       {"v", rep.lift.v.get_str()},
                       {"u", u},
                       {"lifted", rep.lift.lifted.to_string()},
                       {"congruences", rep.congruences},
                       {"height_bound", rep.height_bound},
                       {"quotients", rep.quotients}};
      if (fmt == Format::Human) {
        std::cout << "solutions N = " << rep.n << " with |x|,|y| <= " << rep.h << "; sub-square side " << rep.side
                  << "; shift (" << rep.x0 << ", " << rep.y0 << ")\n"
                  << "points: " << pts << '\n'
                  << "v = " << rep.lift.v.get_str() << '\n';
        for (const auto& [e, val] : rep.lift.u) {
          std::cout << "u(" << e.x << "," << e.y << ") = " << val.get_str() << '\n';
        }
        std::cout << "lift: " << rep.lift.lifted.to_string() << '\n'
                  << "congruences v*F(i,j) = u(i,j)*F(k,l) mod p: " << (rep.congruences ? "hold" : "FAIL") << '\n'
                  << "height bound: " << (rep.height_bound ? "holds" : "FAIL") << '\n'
                  << "all solutions lift to multiples of p: " << (rep.quotients ? "yes" : "NO") << '\n';
      } else {
        if (fmt == Format::Csv) rec.erase("u");
        emit_record(fmt, rec);
      }
      if (!rep.congruences || !rep.height_bound || !rep.quotients) return 1;
    } else if (box_cmd->parsed()) {
      const cc::BivariatePoly f = cc::parse_poly(resolve(poly), cc::CoeffDomain::integers());
      const cc::BoxCount bc = cc::count_integer_box(f, box_k, box_l, box_h, box_points);
      std::string pts;
      for (const auto& pt : bc.points) {
        pts += (pts.empty() ? "" : " ") + ("(" + std::to_string(pt.x) + "," + std::to_string(pt.y) + ")");
      }
      std::string degenerate;
      for (auto x : bc.degenerate_rows) degenerate += (degenerate.empty() ? "" : ";") + std::to_string(x);
      if (fmt == Format::Human) {
        std::cout << bc.count << '\n';
        if (box_points) std::cout << "points: " << pts << '\n';
        if (!bc.degenerate_rows.empty()) std::cout << "degenerate rows at x = " << degenerate << '\n';
      } else {
        emit_record(fmt, {{"K", box_k}, {"L", box_l}, {"H", box_h}, {"count", bc.count}, {"degenerate_rows", degenerate},
                          {"points", pts}});
      }
    } else if (orbit_cmd->parsed()) {
      const cc::FieldContext ctx = cc::FieldContext::make(p);
      const cc::MapSystem sys = cc::MapSystem::parse(ctx, resolve(system_text));
      cc::SearchOptions opts;
      opts.mode = cc::parse_mode(mode_text);
      opts.node_budget = node_budget;
      opts.samples = samples;
      opts.seed = resolve_seed(orbit_seed, seed);
      opts.workers = common.workers;
      opts.integer_distance = integer_distance;
      const cc::Metric metric = cc::parse_metric(metric_text);
      cc::MetricReport rep;
      double bound = 0;
      if (metric == cc::Metric::T) {
        rep = cc::collision_time(sys, orbit_u, cap, opts);
      } else if (metric == cc::Metric::L) {
        rep = cc::interval_metric_L(sys, orbit_u, orbit_n, opts);
        bound = cc::orbit_L_bound(p, sys.max_degree(), nu, orbit_n);
      } else {
        rep = cc::group_metric_G(sys, orbit_u, orbit_n, opts);
        // Power maps keep whole paths inside small subgroups, so no bound applies.
        if (!sys.any_power_form()) bound = cc::orbit_G_bound(p, std::max(sys.max_degree(), 2u), sys.size(), orbit_n);
      }
      const bool has_bound = metric != cc::Metric::T && bound > 0;
      if (fmt == Format::Human) {
        std::cout << rep.value << '\n'
                  << "metric " << cc::to_string(metric) << ", mode " << cc::to_string(rep.mode)
                  << (rep.exact ? ", exact" : ", not exact") << ", nodes " << rep.nodes << '\n'
                  << "witness path: " << word_text(rep.witness) << '\n';
        if (rep.budget_exhausted) std::cout << "node budget exhausted; value is the best found\n";
        if (rep.all_zero_orbit) std::cout << "orbit is identically zero; G reported as 1\n";
        if (sys.any_power_form() && metric == cc::Metric::G) {
          std::cout << "bound comparison refused (PowerFormExcluded): system contains a power map\n";
        }
      } else {
        ordered_json rec{{"p", p},
                         {"s", sys.size()},
                         {"degrees", sys.degrees_text()},
                         {"u", orbit_u % p},
                         {"N", metric == cc::Metric::T ? ordered_json() : ordered_json(orbit_n)},
                         {"metric", std::string(cc::to_string(metric))},
                         {"value", rep.value},
                         {"exact", rep.exact},
                         {"mode", std::string(cc::to_string(rep.mode))},
                         {"seed", opts.seed},
                         {"bound_value", has_bound ? ordered_json(bound) : ordered_json()},
                         {"ratio", has_bound ? ordered_json(static_cast<double>(rep.value) / bound) : ordered_json()}};
        if (fmt == Format::Json) {
          rec["witness"] = rep.witness;
          rec["nodes"] = rep.nodes;
          rec["budget_exhausted"] = rep.budget_exhausted;
        }
        emit_record(fmt, rec);
      }
    } else if (camp_cmd->parsed()) {
      cc::Campaign c = cc::load_campaign(config);
      if (!out_dir.empty()) c.output_dir = out_dir;
      if (common.workers > 1) c.workers = common.workers;
      const cc::CampaignResult r = cc::run_campaign(c);
      if (fmt == Format::Json) {
        std::cout << r.summary << '\n';
      } else {
        std::cout << "campaign " << c.name << " (seed " << r.seed << "): " << r.counting_rows << " counting rows, "
                  << r.dynamics_rows << " dynamics rows, " << r.error_rows << " errors\n"
                  << r.counting_csv << '\n'
                  << r.dynamics_csv << '\n'
                  << r.summary_json << '\n';
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const cc::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const cc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
