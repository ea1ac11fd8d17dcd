#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tsel/analysis.hpp"
#include "tsel/equilibrium.hpp"
#include "tsel/inversion.hpp"
#include "tsel/monte_carlo.hpp"
#include "tsel/optimal.hpp"
#include "tsel/rule_spec.hpp"
#include "tsel/serialization.hpp"

namespace tsel::cli {
namespace {

using nlohmann::json;

constexpr int kSignificantDigits = 12;

// Row-oriented view of a result for CSV output.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
};

struct Result {
  json payload;
  std::optional<Table> table;
  std::string text;
  int exit_code = kExitOk;
};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, v);
  return buf;
}

// Rounds every float to 12 significant digits, except inside "distribution"
// objects, which keep full precision so they can be parsed back exactly.
json rounded(const json& j) {
  if (j.is_number_float()) {
    return std::strtod(format_number(j.get<double>()).c_str(), nullptr);
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& x : j) out.push_back(rounded(x));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [key, value] : j.items()) {
      out[key] = key == "distribution" ? value : rounded(value);
    }
    return out;
  }
  return j;
}

std::string cell_text(const json& j) {
  if (j.is_null()) return "";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) return format_number(j.get<double>());
  if (j.is_structured()) return rounded(j).dump();
  return j.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_field(cells[i]);
  }
  out << "\r\n";
}

void write_result(const Result& r, const std::string& format,
                  std::ostream& out) {
  if (format == "json") {
    out << rounded(r.payload).dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    Table table;
    if (r.table) {
      table = *r.table;
    } else {
      std::vector<json> row;
      for (const auto& [key, value] : r.payload.items()) {
        table.header.push_back(key);
        row.push_back(value);
      }
      table.rows.push_back(std::move(row));
    }
    write_csv_row(out, table.header);
    for (const auto& row : table.rows) {
      std::vector<std::string> cells;
      for (const auto& c : row) cells.push_back(cell_text(c));
      write_csv_row(out, cells);
    }
    return;
  }
  if (!r.text.empty()) {
    out << r.text;
    return;
  }
  std::size_t width = 0;
  for (const auto& [key, value] : r.payload.items()) {
    width = std::max(width, key.size());
  }
  for (const auto& [key, value] : r.payload.items()) {
    out << key << std::string(width - key.size() + 2, ' ') << cell_text(value)
        << "\n";
  }
}

json estimate_json(const InversionEstimate& e) {
  return {{"value", e.value},
          {"method", to_string(e.method)},
          {"std_error", e.std_error},
          {"trials", e.trials}};
}

std::size_t firms_for(const AssignmentRule& rule, std::size_t requested) {
  if (requested != 0) return requested;
  const std::size_t implied = rule.implied_firms();
  return implied != 0 ? implied : 2;
}

// ---- commands ------------------------------------------------------------

struct OptimalArgs {
  std::string which;
  long n = 2;
};

Result cmd_optimal(const OptimalArgs& args) {
  Result r;
  if (args.which == "same") {
    const SameTestOptimum o = optimal_same_test();
    r.payload = {{"threshold", to_double(o.threshold)},
                 {"threshold_exact", to_string(o.threshold)},
                 {"value", to_double(o.value)},
                 {"value_exact", to_string(o.value)}};
  } else if (args.which == "iid") {
    const MixedCdf d = optimal_iid();
    r.payload = {{"distribution", to_json(d)},
                 {"lo", 0.25},
                 {"hi", 0.75},
                 {"value", inversion_iid(d).value},
                 {"value_exact", "5/24"}};
  } else {
    const CorrelatedOptimum o = optimal_correlated(args.n);
    json exact = json::array();
    for (const Rational& t : o.thresholds) exact.push_back(to_string(t));
    r.payload = {{"n", args.n},
                 {"thresholds", o.thresholds_as_double()},
                 {"thresholds_exact", exact},
                 {"value", to_double(o.value)},
                 {"value_exact", to_string(o.value)}};
    Table t{{"firm", "threshold", "threshold_exact"}, {}};
    for (std::size_t i = 0; i < o.thresholds.size(); ++i) {
      t.rows.push_back({i + 1, to_double(o.thresholds[i]),
                        to_string(o.thresholds[i])});
    }
    r.table = std::move(t);
  }
  return r;
}

struct EquilibriumArgs {
  std::optional<double> a;
  std::optional<double> b;
  std::size_t dump_cdf = 0;
  std::size_t grid = 10'000;
};

Result cmd_equilibrium(const EquilibriumArgs& args) {
  if (args.a.has_value() != args.b.has_value()) {
    throw std::invalid_argument("--a and --b must be given together");
  }
  const EquilibriumSolution sol = args.a
                                      ? equilibrium_interval(*args.a, *args.b)
                                      : equilibrium_unrestricted();
  Result r;
  r.payload = to_json(sol);
  r.payload["inversion"] = inversion_iid(sol.dist).value;
  r.payload["verified"] = verify_equilibrium(sol, args.grid).pass;
  if (args.dump_cdf > 0) {
    if (args.dump_cdf < 2) throw std::invalid_argument("--dump-cdf needs K >= 2");
    Table t{{"theta", "cdf", "pdf"}, {}};
    json rows = json::array();
    for (std::size_t k = 0; k < args.dump_cdf; ++k) {
      const double theta =
          static_cast<double>(k) / static_cast<double>(args.dump_cdf - 1);
      const std::optional<double> pdf = sol.dist.density(theta);
      std::vector<json> row = {theta, sol.dist.cdf(theta),
                               pdf ? json(*pdf) : json(nullptr)};
      rows.push_back(row);
      t.rows.push_back(std::move(row));
    }
    r.payload["cdf_rows"] = std::move(rows);
    r.table = std::move(t);
  }
  return r;
}

struct InversionArgs {
  std::string rule;
  std::size_t n = 0;
  bool mc = false;
  std::uint64_t trials = kDefaultTrials;
  std::uint64_t seed = 0;
};

Result cmd_inversion(const InversionArgs& args, unsigned threads) {
  const AssignmentRule rule = parse_rule(args.rule);
  const std::size_t n = firms_for(rule, args.n);
  rule.check_firms(n);
  const InversionEstimate e =
      args.mc ? mc_inversion(rule, n, args.trials, args.seed, threads)
              : inversion_for_rule(rule, n);
  Result r;
  r.payload = {{"rule", args.rule}, {"n", n}};
  r.payload.update(estimate_json(e));
  if (args.mc) r.payload["seed"] = args.seed;
  return r;
}

struct VerifyArgs {
  std::string rule;
  std::size_t grid = 10'000;
  double tol = 1e-8;
  std::optional<double> lo;
  std::optional<double> hi;
};

json report_json(const VerificationReport& v) {
  return {{"pass", v.pass},
          {"max_support_deviation", v.max_support_deviation},
          {"max_outside_gain", v.max_outside_gain
                                   ? json(*v.max_outside_gain)
                                   : json(nullptr)},
          {"points_checked", v.points_checked}};
}

Result cmd_verify(const VerifyArgs& args) {
  const AssignmentRule rule = parse_rule(args.rule);
  double lo = 0.0;
  double hi = 1.0;
  constexpr std::string_view kEqPrefix = "iid:eq:";
  if (std::string_view(args.rule).substr(0, kEqPrefix.size()) == kEqPrefix) {
    const std::string range = args.rule.substr(kEqPrefix.size());
    const std::size_t comma = range.find(',');
    lo = parse_number(range.substr(0, comma));
    hi = parse_number(range.substr(comma + 1));
  }
  lo = args.lo.value_or(lo);
  hi = args.hi.value_or(hi);

  Result r;
  r.payload = {{"rule", args.rule}, {"lo", lo}, {"hi", hi}};
  bool pass = false;
  switch (rule.kind()) {
    case AssignmentRule::Kind::same_test:
    case AssignmentRule::Kind::iid: {
      const MixedCdf d =
          rule.kind() == AssignmentRule::Kind::iid
              ? std::get<AssignmentRule::Iid>(rule.params()).dist
              : MixedCdf::step(
                    std::get<AssignmentRule::SameTest>(rule.params()).theta);
      const VerificationReport v =
          verify_candidate(d, lo, hi, args.grid, args.tol);
      r.payload.update(report_json(v));
      pass = v.pass;
      break;
    }
    case AssignmentRule::Kind::fixed_list: {
      const auto& t = std::get<AssignmentRule::FixedList>(rule.params());
      if (t.thresholds.size() != 2) {
        throw std::invalid_argument("verify supports two fixed thresholds");
      }
      pass = two_point_payoff_check(t.thresholds[0], t.thresholds[1], args.tol);
      r.payload["pass"] = pass;
      break;
    }
    case AssignmentRule::Kind::independent: {
      const auto& ds = std::get<AssignmentRule::Independent>(rule.params()).dists;
      if (ds.size() != 2) {
        throw std::invalid_argument("verify supports two independent firms");
      }
      const VerificationReport x =
          verify_response(ds[0], ds[1], lo, hi, args.grid, args.tol);
      const VerificationReport y =
          verify_response(ds[1], ds[0], lo, hi, args.grid, args.tol);
      pass = x.pass && y.pass;
      r.payload["pass"] = pass;
      r.payload["firms"] = json::array({report_json(x), report_json(y)});
      break;
    }
  }
  r.exit_code = pass ? kExitOk : kExitVerificationFailed;
  return r;
}

struct SearchArgs {
  double resolution = 0.01;
  bool no_refine = false;
  long n = 2;
};

SearchOptions search_options(const SearchArgs& args, unsigned threads) {
  SearchOptions o;
  o.resolution = args.resolution;
  o.refine = !args.no_refine;
  o.threads = threads;
  return o;
}

Result cmd_poa(const SearchArgs& args, unsigned threads) {
  const PoaReport report = poa_report(args.n, search_options(args, threads));
  Result r;
  r.payload = to_json(report);
  r.text = poa_text(report);
  r.table = Table{{"model", "value"},
                  {{"same_test", report.same_test},
                   {"correlated", report.correlated},
                   {"iid_opt", report.iid_opt},
                   {"eq_restricted_best", report.eq_restricted_best.value},
                   {"eq_unrestricted", report.eq_unrestricted},
                   {"poa_vs_iid", report.poa_vs_iid},
                   {"poa_vs_correlated", report.poa_vs_correlated}}};
  return r;
}

Result cmd_search(const SearchArgs& args, unsigned threads) {
  const SearchResult s = search_best_interval(search_options(args, threads));
  Result r;
  r.payload = {{"best", to_json(s.best)},
               {"evaluations", s.evaluations},
               {"grid_points", s.grid.size()},
               {"rejected", s.rejected}};
  Table t{{"a", "b", "value", "regime", "verified"}, {}};
  for (const IntervalPoint& p : s.grid) {
    t.rows.push_back({p.a, p.b, p.value, to_string(p.regime), p.verified});
  }
  r.table = std::move(t);
  return r;
}

struct SimulateArgs {
  std::string rule;
  std::size_t n = 0;
  std::uint64_t trials = kDefaultTrials;
  std::uint64_t seed = 0;
};

Result cmd_simulate(const SimulateArgs& args, unsigned threads) {
  const AssignmentRule rule = parse_rule(args.rule);
  const std::size_t n = firms_for(rule, args.n);
  const SimulationSummary s =
      simulate(rule, n, {args.trials, args.seed, threads});
  Result r;
  r.payload = {{"rule", args.rule},
               {"n", n},
               {"trials", args.trials},
               {"seed", args.seed},
               {"inversion", s.inversion.value},
               {"std_error", s.inversion.std_error},
               {"first_rate", s.first_rate},
               {"first_rate_std_error", s.first_rate_std_error},
               {"mean_coin_flips", s.mean_coin_flips}};
  Table t{{"firm", "first_rate", "std_error"}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    t.rows.push_back({i + 1, s.first_rate[i], s.first_rate_std_error[i]});
  }
  r.table = std::move(t);
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Threshold-test selection game: optimal tests, equilibria, "
               "inversion probabilities."};
  app.name("tsel");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  unsigned threads = 0;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", threads,
                 "Worker threads (0: TSEL_THREADS or hardware)");

  OptimalArgs optimal;
  auto* sub_optimal = app.add_subcommand("optimal", "Principal-optimal tests");
  sub_optimal->add_option("which", optimal.which, "same | iid | correlated")
      ->required()
      ->check(CLI::IsMember({"same", "iid", "correlated"}));
  sub_optimal->add_option("--n", optimal.n, "Number of firms")
      ->check(CLI::Range(2L, 1'000'000L));

  EquilibriumArgs equilibrium;
  auto* sub_eq = app.add_subcommand("equilibrium", "Symmetric equilibrium");
  sub_eq->add_option("--a", equilibrium.a, "Lower end of the allowed interval")
      ->check(CLI::Range(0.0, 1.0));
  sub_eq->add_option("--b", equilibrium.b, "Upper end of the allowed interval")
      ->check(CLI::Range(0.0, 1.0));
  sub_eq->add_option("--dump-cdf", equilibrium.dump_cdf,
                     "Emit K equally spaced (theta, cdf, pdf) rows");
  sub_eq->add_option("--grid", equilibrium.grid, "Verification grid size")
      ->check(CLI::Range(std::size_t{1000}, std::size_t{100'000'000}));

  InversionArgs inversion;
  auto* sub_inv = app.add_subcommand("inversion", "Inversion probability");
  sub_inv->add_option("--rule", inversion.rule, "Rule specification")
      ->required();
  sub_inv->add_option("--n", inversion.n, "Number of firms");
  sub_inv->add_flag("--mc", inversion.mc, "Estimate by Monte Carlo");
  sub_inv->add_option("--trials", inversion.trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber);
  sub_inv->add_option("--seed", inversion.seed, "Random seed");

  VerifyArgs verify;
  auto* sub_verify = app.add_subcommand("verify", "Check equilibrium property");
  sub_verify->add_option("--rule", verify.rule, "Rule specification")
      ->required();
  sub_verify->add_option("--grid", verify.grid, "Grid size")
      ->check(CLI::Range(std::size_t{1000}, std::size_t{100'000'000}));
  sub_verify->add_option("--tol", verify.tol, "Payoff tolerance")
      ->check(CLI::PositiveNumber);
  sub_verify->add_option("--lo", verify.lo, "Lowest allowed threshold")
      ->check(CLI::Range(0.0, 1.0));
  sub_verify->add_option("--hi", verify.hi, "Highest allowed threshold")
      ->check(CLI::Range(0.0, 1.0));

  SearchArgs poa;
  auto* sub_poa = app.add_subcommand("poa", "Five-regime comparison");
  sub_poa->add_option("--n", poa.n, "Firms for the correlated optimum")
      ->check(CLI::Range(2L, 1'000'000L));
  sub_poa->add_option("--resolution", poa.resolution, "Search grid spacing")
      ->check(CLI::Range(1e-4, 0.5));
  sub_poa->add_flag("--no-refine", poa.no_refine, "Skip golden refinement");

  SearchArgs search;
  auto* sub_search =
      app.add_subcommand("search", "Best restricted-interval equilibrium");
  sub_search->add_option("--resolution", search.resolution, "Grid spacing")
      ->check(CLI::Range(1e-4, 0.5));
  sub_search->add_flag("--no-refine", search.no_refine,
                       "Skip golden refinement");

  SimulateArgs simulate_args;
  auto* sub_sim = app.add_subcommand("simulate", "Monte Carlo simulation");
  sub_sim->add_option("--rule", simulate_args.rule, "Rule specification")
      ->required();
  sub_sim->add_option("--trials", simulate_args.trials, "Trials")
      ->check(CLI::PositiveNumber);
  sub_sim->add_option("--seed", simulate_args.seed, "Random seed");
  sub_sim->add_option("--n", simulate_args.n, "Number of firms");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Result result;
    if (sub_optimal->parsed()) {
      result = cmd_optimal(optimal);
    } else if (sub_eq->parsed()) {
      result = cmd_equilibrium(equilibrium);
    } else if (sub_inv->parsed()) {
      result = cmd_inversion(inversion, threads);
    } else if (sub_verify->parsed()) {
      result = cmd_verify(verify);
    } else if (sub_poa->parsed()) {
      result = cmd_poa(poa, threads);
    } else if (sub_search->parsed()) {
      result = cmd_search(search, threads);
    } else {
      result = cmd_simulate(simulate_args, threads);
    }
    write_result(result, format, out);
    return result.exit_code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
}

}  // namespace tsel::cli
