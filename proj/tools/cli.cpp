// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "pdcell/distribution.hpp"
#include "pdcell/errors.hpp"
#include "pdcell/geometry.hpp"
#include "pdcell/network.hpp"

namespace pdcell::cli {
namespace {

using Json = nlohmann::ordered_json;
using Value = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  bool failed = false;  // some row carries a convergence failure
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        out << format_double(*d);
      } else if (const auto* n = std::get_if<long long>(&row[i])) {
        out << *n;
      } else {
        out << csv_field(std::get<std::string>(row[i]));
      }
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table, const Json& meta) {
  Json doc;
  doc["meta"] = meta;
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string& key = table.columns[i];
      if (const auto* d = std::get_if<double>(&row[i])) {
        obj[key] = std::isfinite(*d) ? Json(*d) : Json(nullptr);
      } else if (const auto* n = std::get_if<long long>(&row[i])) {
        obj[key] = *n;
      } else {
        obj[key] = std::get<std::string>(row[i]);
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

double parse_number(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigurationError(std::string("grid: cannot parse ") + what + " '" + text + "'");
  }
  return v;
}

struct Common {
  std::string format = "csv";
  std::string output = "-";
};

struct Options {
  Common common;
  int d = 2;
  double rho = 1.0;
  std::string grid;
  double contour_step = ContourPolicy{}.step;
  double contour_half_length = ContourPolicy{}.half_length;
  double refine_tolerance = ContourPolicy{}.refine_tolerance;
  int d_max = 5;
  std::optional<std::uint64_t> seed;
  double lambda = 1.0;
  std::size_t n = 100000;
  double box = 0.0;
  std::optional<double> buffer;
  unsigned threads = 1;
  std::string samples;
  std::string selection = "circumcentre";
  double lambda_bs = 1.0;
  std::vector<double> ratios = {1, 2, 3, 4, 5, 6, 7, 8};
  int replicates = 50;
  double p_active = 1.0;
  double p_sleep = 0.0;
};

ContourPolicy policy_of(const Options& o) {
  ContourPolicy p;
  p.step = o.contour_step;
  p.half_length = o.contour_half_length;
  p.refine_tolerance = o.refine_tolerance;
  if (!(p.step > 0.0) || !(p.half_length > 0.0) || !(p.refine_tolerance > 0.0)) {
    throw ConfigurationError("contour overrides must be positive");
  }
  return p;
}

Json seed_json(const Options& o) { return o.seed ? Json(*o.seed) : Json(nullptr); }

Json base_meta(const std::string& command, const Options& o) {
  Json meta;
  meta["command"] = command;
  meta["artifact_version"] = kVersion;
  meta["seed"] = seed_json(o);
  meta["format"] = o.common.format;
  meta["output"] = o.common.output;
  return meta;
}

std::string row_status(const std::exception& e) { return std::string("error: ") + e.what(); }

Table cmd_density(const Options& o, bool cumulative, Json& meta) {
  const Grid grid = parse_grid(o.grid.empty() ? "0.01:3:100:lin" : o.grid);
  const ContourPolicy policy = policy_of(o);
  meta["config"] = {{"d", o.d},
                    {"rho", o.rho},
                    {"grid", o.grid.empty() ? "0.01:3:100:lin" : o.grid},
                    {"contour_step", policy.step},
                    {"contour_half_length", policy.half_length},
                    {"refine_tolerance", policy.refine_tolerance}};
  CellDistribution law = [&] {
    try {
      return CellDistribution::build(o.d, o.rho);
    } catch (const DomainError& e) {
      throw ConfigurationError(e.what());
    }
  }();
  Table t{{"x", cumulative ? "cdf" : "pdf", "status"}, {}};
  for (double x : grid.points()) {
    try {
      const double v = cumulative ? law.cdf(x, policy) : law.pdf(x, policy);
      t.rows.push_back({x, v, std::string("ok")});
    } catch (const ConvergenceError& e) {
      t.rows.push_back({x, std::numeric_limits<double>::quiet_NaN(), row_status(e)});
      t.failed = true;
    } catch (const DomainError& e) {
      t.rows.push_back({x, std::numeric_limits<double>::quiet_NaN(), row_status(e)});
    }
  }
  return t;
}

Table cmd_stats(const Options& o, Json& meta) {
  if (o.d_max < 1) throw ConfigurationError("stats: --d-max must be >= 1");
  meta["config"] = {{"d_max", o.d_max}};
  Table t{{"d", "mean", "variance", "skewness", "kurtosis", "status"}, {}};
  for (int d = 1; d <= o.d_max; ++d) {
    const ShapeStats s = shape_stats(d);
    t.rows.push_back({static_cast<long long>(d), s.mean, s.variance, s.skewness, s.kurtosis, std::string("ok")});
  }
  return t;
}

Table cmd_constants(const Options& o, Json& meta) {
  if (o.d_max < 1) throw ConfigurationError("constants: --d-max must be >= 1");
  meta["config"] = {{"d_max", o.d_max}};
  Table t{{"d", "A", "B", "A_published", "B_published", "A_rel_diff", "B_rel_diff"}, {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int d = 1; d <= o.d_max; ++d) {
    const CellConstants k = cell_constants(d);
    CellConstants pub{nan, nan};
    if (d <= 5) pub = published_cell_constants(d);
    t.rows.push_back({static_cast<long long>(d), k.a, k.b, pub.a, pub.b, std::fabs(k.a - pub.a) / pub.a,
                      std::fabs(k.b - pub.b) / pub.b});
  }
  return t;
}

Table cmd_simulate(const Options& o, Json& meta) {
  if (!o.seed) throw ConfigurationError("simulate: --seed is required");
  if (!(o.lambda > 0.0)) throw ConfigurationError("simulate: --lambda must be positive");
  const double buffer = o.buffer.value_or(default_buffer(o.lambda));
  const double box = o.box > 0.0 ? o.box : 200.0 / std::sqrt(o.lambda);
  meta["config"] = {{"lambda", o.lambda}, {"n", o.n},       {"box", box},
                    {"buffer", buffer},   {"threads", o.threads}, {"samples", o.samples},
                    {"selection", o.selection}};
  const CellSelection selection =
      o.selection == "vertices" ? CellSelection::kAllVertices : CellSelection::kCircumcentre;
  std::vector<double> volumes = sample_cell_volumes(o.lambda, box, buffer, o.n, *o.seed, {o.threads, selection});
  if (!o.samples.empty()) {
    std::ofstream file(o.samples, std::ios::binary);
    if (!file) throw ConfigurationError("simulate: cannot open " + o.samples);
    write_volume_csv(file, volumes);
  }
  double mean = 0.0;
  for (double v : volumes) mean += v;
  mean /= static_cast<double>(volumes.size());
  double ss = 0.0;
  for (double v : volumes) ss += (v - mean) * (v - mean);
  const double variance = ss / static_cast<double>(volumes.size() - 1);
  const CellDistribution law = CellDistribution::build(2, o.lambda);
  std::sort(volumes.begin(), volumes.end());
  const double ks = ks_statistic(volumes, [&](double x) { return law.cdf(x); });
  const double crit = ks_critical_value_1pct(volumes.size());
  Table t{{"n", "mean", "mean_expected", "variance", "variance_expected", "ks", "ks_critical_1pct", "ks_pass",
           "status"},
          {}};
  t.rows.push_back({static_cast<long long>(volumes.size()), mean, law.mean(), variance,
                    law.moment(2) - law.mean() * law.mean(), ks, crit,
                    static_cast<long long>(ks < crit ? 1 : 0), std::string("ok")});
  return t;
}

Table cmd_void(const Options& o, Json& meta) {
  if (!o.seed) throw ConfigurationError("void: --seed is required");
  if (o.ratios.empty()) throw ConfigurationError("void: --ratios must not be empty");
  const double box = o.box > 0.0 ? o.box : 60.0 / std::sqrt(o.lambda_bs);
  meta["config"] = {{"lambda_bs", o.lambda_bs}, {"ratios", o.ratios},   {"box", box},
                    {"replicates", o.replicates}, {"p_active", o.p_active}, {"p_sleep", o.p_sleep}};
  Table t{{"ratio", "p_analytic", "p_bound", "p_mc", "p_mc_stderr", "avg_power", "status"}, {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double ratio : o.ratios) {
    NetworkScenario s{o.lambda_bs, ratio * o.lambda_bs, o.p_active, o.p_sleep};
    try {
      s.validate();
    } catch (const DomainError& e) {
      throw ConfigurationError(e.what());
    }
    const MonteCarloEstimate mc = void_probability_mc(s, box, o.replicates, *o.seed);
    const double bound = void_probability_bound(s);
    try {
      const double p = void_probability_analytic(s);
      t.rows.push_back({ratio, p, bound, mc.estimate, mc.stderr_, average_power(s, p).exact, std::string("ok")});
    } catch (const ConvergenceError& e) {
      t.rows.push_back({ratio, nan, bound, mc.estimate, mc.stderr_, nan, row_status(e)});
      t.failed = true;
    }
  }
  return t;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", o.common.output, "Output path, '-' for stdout");
}

void add_law(CLI::App* sub, Options& o) {
  sub->add_option("--d", o.d, "Dimension")->check(CLI::Range(1, 64));
  sub->add_option("--rho", o.rho, "Intensity of the point process");
  sub->add_option("--grid", o.grid, "min:max:count:lin|log");
  sub->add_option("--contour-step", o.contour_step, "Initial trapezoid step on the contour");
  sub->add_option("--contour-half-length", o.contour_half_length, "Initial contour half-length");
  sub->add_option("--refine-tol", o.refine_tolerance, "Relative refinement tolerance");
}

}  // namespace

std::vector<double> Grid::points() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out[static_cast<std::size_t>(i)] =
        log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min))) : min + t * (max - min);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw ConfigurationError("grid: expected min:max:count:lin|log, got '" + text + "'");
  Grid g{};
  g.min = parse_number(parts[0], "min");
  g.max = parse_number(parts[1], "max");
  const double count = parse_number(parts[2], "count");
  if (count != std::floor(count) || count < 2 || count > 1e7) throw ConfigurationError("grid: count must be an integer >= 2");
  g.count = static_cast<int>(count);
  if (parts[3] == "log") {
    g.log = true;
  } else if (parts[3] != "lin") {
    throw ConfigurationError("grid: spacing must be lin or log");
  }
  if (!(g.min < g.max)) throw ConfigurationError("grid: min must be below max");
  if (g.log && !(g.min > 0.0)) throw ConfigurationError("grid: log spacing needs min > 0");
  return g;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Typical Poisson-Delaunay cell volume law, simulation and CoMP void probability"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto* pdf = app.add_subcommand("pdf", "Volume density on a grid");
  auto* cdf = app.add_subcommand("cdf", "Volume distribution function on a grid");
  auto* stats = app.add_subcommand("stats", "Mean, variance, skewness, excess kurtosis for d = 1..d-max");
  auto* constants = app.add_subcommand("constants", "Density prefactor A and scale B against their closed forms");
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo cell volumes with a KS report (d = 2)");
  auto* void_cmd = app.add_subcommand("void", "Void-cell probability sweep over lambda_ue / lambda_bs");
  for (auto* sub : {pdf, cdf, stats, constants, simulate, void_cmd}) add_common(sub, o);
  add_law(pdf, o);
  add_law(cdf, o);
  stats->add_option("--d-max", o.d_max, "Largest dimension");
  constants->add_option("--d-max", o.d_max, "Largest dimension");

  simulate->add_option("--seed", o.seed, "Master seed")->required();
  simulate->add_option("--lambda", o.lambda, "Point intensity");
  simulate->add_option("--n", o.n, "Minimum number of cell volumes");
  simulate->add_option("--box", o.box, "Box side (default 200 / sqrt(lambda))");
  simulate->add_option("--buffer", o.buffer, "Minus-sampling buffer (default 5 / sqrt(lambda))");
  simulate->add_option("--threads", o.threads, "Worker threads, 0 for all cores");
  simulate->add_option("--samples", o.samples, "Write volumes to this CSV file");
  simulate->add_option("--selection", o.selection, "Interior rule: circumcentre or vertices")
      ->check(CLI::IsMember({"circumcentre", "vertices"}));

  void_cmd->add_option("--seed", o.seed, "Master seed")->required();
  void_cmd->add_option("--lambda-bs", o.lambda_bs, "BS intensity");
  void_cmd->add_option("--ratios", o.ratios, "Comma-separated lambda_ue / lambda_bs values")->delimiter(',');
  void_cmd->add_option("--box", o.box, "Box side (default 60 / sqrt(lambda_bs))");
  void_cmd->add_option("--replicates", o.replicates, "Monte-Carlo replicates per ratio");
  void_cmd->add_option("--p-active", o.p_active, "Power of an active BS");
  void_cmd->add_option("--p-sleep", o.p_sleep, "Power of a sleeping BS");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Table table;
    Json meta;
    if (pdf->parsed()) {
      meta = base_meta("pdf", o);
      table = cmd_density(o, false, meta);
    } else if (cdf->parsed()) {
      meta = base_meta("cdf", o);
      table = cmd_density(o, true, meta);
    } else if (stats->parsed()) {
      meta = base_meta("stats", o);
      table = cmd_stats(o, meta);
    } else if (constants->parsed()) {
      meta = base_meta("constants", o);
      table = cmd_constants(o, meta);
    } else if (simulate->parsed()) {
      meta = base_meta("simulate", o);
      table = cmd_simulate(o, meta);
    } else {
      meta = base_meta("void", o);
      table = cmd_void(o, meta);
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (o.common.output != "-") {
      file.open(o.common.output, std::ios::binary);
      if (!file) throw ConfigurationError("cannot open output " + o.common.output);
      sink = &file;
    }
    if (o.common.format == "json") {
      write_json(*sink, table, meta);
    } else {
      write_csv(*sink, table);
    }
    return table.failed ? kExitConvergence : kExitOk;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const ConfigurationError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace pdcell::cli
