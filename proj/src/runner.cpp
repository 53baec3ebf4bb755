#include "sextic/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sextic/borel.hpp"
#include "sextic/errors.hpp"
#include "sextic/fits.hpp"
#include "sextic/hvpt.hpp"
#include "sextic/io_format.hpp"
#include "sextic/pade.hpp"
#include "sextic/potential.hpp"
#include "sextic/quadrature.hpp"
#include "sextic/scan.hpp"
#include "sextic/variational.hpp"
#include "sextic/version.hpp"

namespace sextic {

namespace {

constexpr std::pair<const char*, Command> kCommands[] = {
    {"potential-info", Command::potential_info},
    {"series", Command::series},
    {"sum", Command::sum},
    {"fit-large-order", Command::fit_large_order},
    {"fit-splitting", Command::fit_splitting},
    {"solve", Command::solve},
    {"scan", Command::scan},
    {"crossings", Command::crossings},
    {"deltax", Command::deltax},
    {"reproduce", Command::reproduce},
};

}  // namespace

Command parse_command(const std::string& name) {
  for (const auto& [text, cmd] : kCommands)
    if (name == text) return cmd;
  throw UsageError("unknown command '" + name + "'");
}

std::string to_string(Command c) {
  for (const auto& [text, cmd] : kCommands)
    if (cmd == c) return text;
  return "?";
}

std::string RunConfig::resolved_output_dir() const {
  auto it = params.find("output-dir");
  if (it != params.end()) return it->second;
  if (const char* env = std::getenv("SEXTIC_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

namespace {

// ---------------------------------------------------------------- parameters

const std::string* find_param(const RunConfig& cfg, const std::string& key) {
  auto it = cfg.params.find(key);
  return it == cfg.params.end() ? nullptr : &it->second;
}

void default_param(RunConfig& cfg, const std::string& key, const std::string& value) {
  cfg.params.emplace(key, value);
}

std::string get_string(const RunConfig& cfg, const std::string& key) {
  const std::string* v = find_param(cfg, key);
  if (!v) throw UsageError("missing required parameter --" + key);
  return *v;
}

double get_double(const RunConfig& cfg, const std::string& key) {
  const std::string text = get_string(cfg, key);
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("parameter --" + key + " expects a number, got '" + text + "'");
  }
}

int get_int(const RunConfig& cfg, const std::string& key) {
  const std::string text = get_string(cfg, key);
  try {
    size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("parameter --" + key + " expects an integer, got '" + text + "'");
  }
}

bool get_bool(const RunConfig& cfg, const std::string& key) {
  const std::string text = get_string(cfg, key);
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw UsageError("parameter --" + key + " expects true or false, got '" + text + "'");
}

void validate_keys(const RunConfig& cfg, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : cfg.params) {
    if (!allowed.count(key))
      throw UsageError("unknown parameter --" + key + " for command '" +
                       to_string(cfg.command) + "'");
    if (value.find(' ') != std::string::npos || value.find('=') != std::string::npos)
      throw UsageError("parameter --" + key + " must not contain spaces or '='");
  }
}

TextFormat get_format(const RunConfig& cfg, TextFormat fallback) {
  const std::string* v = find_param(cfg, "format");
  return v ? parse_format(*v) : fallback;
}

// ------------------------------------------------------------------- outputs

std::string timestamp_rfc3339() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string config_line(const RunConfig& cfg) {
  std::string line = "command=" + to_string(cfg.command);
  for (const auto& [k, v] : cfg.params) line += " " + k + "=" + v;
  return line;
}

std::string output_path(const RunConfig& cfg, const std::string& default_name) {
  const std::string* name = find_param(cfg, "output");
  std::filesystem::path p(name ? *name : default_name);
  if (!p.is_absolute()) p = std::filesystem::path(cfg.resolved_output_dir()) / p;
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create output directory " + p.parent_path().string());
  return p.string();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file " + path);
  return out;
}

void write_csv(const std::string& path, const RunConfig& cfg, const std::string& header,
               const std::vector<std::string>& rows,
               const std::vector<std::string>& extra_meta = {}) {
  std::ofstream out = open_output(path);
  out << "# sextic " << version_string << "\n";
  out << "# config: " << config_line(cfg) << "\n";
  if (cfg.emit_timestamp) out << "# generated: " << timestamp_rfc3339() << "\n";
  for (const std::string& line : extra_meta) out << "# " << line << "\n";
  out << header << "\n";
  for (const std::string& row : rows) out << row << "\n";
  if (!out) throw IoError("write failed for " + path);
}

nlohmann::json meta_object(const RunConfig& cfg) {
  nlohmann::json config;
  config["command"] = to_string(cfg.command);
  for (const auto& [k, v] : cfg.params) config[k] = v;
  nlohmann::json meta;
  meta["version"] = version_string;
  meta["config"] = config;
  if (cfg.emit_timestamp) meta["generated"] = timestamp_rfc3339();
  return meta;
}

void write_json(const std::string& path, const RunConfig& cfg, const nlohmann::json& data) {
  nlohmann::json doc;
  doc["_meta"] = meta_object(cfg);
  doc["data"] = data;
  std::ofstream out = open_output(path);
  out << doc.dump(2) << "\n";
  if (!out) throw IoError("write failed for " + path);
}

GridSpec grid_from_params(const RunConfig& cfg) {
  GridSpec grid;
  grid.lambda_min = get_double(cfg, "lambda-min");
  grid.lambda_max = get_double(cfg, "lambda-max");
  grid.count = get_int(cfg, "count");
  grid.log_spaced = get_bool(cfg, "log");
  return grid;
}

// ------------------------------------------------------------------ commands

RunOutput cmd_potential_info(RunConfig cfg) {
  validate_keys(cfg, {"lambda", "format", "output", "output-dir"});
  if (get_format(cfg, TextFormat::json) != TextFormat::json)
    throw UsageError("potential-info emits json only");
  const double lambda = get_double(cfg, "lambda");
  const PotentialShape shape = classify_potential(lambda);

  nlohmann::json data;
  data["lambda"] = lambda;
  data["regime"] = to_string(shape.regime);
  data["curvature_origin"] = shape.curvature_origin;
  data["boundaries"] = {{"left", regime_boundary_left}, {"right", regime_boundary_right}};
  if (shape.x_m_sq) data["x_m_sq"] = *shape.x_m_sq;
  if (shape.x_M_sq) data["x_M_sq"] = *shape.x_M_sq;
  if (shape.v_at_xm) data["v_at_xm"] = *shape.v_at_xm;
  if (shape.v_at_xM) data["v_at_xM"] = *shape.v_at_xM;
  if (shape.curvature_xm) data["curvature_xm"] = *shape.curvature_xm;
  if (shape.curvature_xM) data["curvature_xM"] = *shape.curvature_xM;
  if (lambda >= 0.0) data["exact_ground_state_energy"] = 1.0;

  const std::string path = output_path(cfg, "potential-info.json");
  write_json(path, cfg, data);
  return {{path}, "potential regime: " + std::string(to_string(shape.regime))};
}

PerturbationSeries series_from_params(const RunConfig& cfg) {
  const int state = get_int(cfg, "state");
  const int order = get_int(cfg, "order");
  const std::string quantity = get_string(cfg, "quantity");
  const HvptResult result = generate_series(state, order);
  if (quantity == "energy") return result.energy;
  if (quantity == "x2") return result.moments.moment_series(1);
  if (quantity == "moment") {
    const int n_power = get_int(cfg, "moment");
    if (n_power < 0) throw UsageError("parameter --moment expects N >= 0");
    return result.moments.moment_series(n_power);
  }
  throw UsageError("parameter --quantity expects energy, x2 or moment");
}

RunOutput cmd_series(RunConfig cfg) {
  validate_keys(cfg, {"state", "order", "quantity", "moment", "format", "output",
                      "output-dir"});
  default_param(cfg, "state", "0");
  default_param(cfg, "order", "10");
  default_param(cfg, "quantity", "energy");
  const PerturbationSeries series = series_from_params(cfg);
  const TextFormat format = get_format(cfg, TextFormat::csv);

  std::string path;
  if (format == TextFormat::csv) {
    std::vector<std::string> rows;
    rows.reserve(series.coefficients.size());
    for (size_t p = 0; p < series.coefficients.size(); ++p)
      rows.push_back(std::to_string(p) + "," + to_fraction_string(series.coefficients[p]));
    path = output_path(cfg, "series.csv");
    write_csv(path, cfg, "order,coefficient", rows);
  } else {
    path = output_path(cfg, "series.json");
    write_json(path, cfg, nlohmann::json::parse(export_coefficients(series, TextFormat::json)));
  }
  return {{path},
          "wrote " + std::to_string(series.coefficients.size()) + " coefficients for " +
              to_string(series.quantity) + std::string(" series of state ") +
              std::to_string(series.state_index)};
}

RunOutput cmd_sum(RunConfig cfg) {
  validate_keys(cfg, {"state", "order", "quantity", "m", "n", "lambda", "lambda-min",
                      "lambda-max", "count", "log", "dim", "format", "output", "output-dir"});
  default_param(cfg, "state", "0");
  default_param(cfg, "quantity", "x2");
  default_param(cfg, "m", "6");
  default_param(cfg, "n", "6");
  default_param(cfg, "dim", "400");
  const int m = get_int(cfg, "m");
  const int n = get_int(cfg, "n");
  default_param(cfg, "order", std::to_string(m + n));

  std::vector<double> lambdas;
  if (find_param(cfg, "lambda")) {
    if (find_param(cfg, "lambda-min") || find_param(cfg, "lambda-max"))
      throw UsageError("give either --lambda or a --lambda-min/--lambda-max grid, not both");
    lambdas.push_back(get_double(cfg, "lambda"));
  } else if (find_param(cfg, "lambda-min")) {
    default_param(cfg, "count", "20");
    default_param(cfg, "log", "false");
    lambdas = grid_from_params(cfg).points();
  } else {
    throw UsageError("sum needs --lambda or a --lambda-min/--lambda-max grid");
  }

  const int state = get_int(cfg, "state");
  const std::string quantity = get_string(cfg, "quantity");
  if (quantity != "x2" && quantity != "energy")
    throw UsageError("parameter --quantity expects x2 or energy");
  const int dim = get_int(cfg, "dim");
  const PerturbationSeries series = series_from_params(cfg);
  if (series.max_order() < m + n)
    throw UsageError("order " + std::to_string(series.max_order()) +
                     " series cannot support a [" + std::to_string(m) + "/" +
                     std::to_string(n) + "] approximant");

  std::vector<double> coeffs(series.coefficients.size());
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = to_double(series.coefficients[i]);
  const PadeApproximant approx = pade_fit(coeffs, m, n);

  std::vector<std::string> rows;
  nlohmann::json jrows = nlohmann::json::array();
  for (double lambda : lambdas) {
    const double pade_value = pade_eval(approx, lambda);
    const BorelSumResult borel =
        borel_pade_sum(std::span<const Rational>(series.coefficients), m, n, lambda);
    const std::vector<EigenPair> states = solve_spectrum(lambda, dim, state + 1);
    const EigenPair& ref_state = states.at(static_cast<size_t>(state));
    const double reference =
        quantity == "x2" ? ref_state.x2_expectation : ref_state.energy;
    rows.push_back(format_double17(lambda) + "," + format_double17(pade_value) + "," +
                   format_double17(borel.value_real) + "," + format_double17(reference));
    nlohmann::json r;
    r["lambda"] = lambda;
    r["pade"] = pade_value;
    r["borel_pade"] = borel.value_real;
    r["reference"] = reference;
    jrows.push_back(r);
  }

  std::string path;
  if (get_format(cfg, TextFormat::csv) == TextFormat::csv) {
    path = output_path(cfg, "sum.csv");
    write_csv(path, cfg, "lambda,pade,borel_pade,reference", rows);
  } else {
    path = output_path(cfg, "sum.json");
    write_json(path, cfg, jrows);
  }
  return {{path}, "summed " + std::to_string(lambdas.size()) + " point(s) with [" +
                      std::to_string(m) + "/" + std::to_string(n) + "]"};
}

RunOutput cmd_fit_large_order(RunConfig cfg) {
  validate_keys(cfg, {"target", "order", "j-min", "j-max", "terms", "format", "output",
                      "output-dir"});
  default_param(cfg, "target", "moments");
  default_param(cfg, "order", "300");
  const std::string target = get_string(cfg, "target");
  const int order = get_int(cfg, "order");
  default_param(cfg, "j-max", std::to_string(order));
  default_param(cfg, "j-min", std::to_string(std::max(10, order / 3)));
  default_param(cfg, "terms", target == "e1" ? "3" : (order >= 600 ? "6" : "4"));
  if (get_format(cfg, TextFormat::json) != TextFormat::json)
    throw UsageError("fit-large-order emits json only");
  const int j_min = get_int(cfg, "j-min");
  const int j_max = get_int(cfg, "j-max");
  const int terms = get_int(cfg, "terms");

  FitResult fit;
  nlohmann::json data;
  if (target == "moments") {
    const PerturbationSeries x1 = generate_series(0, order).moments.moment_series(1);
    fit = fit_large_order_moments(x1, j_min, j_max, terms);
    data["f0"] = fit.parameters.at(0);
    if (fit.parameters.size() > 1) data["f1"] = fit.parameters.at(1);
  } else if (target == "e1") {
    const PerturbationSeries e1 = generate_series(1, order).energy;
    fit = fit_e1_growth(e1, j_min, j_max, terms);
    data["a0"] = fit.parameters.at(0);
  } else {
    throw UsageError("parameter --target expects moments or e1");
  }
  data["parameters"] = fit.parameters;
  data["residual_rms"] = fit.residual_rms;
  data["window"] = {{"lo", fit.window.lo}, {"hi", fit.window.hi}};
  data["condition_estimate"] = fit.condition_estimate;

  const std::string path = output_path(cfg, "fit-large-order.json");
  write_json(path, cfg, data);
  return {{path}, "fitted " + std::to_string(terms) + " terms over j in [" +
                      std::to_string(j_min) + "," + std::to_string(j_max) + "]"};
}

double splitting_model(const FitResult& fit, double lambda) {
  const double al = std::abs(lambda);
  double m = fit.parameters[0] * std::pow(al, fit.parameters[1]) *
             std::exp(-fit.parameters[2] / al);
  if (fit.parameters.size() > 3) m *= std::exp(fit.parameters[3] * al);
  return m;
}

RunOutput cmd_fit_splitting(RunConfig cfg) {
  validate_keys(cfg, {"lambda-min", "lambda-max", "count", "dim", "constrain-b", "correction",
                      "noise-floor", "format", "output", "output-dir"});
  default_param(cfg, "lambda-min", "-0.030");
  default_param(cfg, "lambda-max", "-0.012");
  default_param(cfg, "count", "10");
  default_param(cfg, "dim", "500");
  default_param(cfg, "constrain-b", "false");
  default_param(cfg, "correction", "false");
  default_param(cfg, "noise-floor", "1e-10");
  if (get_format(cfg, TextFormat::json) != TextFormat::json)
    throw UsageError("fit-splitting emits json only");
  GridSpec grid;
  grid.lambda_min = get_double(cfg, "lambda-min");
  grid.lambda_max = get_double(cfg, "lambda-max");
  grid.count = get_int(cfg, "count");
  const int dim = get_int(cfg, "dim");
  const bool constrain = get_bool(cfg, "constrain-b");
  const bool correction = get_bool(cfg, "correction");
  const double floor = get_double(cfg, "noise-floor");

  const SplittingSampleSet set = splitting_samples(grid, dim, floor);
  const FitResult fit = fit_splitting(set.samples, constrain, correction, floor);

  nlohmann::json data;
  data["a"] = fit.parameters[0];
  data["b"] = fit.parameters[1];
  data["c"] = fit.parameters[2];
  if (correction) data["d"] = fit.parameters[3];
  data["residual_rms"] = fit.residual_rms;
  data["window"] = {{"lo", fit.window.lo}, {"hi", fit.window.hi}};
  data["condition_estimate"] = fit.condition_estimate;
  data["rejected_samples"] = fit.rejected_samples + set.rejected;
  nlohmann::json samples = nlohmann::json::array();
  for (const SplittingSample& s : set.samples) {
    nlohmann::json row;
    row["lambda"] = s.lambda;
    row["e0_minus_1"] = s.e0_minus_1;
    row["model"] = splitting_model(fit, s.lambda);
    samples.push_back(row);
  }
  data["samples"] = samples;

  const std::string path = output_path(cfg, "fit-splitting.json");
  write_json(path, cfg, data);
  std::ostringstream msg;
  msg << "A=" << fit.parameters[0] << " B=" << fit.parameters[1]
      << " C=" << fit.parameters[2];
  return {{path}, msg.str()};
}

RunOutput cmd_solve(RunConfig cfg) {
  validate_keys(cfg, {"lambda", "levels", "dim", "format", "output", "output-dir"});
  default_param(cfg, "levels", "6");
  default_param(cfg, "dim", "500");
  const double lambda = get_double(cfg, "lambda");
  const int levels = get_int(cfg, "levels");
  const int dim = get_int(cfg, "dim");
  const std::vector<EigenPair> states = solve_spectrum(lambda, dim, levels);

  std::string path;
  if (get_format(cfg, TextFormat::json) == TextFormat::json) {
    nlohmann::json data = nlohmann::json::array();
    for (const EigenPair& s : states) {
      nlohmann::json row;
      row["lambda"] = lambda;
      row["n"] = s.level_index;
      row["parity"] = to_string(s.parity);
      row["energy"] = s.energy;
      row["x2"] = s.x2_expectation;
      data.push_back(row);
    }
    path = output_path(cfg, "solve.json");
    write_json(path, cfg, data);
  } else {
    std::vector<std::string> rows;
    for (const EigenPair& s : states)
      rows.push_back(format_double17(lambda) + "," + std::to_string(s.level_index) + "," +
                     to_string(s.parity) + "," + format_double17(s.energy) + "," +
                     format_double17(std::sqrt(s.x2_expectation)));
    path = output_path(cfg, "solve.csv");
    write_csv(path, cfg, "lambda,level,parity,energy,delta_x", rows);
  }
  return {{path}, "solved " + std::to_string(states.size()) + " level(s) at lambda=" +
                      std::to_string(lambda)};
}

void apply_scan_defaults(RunConfig& cfg) {
  default_param(cfg, "lambda-min", "-0.03");
  default_param(cfg, "lambda-max", "-0.002");
  default_param(cfg, "count", "60");
  default_param(cfg, "log", "true");
  default_param(cfg, "levels", "10");
  default_param(cfg, "dim", "250");
}

ScanTable scan_from_params(const RunConfig& cfg) {
  return scan_spectrum(grid_from_params(cfg), get_int(cfg, "levels"), get_int(cfg, "dim"));
}

std::vector<std::string> scan_csv_rows(const ScanTable& table) {
  std::vector<std::string> rows;
  rows.reserve(table.rows.size());
  for (const ScanRow& r : table.rows)
    rows.push_back(format_double17(r.lambda) + "," + std::to_string(r.level) + "," +
                   to_string(r.parity) + "," + format_double17(r.energy) + "," +
                   format_double17(r.delta_x));
  return rows;
}

RunOutput cmd_scan(RunConfig cfg) {
  validate_keys(cfg, {"lambda-min", "lambda-max", "count", "log", "levels", "dim", "format",
                      "output", "output-dir"});
  apply_scan_defaults(cfg);
  const ScanTable table = scan_from_params(cfg);

  std::string path;
  if (get_format(cfg, TextFormat::csv) == TextFormat::csv) {
    path = output_path(cfg, "scan.csv");
    write_csv(path, cfg, "lambda,level,parity,energy,delta_x", scan_csv_rows(table));
  } else {
    nlohmann::json data = nlohmann::json::array();
    for (const ScanRow& r : table.rows) {
      nlohmann::json row;
      row["lambda"] = r.lambda;
      row["level"] = r.level;
      row["parity"] = to_string(r.parity);
      row["energy"] = r.energy;
      row["delta_x"] = r.delta_x;
      data.push_back(row);
    }
    path = output_path(cfg, "scan.json");
    write_json(path, cfg, data);
  }
  return {{path}, "scanned " + std::to_string(table.n_points()) + " grid points x " +
                      std::to_string(table.n_levels) + " levels"};
}

nlohmann::json crossing_to_json(const AvoidedCrossing& c) {
  nlohmann::json row;
  row["pair"] = {c.n_low, c.n_high};
  row["parity"] = to_string(c.parity);
  row["lambda_star"] = c.lambda_star;
  row["min_gap"] = c.min_gap;
  row["refined"] = c.refined;
  row["delta_x_swap"] = {{"low_before", c.dx_low_before},
                         {"low_after", c.dx_low_after},
                         {"high_before", c.dx_high_before},
                         {"high_after", c.dx_high_after}};
  return row;
}

RunOutput cmd_crossings(RunConfig cfg) {
  validate_keys(cfg, {"lambda-min", "lambda-max", "count", "log", "levels", "dim", "format",
                      "output", "output-dir"});
  apply_scan_defaults(cfg);
  if (get_format(cfg, TextFormat::json) != TextFormat::json)
    throw UsageError("crossings emits json only");
  const ScanTable table = scan_from_params(cfg);
  const std::vector<AvoidedCrossing> crossings = detect_avoided_crossings(table);

  nlohmann::json data = nlohmann::json::array();
  for (const AvoidedCrossing& c : crossings) data.push_back(crossing_to_json(c));
  const std::string path = output_path(cfg, "crossings.json");
  write_json(path, cfg, data);
  return {{path}, "detected " + std::to_string(crossings.size()) + " avoided crossing(s)"};
}

std::vector<std::string> jump_meta_lines(const DeltaXTrace& trace) {
  std::vector<std::string> lines;
  lines.push_back("trace level=" + std::to_string(trace.level) +
                  " median_step=" + format_double17(trace.median_step) +
                  " threshold_factor=" + format_double17(trace.threshold_factor));
  for (const DeltaXJump& j : trace.jumps)
    lines.push_back("jump level=" + std::to_string(trace.level) +
                    " lambda_before=" + format_double17(j.lambda_before) +
                    " lambda_after=" + format_double17(j.lambda_after) +
                    " change=" + format_double17(j.change) +
                    " direction=" + (j.upward ? "up" : "down"));
  return lines;
}

std::string optional_bool_cell(const std::optional<bool>& v) {
  return v ? (*v ? "true" : "false") : "";
}

RunOutput cmd_deltax(RunConfig cfg) {
  validate_keys(cfg, {"lambda-min", "lambda-max", "count", "log", "levels", "dim", "level",
                      "threshold", "format", "output", "output-dir"});
  apply_scan_defaults(cfg);
  default_param(cfg, "level", "4");
  default_param(cfg, "threshold", "3.0");
  const int level = get_int(cfg, "level");
  const double threshold = get_double(cfg, "threshold");
  const ScanTable table = scan_from_params(cfg);
  const DeltaXTrace trace = track_delta_x(table, level, threshold);

  std::string path;
  if (get_format(cfg, TextFormat::csv) == TextFormat::csv) {
    std::vector<std::string> rows;
    for (const DeltaXPoint& p : trace.points)
      rows.push_back(format_double17(p.lambda) + "," + format_double17(p.delta_x) + "," +
                     optional_bool_cell(p.side_well_dominated));
    path = output_path(cfg, "deltax.csv");
    write_csv(path, cfg, "lambda,delta_x,side_well_dominated", rows, jump_meta_lines(trace));
  } else {
    nlohmann::json data;
    data["level"] = trace.level;
    data["median_step"] = trace.median_step;
    data["threshold_factor"] = trace.threshold_factor;
    nlohmann::json pts = nlohmann::json::array();
    for (const DeltaXPoint& p : trace.points) {
      nlohmann::json row;
      row["lambda"] = p.lambda;
      row["delta_x"] = p.delta_x;
      if (p.side_well_dominated) row["side_well_dominated"] = *p.side_well_dominated;
      pts.push_back(row);
    }
    data["points"] = pts;
    nlohmann::json jumps = nlohmann::json::array();
    for (const DeltaXJump& j : trace.jumps) {
      nlohmann::json row;
      row["lambda_before"] = j.lambda_before;
      row["lambda_after"] = j.lambda_after;
      row["change"] = j.change;
      row["direction"] = j.upward ? "up" : "down";
      jumps.push_back(row);
    }
    data["jumps"] = jumps;
    path = output_path(cfg, "deltax.json");
    write_json(path, cfg, data);
  }
  return {{path}, "traced level " + std::to_string(level) + " with " +
                      std::to_string(trace.jumps.size()) + " jump(s)"};
}

// ------------------------------------------------------------------- figures

RunOutput fig_splitting(RunConfig cfg) {
  validate_keys(cfg, {"figure", "lambda-min", "lambda-max", "count", "log", "dim", "output",
                      "output-dir"});
  default_param(cfg, "log", "false");
  default_param(cfg, "lambda-min", "-0.030");
  default_param(cfg, "lambda-max", "-0.012");
  default_param(cfg, "count", "10");
  default_param(cfg, "dim", "500");
  const GridSpec grid = grid_from_params(cfg);
  const int dim = get_int(cfg, "dim");
  const SplittingSampleSet set = splitting_samples(grid, dim);
  // Constrained B=0 with the leading-correction column: the annotation should
  // carry the asymptotic amplitude, not a window-biased descriptive fit.
  const FitResult fit = fit_splitting(set.samples, /*constrain_b_zero=*/true,
                                      /*leading_correction=*/true);

  std::vector<std::string> rows;
  for (const SplittingSample& s : set.samples)
    rows.push_back(format_double17(s.lambda) + "," + format_double17(s.e0_minus_1) + "," +
                   format_double17(splitting_model(fit, s.lambda)));
  std::vector<std::string> extra = {
      "fit A=" + format_double17(fit.parameters[0]) + " B=" +
      format_double17(fit.parameters[1]) + " C=" + format_double17(fit.parameters[2]) +
      " D=" + format_double17(fit.parameters[3]) +
      " residual_rms=" + format_double17(fit.residual_rms)};
  const std::string path = output_path(cfg, "fig1.csv");
  write_csv(path, cfg, "lambda,e0_minus_1,fitted_model", rows, extra);
  return {{path}, "ground-state splitting fit over " + std::to_string(set.samples.size()) +
                      " points"};
}

RunOutput fig_borel_negative(RunConfig cfg) {
  validate_keys(cfg, {"figure", "lambda-min", "lambda-max", "count", "log", "dim", "f0",
                      "output", "output-dir"});
  default_param(cfg, "lambda-min", "-0.1");
  default_param(cfg, "lambda-max", "-0.005");
  default_param(cfg, "count", "40");
  default_param(cfg, "log", "false");
  default_param(cfg, "dim", "250");
  default_param(cfg, "f0", "0.450158158079");
  const GridSpec grid = grid_from_params(cfg);
  const int dim = get_int(cfg, "dim");
  const double f0 = get_double(cfg, "f0");

  std::vector<std::string> rows;
  for (double lambda : grid.points()) {
    const std::vector<EigenPair> ground = solve_eigen(lambda, Parity::even, dim, 1);
    const BorelSumResult sb = leading_borel_closed_form(lambda, f0);
    rows.push_back(format_double17(lambda) + "," +
                   format_double17(ground.front().x2_expectation) + "," +
                   format_double17(sb.value_real) + "," + format_double17(sb.value_imag));
  }
  const std::string path = output_path(cfg, "fig2.csv");
  write_csv(path, cfg, "lambda,x2_variational,re_sb,im_sb", rows);
  return {{path}, "leading Borel closed form vs variational <x^2> on the negative axis"};
}

double exact_ground_x2(double lambda) {
  const double cut = ground_state_cutoff(lambda);
  const double num = 2.0 * integrate_adaptive_gl(
                               [lambda](double x) {
                                 const double phi = exact_ground_state_value(lambda, x);
                                 return x * x * phi * phi;
                               },
                               0.0, cut, 1e-13);
  return num / exact_ground_state_norm_sq(lambda);
}

RunOutput fig_resummation_positive(RunConfig cfg) {
  validate_keys(cfg, {"figure", "lambda-min", "lambda-max", "count", "log", "m", "n",
                      "output", "output-dir"});
  default_param(cfg, "lambda-min", "0.005");
  default_param(cfg, "lambda-max", "0.1");
  default_param(cfg, "count", "20");
  default_param(cfg, "log", "false");
  default_param(cfg, "m", "6");
  default_param(cfg, "n", "6");
  const GridSpec grid = grid_from_params(cfg);
  const int m = get_int(cfg, "m");
  const int n = get_int(cfg, "n");

  const PerturbationSeries x1 = generate_series(0, m + n).moments.moment_series(1);
  std::vector<double> coeffs(x1.coefficients.size());
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = to_double(x1.coefficients[i]);
  const PadeApproximant approx = pade_fit(coeffs, m, n);

  std::vector<std::string> rows;
  for (double lambda : grid.points()) {
    const double pade_value = pade_eval(approx, lambda);
    const BorelSumResult borel =
        borel_pade_sum(std::span<const Rational>(x1.coefficients), m, n, lambda);
    rows.push_back(format_double17(lambda) + "," + format_double17(exact_ground_x2(lambda)) +
                   "," + format_double17(pade_value) + "," +
                   format_double17(borel.value_real));
  }
  const std::string path = output_path(cfg, "fig3.csv");
  write_csv(path, cfg, "lambda,x2_exact,pade66,borel_pade66", rows);
  return {{path}, "<x^2> resummation comparison on the positive axis"};
}

RunOutput fig_spectrum_scan(RunConfig cfg) {
  validate_keys(cfg, {"figure", "lambda-min", "lambda-max", "count", "log", "levels", "dim",
                      "output", "output-dir"});
  apply_scan_defaults(cfg);
  const ScanTable table = scan_from_params(cfg);
  const std::string path = output_path(cfg, "fig4.csv");
  write_csv(path, cfg, "lambda,level,parity,energy,delta_x", scan_csv_rows(table));
  return {{path}, "spectrum scan over " + std::to_string(table.n_points()) + " points"};
}

RunOutput fig_deltax(RunConfig cfg, const std::vector<int>& levels, const std::string& name) {
  validate_keys(cfg, {"figure", "lambda-min", "lambda-max", "count", "log", "levels", "dim",
                      "threshold", "output", "output-dir"});
  apply_scan_defaults(cfg);
  default_param(cfg, "threshold", "3.0");
  const double threshold = get_double(cfg, "threshold");
  const ScanTable table = scan_from_params(cfg);

  std::vector<DeltaXTrace> traces;
  std::string header = "lambda";
  std::vector<std::string> extra;
  for (int level : levels) {
    traces.push_back(track_delta_x(table, level, threshold));
    header += ",delta_x_n" + std::to_string(level);
    for (const std::string& line : jump_meta_lines(traces.back())) extra.push_back(line);
  }
  std::vector<std::string> rows;
  for (int i = 0; i < table.n_points(); ++i) {
    std::string row = format_double17(table.lambdas[static_cast<size_t>(i)]);
    for (const DeltaXTrace& t : traces)
      row += "," + format_double17(t.points[static_cast<size_t>(i)].delta_x);
    rows.push_back(row);
  }
  const std::string path = output_path(cfg, name + ".csv");
  write_csv(path, cfg, header, rows, extra);
  return {{path}, "delta-x traces for " + std::to_string(levels.size()) + " level(s)"};
}

}  // namespace

RunOutput reproduce_figure(const std::string& tag, const RunConfig& base) {
  RunConfig cfg = base;
  cfg.command = Command::reproduce;
  cfg.params["figure"] = tag;
  if (tag == "fig1") return fig_splitting(std::move(cfg));
  if (tag == "fig2") return fig_borel_negative(std::move(cfg));
  if (tag == "fig3") return fig_resummation_positive(std::move(cfg));
  if (tag == "fig4") return fig_spectrum_scan(std::move(cfg));
  if (tag == "fig7") return fig_deltax(std::move(cfg), {0, 2, 4}, "fig7");
  if (tag == "fig8") return fig_deltax(std::move(cfg), {6}, "fig8");
  throw UsageError("unknown figure tag '" + tag +
                   "' (expected fig1, fig2, fig3, fig4, fig7 or fig8)");
}

RunOutput run(const RunConfig& config) {
  if (config.params.count("command"))
    throw UsageError("'command' is not a valid parameter name");
  switch (config.command) {
    case Command::potential_info: return cmd_potential_info(config);
    case Command::series: return cmd_series(config);
    case Command::sum: return cmd_sum(config);
    case Command::fit_large_order: return cmd_fit_large_order(config);
    case Command::fit_splitting: return cmd_fit_splitting(config);
    case Command::solve: return cmd_solve(config);
    case Command::scan: return cmd_scan(config);
    case Command::crossings: return cmd_crossings(config);
    case Command::deltax: return cmd_deltax(config);
    case Command::reproduce: {
      RunConfig cfg = config;
      auto it = cfg.params.find("figure");
      if (it == cfg.params.end()) throw UsageError("missing required parameter --figure");
      const std::string tag = it->second;
      cfg.params.erase(it);
      return reproduce_figure(tag, cfg);
    }
  }
  throw UsageError("unhandled command");
}

RunConfig parse_output_metadata(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  const size_t first = content.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw UsageError(path + " is empty");

  RunConfig cfg;
  cfg.emit_timestamp = false;
  if (content[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(path + " is not valid json: " + e.what());
    }
    if (!doc.contains("_meta") || !doc["_meta"].contains("config"))
      throw UsageError(path + " carries no _meta.config object");
    const nlohmann::json& config = doc["_meta"]["config"];
    if (!config.contains("command"))
      throw UsageError(path + " metadata lacks a command entry");
    for (auto it = config.begin(); it != config.end(); ++it) {
      if (it.key() == "command")
        cfg.command = parse_command(it.value().get<std::string>());
      else
        cfg.params[it.key()] = it.value().get<std::string>();
    }
    if (doc["_meta"].contains("generated")) cfg.emit_timestamp = true;
    return cfg;
  }

  std::istringstream lines(content);
  std::string line;
  bool found = false;
  bool has_timestamp = false;
  while (std::getline(lines, line)) {
    if (line.rfind("# generated:", 0) == 0) has_timestamp = true;
    if (line.rfind("# config: ", 0) != 0) continue;
    std::istringstream tokens(line.substr(10));
    std::string token;
    bool has_command = false;
    while (tokens >> token) {
      const size_t eq = token.find('=');
      if (eq == std::string::npos)
        throw UsageError(path + " has a malformed config token '" + token + "'");
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "command") {
        cfg.command = parse_command(value);
        has_command = true;
      } else {
        cfg.params[key] = value;
      }
    }
    if (!has_command) throw UsageError(path + " metadata lacks a command entry");
    found = true;
    break;
  }
  if (!found) throw UsageError(path + " carries no '# config:' metadata line");
  cfg.emit_timestamp = has_timestamp;
  return cfg;
}

}  // namespace sextic
