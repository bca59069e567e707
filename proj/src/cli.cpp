#include "lrotto/cli.hpp"

#include "lrotto/bdg.hpp"
#include "lrotto/dynamics.hpp"
#include "lrotto/errors.hpp"
#include "lrotto/oracle.hpp"
#include "lrotto/spectrum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace lrotto::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  std::string t = s;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  if (t == "inf" || t == "+inf" || t == "Inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " value '" + s + "'");
  }
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_double(p, what));
  return out;
}

std::string join_values(const std::vector<double>& v, int precision) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_number(v[i], precision);
  }
  return s;
}

std::string axis_text(const AxisSpec& a, int precision) {
  return std::string(axis_label(a.name)) + ":" + join_values(a.values, precision);
}

std::string boundary_name(Boundary b) { return b == Boundary::Periodic ? "periodic" : "open"; }

// RFC 4180: quote when the field holds a separator, quote or line break.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string cell_text(const Cell& c, int precision) {
  if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c), precision);
  if (std::holds_alternative<long>(c)) return std::to_string(std::get<long>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return {};
}

nlohmann::json cell_json(const Cell& c, int precision) {
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    if (!std::isfinite(v)) return format_number(v, precision);
    return std::stod(format_number(v, precision));
  }
  if (std::holds_alternative<long>(c)) return std::get<long>(c);
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return nullptr;
}

Cell opt_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

std::vector<double> times_from(const std::string& s) {
  if (s.find(':') != std::string::npos) {
    auto a = parse_axis("t:" + s);
    return a.values;
  }
  return parse_list(s, "times");
}

SweepGrid base_grid(const RunConfig& cfg) {
  SweepGrid g;
  g.base = cfg.spec;
  g.cycle = cfg.cycle;
  g.delta_h = cfg.fixed_h_f ? 0.0 : cfg.delta_h;
  g.fixed_h_f = cfg.fixed_h_f;
  return g;
}

SweepRow single_row(const RunConfig& cfg) {
  SweepGrid g = base_grid(cfg);
  return run_grid(g, 1).front();
}

Table cycle_table(const RunConfig& cfg) {
  Table t;
  t.columns = outcome_columns();
  const SweepRow row = single_row(cfg);
  t.rows.push_back(outcome_cells(row));
  if (cfg.ramp_v) {
    RampSpec ramp{cfg.cycle.h_i, cfg.cycle.h_f, *cfg.ramp_v};
    const auto report = adiabaticity_metric(ramp, cfg.spec);
    t.columns.push_back("adiabatic_P_max");
    t.rows.back().push_back(report.any_gapless ? Cell{} : Cell{report.max_P});
    t.summary.emplace_back("gapless_modes", report.any_gapless ? "yes" : "no");
  }
  return t;
}

Table map_table(const RunConfig& cfg) {
  SweepGrid g = base_grid(cfg);
  g.axes = cfg.axes;
  Table t;
  t.columns = outcome_columns();
  for (const auto& r : run_map(g, cfg.workers)) t.rows.push_back(outcome_cells(r));
  return t;
}

Table curve_table(const RunConfig& cfg) {
  if (cfg.axes.size() != 1 || !cfg.family) {
    throw ConfigError("curve needs --x h_i:... and --family N:... or alpha:...");
  }
  Table t;
  t.columns = outcome_columns();
  t.columns.push_back("value");
  for (const auto& r : run_curve(cfg.observable, cfg.axes[0], *cfg.family, base_grid(cfg), cfg.workers)) {
    auto cells = outcome_cells(r.row);
    cells.push_back(opt_cell(r.value));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Table scaling_table(const RunConfig& cfg) {
  if (cfg.axes.size() != 1) throw ConfigError("scaling needs --x h_i:...");
  const auto study = run_scaling(cfg.observable, cfg.sizes, cfg.axes[0], base_grid(cfg),
                                 cfg.workers, cfg.split);
  Table t;
  t.columns = {"N", "alpha", "branch", "h_peak", "value"};
  for (std::size_t i = 0; i < study.sizes.size(); ++i) {
    const auto& pk = study.peaks[i];
    for (auto [name, peak] : {std::pair{"ferro", pk.ferro}, std::pair{"para", pk.para}}) {
      Cell h, v;
      if (peak) {
        h = peak->h_i;
        v = peak->value;
      }
      t.rows.push_back({Cell{static_cast<long>(study.sizes[i])}, Cell{study.alpha}, Cell{std::string(name)}, h, v});
    }
  }
  const int pr = cfg.precision;
  t.summary.emplace_back("split", format_number(study.split, pr));
  for (auto [name, fit] : {std::pair{"ferro", study.ferro_fit}, std::pair{"para", study.para_fit}}) {
    if (fit) {
      t.summary.emplace_back(std::string(name) + "_exponent", format_number(fit->exponent, pr));
      t.summary.emplace_back(std::string(name) + "_intercept", format_number(fit->intercept, pr));
      t.summary.emplace_back(std::string(name) + "_residual", format_number(fit->residual, pr));
    } else {
      t.summary.emplace_back(std::string(name) + "_exponent", "");
    }
  }
  return t;
}

Table relax_table(const RunConfig& cfg) {
  const Eigen::ArrayXd omega = mode_energies(cfg.spec, cfg.cycle.h_i);
  std::vector<double> temps = cfg.bath_temperatures;
  if (temps.empty()) temps = {cfg.cycle.T_h};
  const Eigen::VectorXd tv = Eigen::Map<const Eigen::VectorXd>(temps.data(), static_cast<Eigen::Index>(temps.size()));
  const BathSpec bath = BathSpec::uniform(tv, static_cast<int>(omega.size()), cfg.gamma);
  const Eigen::ArrayXd n0 = fermi_occupation(cfg.cycle.T_c, omega);
  std::vector<double> times = cfg.times;
  if (times.empty()) times = AxisSpec::range(AxisName::HI, 0.0, 5.0, 0.25).values;
  const auto trace = relax(omega, n0, bath, times);
  Table t;
  t.columns = {"t", "energy", "energy_per_spin", "mean_occupation"};
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    t.rows.push_back({Cell{trace.times[i]}, Cell{trace.energy[r]}, Cell{trace.energy[r] / cfg.spec.N},
                      Cell{trace.occupation.row(r).mean()}});
  }
  return t;
}

Table oracle_table(const RunConfig& cfg) {
  const double h = cfg.cycle.h_i;
  const auto q = build_quadratic(cfg.spec, h);
  const auto sys = diagonalize(q);
  const Eigen::VectorXd qp = quasiparticle_levels(sys);
  const Eigen::VectorXd mb = oracle::many_body_spectrum(q);
  const bool nn = std::isinf(cfg.spec.alpha1) && std::isinf(cfg.spec.alpha2) &&
                  cfg.spec.boundary == Boundary::Open && !cfg.spec.disorder && cfg.spec.N <= 10;
  Eigen::VectorXd spin;
  if (nn) spin = oracle::spin_ed_tfim(cfg.spec.N, h, cfg.spec.J);
  Table t;
  t.columns = {"level", "quasiparticle", "many_body", "spin_ed", "max_abs_diff"};
  double worst = 0.0;
  for (Eigen::Index i = 0; i < qp.size(); ++i) {
    double d = std::abs(qp[i] - mb[i]);
    Cell s;
    if (nn) {
      s = spin[i];
      d = std::max(d, std::abs(qp[i] - spin[i]));
    }
    worst = std::max(worst, d);
    t.rows.push_back({Cell{static_cast<long>(i)}, Cell{qp[i]}, Cell{mb[i]}, s, Cell{d}});
  }
  t.summary.emplace_back("max_abs_diff", format_number(worst, cfg.precision));
  return t;
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Cycle: return "cycle";
    case Command::Map: return "map";
    case Command::Curve: return "curve";
    case Command::Scaling: return "scaling";
    case Command::Relax: return "relax";
    case Command::Oracle: return "oracle";
  }
  return "?";
}

std::string format_number(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

AxisSpec parse_axis(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("axis '" + text + "' needs name:values");
  const std::string name = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  const AxisName axis = name == "t" ? AxisName::HI : parse_axis_name(name);
  const auto parts = split(rest, ':');
  if (parts.size() == 1) return AxisSpec::list(axis, parse_list(parts[0], name));
  if (parts.size() != 3) throw ConfigError("axis '" + text + "' must be name:start:stop:step or name:v1,v2,...");
  const double start = parse_double(parts[0], name);
  const double stop = parse_double(parts[1], name);
  if (!parts[2].empty() && parts[2][0] == 'n') {
    const double count = parse_double(parts[2].substr(1), name + " count");
    if (count != std::floor(count) || count < 1) throw ConfigError("axis count must be a positive integer");
    return AxisSpec::linspace(axis, start, stop, static_cast<int>(count));
  }
  return AxisSpec::range(axis, start, stop, parse_double(parts[2], name + " step"));
}

Eigen::MatrixXd read_disorder_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read disorder file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_double(tok, "disorder"));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw ConfigError("disorder file must hold a square matrix");
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  const int pr = precision;
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("command", std::string(command_name(command)));
  e.emplace_back("N", std::to_string(spec.N));
  e.emplace_back("alpha1", format_number(spec.alpha1, pr));
  e.emplace_back("alpha2", format_number(spec.alpha2, pr));
  e.emplace_back("J", format_number(spec.J, pr));
  e.emplace_back("kac", spec.kac ? "true" : "false");
  e.emplace_back("boundary", boundary_name(spec.boundary));
  e.emplace_back("disorder_file", disorder_file);
  e.emplace_back("h_i", format_number(cycle.h_i, pr));
  if (fixed_h_f) {
    e.emplace_back("h_f", format_number(cycle.h_f, pr));
  } else {
    e.emplace_back("delta_h", format_number(delta_h, pr));
    e.emplace_back("h_f", format_number(cycle.h_i + delta_h, pr));
  }
  e.emplace_back("T_c", format_number(cycle.T_c, pr));
  e.emplace_back("T_h", format_number(cycle.T_h, pr));
  e.emplace_back("eps", format_number(cycle.eps, pr));
  for (std::size_t i = 0; i < axes.size(); ++i) {
    e.emplace_back("axis" + std::to_string(i + 1), axis_text(axes[i], pr));
  }
  if (family) e.emplace_back("family", axis_text(*family, pr));
  if (command == Command::Curve || command == Command::Scaling) {
    e.emplace_back("observable", std::string(observable_label(observable)));
  }
  if (command == Command::Scaling) {
    std::vector<double> s(sizes.begin(), sizes.end());
    e.emplace_back("sizes", join_values(s, pr));
    e.emplace_back("split", split ? format_number(*split, pr) : "critical_field(alpha)");
  }
  if (ramp_v) e.emplace_back("ramp_v", format_number(*ramp_v, pr));
  if (command == Command::Relax) {
    e.emplace_back("bath_temps", join_values(bath_temperatures, pr));
    e.emplace_back("gamma", format_number(gamma, pr));
    e.emplace_back("times", join_values(times, pr));
  }
  e.emplace_back("format", format == Format::Csv ? "csv" : "json");
  e.emplace_back("precision", std::to_string(precision));
  return e;
}

std::optional<RunConfig> parse_config(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Otto-cycle thermodynamics of long-range Kitaev chains", "lrotto"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "Flat key = value file with flag names as keys");
  app.allow_config_extras(false);

  RunConfig cfg;
  int n = cfg.spec.N;
  std::string alpha, alpha1, alpha2;
  double J = 1.0;
  bool kac = true;
  std::string boundary = "periodic";
  std::optional<double> hf, delta_h;
  double hi = cfg.cycle.h_i, tc = cfg.cycle.T_c, th = cfg.cycle.T_h, eps = cfg.cycle.eps;
  std::vector<std::string> axis_args;
  std::string x_arg, family_arg, observable = "Pi/N", sizes_arg = "10,20,30,40,50,60,70,80,90,100";
  std::optional<double> split_arg, ramp_v;
  std::string bath_temps, times;
  double gamma = 1.0;
  std::string format = "csv";
  int precision = 12;
  int workers = default_workers();

  app.add_option("--n", n, "Chain length (even)")->capture_default_str();
  app.add_option("--alpha", alpha, "Decay exponent for hopping and pairing (inf allowed)");
  app.add_option("--alpha1", alpha1, "Hopping exponent");
  app.add_option("--alpha2", alpha2, "Pairing exponent");
  app.add_option("--J", J, "Coupling scale")->capture_default_str();
  app.add_flag("--kac,!--no-kac", kac, "Kac normalization of the couplings");
  app.add_option("--boundary", boundary, "periodic or open")
      ->check(CLI::IsMember({"periodic", "open"}))
      ->capture_default_str();
  app.add_option("--disorder-file", cfg.disorder_file, "Symmetric N x N coupling table");
  app.add_option("--hi", hi, "Field at the cold bath")->capture_default_str();
  auto* hf_opt = app.add_option("--hf", hf, "Field at the hot bath");
  auto* dh_opt = app.add_option("--delta-h", delta_h, "h_f - h_i (default 0.5)");
  hf_opt->excludes(dh_opt);
  app.add_option("--tc", tc, "Cold bath temperature")->capture_default_str();
  app.add_option("--th", th, "Hot bath temperature")->capture_default_str();
  app.add_option("--eps", eps, "Relative tolerance of mode classification")->capture_default_str();
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--precision", precision, "Significant digits")->check(CLI::Range(1, 17))->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (stdout when absent)");
  app.add_option("--workers", workers, "Worker threads (default LROTTO_WORKERS or core count)")
      ->check(CLI::PositiveNumber);

  app.add_subcommand("cycle", "One Otto cycle")
      ->add_option("--ramp-v", ramp_v, "Ramp velocity for the adiabaticity diagnostic");
  app.add_subcommand("map", "Mode map over two axes")
      ->add_option("--axis", axis_args, "name:start:stop:step | name:start:stop:nCOUNT | name:v1,v2")
      ->required();
  auto* curve = app.add_subcommand("curve", "Observable versus h_i for a family of N or alpha");
  curve->add_option("--x", x_arg, "h_i axis")->required();
  curve->add_option("--family", family_arg, "N:... or alpha:...")->required();
  curve->add_option("--observable", observable, "W/N, Q_c/N, eta, eta_R, Pi/N, PiR/N")->capture_default_str();
  auto* scaling = app.add_subcommand("scaling", "Peak scaling with N and exponent regression");
  scaling->add_option("--x", x_arg, "h_i axis")->required();
  scaling->add_option("--sizes", sizes_arg, "Comma separated chain lengths")->capture_default_str();
  scaling->add_option("--observable", observable, "Observable whose peaks are tracked")->capture_default_str();
  scaling->add_option("--split", split_arg, "Field separating the two peaks (default critical_field)");
  auto* relax_cmd = app.add_subcommand("relax", "Occupation relaxation at fixed field h_i");
  relax_cmd->add_option("--bath-temps", bath_temps, "Comma separated bath temperatures (default T_h)");
  relax_cmd->add_option("--gamma", gamma, "Uniform rate")->capture_default_str();
  relax_cmd->add_option("--times", times, "start:stop:step or t1,t2,...");
  app.add_subcommand("oracle", "Quasiparticle, Fock-space and spin spectra at h_i");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  for (Command c : {Command::Cycle, Command::Map, Command::Curve, Command::Scaling, Command::Relax,
                    Command::Oracle}) {
    if (sub == command_name(c)) cfg.command = c;
  }

  cfg.spec.N = n;
  const double a = alpha.empty() ? 1.0 : parse_double(alpha, "alpha");
  cfg.spec.alpha1 = alpha1.empty() ? a : parse_double(alpha1, "alpha1");
  cfg.spec.alpha2 = alpha2.empty() ? a : parse_double(alpha2, "alpha2");
  cfg.spec.J = J;
  cfg.spec.kac = kac;
  cfg.spec.boundary = boundary == "open" ? Boundary::Open : Boundary::Periodic;
  if (!cfg.disorder_file.empty()) cfg.spec.disorder = read_disorder_file(cfg.disorder_file);

  cfg.cycle.h_i = hi;
  cfg.cycle.T_c = tc;
  cfg.cycle.T_h = th;
  cfg.cycle.eps = eps;
  if (hf) {
    cfg.fixed_h_f = true;
    cfg.cycle.h_f = *hf;
  } else {
    cfg.delta_h = delta_h.value_or(0.5);
    cfg.cycle.h_f = hi + cfg.delta_h;
  }

  for (const auto& s : axis_args) cfg.axes.push_back(parse_axis(s));
  if (!x_arg.empty()) {
    cfg.axes.push_back(parse_axis(x_arg));
    if (cfg.axes.back().name != AxisName::HI) throw ConfigError("--x must be an h_i axis");
  }
  if (!family_arg.empty()) cfg.family = parse_axis(family_arg);
  cfg.observable = parse_observable(observable);
  if (cfg.command == Command::Scaling) {
    for (double v : parse_list(sizes_arg, "sizes")) cfg.sizes.push_back(static_cast<int>(v));
  }
  cfg.split = split_arg;
  cfg.ramp_v = ramp_v;
  if (!bath_temps.empty()) cfg.bath_temperatures = parse_list(bath_temps, "bath temperature");
  cfg.gamma = gamma;
  if (!times.empty()) cfg.times = times_from(times);
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  cfg.precision = precision;
  cfg.workers = workers;

  cfg.spec.validate();
  cfg.cycle.validate();
  if (cfg.command == Command::Map) {
    SweepGrid g = base_grid(cfg);
    g.axes = cfg.axes;
    if (g.axes.size() != 2) throw ConfigError("map needs exactly two --axis options");
    g.validate();
  }
  if (cfg.ramp_v && !(*cfg.ramp_v > 0.0)) throw ConfigError("--ramp-v must be > 0");
  return cfg;
}

std::vector<std::string> outcome_columns() {
  return {"alpha", "h_i", "h_f", "N", "T_c", "T_h", "Q_h", "Q_c", "W", "eta", "eta_R", "mode",
          "pi_per_spin", "piR_per_spin"};
}

std::vector<Cell> outcome_cells(const SweepRow& r) {
  const auto& o = r.outcome;
  return {Cell{r.alpha}, Cell{r.h_i}, Cell{r.h_f}, Cell{static_cast<long>(r.N)}, Cell{r.T_c}, Cell{r.T_h},
          Cell{o.Q_h}, Cell{o.Q_c}, Cell{o.W}, opt_cell(o.eta), opt_cell(o.eta_R),
          Cell{std::string(1, mode_letter(o.mode))}, opt_cell(o.pi_per_spin), opt_cell(o.piR_per_spin)};
}

void write_csv(std::ostream& os, const Table& table, const RunConfig& cfg) {
  os << "# config:\n";
  for (const auto& [k, v] : cfg.echo()) os << "#   " << k << " = " << v << '\n';
  if (!table.summary.empty()) {
    os << "# summary:\n";
    for (const auto& [k, v] : table.summary) os << "#   " << k << " = " << v << '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << csv_field(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << csv_field(cell_text(row[i], cfg.precision));
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table, const RunConfig& cfg) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cfg.echo()) config[k] = v;
  doc["config"] = config;
  if (!table.summary.empty()) {
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.summary) summary[k] = v;
    doc["summary"] = summary;
  }
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[table.columns[i]] = cell_json(row[i], cfg.precision);
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  os << doc.dump(2) << '\n';
}

void emit(const Table& table, const RunConfig& cfg, std::ostream& fallback) {
  auto write = [&](std::ostream& os) {
    if (cfg.format == Format::Json) {
      write_json(os, table, cfg);
    } else {
      write_csv(os, table, cfg);
    }
  };
  if (cfg.out.empty() || cfg.out == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + cfg.out + "' for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("write to '" + cfg.out + "' failed");
}

Table run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Cycle: return cycle_table(cfg);
    case Command::Map: return map_table(cfg);
    case Command::Curve: return curve_table(cfg);
    case Command::Scaling: return scaling_table(cfg);
    case Command::Relax: return relax_table(cfg);
    case Command::Oracle: return oracle_table(cfg);
  }
  return {};
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_config(argc, argv, out);
    if (!cfg) return 0;
    emit(run_command(*cfg), *cfg, out);
    return 0;
  } catch (const Error& e) {
    err << "lrotto: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "lrotto: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::Numeric);
  }
}

}  // namespace lrotto::cli
