#pragma once

#include "lrotto/couplings.hpp"
#include "lrotto/otto.hpp"
#include "lrotto/sweep.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lrotto::cli {

enum class Command { Cycle, Map, Curve, Scaling, Relax, Oracle };
enum class Format { Csv, Json };

std::string_view command_name(Command c);

struct RunConfig {
  Command command = Command::Cycle;

  CouplingSpec spec;
  std::string disorder_file;

  CycleParams cycle;
  double delta_h = 0.5;
  bool fixed_h_f = false;  // --hf given instead of --delta-h

  std::vector<AxisSpec> axes;  // map: two axes; curve/scaling: h_i axis first
  std::optional<AxisSpec> family;
  Observable observable = Observable::PiPerN;
  std::vector<int> sizes;
  std::optional<double> split;
  std::optional<double> ramp_v;

  std::vector<double> bath_temperatures;
  double gamma = 1.0;
  std::vector<double> times;

  std::string out;
  Format format = Format::Csv;
  int precision = 12;
  int workers = 1;

  // Resolved parameters in a fixed order. Worker count and output path are
  // left out so that output bytes do not depend on them.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

// Throws ConfigError for usage problems and IoError for unreadable files.
// Returns nullopt when help was requested (text already written to `out`).
std::optional<RunConfig> parse_config(int argc, const char* const* argv, std::ostream& out);

// "name:start:stop:step", "name:start:stop:nCOUNT" or "name:v1,v2,...".
AxisSpec parse_axis(const std::string& text);

// Whitespace-separated square matrix.
Eigen::MatrixXd read_disorder_file(const std::string& path);

using Cell = std::variant<std::monostate, double, long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
};

std::string format_number(double value, int precision);

void write_csv(std::ostream& os, const Table& table, const RunConfig& cfg);
void write_json(std::ostream& os, const Table& table, const RunConfig& cfg);

// Writes to cfg.out, or to `fallback` when no path is set. IoError when the
// file cannot be written.
void emit(const Table& table, const RunConfig& cfg, std::ostream& fallback);

// Column layout shared by the cycle, map and curve commands.
std::vector<std::string> outcome_columns();
std::vector<Cell> outcome_cells(const SweepRow& row);

Table run_command(const RunConfig& cfg);

// Full entry point: parse, run, emit; returns the process exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lrotto::cli
