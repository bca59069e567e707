#pragma once

#include "lrotto/couplings.hpp"
#include "lrotto/otto.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lrotto {

enum class AxisName { Alpha, HI, N, TRatio, TC, TH };

std::string_view axis_label(AxisName a);
AxisName parse_axis_name(std::string_view s);

struct AxisSpec {
  AxisName name = AxisName::HI;
  std::vector<double> values;

  // start, start + step, ... up to stop (inclusive within 1e-9 step).
  static AxisSpec range(AxisName name, double start, double stop, double step);
  // count evenly spaced values including both ends.
  static AxisSpec linspace(AxisName name, double start, double stop, int count);
  static AxisSpec list(AxisName name, std::vector<double> values);
};

// Cartesian parameter grid over `axes` (first axis slowest). Parameters not
// swept come from `base` and `cycle`; h_f = h_i + delta_h unless fixed_h_f.
struct SweepGrid {
  std::vector<AxisSpec> axes;
  CouplingSpec base;
  CycleParams cycle;
  double delta_h = 0.5;
  bool fixed_h_f = false;

  std::size_t size() const;
  std::pair<CouplingSpec, CycleParams> point(std::size_t index) const;

  // Checks axes and every grid point up front; throws ConfigError.
  void validate() const;
};

struct SweepRow {
  double alpha = 0.0;
  double h_i = 0.0;
  double h_f = 0.0;
  int N = 0;
  double T_c = 0.0;
  double T_h = 0.0;
  CycleOutcome outcome;
};

// Worker count from LROTTO_WORKERS, else hardware concurrency.
int default_workers();

// Evaluates every point of the grid; output order is the grid order for any
// worker count.
std::vector<SweepRow> run_grid(const SweepGrid& grid, int workers = 1);

// Two-axis map.
std::vector<SweepRow> run_map(const SweepGrid& grid, int workers = 1);

enum class Observable { WPerN, QcPerN, Eta, EtaR, PiPerN, PiRPerN };

std::string_view observable_label(Observable o);
Observable parse_observable(std::string_view s);
std::optional<double> observable_value(const SweepRow& row, Observable o);

struct CurveRow {
  SweepRow row;
  std::optional<double> value;
};

// Rows ordered by family value, then h_i.
std::vector<CurveRow> run_curve(Observable observable, const AxisSpec& h_axis,
                                const AxisSpec& family, const SweepGrid& base, int workers = 1);

struct Peak {
  double h_i;
  double value;
};

struct PeakReport {
  double split = 1.0;
  std::optional<Peak> ferro;  // h_i < split
  std::optional<Peak> para;   // h_i >= split
};

// Maxima on either side of `split`; ties go to the smaller h_i; points with no
// value are skipped and an empty side leaves its peak unset.
PeakReport find_peaks(const std::vector<double>& h_i, const std::vector<std::optional<double>>& values,
                      double split);

struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;  // ln prefactor
  double residual = 0.0;   // RMS in log space
};

// Least squares on (ln N, ln value).
PowerLawFit regress_exponent(const std::vector<std::pair<double, double>>& points);

struct ScalingStudy {
  double alpha = 0.0;
  double split = 1.0;
  std::vector<int> sizes;
  std::vector<PeakReport> peaks;
  std::optional<PowerLawFit> ferro_fit;
  std::optional<PowerLawFit> para_fit;
};

// Peak scaling of `observable` over the sizes in `base.base` with h_i swept
// along `h_axis`; `split` defaults to critical_field(alpha).
ScalingStudy run_scaling(Observable observable, const std::vector<int>& sizes,
                         const AxisSpec& h_axis, const SweepGrid& base, int workers = 1,
                         std::optional<double> split = std::nullopt);

}  // namespace lrotto
