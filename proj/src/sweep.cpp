#include "lrotto/sweep.hpp"

#include "lrotto/errors.hpp"
#include "lrotto/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <tuple>

namespace lrotto {

namespace {

template <typename F>
void parallel_for(std::size_t count, int workers, F&& body) {
  const std::size_t nthreads = std::clamp<std::size_t>(workers < 1 ? 1 : workers, 1, std::max<std::size_t>(count, 1));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

void check_monotone(const AxisSpec& axis) {
  if (axis.values.empty()) throw ConfigError(std::string(axis_label(axis.name)) + " axis is empty");
  for (std::size_t i = 0; i < axis.values.size(); ++i) {
    if (!std::isfinite(axis.values[i])) {
      throw ConfigError(std::string(axis_label(axis.name)) + " axis has non-finite values");
    }
    if (i > 0 && !(axis.values[i] > axis.values[i - 1])) {
      throw ConfigError(std::string(axis_label(axis.name)) + " axis must be strictly increasing");
    }
  }
  if (axis.name == AxisName::N) {
    for (double v : axis.values) {
      if (v != std::round(v) || static_cast<int>(v) % 2 != 0 || v < 2) {
        throw ConfigError("N axis values must be even integers >= 2");
      }
    }
  }
}

// Sweep-level guard: first law, Clausius and Carnot bounds on every row.
void guard(const SweepRow& row) {
  const auto& o = row.outcome;
  const double scale = std::abs(o.Q_h) + std::abs(o.Q_c) + 1e-300;
  if (std::abs(o.Q_h + o.Q_c - o.W) > 1e-10 * scale) {
    throw NumericError("sweep guard: first law violated");
  }
  const double entropy = o.Q_h / row.T_h + o.Q_c / row.T_c;
  if (entropy > 1e-12 + 1e-13 * (std::abs(o.Q_h) / row.T_h + std::abs(o.Q_c) / row.T_c)) {
    throw NumericError("sweep guard: Clausius inequality violated");
  }
  if (!(row.T_h > row.T_c)) {
    if (o.eta) throw NumericError("sweep guard: engine without a thermal bias");
    return;
  }
  if (o.eta && !(*o.eta > 0.0 && *o.eta <= carnot(row.T_c, row.T_h) + 1e-10)) {
    throw NumericError("sweep guard: engine efficiency outside (0, Carnot]");
  }
  if (o.eta_R && !(*o.eta_R > 0.0 && *o.eta_R <= carnot_R(row.T_c, row.T_h) + 1e-10)) {
    throw NumericError("sweep guard: refrigerator COP outside (0, Carnot]");
  }
}

using TableKey = std::tuple<int, double, double, double, bool>;

TableKey table_key(const CouplingSpec& s) { return {s.N, s.alpha1, s.alpha2, s.J, s.kac}; }

}  // namespace

std::string_view axis_label(AxisName a) {
  switch (a) {
    case AxisName::Alpha: return "alpha";
    case AxisName::HI: return "h_i";
    case AxisName::N: return "N";
    case AxisName::TRatio: return "T_ratio";
    case AxisName::TC: return "T_c";
    case AxisName::TH: return "T_h";
  }
  return "?";
}

AxisName parse_axis_name(std::string_view s) {
  for (AxisName a : {AxisName::Alpha, AxisName::HI, AxisName::N, AxisName::TRatio, AxisName::TC,
                     AxisName::TH}) {
    if (s == axis_label(a)) return a;
  }
  throw ConfigError("unknown axis '" + std::string(s) + "' (alpha, h_i, N, T_ratio, T_c, T_h)");
}

AxisSpec AxisSpec::range(AxisName name, double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw ConfigError("axis range needs step > 0 and stop >= start");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  AxisSpec a{name, {}};
  a.values.reserve(count);
  for (long i = 0; i < count; ++i) a.values.push_back(start + static_cast<double>(i) * step);
  return a;
}

AxisSpec AxisSpec::linspace(AxisName name, double start, double stop, int count) {
  if (count < 1) throw ConfigError("axis needs at least one value");
  AxisSpec a{name, {}};
  if (count == 1) {
    a.values.push_back(start);
    return a;
  }
  for (int i = 0; i < count; ++i) {
    a.values.push_back(start + (stop - start) * static_cast<double>(i) / (count - 1));
  }
  return a;
}

AxisSpec AxisSpec::list(AxisName name, std::vector<double> values) { return {name, std::move(values)}; }

std::size_t SweepGrid::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

std::pair<CouplingSpec, CycleParams> SweepGrid::point(std::size_t index) const {
  std::pair<CouplingSpec, CycleParams> out{base, cycle};
  auto& [spec, p] = out;
  std::optional<double> ratio;
  std::size_t stride = size();
  for (const auto& a : axes) {
    stride /= a.values.size();
    const double v = a.values[(index / stride) % a.values.size()];
    switch (a.name) {
      case AxisName::Alpha: spec.alpha1 = spec.alpha2 = v; break;
      case AxisName::HI: p.h_i = v; break;
      case AxisName::N: spec.N = static_cast<int>(v); break;
      case AxisName::TRatio: ratio = v; break;
      case AxisName::TC: p.T_c = v; break;
      case AxisName::TH: p.T_h = v; break;
    }
  }
  if (ratio) p.T_c = *ratio * p.T_h;
  if (!fixed_h_f) p.h_f = p.h_i + delta_h;
  return out;
}

void SweepGrid::validate() const {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    check_monotone(axes[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (axes[i].name == axes[j].name) throw ConfigError("axis listed twice");
    }
  }
  if (!std::isfinite(delta_h) || delta_h < 0.0) throw ConfigError("delta_h must be >= 0");
  for (std::size_t i = 0; i < size(); ++i) {
    const auto [spec, p] = point(i);
    spec.validate();
    p.validate();
  }
}

int default_workers() {
  if (const char* env = std::getenv("LROTTO_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<SweepRow> run_grid(const SweepGrid& grid, int workers) {
  grid.validate();
  const std::size_t count = grid.size();

  // Momentum tables for every distinct translation-invariant chain, built
  // before the point loop and read-only afterwards.
  std::map<TableKey, std::shared_ptr<const ModeTable>> tables;
  std::vector<CouplingSpec> distinct;
  for (std::size_t i = 0; i < count; ++i) {
    const CouplingSpec spec = grid.point(i).first;
    if (spec.translation_invariant() && tables.emplace(table_key(spec), nullptr).second) {
      distinct.push_back(spec);
    }
  }
  std::vector<std::shared_ptr<const ModeTable>> built(distinct.size());
  parallel_for(distinct.size(), workers,
               [&](std::size_t i) { built[i] = std::make_shared<const ModeTable>(distinct[i]); });
  for (std::size_t i = 0; i < distinct.size(); ++i) tables[table_key(distinct[i])] = built[i];

  std::vector<SweepRow> rows(count);
  parallel_for(count, workers, [&](std::size_t i) {
    const auto [spec, p] = grid.point(i);
    const Heats heats = spec.translation_invariant() ? cycle_heats(*tables.at(table_key(spec)), p)
                                                     : cycle_heats(p, spec);
    SweepRow row{spec.alpha1, p.h_i, p.h_f, spec.N, p.T_c, p.T_h, make_outcome(heats, p, spec.N)};
    guard(row);
    rows[i] = row;
  });
  return rows;
}

std::vector<SweepRow> run_map(const SweepGrid& grid, int workers) {
  if (grid.axes.size() != 2) throw ConfigError("a map needs exactly two swept axes");
  return run_grid(grid, workers);
}

std::string_view observable_label(Observable o) {
  switch (o) {
    case Observable::WPerN: return "W/N";
    case Observable::QcPerN: return "Q_c/N";
    case Observable::Eta: return "eta";
    case Observable::EtaR: return "eta_R";
    case Observable::PiPerN: return "Pi/N";
    case Observable::PiRPerN: return "PiR/N";
  }
  return "?";
}

Observable parse_observable(std::string_view s) {
  for (Observable o : {Observable::WPerN, Observable::QcPerN, Observable::Eta, Observable::EtaR,
                       Observable::PiPerN, Observable::PiRPerN}) {
    if (s == observable_label(o)) return o;
  }
  throw ConfigError("unknown observable '" + std::string(s) + "' (W/N, Q_c/N, eta, eta_R, Pi/N, PiR/N)");
}

std::optional<double> observable_value(const SweepRow& row, Observable o) {
  const auto& out = row.outcome;
  switch (o) {
    case Observable::WPerN: return out.W / row.N;
    case Observable::QcPerN: return out.Q_c / row.N;
    case Observable::Eta: return out.eta;
    case Observable::EtaR: return out.eta_R;
    case Observable::PiPerN: return out.pi_per_spin;
    case Observable::PiRPerN: return out.piR_per_spin;
  }
  return std::nullopt;
}

std::vector<CurveRow> run_curve(Observable observable, const AxisSpec& h_axis,
                                const AxisSpec& family, const SweepGrid& base, int workers) {
  if (h_axis.name != AxisName::HI) throw ConfigError("curve x-axis must be h_i");
  if (family.name != AxisName::N && family.name != AxisName::Alpha) {
    throw ConfigError("curve family axis must be N or alpha");
  }
  SweepGrid grid = base;
  grid.axes = {family, h_axis};
  const auto rows = run_grid(grid, workers);
  std::vector<CurveRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back({r, observable_value(r, observable)});
  return out;
}

PeakReport find_peaks(const std::vector<double>& h_i, const std::vector<std::optional<double>>& values,
                      double split) {
  if (h_i.size() != values.size()) throw ConfigError("find_peaks: length mismatch");
  PeakReport report;
  report.split = split;
  for (std::size_t i = 0; i < h_i.size(); ++i) {
    if (!values[i] || !std::isfinite(*values[i])) continue;
    auto& slot = h_i[i] < split ? report.ferro : report.para;
    const bool better = !slot || *values[i] > slot->value ||
                        (*values[i] == slot->value && h_i[i] < slot->h_i);
    if (better) slot = Peak{h_i[i], *values[i]};
  }
  return report;
}

PowerLawFit regress_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("regress_exponent: need at least 3 points");
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::VectorXd x(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [size, value] = points[static_cast<std::size_t>(i)];
    if (!(size > 0.0) || !(value > 0.0)) {
      throw DomainError("regress_exponent: sizes and values must be positive");
    }
    x[i] = std::log(size);
    y[i] = std::log(value);
  }
  const double xm = x.mean();
  const double ym = y.mean();
  const Eigen::VectorXd dx = x.array() - xm;
  const double sxx = dx.squaredNorm();
  if (!(sxx > 0.0)) throw DomainError("regress_exponent: sizes must not all coincide");
  PowerLawFit fit;
  fit.exponent = dx.dot(y.array().matrix() - Eigen::VectorXd::Constant(n, ym)) / sxx;
  fit.intercept = ym - fit.exponent * xm;
  const Eigen::VectorXd resid = y.array() - (fit.intercept + fit.exponent * x.array());
  fit.residual = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
  return fit;
}

ScalingStudy run_scaling(Observable observable, const std::vector<int>& sizes,
                         const AxisSpec& h_axis, const SweepGrid& base, int workers,
                         std::optional<double> split) {
  if (sizes.size() < 3) throw ConfigError("scaling study needs at least 3 sizes");
  ScalingStudy study;
  study.alpha = base.base.alpha1;
  study.split = split ? *split : critical_field(study.alpha);
  study.sizes = sizes;
  std::vector<double> n_values(sizes.begin(), sizes.end());
  const auto rows = run_curve(observable, h_axis, AxisSpec::list(AxisName::N, n_values), base, workers);
  const std::size_t per = h_axis.values.size();
  std::vector<std::pair<double, double>> ferro, para;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    std::vector<std::optional<double>> values(per);
    for (std::size_t j = 0; j < per; ++j) values[j] = rows[s * per + j].value;
    study.peaks.push_back(find_peaks(h_axis.values, values, study.split));
    const auto& pk = study.peaks.back();
    if (pk.ferro && pk.ferro->value > 0.0) ferro.emplace_back(sizes[s], pk.ferro->value);
    if (pk.para && pk.para->value > 0.0) para.emplace_back(sizes[s], pk.para->value);
  }
  if (ferro.size() >= 3) study.ferro_fit = regress_exponent(ferro);
  if (para.size() >= 3) study.para_fit = regress_exponent(para);
  return study;
}

}  // namespace lrotto
