#include "lrotto/dynamics.hpp"

#include "lrotto/bdg.hpp"
#include "lrotto/errors.hpp"
#include "lrotto/otto.hpp"
#include "lrotto/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lrotto {

BathSpec BathSpec::uniform(const Eigen::VectorXd& temperatures, int modes, double gamma0) {
  BathSpec b;
  b.temperatures = temperatures;
  b.rates = Eigen::MatrixXd::Constant(temperatures.size(), modes, gamma0);
  return b;
}

void BathSpec::validate() const {
  if (temperatures.size() == 0) throw ConfigError("bath list is empty");
  if (rates.rows() != temperatures.size()) {
    throw ConfigError("rate matrix must have one row per bath");
  }
  if ((temperatures.array() <= 0.0).any() || !temperatures.allFinite()) {
    throw ConfigError("bath temperatures must be positive");
  }
  if ((rates.array() < 0.0).any() || !rates.allFinite()) {
    throw ConfigError("bath rates must be non-negative");
  }
  for (int k = 0; k < modes(); ++k) {
    if (!(total_rate(k) > 0.0)) {
      throw ConfigError("mode " + std::to_string(k) + " is not coupled to any bath");
    }
  }
}

void RampSpec::validate() const {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("ramp velocity must be positive");
  if (!std::isfinite(h_start) || !std::isfinite(h_end)) throw ConfigError("ramp fields must be finite");
}

double bath_average(const BathSpec& bath, double omega_k, int k) {
  if (k < 0 || k >= bath.modes()) throw ConfigError("bath_average: mode index out of range");
  const double total = bath.total_rate(k);
  if (!(total > 0.0)) throw ConfigError("bath_average: all rates vanish for this mode");
  double acc = 0.0;
  for (int n = 0; n < bath.baths(); ++n) {
    acc += bath.rates(n, k) * fermi_occupation(bath.temperatures[n], omega_k);
  }
  return acc / total;
}

double occupation_at(double t, double n0, double f_tilde, double gamma_sum) {
  const double decay = std::exp(-2.0 * gamma_sum * t);
  return f_tilde * (1.0 - decay) + n0 * decay;
}

double internal_energy(const Eigen::ArrayXd& occupations, const Eigen::ArrayXd& omegas) {
  if (occupations.size() != omegas.size()) {
    throw ConfigError("internal_energy: " + std::to_string(occupations.size()) +
                      " occupations for " + std::to_string(omegas.size()) + " modes");
  }
  return (omegas * (occupations - 0.5)).sum();
}

Eigen::ArrayXd mode_energies(const CouplingSpec& spec, double h) {
  spec.validate();
  if (spec.translation_invariant()) return ModeTable(spec).omega(h);
  return diagonalize(build_quadratic(spec, h)).quasiparticle_energies().array();
}

RelaxationTrace relax(const Eigen::ArrayXd& omega, const Eigen::ArrayXd& n0, const BathSpec& bath,
                      const std::vector<double>& times) {
  bath.validate();
  const Eigen::Index modes = omega.size();
  if (n0.size() != modes || bath.modes() != modes) {
    throw ConfigError("relax: mode counts of spectrum, initial state and baths differ");
  }
  RelaxationTrace trace;
  trace.times = times;
  trace.omega = omega;
  trace.f_tilde.resize(modes);
  for (Eigen::Index k = 0; k < modes; ++k) {
    trace.f_tilde[k] = bath_average(bath, omega[k], static_cast<int>(k));
  }
  trace.occupation.resize(static_cast<Eigen::Index>(times.size()), modes);
  trace.energy.resize(static_cast<Eigen::Index>(times.size()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) throw ConfigError("relax: times must be non-negative");
    for (Eigen::Index k = 0; k < modes; ++k) {
      trace.occupation(i, k) = occupation_at(times[i], n0[k], trace.f_tilde[k],
                                             bath.total_rate(static_cast<int>(k)));
    }
    trace.energy[i] = internal_energy(trace.occupation.row(i).transpose().array(), omega);
  }
  return trace;
}

double adiabatic_transition_estimate(double t_k, double delta_k, const RampSpec& ramp) {
  const double lo = std::min(ramp.h_start, ramp.h_end);
  const double hi = std::max(ramp.h_start, ramp.h_end);
  const double h_star = std::clamp(t_k, lo, hi);
  const double omega = 2.0 * std::hypot(h_star - t_k, delta_k);
  if (omega <= 1e-14) return std::numeric_limits<double>::quiet_NaN();
  if (delta_k == 0.0) return 0.0;
  const double element = 2.0 * delta_k / omega;  // |<e| sigma^z |g>|
  const double w2 = omega * omega;
  return ramp.v * ramp.v * element * element / (w2 * w2);
}

AdiabaticityReport adiabaticity_metric(const RampSpec& ramp, const CouplingSpec& spec) {
  ramp.validate();
  spec.validate();
  if (!spec.translation_invariant()) {
    throw ConfigError("adiabaticity_metric: needs a translation-invariant chain");
  }
  const ModeTable table(spec);
  AdiabaticityReport report;
  const int n = table.size();
  report.k = table.k();
  report.P.resize(n);
  report.h_min_gap.resize(n);
  report.gapless.assign(n, false);
  const double lo = std::min(ramp.h_start, ramp.h_end);
  const double hi = std::max(ramp.h_start, ramp.h_end);
  for (int i = 0; i < n; ++i) {
    report.h_min_gap[i] = std::clamp(table.t()[i], lo, hi);
    report.P[i] = adiabatic_transition_estimate(table.t()[i], table.delta()[i], ramp);
    if (std::isnan(report.P[i])) {
      report.gapless[i] = true;
      report.any_gapless = true;
    } else {
      report.max_P = std::max(report.max_P, report.P[i]);
    }
  }
  return report;
}

}  // namespace lrotto
