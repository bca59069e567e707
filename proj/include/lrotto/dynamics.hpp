#pragma once

#include "lrotto/couplings.hpp"

#include <Eigen/Dense>

#include <vector>

namespace lrotto {

// Fermionic reservoirs coupled to the Bogoliubov modes. rates(n, k) is the
// coupling of bath n to mode k.
struct BathSpec {
  Eigen::VectorXd temperatures;
  Eigen::MatrixXd rates;

  static BathSpec uniform(const Eigen::VectorXd& temperatures, int modes, double gamma0 = 1.0);

  int baths() const { return static_cast<int>(temperatures.size()); }
  int modes() const { return static_cast<int>(rates.cols()); }
  double total_rate(int k) const { return rates.col(k).sum(); }

  void validate() const;
};

// Linear field ramp h(t) = h_start + v t (sign of h_end - h_start).
struct RampSpec {
  double h_start = 0.0;
  double h_end = 0.5;
  double v = 0.01;

  void validate() const;
};

// Rate-weighted Fermi factor sum_n g_nk f_n(omega) / sum_n g_nk.
double bath_average(const BathSpec& bath, double omega_k, int k);

// f~ (1 - e^{-2 G t}) + n0 e^{-2 G t}
double occupation_at(double t, double n0, double f_tilde, double gamma_sum);

// sum_k omega_k (n_k - 1/2); throws ConfigError on length mismatch.
double internal_energy(const Eigen::ArrayXd& occupations, const Eigen::ArrayXd& omegas);

// Quasiparticle energies of the chain at field h (momentum table when the
// spec is translation invariant, BdG otherwise).
Eigen::ArrayXd mode_energies(const CouplingSpec& spec, double h);

struct RelaxationTrace {
  std::vector<double> times;
  Eigen::ArrayXd omega;
  Eigen::ArrayXd f_tilde;
  Eigen::MatrixXd occupation;  // rows: time, cols: mode
  Eigen::VectorXd energy;
};

RelaxationTrace relax(const Eigen::ArrayXd& omega, const Eigen::ArrayXd& n0, const BathSpec& bath,
                      const std::vector<double>& times);

struct AdiabaticityReport {
  Eigen::ArrayXd k;
  Eigen::ArrayXd P;              // NaN where gapless
  Eigen::ArrayXd h_min_gap;      // field of the smallest gap along the ramp
  std::vector<bool> gapless;
  double max_P = 0.0;
  bool any_gapless = false;
};

// Transition-probability estimate v^2 |<e|dH/dh|g>|^2 / gap^4 for one mode,
// evaluated at the smallest gap met along the ramp. Returns NaN when the mode
// closes its gap on the ramp.
double adiabatic_transition_estimate(double t_k, double delta_k, const RampSpec& ramp);

AdiabaticityReport adiabaticity_metric(const RampSpec& ramp, const CouplingSpec& spec);

}  // namespace lrotto
