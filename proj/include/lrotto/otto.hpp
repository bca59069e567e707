#pragma once

#include "lrotto/couplings.hpp"
#include "lrotto/spectrum.hpp"

#include <Eigen/Dense>

#include <optional>

namespace lrotto {

// Field and bath settings of the ideal cycle. The cold bath thermalizes the
// chain at h_i and the hot bath at h_f; temperatures are in units of J.
struct CycleParams {
  double h_i = 0.5;
  double h_f = 1.0;
  double T_c = 0.38;
  double T_h = 0.57;
  double eps = 1e-12;  // relative tolerance for mode classification

  static CycleParams with_delta(double h_i, double delta_h, double T_c, double T_h) {
    return {h_i, h_i + delta_h, T_c, T_h, 1e-12};
  }

  void validate() const;
};

enum class Mode { Engine, Refrigerator, Accelerator, Heater, Unclassified };

// R, A, E, H, U
char mode_letter(Mode m);

struct Heats {
  double Q_h = 0.0;
  double Q_c = 0.0;
  double W = 0.0;
};

struct CycleOutcome {
  double Q_h = 0.0;
  double Q_c = 0.0;
  double W = 0.0;
  std::optional<double> eta;
  std::optional<double> eta_R;
  Mode mode = Mode::Unclassified;
  std::optional<double> pi_per_spin;
  std::optional<double> piR_per_spin;
};

// 1 / (1 + e^{omega/T}), safe for large omega/T.
double fermi_occupation(double T, double omega);

template <typename Derived>
Eigen::ArrayXd fermi_occupation(double T, const Eigen::ArrayBase<Derived>& omega) {
  const Eigen::ArrayXd e = (-omega / T).exp();
  return e / (1.0 + e);
}

// f(T_h, omega_k(h_f)) - f(T_c, omega_k(h_i))
double delta_f(double omega_i, double omega_f, const CycleParams& p);
double delta_f(double k, const CycleParams& p, const CouplingSpec& spec);

// Heat and work sums over paired mode energies at h_i and h_f.
Heats heats_from_spectra(const Eigen::ArrayXd& omega_i, const Eigen::ArrayXd& omega_f,
                         const CycleParams& p);

Heats cycle_heats(const ModeTable& table, const CycleParams& p);

// Momentum sums for translation-invariant chains, BdG spectra otherwise.
Heats cycle_heats(const CycleParams& p, const CouplingSpec& spec);

Mode classify_mode(double Q_h, double Q_c, double W, double eps = 1e-12);

struct Efficiencies {
  std::optional<double> eta;
  std::optional<double> eta_R;
};

Efficiencies efficiencies(double Q_h, double Q_c, double W, Mode mode);

double carnot(double T_c, double T_h);
double carnot_R(double T_c, double T_h);

// Pi/N and Pi_R/N. Throw DomainError at the Carnot pole.
double scaling_factor(double W, double Q_h, double T_c, double T_h, int N);
double scaling_factor_R(double Q_c, double W, double T_c, double T_h, int N);

// Classification, efficiencies and scaling factors for computed heats.
CycleOutcome make_outcome(const Heats& heats, const CycleParams& p, int N);

CycleOutcome run_cycle(const CycleParams& p, const CouplingSpec& spec);

}  // namespace lrotto
