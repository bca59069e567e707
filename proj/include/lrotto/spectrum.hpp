#pragma once

#include "lrotto/couplings.hpp"

#include <Eigen/Dense>

namespace lrotto {

// k_n = 2 pi n / N for n = -N/2 + 1, ..., N/2.
Eigen::ArrayXd momentum_grid(int N);

// omega_k(h) = 2 sqrt((h - t_k)^2 + delta_k^2).
double dispersion(double k, double h, const CouplingSpec& spec);

// Two-argument angle of (delta_k, h - t_k); throws DomainError on an exactly
// gapless mode.
double bogoliubov_angle(double k, double h, const CouplingSpec& spec);
double bogoliubov_angle(double t_k, double delta_k, double h);

double spectral_gap(double h, const CouplingSpec& spec);

// Empirical critical-field interpolation, valid for 0 < alpha < 2. Used only
// to split sweeps into ferro/para windows.
double critical_field(double alpha);

struct MomentumMode {
  double k;
  double t_k;
  double delta_k;
  double theta_k;
  double omega;
};

// Fourier couplings on the full momentum grid of a translation-invariant
// spec. Immutable once built; field-dependent quantities are evaluated on
// demand, so one table serves every h.
class ModeTable {
 public:
  explicit ModeTable(const CouplingSpec& spec);

  int size() const { return static_cast<int>(k_.size()); }
  const Eigen::ArrayXd& k() const { return k_; }
  const Eigen::ArrayXd& t() const { return t_; }
  const Eigen::ArrayXd& delta() const { return delta_; }

  Eigen::ArrayXd omega(double h) const {
    return 2.0 * ((h - t_).square() + delta_.square()).sqrt();
  }
  MomentumMode mode(int index, double h) const;

 private:
  Eigen::ArrayXd k_;
  Eigen::ArrayXd t_;
  Eigen::ArrayXd delta_;
};

}  // namespace lrotto
