#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace lrotto {

enum class Boundary { Periodic, Open };

// Chain definition. Couplings decay as J / r^alpha; alpha = +inf is the exact
// nearest-neighbour limit. When `disorder` is set it overrides the power law
// with a site-resolved symmetric coupling table.
struct CouplingSpec {
  int N = 100;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double J = 1.0;
  bool kac = true;
  Boundary boundary = Boundary::Periodic;
  std::optional<Eigen::MatrixXd> disorder;

  static CouplingSpec uniform(int n, double alpha, Boundary b = Boundary::Periodic) {
    CouplingSpec s;
    s.N = n;
    s.alpha1 = s.alpha2 = alpha;
    s.boundary = b;
    return s;
  }

  bool translation_invariant() const { return boundary == Boundary::Periodic && !disorder; }

  // Throws ConfigError on violated invariants.
  void validate() const;
};

// N_alpha = sum_{r=1}^{N/2} r^-alpha.
double kac_factor(double alpha, int N);

// Ising-form normalization K(alpha) = 1/(N-1) sum_{i<j} |i-j|^-alpha of the
// open spin chain, used by the disordered coupling table.
double ising_kac_factor(double alpha, int N);

// Hopping/pairing amplitude at distance r, 1 <= r <= N/2 (the Kac range).
// The chain itself only uses r <= N/2 - 1.
double amplitude(int r, double alpha, const CouplingSpec& spec);

// amplitude(r, alpha, spec) for r = 0..N/2 (entry 0 is zero), bitwise equal
// to the single-distance form.
std::vector<double> amplitudes(double alpha, const CouplingSpec& spec);

struct FourierPair {
  double t;
  double delta;
};

// Finite-N transforms t_k = sum_r t_r cos(kr), delta_k = sum_r delta_r sin(kr),
// with r running over 1..N/2-1.
FourierPair fourier_couplings(double k, const CouplingSpec& spec);

// Li_alpha(e^{ik}) on the unit circle, absolute error <= 1e-10.
std::complex<double> polylog_unit_circle(double alpha, double k);

// Riemann zeta for alpha > 1.
double zeta(double alpha);

// Thermodynamic-limit transforms Re Li_{a1}(e^{ik})/zeta(a1), Im Li_{a2}(e^{ik})/zeta(a2).
FourierPair fourier_couplings_limit(double k, double alpha1, double alpha2);

// J_ij = J / (K(alpha) |i-j|^alpha) for i != j, zero diagonal.
Eigen::MatrixXd power_law_table(int N, double alpha, double J = 1.0);

}  // namespace lrotto
