#include "lrotto/otto.hpp"

#include "lrotto/bdg.hpp"
#include "lrotto/errors.hpp"

#include <cmath>
#include <string>

namespace lrotto {

void CycleParams::validate() const {
  if (!std::isfinite(h_i) || !std::isfinite(h_f)) throw ConfigError("fields must be finite");
  if (!(T_c > 0.0) || !(T_h > 0.0) || !std::isfinite(T_c) || !std::isfinite(T_h)) {
    throw ConfigError("temperatures must be positive and finite");
  }
  if (T_h < T_c) throw ConfigError("hot bath must not be colder than the cold bath (T_h >= T_c)");
  if (h_f < h_i) throw ConfigError("cycle requires h_i <= h_f");
  if (!(eps > 0.0)) throw ConfigError("classification tolerance must be positive");
}

char mode_letter(Mode m) {
  switch (m) {
    case Mode::Engine: return 'E';
    case Mode::Refrigerator: return 'R';
    case Mode::Accelerator: return 'A';
    case Mode::Heater: return 'H';
    case Mode::Unclassified: break;
  }
  return 'U';
}

double fermi_occupation(double T, double omega) {
  const double e = std::exp(-omega / T);
  return e / (1.0 + e);
}

double delta_f(double omega_i, double omega_f, const CycleParams& p) {
  return fermi_occupation(p.T_h, omega_f) - fermi_occupation(p.T_c, omega_i);
}

double delta_f(double k, const CycleParams& p, const CouplingSpec& spec) {
  return delta_f(dispersion(k, p.h_i, spec), dispersion(k, p.h_f, spec), p);
}

Heats heats_from_spectra(const Eigen::ArrayXd& omega_i, const Eigen::ArrayXd& omega_f,
                         const CycleParams& p) {
  const Eigen::ArrayXd df = fermi_occupation(p.T_h, omega_f) - fermi_occupation(p.T_c, omega_i);
  Heats h;
  h.Q_h = (omega_f * df).sum();
  h.Q_c = -(omega_i * df).sum();
  h.W = ((omega_f - omega_i) * df).sum();
  return h;
}

Heats cycle_heats(const ModeTable& table, const CycleParams& p) {
  return heats_from_spectra(table.omega(p.h_i), table.omega(p.h_f), p);
}

Heats cycle_heats(const CycleParams& p, const CouplingSpec& spec) {
  p.validate();
  spec.validate();
  if (spec.translation_invariant()) return cycle_heats(ModeTable(spec), p);
  const Eigen::ArrayXd wi = diagonalize(build_quadratic(spec, p.h_i)).quasiparticle_energies();
  const Eigen::ArrayXd wf = diagonalize(build_quadratic(spec, p.h_f)).quasiparticle_energies();
  return heats_from_spectra(wi, wf, p);
}

Mode classify_mode(double Q_h, double Q_c, double W, double eps) {
  const double tol = eps * (std::abs(Q_h) + std::abs(Q_c) + std::abs(W) + 1e-300);
  const bool qc_pos = Q_c > tol, qc_neg = Q_c < -tol;
  const bool qh_pos = Q_h > tol, qh_neg = Q_h < -tol;
  const bool w_pos = W > tol, w_neg = W < -tol;
  if (qc_pos && qh_neg && w_neg) return Mode::Refrigerator;
  if (qc_neg && qh_pos && w_neg) return Mode::Accelerator;
  if (qc_neg && qh_pos && w_pos) return Mode::Engine;
  if (qc_neg && qh_neg && w_neg) return Mode::Heater;
  return Mode::Unclassified;
}

Efficiencies efficiencies(double Q_h, double Q_c, double W, Mode mode) {
  Efficiencies e;
  if (mode == Mode::Engine) e.eta = W / Q_h;
  if (mode == Mode::Refrigerator) e.eta_R = Q_c / std::abs(W);
  return e;
}

double carnot(double T_c, double T_h) {
  if (!(T_c > 0.0) || !(T_h > T_c)) throw DomainError("carnot: requires T_h > T_c > 0");
  return 1.0 - T_c / T_h;
}

double carnot_R(double T_c, double T_h) {
  if (!(T_c > 0.0) || !(T_h > T_c)) throw DomainError("carnot_R: requires T_h > T_c > 0");
  return 1.0 / (T_h / T_c - 1.0);
}

double scaling_factor(double W, double Q_h, double T_c, double T_h, int N) {
  const double eta_c = carnot(T_c, T_h);
  if (W == 0.0) return 0.0;
  if (Q_h == 0.0) throw DomainError("scaling_factor: Q_h = 0 with nonzero work");
  const double gap = eta_c - W / Q_h;
  if (std::abs(gap) <= 1e-12 * eta_c) {
    throw DomainError("scaling_factor: efficiency saturates the Carnot bound (pole)");
  }
  return W / gap / N;
}

double scaling_factor_R(double Q_c, double W, double T_c, double T_h, int N) {
  const double cop_c = carnot_R(T_c, T_h);
  if (Q_c == 0.0) return 0.0;
  if (W == 0.0) throw DomainError("scaling_factor_R: W = 0 with nonzero Q_c");
  const double gap = cop_c - Q_c / std::abs(W);
  if (std::abs(gap) <= 1e-12 * cop_c) {
    throw DomainError("scaling_factor_R: COP saturates the Carnot bound (pole)");
  }
  return Q_c / gap / N;
}

CycleOutcome make_outcome(const Heats& heats, const CycleParams& p, int N) {
  CycleOutcome out;
  out.Q_h = heats.Q_h;
  out.Q_c = heats.Q_c;
  out.W = heats.W;
  out.mode = classify_mode(heats.Q_h, heats.Q_c, heats.W, p.eps);
  const auto eff = efficiencies(heats.Q_h, heats.Q_c, heats.W, out.mode);
  out.eta = eff.eta;
  out.eta_R = eff.eta_R;
  if (!(p.T_h > p.T_c)) return out;  // no Carnot reference without a thermal bias
  if (out.mode == Mode::Engine) {
    out.pi_per_spin = scaling_factor(heats.W, heats.Q_h, p.T_c, p.T_h, N);
  }
  if (out.mode == Mode::Refrigerator) {
    out.piR_per_spin = scaling_factor_R(heats.Q_c, heats.W, p.T_c, p.T_h, N);
  }
  return out;
}

CycleOutcome run_cycle(const CycleParams& p, const CouplingSpec& spec) {
  return make_outcome(cycle_heats(p, spec), p, spec.N);
}

}  // namespace lrotto
