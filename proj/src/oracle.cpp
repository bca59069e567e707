#include "lrotto/oracle.hpp"

#include <cmath>
#include <complex>

namespace lrotto::oracle {

namespace {

Eigen::Matrix2d mode_hamiltonian(double t_k, double delta_k, double h) {
  Eigen::Matrix2d H;
  H << h - t_k, delta_k, delta_k, -(h - t_k);
  return H;
}

Eigen::Matrix2d gibbs(const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>& es, double T) {
  const Eigen::Vector2d e = es.eigenvalues();
  Eigen::Vector2d w = (-(e.array() - e.minCoeff()) / T).exp();
  w /= w.sum();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

// Populations of rho in the eigenbasis `from`, placed on the eigenbasis `to`
// in the same (ascending energy) order.
Eigen::Matrix2d transport(const Eigen::Matrix2d& rho, const Eigen::Matrix2d& from,
                          const Eigen::Matrix2d& to) {
  const Eigen::Vector2d pops = (from.transpose() * rho * from).diagonal();
  return to * pops.asDiagonal() * to.transpose();
}

}  // namespace

Heats two_level_cycle(double t_k, double delta_k, const CycleParams& p) {
  const Eigen::Matrix2d Hi = mode_hamiltonian(t_k, delta_k, p.h_i);
  const Eigen::Matrix2d Hf = mode_hamiltonian(t_k, delta_k, p.h_f);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> ei(Hi), ef(Hf);

  const Eigen::Matrix2d rho_A = gibbs(ei, p.T_c);
  const Eigen::Matrix2d rho_B = transport(rho_A, ei.eigenvectors(), ef.eigenvectors());
  const Eigen::Matrix2d rho_C = gibbs(ef, p.T_h);
  const Eigen::Matrix2d rho_D = transport(rho_C, ef.eigenvectors(), ei.eigenvectors());

  Heats h;
  h.Q_h = (Hf * rho_C).trace() - (Hf * rho_B).trace();
  h.Q_c = (Hi * rho_A).trace() - (Hi * rho_D).trace();
  h.W = h.Q_h + h.Q_c;
  return h;
}

Eigen::VectorXd spin_ed_tfim(int N, double h, double J, Boundary boundary) {
  if (boundary != Boundary::Open) {
    throw DomainError("spin_ed_tfim: periodic chains need parity-sector projection (unsupported)");
  }
  if (N < 1 || N > 10) throw DomainError("spin_ed_tfim: supports 1 <= N <= 10");
  const std::uint32_t dim = std::uint32_t(1) << N;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    for (int j = 0; j < N; ++j) {
      // bit set <=> spin down (sz = -1) <=> fermion occupied
      H(s, s) -= h * ((s >> j) & 1u ? -1.0 : 1.0);
    }
    for (int j = 0; j + 1 < N; ++j) {
      const std::uint32_t t = s ^ (std::uint32_t(3) << j);
      H(t, s) -= J;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double canonical_energy(const Eigen::VectorXd& levels, double T) {
  const double e0 = levels.minCoeff();
  const Eigen::ArrayXd w = (-(levels.array() - e0) / T).exp();
  return (levels.array() * w).sum() / w.sum();
}

double integrate_relaxation_rk4(double n0, double f_tilde, double gamma_sum, double t, int steps) {
  const double dt = t / steps;
  auto rhs = [&](double n) { return 2.0 * gamma_sum * (f_tilde - n); };
  double n = n0;
  for (int i = 0; i < steps; ++i) {
    const double k1 = rhs(n);
    const double k2 = rhs(n + 0.5 * dt * k1);
    const double k3 = rhs(n + 0.5 * dt * k2);
    const double k4 = rhs(n + dt * k3);
    n += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return n;
}

RampExcitation ramp_excitation(double t_k, double delta_k, const RampSpec& ramp, double dt) {
  using cd = std::complex<double>;
  using Vec = Eigen::Vector2cd;
  const double direction = ramp.h_end >= ramp.h_start ? 1.0 : -1.0;
  const double duration = std::abs(ramp.h_end - ramp.h_start) / ramp.v;
  const int steps = std::max(1, static_cast<int>(std::ceil(duration / dt)));
  const double step = duration / steps;
  auto field = [&](double t) { return ramp.h_start + direction * ramp.v * t; };
  auto rhs = [&](double t, const Vec& psi) -> Vec {
    return cd(0.0, -1.0) * (mode_hamiltonian(t_k, delta_k, field(t)).cast<cd>() * psi);
  };
  auto excited = [&](double t, const Vec& psi) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(mode_hamiltonian(t_k, delta_k, field(t)));
    const Vec e = es.eigenvectors().col(1).cast<cd>();
    return std::norm(e.dot(psi)) / psi.squaredNorm();
  };

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es0(mode_hamiltonian(t_k, delta_k, ramp.h_start));
  Vec psi = es0.eigenvectors().col(0).cast<cd>();
  double t = 0.0;
  double integral = 0.0;
  double prev = excited(t, psi);
  for (int i = 0; i < steps; ++i) {
    const Vec k1 = rhs(t, psi);
    const Vec k2 = rhs(t + 0.5 * step, psi + 0.5 * step * k1);
    const Vec k3 = rhs(t + 0.5 * step, psi + 0.5 * step * k2);
    const Vec k4 = rhs(t + step, psi + step * k3);
    psi += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += step;
    const double now = excited(t, psi);
    integral += 0.5 * step * (prev + now);
    prev = now;
  }
  return {prev, integral / duration};
}

}  // namespace lrotto::oracle
