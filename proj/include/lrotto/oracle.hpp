#pragma once

// Brute-force references used to validate the fast paths. Nothing here is
// called by the thermodynamics pipeline itself.

#include "lrotto/bdg.hpp"
#include "lrotto/couplings.hpp"
#include "lrotto/dynamics.hpp"
#include "lrotto/otto.hpp"

#include <Eigen/Dense>

#include <bit>
#include <complex>
#include <cstdint>

namespace lrotto::oracle {

inline constexpr int kMaxFockSites = 12;

// One momentum mode as an explicit 2x2 Hamiltonian (h - t_k) sz + delta_k sx:
// Gibbs states, adiabatic population transport between eigenbases and heats
// from trace differences.
Heats two_level_cycle(double t_k, double delta_k, const CycleParams& p);

namespace detail {

// Applies c+_a (create) or c_a to basis state `state`; returns false when the
// result vanishes. Jordan-Wigner sign counts occupied sites below a.
inline bool apply_fermion(std::uint32_t& state, int a, bool create, int& sign) {
  const std::uint32_t bit = std::uint32_t(1) << a;
  if (create == static_cast<bool>(state & bit)) return false;
  if (std::popcount(state & (bit - 1)) % 2 != 0) sign = -sign;
  state ^= bit;
  return true;
}

}  // namespace detail

// Full 2^N Fock-space matrix of the quadratic form, dense-diagonalized.
template <typename Scalar>
Eigen::VectorXd many_body_spectrum(const QuadraticForm<Scalar>& q) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  q.validate();
  const int n = q.size();
  if (n > kMaxFockSites) {
    throw DomainError("many_body_spectrum: N = " + std::to_string(n) + " exceeds oracle limit " +
                      std::to_string(kMaxFockSites));
  }
  const std::uint32_t dim = std::uint32_t(1) << n;
  Matrix H = Matrix::Zero(dim, dim);
  const Scalar diag_shift = Scalar(q.offset) - q.A.trace();
  for (std::uint32_t s = 0; s < dim; ++s) {
    H(s, s) += diag_shift;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        // 2 A_ab c+_a c_b
        if (q.A(a, b) != Scalar(0)) {
          std::uint32_t t = s;
          int sign = 1;
          if (detail::apply_fermion(t, b, false, sign) && detail::apply_fermion(t, a, true, sign)) {
            H(t, s) += Scalar(2.0 * sign) * q.A(a, b);
          }
        }
        if (q.B(a, b) != Scalar(0)) {
          // B_ab c+_a c+_b
          std::uint32_t t = s;
          int sign = 1;
          if (detail::apply_fermion(t, b, true, sign) && detail::apply_fermion(t, a, true, sign)) {
            H(t, s) += Scalar(sign) * q.B(a, b);
          }
          // conj(B_ab) c_b c_a
          t = s;
          sign = 1;
          if (detail::apply_fermion(t, a, false, sign) && detail::apply_fermion(t, b, false, sign)) {
            H(t, s) += Scalar(sign) * Eigen::numext::conj(q.B(a, b));
          }
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("many_body_spectrum: eigensolver failed");
  return es.eigenvalues();
}

// Open transverse-field Ising chain -J sum sx_j sx_{j+1} - h sum sz_j in Pauli
// matrices. Jordan-Wigner maps it onto the fermion chain with t_1 = delta_1 = J;
// in spin-1/2 operators s = sigma/2 the same operator is
// -4J sum s^x s^x - 2h sum s^z.
Eigen::VectorXd spin_ed_tfim(int N, double h, double J = 1.0, Boundary boundary = Boundary::Open);

// <E> = sum_n E_n e^{-E_n/T} / Z over a list of levels.
double canonical_energy(const Eigen::VectorXd& levels, double T);

// Classical fourth-order Runge-Kutta for dn/dt = 2 G (f - n).
double integrate_relaxation_rk4(double n0, double f_tilde, double gamma_sum, double t, int steps);

struct RampExcitation {
  double final_probability;
  double mean_probability;  // time average over the ramp
};

// Integrates i d psi/dt = H(h(t)) psi for the two-level mode along a linear
// ramp with RK4, starting in the instantaneous ground state, and records the
// excited-state population in the instantaneous eigenbasis.
RampExcitation ramp_excitation(double t_k, double delta_k, const RampSpec& ramp, double dt);

}  // namespace lrotto::oracle
