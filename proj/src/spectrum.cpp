#include "lrotto/spectrum.hpp"

#include "lrotto/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace lrotto {

Eigen::ArrayXd momentum_grid(int N) {
  if (N < 2 || N % 2 != 0) {
    throw DomainError("momentum grid needs even N >= 2, got " + std::to_string(N));
  }
  Eigen::ArrayXd k(N);
  for (int i = 0; i < N; ++i) {
    const int n = i - N / 2 + 1;
    k[i] = 2.0 * std::numbers::pi * n / N;
  }
  k[N - 1] = std::numbers::pi;
  return k;
}

double dispersion(double k, double h, const CouplingSpec& spec) {
  const auto [t, d] = fourier_couplings(k, spec);
  return 2.0 * std::hypot(h - t, d);
}

double bogoliubov_angle(double t_k, double delta_k, double h) {
  const double x = h - t_k;
  if (x == 0.0 && delta_k == 0.0) {
    throw DomainError("bogoliubov_angle: gapless mode (h = t_k, delta_k = 0)");
  }
  return std::atan2(delta_k, x);
}

double bogoliubov_angle(double k, double h, const CouplingSpec& spec) {
  const auto [t, d] = fourier_couplings(k, spec);
  return bogoliubov_angle(t, d, h);
}

double spectral_gap(double h, const CouplingSpec& spec) {
  return ModeTable(spec).omega(h).minCoeff();
}

double critical_field(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0)) {
    throw DomainError("critical_field: interpolation valid only for 0 < alpha < 2");
  }
  return alpha <= 1.0 ? 1.0 : 0.35 * (3.2 - alpha);
}

ModeTable::ModeTable(const CouplingSpec& spec) : k_(momentum_grid(spec.N)) {
  const int N = spec.N;
  t_.resize(N);
  delta_.resize(N);
  // k_n r = 2 pi (n r mod N) / N, so one table of N angles covers every
  // (k, r) pair and avoids large-argument trig.
  std::vector<long double> cos_tab(N), sin_tab(N);
  for (int m = 0; m < N; ++m) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * m / N;
    cos_tab[m] = std::cos(angle);
    sin_tab[m] = std::sin(angle);
  }
  const int rmax = N == 2 ? 1 : N / 2 - 1;
  const std::vector<double> w1 = amplitudes(spec.alpha1, spec);
  const std::vector<double> w2 = amplitudes(spec.alpha2, spec);
  for (int i = 0; i < N; ++i) {
    const int n = i - N / 2 + 1;
    long double t = 0.0L;
    long double d = 0.0L;
    for (int r = rmax; r >= 1; --r) {
      const int m = ((n * r) % N + N) % N;
      t += static_cast<long double>(w1[r]) * cos_tab[m];
      d += static_cast<long double>(w2[r]) * sin_tab[m];
    }
    t_[i] = static_cast<double>(t);
    delta_[i] = static_cast<double>(d);
  }
  // k = 0 and k = pi carry no pairing.
  delta_[N / 2 - 1] = 0.0;
  delta_[N - 1] = 0.0;
}

MomentumMode ModeTable::mode(int index, double h) const {
  const double t = t_[index];
  const double d = delta_[index];
  const double omega = 2.0 * std::hypot(h - t, d);
  const double theta = (h - t == 0.0 && d == 0.0) ? 0.0 : std::atan2(d, h - t);
  return {k_[index], t, d, theta, omega};
}

}  // namespace lrotto
