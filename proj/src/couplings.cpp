#include "lrotto/couplings.hpp"

#include "lrotto/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace lrotto {

namespace {

using std::numbers::pi;

// Largest coupling distance. The r <= N/2 - 1 truncation would leave a
// two-site chain uncoupled, so N = 2 keeps its single bond.
int max_distance(int N) { return N == 2 ? 1 : N / 2 - 1; }

void require_chain_size(int N) {
  if (N < 2 || N % 2 != 0) {
    throw DomainError("chain size must be even and >= 2, got " + std::to_string(N));
  }
}

void require_exponent(double alpha, const char* name) {
  if (std::isnan(alpha) || alpha < 0.0) {
    throw ConfigError(std::string(name) + " must be >= 0");
  }
}

long double inverse_power(long double r, long double alpha) {
  if (std::isinf(alpha)) return r == 1.0L ? 1.0L : 0.0L;
  return std::pow(r, -alpha);
}

// Reduce to (-pi, pi].
double wrap_angle(double k) {
  double w = std::remainder(k, 2.0 * pi);
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

}  // namespace

void CouplingSpec::validate() const {
  if (N < 2 || N % 2 != 0) {
    throw ConfigError("N must be even and >= 2, got " + std::to_string(N));
  }
  require_exponent(alpha1, "alpha1");
  require_exponent(alpha2, "alpha2");
  if (!std::isfinite(J)) throw ConfigError("J must be finite");
  if (disorder) {
    const auto& d = *disorder;
    if (d.rows() != N || d.cols() != N) {
      throw ConfigError("disorder table must be " + std::to_string(N) + "x" + std::to_string(N) +
                        ", got " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()));
    }
    if (!d.allFinite()) throw ConfigError("disorder table has non-finite entries");
    if ((d - d.transpose()).cwiseAbs().maxCoeff() > 1e-14 * (1.0 + d.cwiseAbs().maxCoeff())) {
      throw ConfigError("disorder table must be symmetric");
    }
  }
}

double kac_factor(double alpha, int N) {
  require_chain_size(N);
  if (std::isnan(alpha) || alpha < 0.0) throw DomainError("kac_factor: alpha must be >= 0");
  long double sum = 0.0L;
  // Smallest terms first.
  for (int r = N / 2; r >= 1; --r) sum += inverse_power(r, alpha);
  return static_cast<double>(sum);
}

double ising_kac_factor(double alpha, int N) {
  require_chain_size(N);
  long double sum = 0.0L;
  for (int r = N - 1; r >= 1; --r) sum += static_cast<long double>(N - r) * inverse_power(r, alpha);
  return static_cast<double>(sum / (N - 1));
}

double amplitude(int r, double alpha, const CouplingSpec& spec) {
  if (r < 1 || r > spec.N / 2) {
    throw DomainError("amplitude: distance " + std::to_string(r) + " outside [1, " +
                      std::to_string(spec.N / 2) + "]");
  }
  const double base = spec.J * static_cast<double>(inverse_power(r, alpha));
  return spec.kac ? base / kac_factor(alpha, spec.N) : base;
}

std::vector<double> amplitudes(double alpha, const CouplingSpec& spec) {
  require_chain_size(spec.N);
  const int half = spec.N / 2;
  std::vector<long double> powers(half + 1, 0.0L);
  long double sum = 0.0L;
  for (int r = half; r >= 1; --r) {
    powers[r] = inverse_power(r, alpha);
    sum += powers[r];
  }
  const double kac = static_cast<double>(sum);
  std::vector<double> out(half + 1, 0.0);
  for (int r = 1; r <= half; ++r) {
    const double base = spec.J * static_cast<double>(powers[r]);
    out[r] = spec.kac ? base / kac : base;
  }
  return out;
}

FourierPair fourier_couplings(double k, const CouplingSpec& spec) {
  const int rmax = max_distance(spec.N);
  long double t = 0.0L;
  long double d = 0.0L;
  for (int r = rmax; r >= 1; --r) {
    const long double kr = static_cast<long double>(k) * r;
    t += std::cos(kr) * inverse_power(r, spec.alpha1);
    d += std::sin(kr) * inverse_power(r, spec.alpha2);
  }
  double scale1 = spec.J;
  double scale2 = spec.J;
  if (spec.kac) {
    scale1 /= kac_factor(spec.alpha1, spec.N);
    scale2 /= kac_factor(spec.alpha2, spec.N);
  }
  return {static_cast<double>(t) * scale1, static_cast<double>(d) * scale2};
}

double zeta(double alpha) {
  if (std::isnan(alpha) || alpha <= 1.0) throw DomainError("zeta: requires alpha > 1");
  if (alpha >= 64.0) {
    // Only the first few terms are representable.
    return 1.0 + static_cast<double>(inverse_power(2, alpha) + inverse_power(3, alpha));
  }
  // Euler-Maclaurin with cut M and Bernoulli corrections up to B_24.
  static constexpr std::array<long double, 12> bernoulli = {
      1.0L / 6,          -1.0L / 30,        1.0L / 42,          -1.0L / 30,
      5.0L / 66,         -691.0L / 2730,    7.0L / 6,           -3617.0L / 510,
      43867.0L / 798,    -174611.0L / 330,  854513.0L / 138,    -236364091.0L / 2730};
  const long double s = alpha;
  constexpr int M = 20;
  long double sum = 0.0L;
  for (int n = M - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -s);
  const long double m = M;
  sum += std::pow(m, 1.0L - s) / (s - 1.0L) + 0.5L * std::pow(m, -s);
  long double rising = s;             // s (s+1) ... (s + 2j - 2)
  long double factorial = 2.0L;       // (2j)!
  long double mpow = std::pow(m, -s - 1.0L);
  for (std::size_t j = 1; j <= bernoulli.size(); ++j) {
    sum += bernoulli[j - 1] / factorial * rising * mpow;
    rising *= (s + 2.0L * j - 1.0L) * (s + 2.0L * j);
    factorial *= (2.0L * j + 1.0L) * (2.0L * j + 2.0L);
    mpow /= m * m;
  }
  return static_cast<double>(sum);
}

std::complex<double> polylog_unit_circle(double alpha, double k) {
  if (std::isnan(alpha) || std::isnan(k) || alpha <= 0.0) {
    throw DomainError("polylog: requires alpha > 0");
  }
  const double kw = wrap_angle(k);
  if (kw == 0.0) {
    if (alpha <= 1.0) throw DomainError("polylog: Li_alpha(1) diverges for alpha <= 1");
    return {zeta(alpha), 0.0};
  }
  if (std::isinf(alpha)) return {std::cos(kw), std::sin(kw)};

  using cld = std::complex<long double>;
  const long double a = alpha;
  const cld z = std::polar(1.0L, static_cast<long double>(kw));
  const cld one_minus_z = 1.0L - z;
  const long double dist = std::abs(static_cast<long double>(kw));

  constexpr long double tail_tol = 1e-14L;
  constexpr long double max_terms = 1e8L;
  constexpr int max_order = 60;

  // Head summed directly; tail sum_{r>=R} z^r r^-a expanded in derivatives of
  // r^-a at R: sum_m (-1)^m (a)_m/m! R^{-a-m} sum_{j>=0} j^m z^j, where the
  // inner Abel sum is z E_m(z)/(1-z)^{m+1} with Eulerian polynomial E_m.
  long double R = std::max(64.0L, std::ceil(2.0L * (a + 24.0L) / dist));
  while (R <= max_terms) {
    const long long n_head = static_cast<long long>(R);
    cld head = 0.0L;
    for (long long r = n_head - 1; r >= 1; --r) {
      const long double kr = static_cast<long double>(kw) * static_cast<long double>(r);
      head += cld(std::cos(kr), std::sin(kr)) * std::pow(static_cast<long double>(r), -a);
    }

    std::vector<long double> euler{1.0L};  // E_1 = 1
    cld tail = 1.0L / one_minus_z;
    long double coeff = 1.0L;  // (a)_m / m!
    cld inv_pow = 1.0L / (one_minus_z * one_minus_z);
    long double rpow = 1.0L / R;
    long double prev = std::abs(tail) * std::pow(R, -a);
    long double last = prev;
    bool converged = false;
    for (int m = 1; m <= max_order; ++m) {
      if (m > 1) {
        std::vector<long double> next(m, 0.0L);
        for (int i = 0; i < m; ++i) {
          const long double keep = i < m - 1 ? (i + 1) * euler[i] : 0.0L;
          const long double bump = i > 0 ? (m - i) * euler[i - 1] : 0.0L;
          next[i] = keep + bump;
        }
        euler = std::move(next);
        inv_pow /= one_minus_z;
      }
      cld poly = 0.0L;
      for (auto it = euler.rbegin(); it != euler.rend(); ++it) poly = poly * z + *it;
      coeff *= (a + m - 1.0L) / m;
      const cld term = (m % 2 == 0 ? 1.0L : -1.0L) * coeff * rpow * z * poly * inv_pow;
      rpow /= R;
      const long double size = std::abs(term) * std::pow(R, -a);
      tail += term;
      // Judge pairs of orders: at k = pi every even order vanishes.
      const long double pair = std::max(size, last);
      last = size;
      if (m > 1 && pair < tail_tol) {
        converged = true;
        break;
      }
      if (m > 4 && pair > prev) break;  // asymptotic series turned around
      if (m > 1) prev = pair;
    }
    if (converged) {
      const cld result = head + std::pow(z, static_cast<long double>(n_head)) *
                                    std::pow(R, -a) * tail;
      return {static_cast<double>(result.real()), static_cast<double>(result.imag())};
    }
    R *= 4.0L;
  }
  throw NumericError("polylog: tail expansion did not converge within 1e8 terms (alpha=" +
                     std::to_string(alpha) + ", k=" + std::to_string(k) + ")");
}

FourierPair fourier_couplings_limit(double k, double alpha1, double alpha2) {
  if (!(alpha1 > 1.0) || !(alpha2 > 1.0)) {
    throw DomainError("thermodynamic-limit couplings need exponents > 1; use the finite-N form");
  }
  const auto li1 = polylog_unit_circle(alpha1, k);
  const auto li2 = alpha2 == alpha1 ? li1 : polylog_unit_circle(alpha2, k);
  return {li1.real() / zeta(alpha1), li2.imag() / zeta(alpha2)};
}

Eigen::MatrixXd power_law_table(int N, double alpha, double J) {
  const double K = ising_kac_factor(alpha, N);
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      table(i, j) = table(j, i) = J / K * static_cast<double>(inverse_power(j - i, alpha));
    }
  }
  return table;
}

}  // namespace lrotto
