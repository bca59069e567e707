#include "lrotto/errors.hpp"
#include "lrotto/spectrum.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lrotto;
using doctest::Approx;

namespace {
const double pi = std::acos(-1.0);

double brute_dispersion(double k, double h, double alpha, int N) {
  long double kac = 0, t = 0, d = 0;
  for (int r = 1; r <= N / 2; ++r) kac += std::pow((long double)r, -(long double)alpha);
  for (int r = 1; r < N / 2; ++r) {
    const long double w = std::pow((long double)r, -(long double)alpha) / kac;
    t += w * std::cos((long double)k * r);
    d += w * std::sin((long double)k * r);
  }
  return 2.0 * std::hypot(h - (double)t, (double)d);
}
}  // namespace

TEST_CASE("momentum grid") {
  const Eigen::ArrayXd g2 = momentum_grid(2);
  REQUIRE(g2.size() == 2);
  CHECK(g2[0] == 0.0);
  CHECK(g2[1] == pi);

  const Eigen::ArrayXd g4 = momentum_grid(4);
  REQUIRE(g4.size() == 4);
  CHECK(g4[0] == Approx(-pi / 2));
  CHECK(g4[1] == 0.0);
  CHECK(g4[2] == Approx(pi / 2));
  CHECK(g4[3] == pi);

  const Eigen::ArrayXd g = momentum_grid(100);
  CHECK(g.size() == 100);
  CHECK(g.minCoeff() == Approx(-pi + 2 * pi / 100).epsilon(1e-15));
  CHECK(g.maxCoeff() == pi);
  for (Eigen::Index i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);

  CHECK_THROWS_AS(momentum_grid(5), DomainError);
  CHECK_THROWS_AS(momentum_grid(0), DomainError);
  CHECK_THROWS_AS(momentum_grid(-4), DomainError);
}

TEST_CASE("dispersion") {
  const auto nn = CouplingSpec::uniform(100, 30.0);
  CHECK(dispersion(pi / 2, 1.0, nn) == Approx(2 * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(dispersion(0.0, 1.0, nn) <= 1e-8);
  const double k = 2 * pi / 10;
  CHECK(dispersion(k, 0.7, CouplingSpec::uniform(10, 0.25)) ==
        Approx(brute_dispersion(k, 0.7, 0.25, 10)).epsilon(1e-14));
}

TEST_CASE("bogoliubov angle") {
  CHECK(bogoliubov_angle(0.3, 0.0, 1.0) == 0.0);
  CHECK(bogoliubov_angle(1.3, 0.0, 1.0) == Approx(pi));
  CHECK(bogoliubov_angle(0.0, 1.0, 1.0) == Approx(pi / 4));
  CHECK_THROWS_AS(bogoliubov_angle(1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("reconstruction identity in all quadrants") {
  for (double a : {0.25, 1.2, 30.0}) {
    const auto spec = CouplingSpec::uniform(40, a);
    const ModeTable table(spec);
    for (double h : {-1.5, -0.2, 0.4, 0.95, 2.0}) {
      for (int i = 0; i < table.size(); ++i) {
        const auto m = table.mode(i, h);
        if (m.omega < 1e-12) continue;
        CHECK(std::abs(2 * (h - m.t_k) - m.omega * std::cos(m.theta_k)) <= 1e-12);
        CHECK(std::abs(2 * m.delta_k - m.omega * std::sin(m.theta_k)) <= 1e-12);
        const double u = std::cos(m.theta_k / 2), v = std::sin(m.theta_k / 2);
        CHECK(u * u + v * v == Approx(1.0).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("spectral gap") {
  CHECK(spectral_gap(1.0, CouplingSpec::uniform(1000, 30.0)) <= 1e-4);
  CHECK(spectral_gap(2.0, CouplingSpec::uniform(100, 30.0)) == Approx(2.0).epsilon(1e-6));
  for (double a : {0.1, 0.8, 1.6}) {
    const auto spec = CouplingSpec::uniform(24, a);
    const Eigen::ArrayXd ks = momentum_grid(24);
    double scan = 1e300;
    for (Eigen::Index i = 0; i < ks.size(); ++i) scan = std::min(scan, brute_dispersion(ks[i], 0.0, a, 24));
    CHECK(spectral_gap(0.0, spec) == Approx(scan).epsilon(1e-13));
  }
}

TEST_CASE("critical field") {
  CHECK(critical_field(0.25) == 1.0);
  CHECK(critical_field(1.2) == Approx(0.70).epsilon(1e-15));
  CHECK(critical_field(0.5) == 1.0);
  CHECK(critical_field(1.0) == 1.0);
  CHECK_THROWS_AS(critical_field(2.0), DomainError);
  CHECK_THROWS_AS(critical_field(0.0), DomainError);
}

TEST_CASE("mode table matches direct fourier sums") {
  for (int N : {2, 4, 10, 50}) {
    for (double a : {0.0, 0.55, 2.0}) {
      const auto spec = CouplingSpec::uniform(N, a);
      const ModeTable table(spec);
      REQUIRE(table.size() == N);
      for (int i = 0; i < N; ++i) {
        const auto fc = fourier_couplings(table.k()[i], spec);
        CHECK(table.t()[i] == Approx(fc.t).epsilon(1e-13).scale(1.0));
        CHECK(std::abs(table.delta()[i] - fc.delta) <= 1e-13);
        CHECK(table.omega(0.6)[i] == Approx(dispersion(table.k()[i], 0.6, spec)).epsilon(1e-13).scale(1.0));
      }
    }
  }
}

TEST_CASE("spectrum symmetry and lipschitz bound") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ud(-2.0, 3.0);
  for (double a : {0.3, 1.1, 2.4}) {
    const int N = 36;
    const ModeTable table(CouplingSpec::uniform(N, a));
    for (int rep = 0; rep < 20; ++rep) {
      const double h1 = ud(rng), h2 = ud(rng);
      const Eigen::ArrayXd w1 = table.omega(h1), w2 = table.omega(h2);
      CHECK(w1.minCoeff() >= 0.0);
      CHECK(((w1 - w2).abs() - 2 * std::abs(h1 - h2)).maxCoeff() <= 1e-14);
      // index i holds k = 2 pi (i - N/2 + 1)/N; its partner -k sits at N - 2 - i
      for (int i = 0; i < N - 1; ++i) {
        const int j = N - 2 - i;
        CHECK(std::abs(w1[i] - w1[j]) <= 1e-14);
      }
    }
  }
}

TEST_CASE("nearest-neighbour limit of the dispersion") {
  const ModeTable table(CouplingSpec::uniform(1000, 30.0));
  for (double h : {0.5, 1.0, 1.5}) {
    const Eigen::ArrayXd k = table.k();
    const Eigen::ArrayXd exact = 2.0 * ((h - k.cos()).square() + k.sin().square()).sqrt();
    CHECK((table.omega(h) - exact).abs().maxCoeff() <= 1e-6);
  }
}
