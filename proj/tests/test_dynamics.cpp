#include "lrotto/dynamics.hpp"
#include "lrotto/errors.hpp"
#include "lrotto/oracle.hpp"
#include "lrotto/otto.hpp"
#include "lrotto/spectrum.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lrotto;
using doctest::Approx;

TEST_CASE("bath average") {
  const BathSpec one = BathSpec::uniform(Eigen::VectorXd::Constant(1, 0.4), 3);
  CHECK(bath_average(one, 1.3, 1) == Approx(fermi_occupation(0.4, 1.3)).epsilon(1e-15));

  const BathSpec two = BathSpec::uniform(Eigen::Vector2d(0.38, 0.57), 2);
  CHECK(bath_average(two, 0.0, 0) == Approx(0.5));

  BathSpec weighted = two;
  weighted.rates.col(1) << 1.0, 3.0;
  const double f1 = 1.0 / (1.0 + std::exp(1.0 / 0.38));
  const double f2 = 1.0 / (1.0 + std::exp(1.0 / 0.57));
  CHECK(bath_average(weighted, 1.0, 1) == Approx((f1 + 3 * f2) / 4).epsilon(1e-14));

  BathSpec swapped = weighted;
  swapped.temperatures = Eigen::Vector2d(0.57, 0.38);
  swapped.rates.row(0) = weighted.rates.row(1);
  swapped.rates.row(1) = weighted.rates.row(0);
  CHECK(bath_average(swapped, 1.0, 1) == Approx(bath_average(weighted, 1.0, 1)).epsilon(1e-15));

  BathSpec scaled = weighted;
  scaled.rates *= 7.5;
  CHECK(bath_average(scaled, 1.0, 1) == Approx(bath_average(weighted, 1.0, 1)).epsilon(1e-15));

  const double f = bath_average(weighted, 0.8, 1);
  CHECK(f >= std::min(fermi_occupation(0.38, 0.8), fermi_occupation(0.57, 0.8)));
  CHECK(f <= std::max(fermi_occupation(0.38, 0.8), fermi_occupation(0.57, 0.8)));

  BathSpec dead = two;
  dead.rates.col(0).setZero();
  CHECK_THROWS_AS(bath_average(dead, 1.0, 0), ConfigError);
  CHECK_THROWS_AS(dead.validate(), ConfigError);
}

TEST_CASE("occupation relaxation") {
  CHECK(occupation_at(0.0, 0.9, 0.1, 1.0) == 0.9);
  CHECK(occupation_at(1e3, 0.9, 0.1, 1.0) == Approx(0.1).epsilon(1e-15));
  CHECK(std::abs(occupation_at(0.5, 0.9, 0.1, 1.0) - oracle::integrate_relaxation_rk4(0.9, 0.1, 1.0, 0.5, 2000)) <= 1e-8);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double n0 = u(rng), f = 0.5 * u(rng), g = 0.1 + 2 * u(rng);
    double prev = n0;
    for (double t = 0.1; t < 3.0; t += 0.1) {
      const double n = occupation_at(t, n0, f, g);
      CHECK(std::abs(std::abs(n - f) - std::abs(n0 - f) * std::exp(-2 * g * t)) <= 1e-15);
      if (n0 > f) CHECK(n <= prev);
      if (n0 < f) CHECK(n >= prev);
      prev = n;
    }
  }
}

TEST_CASE("internal energy") {
  const Eigen::ArrayXd w = ModeTable(CouplingSpec::uniform(10, 0.7)).omega(0.6);
  CHECK(internal_energy(Eigen::ArrayXd::Constant(10, 0.5), w) == 0.0);
  CHECK(internal_energy(Eigen::ArrayXd::Zero(10), w) == Approx(-0.5 * w.sum()));
  CHECK(internal_energy(fermi_occupation(1e-4, w), w) == Approx(-0.5 * w.sum()).epsilon(1e-12));
  CHECK_THROWS_AS(internal_energy(Eigen::ArrayXd::Zero(9), w), ConfigError);
}

TEST_CASE("relaxation trace") {
  const auto spec = CouplingSpec::uniform(12, 0.9);
  const Eigen::ArrayXd w = mode_energies(spec, 0.7);
  const BathSpec bath = BathSpec::uniform(Eigen::Vector2d(0.38, 0.57), 12, 0.5);
  const Eigen::ArrayXd n0 = fermi_occupation(0.2, w);
  const auto trace = relax(w, n0, bath, {0.0, 0.5, 1.0, 50.0});
  CHECK(trace.energy[0] == Approx(internal_energy(n0, w)).epsilon(1e-14));
  for (int k = 0; k < 12; ++k) {
    CHECK(trace.occupation(3, k) == Approx(trace.f_tilde[k]).epsilon(1e-12));
    CHECK(trace.occupation(1, k) == Approx(occupation_at(0.5, n0[k], trace.f_tilde[k], 1.0)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(relax(w, n0.head(5), bath, {0.0}), ConfigError);
  CHECK_THROWS_AS(relax(w, n0, bath, {-1.0}), ConfigError);
}

TEST_CASE("fully relaxed strokes reproduce the cycle heats") {
  for (double a : {0.3, 1.4}) {
    const auto spec = CouplingSpec::uniform(30, a);
    const CycleParams p = CycleParams::with_delta(0.4, 0.5, 0.38, 0.57);
    const Eigen::ArrayXd wi = mode_energies(spec, p.h_i), wf = mode_energies(spec, p.h_f);
    const int n = static_cast<int>(wi.size());
    const BathSpec hot = BathSpec::uniform(Eigen::VectorXd::Constant(1, p.T_h), n);
    const BathSpec cold = BathSpec::uniform(Eigen::VectorXd::Constant(1, p.T_c), n);
    // occupations are carried unchanged by the adiabatic strokes
    const Eigen::ArrayXd nA = relax(wi, Eigen::ArrayXd::Constant(n, 0.5), cold, {1e3}).occupation.row(0).transpose();
    const Eigen::ArrayXd nC = relax(wf, nA, hot, {1e3}).occupation.row(0).transpose();
    const Eigen::ArrayXd nA2 = relax(wi, nC, cold, {1e3}).occupation.row(0).transpose();
    const double Q_h = internal_energy(nC, wf) - internal_energy(nA, wf);
    const double Q_c = internal_energy(nA2, wi) - internal_energy(nC, wi);
    const auto ref = cycle_heats(p, spec);
    CHECK(Q_h == Approx(ref.Q_h).epsilon(1e-12));
    CHECK(Q_c == Approx(ref.Q_c).epsilon(1e-12));
    CHECK(Q_h + Q_c == Approx(ref.W).epsilon(1e-12).scale(1e-12));
  }
}

TEST_CASE("adiabaticity diagnostic") {
  const auto spec = CouplingSpec::uniform(20, 30.0);
  const RampSpec slow{1.5, 2.0, 1e-8};
  CHECK(adiabaticity_metric(slow, spec).max_P <= 1e-15);

  const RampSpec ramp{1.5, 2.0, 0.01};
  const auto rep = adiabaticity_metric(ramp, spec);
  CHECK(!rep.any_gapless);
  const ModeTable table(spec);
  for (int i = 0; i < table.size(); ++i) {
    if (table.delta()[i] == 0.0) CHECK(rep.P[i] == 0.0);
  }
  // k = 0 and k = pi carry no pairing
  CHECK(rep.P[spec.N / 2 - 1] == 0.0);
  CHECK(rep.P[spec.N - 1] == 0.0);

  const RampSpec fast{1.5, 2.0, 0.02};
  const auto rep2 = adiabaticity_metric(fast, spec);
  for (int i = 0; i < table.size(); ++i) {
    if (rep.P[i] == 0.0) continue;
    CHECK(std::abs(rep2.P[i] / rep.P[i] - 4.0) <= 4e-12);
  }
  CHECK(rep.h_min_gap.minCoeff() >= 1.5);
  CHECK(rep.h_min_gap.maxCoeff() <= 2.0);

  // downward ramps are treated by the same field interval
  const auto down = adiabaticity_metric(RampSpec{2.0, 1.5, 0.01}, spec);
  CHECK((down.P - rep.P).abs().maxCoeff() == 0.0);
}

TEST_CASE("gapless ramps are flagged") {
  const auto spec = CouplingSpec::uniform(20, 30.0);
  const auto rep = adiabaticity_metric(RampSpec{0.5, 1.5, 0.01}, spec);
  CHECK(rep.any_gapless);
  CHECK(rep.gapless[spec.N / 2 - 1]);
  CHECK(std::isnan(rep.P[spec.N / 2 - 1]));
  CHECK(std::isfinite(rep.max_P));
  CHECK(std::isnan(adiabatic_transition_estimate(1.0, 0.0, RampSpec{0.0, 2.0, 0.1})));
  CHECK_THROWS_AS(adiabaticity_metric(RampSpec{0.0, 1.0, 0.0}, spec), ConfigError);
  CHECK_THROWS_AS(adiabaticity_metric(RampSpec{0.0, 1.0, 0.1}, CouplingSpec::uniform(8, 1.0, Boundary::Open)), ConfigError);
}

TEST_CASE("adiabaticity estimate against time-dependent integration") {
  const auto spec = CouplingSpec::uniform(20, 30.0);
  const RampSpec ramp{1.5, 2.0, 0.01};
  const auto rep = adiabaticity_metric(ramp, spec);
  const ModeTable table(spec);
  int compared = 0;
  for (int i = 0; i < table.size(); ++i) {
    if (!(rep.P[i] > 0.0) || rep.P[i] > 1e-3) continue;
    const auto ex = oracle::ramp_excitation(table.t()[i], table.delta()[i], ramp, 2e-3);
    const double ratio = ex.mean_probability / rep.P[i];
    INFO("k=" << table.k()[i] << " P=" << rep.P[i] << " integrated=" << ex.mean_probability);
    CHECK(ratio >= 1.0 / 3.0);
    CHECK(ratio <= 3.0);
    ++compared;
  }
  CHECK(compared >= 16);
}
