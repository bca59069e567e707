#include "lrotto/bdg.hpp"
#include "lrotto/spectrum.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>

using namespace lrotto;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

const double inf = std::numeric_limits<double>::infinity();

bool op(std::uint32_t& s, int a, bool create, double& sign) {
  const std::uint32_t bit = 1u << a;
  if (create == bool(s & bit)) return false;
  if (std::popcount(s & (bit - 1)) & 1) sign = -sign;
  s ^= bit;
  return true;
}

// Chain Hamiltonian written term by term in the Fock basis:
// -sum_{j,r} [t_r c+_{j+r} c_j + d_r c+_{j+r} c+_j + h.c.] - h sum_j (1 - 2 n_j)
Eigen::VectorXd literal_chain_spectrum(const CouplingSpec& spec, double h) {
  const int N = spec.N;
  const std::uint32_t dim = 1u << N;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  auto add = [&](std::uint32_t s, double amp, std::initializer_list<std::pair<int, bool>> ops) {
    std::uint32_t t = s;
    double sign = 1.0;
    // operators act right to left
    std::vector<std::pair<int, bool>> v(ops);
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
      if (!op(t, it->first, it->second, sign)) return;
    }
    H(t, s) += amp * sign;
  };
  const int rmax = N == 2 ? 1 : N / 2 - 1;
  for (std::uint32_t s = 0; s < dim; ++s) {
    for (int j = 0; j < N; ++j) H(s, s) += -h * (1.0 - 2.0 * ((s >> j) & 1u));
    for (int r = 1; r <= rmax; ++r) {
      const double t = amplitude(r, spec.alpha1, spec);
      const double d = amplitude(r, spec.alpha2, spec);
      for (int j = 0; j < N; ++j) {
        int i = j + r;
        if (i >= N) {
          if (spec.boundary == Boundary::Open) continue;
          i -= N;
        }
        add(s, -t, {{i, true}, {j, false}});
        add(s, -t, {{j, true}, {i, false}});
        add(s, -d, {{i, true}, {j, true}});
        add(s, -d, {{j, false}, {i, false}});
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

template <typename Scalar>
QuadraticForm<Scalar> random_form(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  using M = typename QuadraticForm<Scalar>::Matrix;
  M A(n, n), B(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if constexpr (std::is_same_v<Scalar, double>) {
        A(i, j) = g(rng);
        B(i, j) = g(rng);
      } else {
        A(i, j) = Scalar(g(rng), g(rng));
        B(i, j) = Scalar(g(rng), g(rng));
      }
    }
  }
  QuadraticForm<Scalar> q;
  q.A = (A + A.adjoint()) / 2.0;
  q.B = (B - B.transpose()) / 2.0;
  return q;
}

template <typename Scalar>
void check_system(const QuadraticForm<Scalar>& q) {
  const auto sys = diagonalize(q);
  const int n = q.size();
  CHECK(particle_hole_check(sys) <= 1e-12);
  CHECK(sys.residual() <= 1e-10);
  CHECK(sys.canonical_defect() <= 1e-10);
  for (int i = 0; i < n; ++i) {
    CHECK(sys.epsilon[i] >= 0.0);
    if (i) CHECK(sys.epsilon[i] >= sys.epsilon[i - 1]);
  }
  using M = typename NambuSystem<Scalar>::Matrix;
  const M W = sys.eigenvectors();
  CHECK((W.adjoint() * W - M::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() <= 1e-10);
  Eigen::SelfAdjointEigenSolver<M> es(q.nambu(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd s = es.eigenvalues();
  for (int i = 0; i < 2 * n; ++i) CHECK(std::abs(s[i] + s[2 * n - 1 - i]) <= 1e-10);
  for (int i = 0; i < n; ++i) CHECK(std::abs(s[n + i] - sys.epsilon[i]) <= 1e-10);
}

}  // namespace

TEST_CASE("two-site open chain") {
  auto spec = CouplingSpec::uniform(2, inf, Boundary::Open);
  const auto q = build_quadratic(spec, 0.0);
  CHECK(q.A(0, 1) == -0.5);
  CHECK(q.A(1, 0) == -0.5);
  CHECK(q.A.diagonal().isZero());
  CHECK(q.B(1, 0) == -0.5);
  CHECK(q.B(0, 1) == 0.5);
  CHECK(q.offset == 0.0);
  // one bond of strength J: many-body levels -J, -J, +J, +J as in the Fock construction
  const auto levels = quasiparticle_levels(diagonalize(q));
  const Eigen::VectorXd lit = literal_chain_spectrum(spec, 0.0);
  for (int i = 0; i < 4; ++i) CHECK(levels[i] == Approx(lit[i]).scale(1.0));
  CHECK(lit[0] == Approx(-1.0));
  CHECK(lit[3] == Approx(1.0));
}

TEST_CASE("periodic chains are circulant") {
  const auto q = build_quadratic(CouplingSpec::uniform(4, 30.0), 0.3);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(q.A(i, j) - q.A((i + 1) % 4, (j + 1) % 4)) <= 1e-9);
      CHECK(std::abs(q.B(i, j) - q.B((i + 1) % 4, (j + 1) % 4)) <= 1e-9);
    }
  }
  CHECK(q.hermiticity_defect() <= 1e-14);
  CHECK(q.antisymmetry_defect() <= 1e-14);
}

TEST_CASE("open chain entries equal the amplitudes") {
  const auto spec = CouplingSpec::uniform(8, 0.5, Boundary::Open);
  const auto q = build_quadratic(spec, 0.9);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int r = std::abs(i - j);
      double a = 0.0, b = 0.0;
      if (r == 0) {
        a = 0.9;
      } else if (r <= 3) {
        a = -0.5 * amplitude(r, 0.5, spec);
        b = (i > j ? -0.5 : 0.5) * amplitude(r, 0.5, spec);
      }
      CHECK(q.A(i, j) == Approx(a).epsilon(1e-15));
      CHECK(q.B(i, j) == Approx(b).epsilon(1e-15));
    }
  }
}

TEST_CASE("assembled form reproduces the chain Hamiltonian in Fock space") {
  for (auto b : {Boundary::Periodic, Boundary::Open}) {
    for (double a : {0.4, 1.5}) {
      CouplingSpec spec = CouplingSpec::uniform(8, a, b);
      spec.alpha2 = a + 0.3;
      for (double h : {0.2, 1.1}) {
        const auto levels = quasiparticle_levels(diagonalize(build_quadratic(spec, h)));
        const Eigen::VectorXd lit = literal_chain_spectrum(spec, h);
        CHECK((levels - lit).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
  }
}

TEST_CASE("disorder table drives hopping and pairing") {
  Eigen::MatrixXd J(4, 4);
  J << 0, 1.0, 0.2, 0.3,
       1.0, 0, 0.7, 0.1,
       0.2, 0.7, 0, 0.9,
       0.3, 0.1, 0.9, 0;
  CouplingSpec spec = CouplingSpec::uniform(4, 1.0);
  spec.disorder = J;
  const auto q = build_quadratic(spec, 0.4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) {
        CHECK(q.A(i, i) == 0.4);
        continue;
      }
      CHECK(q.A(i, j) == Approx(-0.5 * J(i, j)));
      CHECK(q.B(i, j) == Approx((i > j ? -0.5 : 0.5) * J(i, j)));
    }
  }
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 3);
  spec.disorder = bad;
  CHECK_THROWS_AS(build_quadratic(spec, 0.4), ConfigError);
}

TEST_CASE("diagonal forms") {
  QuadraticForm<double> q;
  q.A = Eigen::Vector3d(-2.0, 0.5, 1.0).asDiagonal();
  q.B = Eigen::MatrixXd::Zero(3, 3);
  const auto sys = diagonalize(q);
  CHECK(sys.epsilon[0] == Approx(0.5));
  CHECK(sys.epsilon[1] == Approx(1.0));
  CHECK(sys.epsilon[2] == Approx(2.0));
  CHECK(sys.canonical_defect() <= 1e-12);

  QuadraticForm<cd> z;
  z.A = Eigen::MatrixXcd::Zero(3, 3);
  z.B = Eigen::MatrixXcd::Zero(3, 3);
  const auto zs = diagonalize(z);
  CHECK(zs.epsilon.cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(zs.canonical_defect() <= 1e-12);
}

TEST_CASE("momentum and Nambu spectra coincide") {
  for (int N : {4, 10, 100}) {
    for (double a : {0.25, 0.55, 1.2}) {
      const auto spec = CouplingSpec::uniform(N, a);
      const ModeTable table(spec);
      for (double h : {0.3, 0.7, 1.6}) {
        Eigen::ArrayXd w = table.omega(h);
        std::sort(w.data(), w.data() + w.size());
        const Eigen::VectorXd e = diagonalize(build_quadratic(spec, h)).quasiparticle_energies();
        CHECK((e.array() - w).abs().maxCoeff() <= 1e-8);
      }
    }
  }
}

TEST_CASE("random real forms") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 100; ++rep) check_system(random_form<double>(2 + rep % 9, rng));
}

TEST_CASE("random complex forms") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 100; ++rep) check_system(random_form<cd>(2 + rep % 9, rng));
}

TEST_CASE("complex forms with exact zero modes") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    auto q = random_form<cd>(5, rng);
    // decouple two sites with no field: two zero modes
    for (int s : {1, 3}) {
      q.A.row(s).setZero();
      q.A.col(s).setZero();
      q.B.row(s).setZero();
      q.B.col(s).setZero();
    }
    check_system(q);
  }
}

TEST_CASE("particle-hole check catches broken hermiticity") {
  auto q = build_quadratic(CouplingSpec::uniform(6, 0.8), 0.5);
  CHECK(particle_hole_check(q.nambu()) <= 1e-12);
  q.A(0, 1) += 1e-3;
  Eigen::MatrixXd H = q.nambu();
  H(0, 1) += 1e-3;
  CHECK(particle_hole_check(H) > 1e-6);
  CHECK_THROWS_AS(diagonalize(q), ConfigError);
}

TEST_CASE("quasiparticle levels") {
  const auto sys = diagonalize(build_quadratic(CouplingSpec::uniform(6, 0.9), 0.4));
  const Eigen::VectorXd levels = quasiparticle_levels(sys);
  CHECK(levels.size() == 64);
  CHECK(levels[0] == Approx(sys.ground_energy()));
  CHECK(levels.sum() == Approx(64 * sys.offset).scale(1.0));
}
