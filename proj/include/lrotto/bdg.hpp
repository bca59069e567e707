#pragma once

#include "lrotto/couplings.hpp"
#include "lrotto/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>
#include <vector>

namespace lrotto {

namespace detail {
template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
}  // namespace detail

// H = sum A_ab c+_a c_b + h.c. + sum B_ab c+_a c+_b + h.c. + offset, i.e.
// H = Psi^dag [[A, B], [-B*, -A*]] Psi + offset in Nambu form.
template <typename Scalar>
struct QuadraticForm {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix A;
  Matrix B;
  double offset = 0.0;

  int size() const { return static_cast<int>(A.rows()); }

  double hermiticity_defect() const { return (A - A.adjoint()).cwiseAbs().maxCoeff(); }
  double antisymmetry_defect() const { return (B + B.transpose()).cwiseAbs().maxCoeff(); }

  void validate(double tol = 1e-12) const {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows() || A.rows() == 0) {
      throw ConfigError("quadratic form blocks must be square and of equal size");
    }
    const double scale = 1.0 + std::max(A.cwiseAbs().maxCoeff(), B.cwiseAbs().maxCoeff());
    if (hermiticity_defect() > tol * scale) throw ConfigError("A block is not Hermitian");
    if (antisymmetry_defect() > tol * scale) throw ConfigError("B block is not antisymmetric");
  }

  Matrix nambu() const {
    const Eigen::Index n = A.rows();
    Matrix H(2 * n, 2 * n);
    H.topLeftCorner(n, n) = A;
    H.topRightCorner(n, n) = B;
    H.bottomLeftCorner(n, n) = -B.conjugate();
    H.bottomRightCorner(n, n) = -A.conjugate();
    return H;
  }
};

// Assembles the real-space form of the chain at field h. The constant of the
// field term cancels against tr A, so offset is zero and the many-body
// spectrum is exactly sum_mu 2 eps_mu (n_mu - 1/2).
QuadraticForm<double> build_quadratic(const CouplingSpec& spec, double h);

template <typename Scalar>
struct NambuSystem {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix H;                 // 2N x 2N Nambu matrix
  Eigen::VectorXd epsilon;  // N non-negative eigenvalues, ascending
  Matrix U;
  Matrix V;
  double offset = 0.0;

  int size() const { return static_cast<int>(epsilon.size()); }

  // Physical quasiparticle energies 2 eps_mu; the only place the factor 2 is applied.
  Eigen::VectorXd quasiparticle_energies() const { return 2.0 * epsilon; }

  double ground_energy() const { return offset - epsilon.sum(); }

  // [[U, V*], [V, U*]]
  Matrix eigenvectors() const {
    const Eigen::Index n = U.rows();
    Matrix W(2 * n, 2 * n);
    W.topLeftCorner(n, n) = U;
    W.topRightCorner(n, n) = V.conjugate();
    W.bottomLeftCorner(n, n) = V;
    W.bottomRightCorner(n, n) = U.conjugate();
    return W;
  }

  // max |H W - W diag(eps, -eps)|
  double residual() const {
    const Matrix W = eigenvectors();
    Eigen::VectorXd e(2 * epsilon.size());
    e << epsilon, -epsilon;
    return (H * W - W * e.template cast<Scalar>().asDiagonal()).cwiseAbs().maxCoeff();
  }

  // max deviation of U^dag U + V^dag V from 1 and of U^T V + V^T U from 0.
  double canonical_defect() const {
    const Eigen::Index n = U.rows();
    const Matrix id = Matrix::Identity(n, n);
    const double a = (U.adjoint() * U + V.adjoint() * V - id).cwiseAbs().maxCoeff();
    const double b = (U.transpose() * V + V.transpose() * U).cwiseAbs().maxCoeff();
    return std::max(a, b);
  }
};

// ||H S + S H*||_max with S the particle-hole swap.
template <typename Derived>
double particle_hole_check(const Eigen::MatrixBase<Derived>& H) {
  const Eigen::Index n = H.rows() / 2;
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix S = Matrix::Zero(2 * n, 2 * n);
  S.topRightCorner(n, n).setIdentity();
  S.bottomLeftCorner(n, n).setIdentity();
  return (H * S + S * H.conjugate()).cwiseAbs().maxCoeff();
}

template <typename Scalar>
double particle_hole_check(const NambuSystem<Scalar>& sys) {
  return particle_hole_check(sys.H);
}

namespace detail {

// Real forms: rotating the Nambu matrix by (1/sqrt2)[[1, 1], [1, -1]] gives
// [[0, M^T], [M, 0]] with M = A + B, so an SVD M = X S Y^T yields
// u = (y + x)/2, v = (y - x)/2. Zero modes come out canonical automatically.
inline void solve_real(const QuadraticForm<double>& q, NambuSystem<double>& sys) {
  const Eigen::Index n = q.A.rows();
  const Eigen::MatrixXd M = q.A + q.B;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw NumericError("diagonalize: SVD failed to converge");
  }
  const Eigen::VectorXd& s = svd.singularValues();
  sys.epsilon.resize(n);
  sys.U.resize(n, n);
  sys.V.resize(n, n);
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    const Eigen::Index src = n - 1 - mu;  // singular values are descending
    const auto x = svd.matrixU().col(src);
    const auto y = svd.matrixV().col(src);
    sys.epsilon[mu] = s[src];
    sys.U.col(mu) = 0.5 * (y + x);
    sys.V.col(mu) = 0.5 * (y - x);
  }
}

// Complex forms: Hermitian eigensolve; positive eigenvectors are used as
// they are, and the zero cluster is rebuilt from vectors invariant under the
// antiunitary x -> S x* so that each chosen w is orthogonal to S w*.
template <typename Real>
void solve_complex(const QuadraticForm<std::complex<Real>>& q,
                   NambuSystem<std::complex<Real>>& sys) {
  using C = std::complex<Real>;
  using Matrix = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<C, Eigen::Dynamic, 1>;
  const Eigen::Index n = q.A.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(sys.H);
  if (es.info() != Eigen::Success) {
    throw NumericError("diagonalize: Hermitian eigensolver failed to converge");
  }
  const auto& evals = es.eigenvalues();
  const Matrix& evecs = es.eigenvectors();
  const double tol = 1e-10 * (1.0 + sys.H.cwiseAbs().maxCoeff());

  std::vector<Eigen::Index> zero;
  std::vector<Eigen::Index> positive;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    if (std::abs(evals[i]) <= tol) {
      zero.push_back(i);
    } else if (evals[i] > 0) {
      positive.push_back(i);
    }
  }
  if (zero.size() % 2 != 0 || positive.size() + zero.size() / 2 != static_cast<std::size_t>(n)) {
    const double res = (sys.H * evecs - evecs * evals.template cast<C>().asDiagonal())
                           .cwiseAbs()
                           .maxCoeff();
    throw NumericError("diagonalize: spectrum is not +/- paired (residual " +
                       std::to_string(res) + ")");
  }

  auto swap_conj = [n](const Vector& x) {
    Vector y(2 * n);
    y.head(n) = x.tail(n).conjugate();
    y.tail(n) = x.head(n).conjugate();
    return y;
  };

  std::vector<Vector> real_basis;
  for (Eigen::Index idx : zero) {
    const Vector x = evecs.col(idx);
    const Vector cx = swap_conj(x);
    for (const Vector& cand : {Vector(x + cx), Vector(C(0, 1) * (x - cx))}) {
      Vector v = cand;
      for (const auto& b : real_basis) v -= C(std::real(b.dot(v))) * b;
      const Real norm = v.norm();
      if (norm > 1e-6) real_basis.push_back(v / norm);
      if (real_basis.size() == zero.size()) break;
    }
    if (real_basis.size() == zero.size()) break;
  }
  if (real_basis.size() != zero.size()) {
    throw NumericError("diagonalize: could not build a particle-hole basis for zero modes");
  }

  sys.epsilon.resize(n);
  sys.U.resize(n, n);
  sys.V.resize(n, n);
  Eigen::Index mu = 0;
  for (std::size_t p = 0; p + 1 < real_basis.size(); p += 2, ++mu) {
    const Vector w = (real_basis[p] + C(0, 1) * real_basis[p + 1]) / std::sqrt(Real(2));
    sys.epsilon[mu] = 0.0;
    sys.U.col(mu) = w.head(n);
    sys.V.col(mu) = w.tail(n);
  }
  for (Eigen::Index idx : positive) {
    sys.epsilon[mu] = evals[idx];
    sys.U.col(mu) = evecs.col(idx).head(n);
    sys.V.col(mu) = evecs.col(idx).tail(n);
    ++mu;
  }
}

}  // namespace detail

template <typename Scalar>
NambuSystem<Scalar> diagonalize(const QuadraticForm<Scalar>& q) {
  q.validate();
  NambuSystem<Scalar> sys;
  sys.H = q.nambu();
  sys.offset = q.offset;
  if constexpr (detail::is_complex<Scalar>::value) {
    detail::solve_complex(q, sys);
  } else {
    detail::solve_real(q, sys);
  }
  return sys;
}

// All 2^N many-body levels sum_mu 2 eps_mu (n_mu - 1/2) + offset, ascending.
template <typename Scalar>
Eigen::VectorXd quasiparticle_levels(const NambuSystem<Scalar>& sys) {
  const int n = sys.size();
  if (n > 24) throw DomainError("quasiparticle_levels: 2^N levels too many for N > 24");
  const Eigen::VectorXd e2 = sys.quasiparticle_energies();
  const double base = sys.ground_energy();
  Eigen::VectorXd levels(Eigen::Index(1) << n);
  for (Eigen::Index mask = 0; mask < levels.size(); ++mask) {
    double e = base;
    for (int mu = 0; mu < n; ++mu) {
      if (mask & (Eigen::Index(1) << mu)) e += e2[mu];
    }
    levels[mask] = e;
  }
  std::sort(levels.data(), levels.data() + levels.size());
  return levels;
}

}  // namespace lrotto
