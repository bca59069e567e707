#include "lrotto/bdg.hpp"

namespace lrotto {

QuadraticForm<double> build_quadratic(const CouplingSpec& spec, double h) {
  spec.validate();
  const int N = spec.N;
  QuadraticForm<double> q;
  q.A = Eigen::MatrixXd::Zero(N, N);
  q.B = Eigen::MatrixXd::Zero(N, N);
  q.A.diagonal().setConstant(h);

  // Bond (lo -> hi): -t (c+_hi c_lo + h.c.) - d (c+_hi c+_lo + h.c.).
  auto add_bond = [&q](int hi, int lo, double t, double d) {
    q.A(hi, lo) -= 0.5 * t;
    q.A(lo, hi) -= 0.5 * t;
    q.B(hi, lo) -= 0.5 * d;
    q.B(lo, hi) += 0.5 * d;
  };

  if (spec.disorder) {
    const auto& table = *spec.disorder;
    for (int i = 0; i < N; ++i) {
      for (int j = i + 1; j < N; ++j) add_bond(j, i, table(i, j), table(i, j));
    }
    return q;
  }

  const int rmax = N == 2 ? 1 : N / 2 - 1;
  const std::vector<double> t_r = amplitudes(spec.alpha1, spec);
  const std::vector<double> d_r = amplitudes(spec.alpha2, spec);
  for (int r = 1; r <= rmax; ++r) {
    const double t = t_r[r];
    const double d = d_r[r];
    for (int j = 0; j < N; ++j) {
      int i = j + r;
      if (i >= N) {
        if (spec.boundary == Boundary::Open) continue;
        i -= N;
      }
      add_bond(i, j, t, d);
    }
  }
  return q;
}

}  // namespace lrotto
