#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

namespace udw::linalg {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

inline Vector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Shannon entropy in bits of a spectrum; entries <= 0 contribute nothing.
inline double entropy_bits(const Vector& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double v = p[i];
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

inline double entropy_bits(const Matrix& rho) {
  return entropy_bits(hermitian_eigenvalues(rho));
}

/// Partial trace of a multipartite operator. dims lists subsystem dimensions
/// in tensor order; keep flags the subsystems that survive.
inline Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                            const std::vector<bool>& keep) {
  const int n = static_cast<int>(dims.size());
  int d_keep = 1;
  int d_total = 1;
  for (int k = 0; k < n; ++k) {
    d_total *= dims[k];
    if (keep[k]) d_keep *= dims[k];
  }
  Matrix out = Matrix::Zero(d_keep, d_keep);
  std::vector<int> digits(n);
  auto split = [&](int index, int& kept, int& traced) {
    for (int k = n - 1; k >= 0; --k) {
      digits[k] = index % dims[k];
      index /= dims[k];
    }
    kept = 0;
    traced = 0;
    for (int k = 0; k < n; ++k) {
      if (keep[k]) {
        kept = kept * dims[k] + digits[k];
      } else {
        traced = traced * dims[k] + digits[k];
      }
    }
  };
  std::vector<int> kept_of(d_total), traced_of(d_total);
  for (int i = 0; i < d_total; ++i) split(i, kept_of[i], traced_of[i]);
  for (int i = 0; i < d_total; ++i) {
    for (int j = 0; j < d_total; ++j) {
      if (traced_of[i] == traced_of[j]) out(kept_of[i], kept_of[j]) += rho(i, j);
    }
  }
  return out;
}

/// Partial transpose on the second qubit of a two-qubit operator.
inline Eigen::Matrix4cd partial_transpose_B(const Eigen::Matrix4cd& m) {
  Eigen::Matrix4cd out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) out(2 * a + b, 2 * c + e) = m(2 * a + e, 2 * c + b);
  return out;
}

/// Hermitian matrix function through the eigendecomposition.
template <class F>
Matrix hermitian_apply(const Matrix& m, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Vector w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = f(w[i]);
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace udw::linalg
