#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "udw/errors.hpp"
#include "udw/linalg.hpp"
#include "udw/series.hpp"

namespace udw {

using cplx = std::complex<double>;

/// Two-qubit X-state in the basis 00, 01, 10, 11:
///
///   [ a1  0   0   c1 ]
///   [ 0   a2  c2  0  ]
///   [ 0   c2* b2  0  ]
///   [ c1* 0   0   b1 ]
struct XState {
  double a1 = 1.0;
  double b1 = 0.0;
  double a2 = 0.0;
  double b2 = 0.0;
  cplx c1{0.0, 0.0};
  cplx c2{0.0, 0.0};

  double trace() const { return a1 + b1 + a2 + b2; }
  bool operator==(const XState&) const = default;
};

struct DenseState {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();

  /// Throws InvalidSpectrum when the matrix is not a density matrix.
  void validate() const {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw InvalidSpectrum("state is not Hermitian");
    if (std::abs(m.trace() - cplx(1.0, 0.0)) > 1e-12)
      throw InvalidSpectrum("state trace differs from 1");
    if (linalg::hermitian_eigenvalues(m).minCoeff() < -1e-9)
      throw InvalidSpectrum("state has a negative eigenvalue below -1e-9");
  }
};

inline void require_finite(const MatrixElements& m) {
  for (const cplx& v : {m.I1, m.I2, m.I3, m.I4}) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ValidationError("matrix_elements", "must be finite");
  }
}

inline XState assemble_second_order(const MatrixElements& m) {
  require_finite(m);
  const double i1 = m.I1.real();
  XState s;
  s.a1 = 1.0 - 2.0 * i1;
  s.b1 = 0.0;
  s.a2 = i1;
  s.b2 = i1;
  s.c1 = -m.I2;
  s.c2 = m.I3;
  return s;
}

/// Fourth-order state. Diagonals use squared moduli, coherences the literal
/// products of the complex elements.
inline XState assemble_fourth_order(const MatrixElements& m) {
  require_finite(m);
  const double i1 = m.I1.real();
  const double n2 = std::norm(m.I2);
  const double n3 = std::norm(m.I3);
  const double n4 = std::norm(m.I4);
  const double pair = i1 * i1 + n2 + n3;
  const double same = 2.0 * i1 * i1 + n4;
  XState s;
  s.b1 = pair;
  s.a2 = i1 - pair - same / 3.0;
  s.b2 = s.a2;
  // 1 - (b1 + a2 + b2) expands to 1 - 2 I1 + pair + (2/3) same.
  s.a1 = 1.0 - 2.0 * i1 + pair + 2.0 * same / 3.0;
  s.c1 = -m.I2 + (4.0 / 3.0) * (2.0 * i1 * m.I2 + m.I3 * m.I4);
  s.c2 = m.I3 - (4.0 / 3.0) * (2.0 * i1 * m.I3 + m.I2 * m.I4);
  for (double v : {s.a1, s.b1, s.a2, s.b2}) {
    if (v < -1e-10 || v > 1.0)
      throw PerturbationBreakdown("fourth-order population " + std::to_string(v) +
                                  " outside [0, 1]; coupling too strong");
  }
  return s;
}

/// Eigenvalues {l1+, l1-, l2+, l2-} of the two 2x2 blocks.
inline std::array<double, 4> eigenvalues_xstate(const XState& s) {
  auto block = [](double a, double b, cplx c, double& hi, double& lo) {
    const double root = std::hypot(a - b, 2.0 * std::abs(c));
    hi = 0.5 * (a + b + root);
    // Product form avoids cancellation for the small eigenvalue.
    const double det = a * b - std::norm(c);
    lo = hi != 0.0 ? det / hi : 0.0;
  };
  std::array<double, 4> ev{};
  block(s.a1, s.b1, s.c1, ev[0], ev[1]);
  block(s.a2, s.b2, s.c2, ev[2], ev[3]);
  return ev;
}

/// Reduced state of B: (p0, p1) = (a1 + b2, a2 + b1).
inline std::array<double, 2> marginal_B(const XState& s) {
  return {s.a1 + s.b2, s.a2 + s.b1};
}

inline DenseState to_dense(const XState& s) {
  DenseState d;
  d.m(0, 0) = s.a1;
  d.m(1, 1) = s.a2;
  d.m(2, 2) = s.b2;
  d.m(3, 3) = s.b1;
  d.m(0, 3) = s.c1;
  d.m(3, 0) = std::conj(s.c1);
  d.m(1, 2) = s.c2;
  d.m(2, 1) = std::conj(s.c2);
  return d;
}

/// Reads the X entries back out of a dense matrix (other entries ignored).
inline XState from_dense(const DenseState& d) {
  XState s;
  s.a1 = d.m(0, 0).real();
  s.a2 = d.m(1, 1).real();
  s.b2 = d.m(2, 2).real();
  s.b1 = d.m(3, 3).real();
  s.c1 = d.m(0, 3);
  s.c2 = d.m(1, 2);
  return s;
}

}  // namespace udw
