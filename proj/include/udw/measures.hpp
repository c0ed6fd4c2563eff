#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "udw/errors.hpp"
#include "udw/linalg.hpp"
#include "udw/optimize.hpp"
#include "udw/state.hpp"

namespace udw {

/// Spectra may dip this far below zero (perturbative dust) before the state
/// is rejected.
inline constexpr double negative_eigenvalue_slack = 1e-9;

/// -sum p log2 p over a probability spectrum. Entries in [-1e-9, 0) are
/// treated as 0.
inline double von_neumann_entropy(std::span<const double> spectrum) {
  double sum = 0.0;
  double h = 0.0;
  for (double p : spectrum) {
    if (!std::isfinite(p) || p < -negative_eigenvalue_slack)
      throw InvalidSpectrum("spectrum entry " + std::to_string(p) + " is not a probability");
    sum += p;
    if (p > 0.0) h -= p * std::log2(p);
  }
  if (std::abs(sum - 1.0) > negative_eigenvalue_slack)
    throw InvalidSpectrum("spectrum sums to " + std::to_string(sum));
  return h;
}

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

struct PptResult {
  bool ppt = true;
  double negativity = 0.0;
};

inline constexpr double ppt_threshold = 1e-12;

inline PptResult ppt_and_negativity(const DenseState& s) {
  const Eigen::Matrix4cd pt = linalg::partial_transpose_B(s.m);
  const linalg::Vector ev = linalg::hermitian_eigenvalues(pt);
  double neg = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] < 0.0) neg -= ev[i];
  return {neg < ppt_threshold, neg};
}

/// Closed form for X-states: the partial transpose exchanges the two
/// coherences between the blocks.
inline PptResult ppt_and_negativity(const XState& s) {
  auto low = [](double a, double b, cplx c) {
    const double hi = 0.5 * (a + b + std::hypot(a - b, 2.0 * std::abs(c)));
    return hi != 0.0 ? (a * b - std::norm(c)) / hi : -std::abs(c);
  };
  const double neg = std::max(0.0, -low(s.a1, s.b1, s.c2)) +
                     std::max(0.0, -low(s.a2, s.b2, s.c1));
  return {neg < ppt_threshold, neg};
}

/// Wootters concurrence. The spin-flip spectrum is taken from the Hermitian
/// matrix sqrt(rho) rho~ sqrt(rho), whose eigenvalues are the squares of the
/// Wootters lambdas.
inline double concurrence_wootters(const DenseState& s) {
  using linalg::Matrix;
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(3, 0) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  const Eigen::Matrix4cd tilde = yy * s.m.conjugate() * yy;
  const Matrix root =
      linalg::hermitian_apply(Matrix(s.m), [](double v) { return std::sqrt(std::max(v, 0.0)); });
  Matrix r = root * Matrix(tilde) * root;
  r = 0.5 * (r + r.adjoint()).eval();
  linalg::Vector ev = linalg::hermitian_eigenvalues(r);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(ev[i], 0.0));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

inline double concurrence_xstate(const XState& s) {
  const double g1 = std::abs(s.c1) - std::sqrt(std::max(s.a2 * s.b2, 0.0));
  const double g2 = std::abs(s.c2) - std::sqrt(std::max(s.a1 * s.b1, 0.0));
  return 2.0 * std::max({0.0, g1, g2});
}

inline double eof_from_concurrence(double c) {
  if (c <= 0.0) return 0.0;
  c = std::min(c, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

inline double eof(const DenseState& s) { return eof_from_concurrence(concurrence_wootters(s)); }
inline double eof(const XState& s) { return eof_from_concurrence(concurrence_xstate(s)); }

/// H(B) - H(AB) in bits.
inline double coherent_information(const XState& s) {
  const auto pb = marginal_B(s);
  const auto ev = eigenvalues_xstate(s);
  return von_neumann_entropy(pb) - von_neumann_entropy(ev);
}

namespace measures_detail {

inline double clamped_entropy(const linalg::Vector& ev) {
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -negative_eigenvalue_slack)
      throw PerturbationBreakdown("state eigenvalue " + std::to_string(ev[i]) +
                                  " below tolerance");
  }
  return linalg::entropy_bits(ev);
}

inline double entropy_of(const linalg::Matrix& m) {
  return clamped_entropy(linalg::hermitian_eigenvalues(m));
}

}  // namespace measures_detail

/// Half the mutual information: the squashing bound with the identity channel.
inline double squashed_identity(const DenseState& s) {
  using linalg::Matrix;
  const Matrix m(s.m);
  const double ha = measures_detail::entropy_of(linalg::partial_trace(m, {2, 2}, {true, false}));
  const double hb = measures_detail::entropy_of(linalg::partial_trace(m, {2, 2}, {false, true}));
  const double hab = measures_detail::entropy_of(m);
  return std::max(0.0, 0.5 * (ha + hb - hab));
}

struct OptimizedValue {
  double value = 0.0;
  OptimizerDiagnostics diagnostics;
};

namespace squash_detail {

/// Output of the squashing channel: a qubit E~ together with a discarded
/// register of this dimension.
inline constexpr int discarded_dimension = 8;
/// Warm-start ladder for the discarded register.
inline constexpr std::array<int, 3> stages = {2, 4, 8};

inline double entropy2(const Eigen::Matrix2cd& m) {
  const double tr = m(0, 0).real() + m(1, 1).real();
  const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  const double root = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  linalg::Vector ev(2);
  ev << 0.5 * tr + root, 0.5 * tr - root;
  return linalg::entropy_bits(ev);
}

inline double entropy_h(const Eigen::Matrix4cd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
  return linalg::entropy_bits(linalg::Vector(es.eigenvalues()));
}

/// Half the conditional mutual information I(A;B|E~) after an isometry
/// built from the free parameters (real and imaginary parts of a
/// (2f x 4) matrix, orthonormalized by its polar factor).
class Objective {
 public:
  Objective(const DenseState& s, int f) : f_(f) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(s.m);
    for (int k = 0; k < 4; ++k) {
      const double w = std::sqrt(std::max(es.eigenvalues()[k], 0.0));
      psi_.col(k) = w * es.eigenvectors().col(k);
    }
  }

  int parameters() const { return 16 * f_; }

  linalg::Matrix isometry(const std::vector<double>& p) const {
    const int rows = 2 * f_;
    linalg::Matrix x(rows, 4);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < 4; ++c) {
        const std::size_t k = static_cast<std::size_t>(r * 4 + c);
        x(r, c) = cplx(p[k], p[k + static_cast<std::size_t>(rows * 4)]);
      }
    Eigen::JacobiSVD<linalg::Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
  }

  double operator()(const std::vector<double>& p) const {
    const linalg::Matrix v = isometry(p);
    // Psi'(ab, j) = sum_k Psi(ab, k) V(j, k); j = e * f + r.
    const linalg::Matrix out = psi_ * v.transpose();
    linalg::Matrix m(8, f_);
    for (int ab = 0; ab < 4; ++ab)
      for (int e = 0; e < 2; ++e)
        for (int r = 0; r < f_; ++r) m(ab * 2 + e, r) = out(ab, e * f_ + r);
    const linalg::Matrix rho = m * m.adjoint();  // A B E~, index 4a + 2b + e
    Eigen::Matrix4cd ae = Eigen::Matrix4cd::Zero();
    Eigen::Matrix4cd be = Eigen::Matrix4cd::Zero();
    Eigen::Matrix2cd ee = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int e = 0; e < 2; ++e)
          for (int a2 = 0; a2 < 2; ++a2)
            for (int b2 = 0; b2 < 2; ++b2)
              for (int e2 = 0; e2 < 2; ++e2) {
                const cplx v = rho(4 * a + 2 * b + e, 4 * a2 + 2 * b2 + e2);
                if (b == b2) ae(2 * a + e, 2 * a2 + e2) += v;
                if (a == a2) be(2 * b + e, 2 * b2 + e2) += v;
                if (a == a2 && b == b2) ee(e, e2) += v;
              }
    const linalg::Matrix gram = m.adjoint() * m;  // same spectrum as rho
    const double habe = linalg::entropy_bits(linalg::hermitian_eigenvalues(gram));
    return 0.5 * (entropy_h(ae) + entropy_h(be) - habe - entropy2(ee));
  }

  /// Parameters of a register-f isometry embedded into register-g (g >= f).
  static std::vector<double> embed(const std::vector<double>& p, int f, int g) {
    std::vector<double> q(static_cast<std::size_t>(16 * g), 0.0);
    for (int part = 0; part < 2; ++part)
      for (int e = 0; e < 2; ++e)
        for (int r = 0; r < f; ++r)
          for (int c = 0; c < 4; ++c) {
            const std::size_t from = static_cast<std::size_t>(part * 8 * f + (e * f + r) * 4 + c);
            const std::size_t to = static_cast<std::size_t>(part * 8 * g + (e * g + r) * 4 + c);
            q[to] = p[from];
          }
    return q;
  }

 private:
  int f_;
  Eigen::Matrix4cd psi_;
};

}  // namespace squash_detail

/// Squashed-entanglement bound with a qubit squashing output: minimizes
/// half of I(A;B|E~) over Stinespring isometries of the purifying system.
/// The result never exceeds the identity squashing.
inline OptimizedValue squashed_optimized(const DenseState& s, const OptimizerControl& ctl = {}) {
  ctl.validate();
  const double id = squashed_identity(s);
  OptimizedValue out;
  auto body = [&](int, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    SimplexResult best;
    std::vector<double> x;
    int prev = 0;
    for (int f : squash_detail::stages) {
      const squash_detail::Objective obj(s, f);
      if (prev == 0) {
        x.resize(static_cast<std::size_t>(obj.parameters()));
        for (double& v : x) v = normal(rng);
      } else {
        x = squash_detail::Objective::embed(x, prev, f);
      }
      prev = f;
      const Objective fn = [&obj](const std::vector<double>& p) { return obj(p); };
      double step = ctl.initial_step;
      SimplexResult stage;
      for (int pass = 0; pass < 2; ++pass) {
        SimplexResult r = nelder_mead(fn, x, step, ctl.max_iters, ctl.x_tol, ctl.f_tol);
        stage.evaluations += r.evaluations;
        stage.iterations += r.iterations;
        stage.converged = r.converged;
        stage.f = r.f;
        x = r.x;
        step *= 0.25;
      }
      best.evaluations += stage.evaluations;
      best.iterations += stage.iterations;
      best.converged = stage.converged;
      best.f = stage.f;
      best.x = x;
    }
    return best;
  };
  SimplexResult best = best_of_restarts(body, ctl, out.diagnostics);
  out.value = std::clamp(best.f, 0.0, id);
  if (out.diagnostics.diverged) out.value = id;
  return out;
}

namespace bmax_detail {

inline constexpr double floor_mu = 1e-12;
inline constexpr int mixture_terms = 16;

/// log2 of the largest eigenvalue of xi^{-1/2} rho xi^{-1/2}, with xi floored
/// towards the maximally mixed state.
inline double objective(const Eigen::Matrix4cd& rho, const Eigen::Matrix4cd& xi) {
  const Eigen::Matrix4cd floored =
      (1.0 - floor_mu) * xi + (floor_mu / 4.0) * Eigen::Matrix4cd::Identity();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(floored);
  Eigen::Vector4d w = es.eigenvalues();
  if (w.minCoeff() <= 0.0) return std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) w[i] = 1.0 / std::sqrt(w[i]);
  const Eigen::Matrix4cd inv_root =
      es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  Eigen::Matrix4cd a = inv_root * rho * inv_root;
  a = 0.5 * (a + a.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> top(a, Eigen::EigenvaluesOnly);
  return std::log2(top.eigenvalues().maxCoeff());
}

/// Convex mixture of pure product states, separable by construction.
/// Per term: weight amplitude, then Bloch angles (theta, phi) for A and B.
inline Eigen::Matrix4cd mixture(const std::vector<double>& p) {
  Eigen::Matrix4cd xi = Eigen::Matrix4cd::Zero();
  double norm = 0.0;
  for (int k = 0; k < mixture_terms; ++k) norm += p[5 * k] * p[5 * k];
  if (!(norm > 0.0)) return xi;
  for (int k = 0; k < mixture_terms; ++k) {
    const double* q = &p[static_cast<std::size_t>(5 * k)];
    const double w = q[0] * q[0] / norm;
    const Eigen::Vector2cd u(std::cos(0.5 * q[1]), std::polar(std::sin(0.5 * q[1]), q[2]));
    const Eigen::Vector2cd v(std::cos(0.5 * q[3]), std::polar(std::sin(0.5 * q[3]), q[4]));
    Eigen::Vector4cd psi;
    psi << u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1];
    xi += w * psi * psi.adjoint();
  }
  return xi;
}

/// Separable X-shaped candidate: populations from squared amplitudes, each
/// coherence a fraction sin(t) of its separability bound with the phase of
/// the target's coherence.
inline Eigen::Matrix4cd x_family(const std::vector<double>& p, const Eigen::Matrix4cd& rho) {
  const double norm = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
  XState x;
  if (!(norm > 0.0)) return Eigen::Matrix4cd::Zero();
  x.a1 = p[0] * p[0] / norm;
  x.a2 = p[1] * p[1] / norm;
  x.b2 = p[2] * p[2] / norm;
  x.b1 = p[3] * p[3] / norm;
  const double ph1 = std::arg(rho(0, 3));
  const double ph2 = std::arg(rho(1, 2));
  x.c1 = std::polar(std::sin(p[4]) * std::sqrt(x.a2 * x.b2), ph1);
  x.c2 = std::polar(std::sin(p[5]) * std::sqrt(x.a1 * x.b1), ph2);
  return to_dense(x).m;
}

}  // namespace bmax_detail

/// Max-relative-entropy bound min over separable xi of
/// log2 lambda_max(xi^{-1/2} rho xi^{-1/2}). Each restart searches the
/// product-mixture family and the separable X-shaped family.
inline OptimizedValue bmax(const DenseState& s, const OptimizerControl& ctl = {}) {
  ctl.validate();
  OptimizedValue out;
  const Eigen::Matrix4cd rho = s.m;
  const bool separable = ppt_and_negativity(s).ppt;
  auto body = [&](int index, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    std::vector<double> xp(6);
    if (index == 0) {
      xp = {std::sqrt(std::max(rho(0, 0).real(), 1e-6)), std::sqrt(std::max(rho(1, 1).real(), 1e-6)),
            std::sqrt(std::max(rho(2, 2).real(), 1e-6)), std::sqrt(std::max(rho(3, 3).real(), 1e-6)),
            0.5 * std::numbers::pi, 0.5 * std::numbers::pi};
    } else {
      for (int k = 0; k < 4; ++k) xp[static_cast<std::size_t>(k)] = normal(rng);
      xp[4] = angle(rng);
      xp[5] = angle(rng);
    }
    const Objective fx = [&](const std::vector<double>& p) {
      return bmax_detail::objective(rho, bmax_detail::x_family(p, rho));
    };
    SimplexResult rx = nelder_mead(fx, xp, ctl.initial_step, ctl.max_iters, ctl.x_tol, ctl.f_tol);

    std::vector<double> mp(5 * bmax_detail::mixture_terms);
    for (int k = 0; k < bmax_detail::mixture_terms; ++k) {
      mp[static_cast<std::size_t>(5 * k)] = normal(rng);
      for (int j = 1; j < 5; ++j) mp[static_cast<std::size_t>(5 * k + j)] = angle(rng);
    }
    const Objective fm = [&](const std::vector<double>& p) {
      return bmax_detail::objective(rho, bmax_detail::mixture(p));
    };
    SimplexResult rm = nelder_mead(fm, mp, ctl.initial_step, ctl.max_iters, ctl.x_tol, ctl.f_tol);

    SimplexResult best = rx.f <= rm.f ? rx : rm;
    best.evaluations = rx.evaluations + rm.evaluations;
    best.converged = rx.converged || rm.converged;
    return best;
  };
  SimplexResult best = best_of_restarts(body, ctl, out.diagnostics);
  double value = best.f;
  if (separable) value = std::min(value, bmax_detail::objective(rho, rho));
  if (!std::isfinite(value))
    throw OptimizerDiverged("max-relative-entropy search found no finite value");
  out.value = std::max(0.0, value);
  return out;
}

/// Which optional measures a report should contain.
struct MeasureSelection {
  bool eof = true;
  bool coh_info = true;
  bool esq_id = true;
  bool esq_opt = false;
  bool bmax = false;
  bool negativity = true;
};

struct BoundsReport {
  bool ppt = true;
  double negativity = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
  double coherent_info = 0.0;
  double esq_id = 0.0;
  double esq_opt = 0.0;
  double bmax = 0.0;
  double min_eigenvalue = 0.0;
  OptimizerDiagnostics esq_diagnostics;
  OptimizerDiagnostics bmax_diagnostics;
};

inline BoundsReport evaluate_bounds(const XState& x, const MeasureSelection& sel = {},
                                    const OptimizerControl& ctl = {}) {
  BoundsReport r;
  const auto ev = eigenvalues_xstate(x);
  r.min_eigenvalue = *std::min_element(ev.begin(), ev.end());
  if (r.min_eigenvalue < -negative_eigenvalue_slack)
    throw PerturbationBreakdown("state eigenvalue " + std::to_string(r.min_eigenvalue) +
                                " below tolerance");
  const PptResult ppt = ppt_and_negativity(x);
  r.ppt = ppt.ppt;
  r.negativity = ppt.negativity;
  r.concurrence = concurrence_xstate(x);
  // Two-qubit PPT is equivalent to zero concurrence; keep the flags consistent
  // at the rounding level.
  if (r.ppt) r.concurrence = 0.0;
  if (r.concurrence == 0.0) {
    r.ppt = true;
    r.negativity = std::min(r.negativity, ppt_threshold * 0.5);
  }
  r.eof = eof_from_concurrence(r.concurrence);
  if (sel.coh_info) r.coherent_info = coherent_information(x);
  const DenseState d = to_dense(x);
  if (sel.esq_id || sel.esq_opt) r.esq_id = squashed_identity(d);
  if (sel.esq_opt) {
    const OptimizedValue v = squashed_optimized(d, ctl);
    r.esq_opt = std::min(v.value, r.esq_id);
    r.esq_diagnostics = v.diagnostics;
  }
  if (sel.bmax) {
    const OptimizedValue v = bmax(d, ctl);
    r.bmax = v.value;
    r.bmax_diagnostics = v.diagnostics;
  }
  return r;
}

}  // namespace udw
