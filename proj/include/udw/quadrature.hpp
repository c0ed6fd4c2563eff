#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "udw/errors.hpp"
#include "udw/gauss_kronrod.hpp"
#include "udw/params.hpp"
#include "udw/series.hpp"
#include "udw/special.hpp"

namespace udw {

struct QuadratureControl {
  double abs_tol = 1e-250;
  double rel_tol = 1e-9;
  double domain_halfwidth = 8.0;  ///< in units of a*sigma
  std::size_t max_subdivisions = 4000;

  void validate() const {
    if (!(abs_tol > 0.0)) throw ValidationError("abs_tol", "must be > 0");
    if (!(rel_tol > 0.0)) throw ValidationError("rel_tol", "must be > 0");
    if (!(domain_halfwidth >= 6.0))
      throw ValidationError("domain_halfwidth", "must be >= 6");
    if (max_subdivisions < 1)
      throw ValidationError("max_subdivisions", "must be >= 1");
  }
};

struct QuadratureResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  std::size_t evaluations = 0;
};

/// Which phase of the nonzero-separation double integral: e^{+i...} on the
/// tau_plus axis or e^{-i...} on the tau_minus axis.
enum class PhaseSign { plus, minus };

/// The plus phase reproduces I3 and the minus phase I2 at aL = 0.
inline constexpr PhaseSign i3_phase = PhaseSign::plus;
inline constexpr PhaseSign i2_phase = PhaseSign::minus;

namespace quad_detail {

/// log(cosh(v)) without overflow.
inline double log_cosh(double v) {
  const double av = std::abs(v);
  return av + std::log1p(std::exp(-2.0 * av)) - std::numbers::ln2;
}

inline double sqrt_2pi() { return std::sqrt(2.0 * std::numbers::pi); }

inline std::vector<double> uniform_cuts(double a, double b, int n) {
  std::vector<double> cuts;
  for (int i = 1; i < n; ++i) cuts.push_back(a + (b - a) * i / n);
  return cuts;
}

}  // namespace quad_detail

/// cosh^2((tau - eta)/2) - (aL)^2/4 exp(-(tau + eta)), in rescaled times.
inline double fp_denominator(double tau, double eta, const DimensionlessParams& d) {
  const double c = std::cosh(0.5 * (tau - eta));
  return c * c - 0.25 * d.aL * d.aL * std::exp(-(tau + eta));
}

/// FP propagator between Alice at tau and Bob at eta separated by L, in units
/// where a = 1.
inline double propagator_FP_distance(double tau, double eta,
                                     const DimensionlessParams& d) {
  const double log_c = 2.0 * quad_detail::log_cosh(0.5 * (tau - eta));
  const double x = tau + eta + log_c;  // log of e^{tau+eta} cosh^2
  double factor = 1.0;                 // 1 - (aL)^2/4 e^{-x}
  if (d.aL > 0.0) {
    const double lg = 2.0 * std::log(0.5 * d.aL);
    factor = -std::expm1(lg - x);
  }
  const double denominator = std::exp(log_c) * factor;
  if (std::abs(denominator) < 1e-300 || factor == 0.0)
    throw SingularDenominator("FP propagator denominator vanishes at tau=" +
                              std::to_string(tau) + ", eta=" + std::to_string(eta));
  return -std::exp(-x) / (16.0 * std::numbers::pi * std::numbers::pi * factor);
}

/// Double integral for the detector-pair elements at separation aL.
///
/// The denominator changes sign along the light cone of the two windows once
/// aL > 0. The causal -i0 prescription of the Feynman propagator is kept:
/// for fixed tau_minus the tau_plus integral is a principal value plus i pi
/// times the residue at the zero.
inline QuadratureResult integral_I23_L(const DimensionlessParams& d, PhaseSign sign,
                                       const QuadratureControl& ctl = {}) {
  ctl.validate();
  QuadratureResult out;
  if (d.lambda == 0.0) return out;

  using cplx = std::complex<double>;
  const double s = d.a_sigma;
  const double kappa = d.delta_over_a;
  const double t0 = d.a_tau0;
  const double half = ctl.domain_halfwidth * s;
  const double inv_2s2 = 0.5 / (s * s);
  const bool plus = sign == PhaseSign::plus;
  const double root = quad_detail::sqrt_2pi();

  // Inner weight G(t) = exp(-t^2/2s^2) [e^{i kappa t} for the plus phase].
  auto weight = [&](double t) -> cplx {
    const double g = std::exp(-t * t * inv_2s2);
    if (!plus) return {g, 0.0};
    return g * cplx(std::cos(kappa * t), std::sin(kappa * t));
  };
  const cplx full_line = plus ? cplx(root * s * std::exp(-0.5 * kappa * kappa * s * s), 0.0)
                              : cplx(root * s, 0.0);
  // Integral of G over [p, inf).
  auto upper_tail = [&](double p, double& err) -> cplx {
    if (!plus) {
      return {std::sqrt(0.5 * std::numbers::pi) * s *
                  std::erfc(p / (std::numbers::sqrt2 * s)),
              0.0};
    }
    if (p >= half) return {0.0, 0.0};
    if (p <= -half) return full_line;
    if (p >= 0.0) {
      auto r = gk::integrate<cplx>(weight, p, half, ctl.abs_tol, ctl.rel_tol,
                                   ctl.max_subdivisions,
                                   quad_detail::uniform_cuts(p, half, 8));
      err += r.error;
      out.evaluations += r.evaluations;
      return r.value;
    }
    auto r = gk::integrate<cplx>(weight, -half, p, ctl.abs_tol, ctl.rel_tol,
                                 ctl.max_subdivisions,
                                 quad_detail::uniform_cuts(-half, p, 8));
    err += r.error;
    out.evaluations += r.evaluations;
    return full_line - r.value;
  };

  const bool separated = d.aL > 0.0;
  const double lg = separated ? 2.0 * std::log(0.5 * d.aL) : 0.0;
  constexpr double window = 40.0;  // 1/(e^x - 1) < 5e-18 beyond
  // The folded integral cancels to nothing when the zero sits on the
  // Gaussian peak, so its absolute floor is tied to the O(s) inner scale.
  const double inner_abs = std::max(ctl.abs_tol * 1e-3, ctl.rel_tol * 1e-2 * s);
  double worst_inner = 0.0;
  bool inner_ok = true;

  // Outer integrand over tau_minus.
  auto outer = [&](double tm) -> cplx {
    const double log_c = 2.0 * quad_detail::log_cosh(0.5 * (tm + t0));
    const double gm_log = -tm * tm * inv_2s2 - log_c;
    if (gm_log < -745.0) return {0.0, 0.0};
    cplx phase_m{1.0, 0.0};
    if (!plus) phase_m = cplx(std::cos(kappa * tm), -std::sin(kappa * tm));
    const double scale = std::exp(gm_log);

    if (!separated) return scale * phase_m * full_line;

    // Zero of the denominator in tau_plus: D = C (1 - e^{-(t - p)}).
    const double p = lg - t0 - log_c;
    double err = 0.0;
    cplx inner = upper_tail(p, err);
    if (p > -half - window && p < half + window) {
      // Antisymmetric remainder sgn(x)/(e^{|x|} - 1), folded about the zero.
      auto folded = [&](double x) -> cplx {
        if (x == 0.0) return {0.0, 0.0};
        return (weight(p + x) - weight(p - x)) / std::expm1(x);
      };
      auto r = gk::integrate<cplx>(folded, 0.0, window, inner_abs,
                                   ctl.rel_tol * 1e-2, ctl.max_subdivisions,
                                   {1.0, 4.0, 10.0, 20.0});
      out.evaluations += r.evaluations;
      if (!r.converged) inner_ok = false;
      err += r.error;
      inner += r.value;
      inner += cplx(0.0, std::numbers::pi) * weight(p);
    }
    worst_inner = std::max(worst_inner, scale * err);
    return scale * phase_m * inner;
  };

  std::vector<double> cuts = quad_detail::uniform_cuts(-half, half, 32);
  if (-t0 > -half && -t0 < half) cuts.push_back(-t0);
  std::sort(cuts.begin(), cuts.end());
  auto r = gk::integrate<cplx>(outer, -half, half, ctl.abs_tol, ctl.rel_tol,
                               ctl.max_subdivisions, cuts);
  out.evaluations += r.evaluations;

  const double pre = d.lambda * d.lambda / (32.0 * std::numbers::pi * std::numbers::pi);
  const double ph = (plus ? 1.0 : -1.0) * kappa * t0;
  const cplx factor = -pre * cplx(std::cos(ph), std::sin(ph));
  out.value = factor * r.value;
  out.error = std::abs(factor) * (r.error + 2.0 * half * worst_inner);
  if (!r.converged || !inner_ok) {
    throw ToleranceNotMet("separated-detector quadrature did not reach tolerance",
                          out.value.real(), out.value.imag(), out.error);
  }
  return out;
}

enum class Element { I1, I2, I3, I4 };

inline const char* to_string(Element e) {
  switch (e) {
    case Element::I1: return "I1";
    case Element::I2: return "I2";
    case Element::I3: return "I3";
    case Element::I4: return "I4";
  }
  return "?";
}

struct OracleOptions {
  /// Add the exact remainder of the pole tower beyond |n| = n_cut through
  /// the trigamma function. Without it the truncation error is O(1/n_cut).
  bool tower_tail = true;
  /// Sign of the detuning phase on the difference variable for I1. The
  /// default +1 is the one consistent with the series; -1 reproduces the
  /// literal phase e^{i delta (tau' - tau)} of the defining integral.
  int i1_phase = +1;
};

namespace quad_detail {

/// sum_{|n| <= N} 1/(z + 2 pi i n)^2, plus the tail when requested.
inline std::complex<double> tower_ff(std::complex<double> z, int n_cut, bool tail) {
  using cplx = std::complex<double>;
  const cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
  cplx acc = 1.0 / (z * z);
  for (int n = 1; n <= n_cut; ++n) {
    const cplx a = z + two_pi_i * static_cast<double>(n);
    const cplx b = z - two_pi_i * static_cast<double>(n);
    acc += 1.0 / (a * a) + 1.0 / (b * b);
  }
  if (tail) {
    const cplx w = z / two_pi_i;
    const double nn = static_cast<double>(n_cut) + 1.0;
    acc -= (special::trigamma(nn + w) + special::trigamma(nn - w)) /
           (4.0 * std::numbers::pi * std::numbers::pi);
  }
  return acc;
}

/// sum_{n = -N-1}^{N} 1/(z + i pi (2n + 1))^2, plus the tail when requested.
inline std::complex<double> tower_fp(std::complex<double> z, int n_cut, bool tail) {
  using cplx = std::complex<double>;
  const cplx i_pi(0.0, std::numbers::pi);
  cplx acc{0.0, 0.0};
  for (int n = 0; n <= n_cut; ++n) {
    const cplx a = z + i_pi * (2.0 * n + 1.0);
    const cplx b = z - i_pi * (2.0 * n + 1.0);
    acc += 1.0 / (a * a) + 1.0 / (b * b);
  }
  if (tail) {
    const cplx w = z / cplx(0.0, 2.0 * std::numbers::pi);
    const double nn = static_cast<double>(n_cut);
    acc -= (special::trigamma(nn + 1.5 + w) + special::trigamma(nn + 1.5 - w)) /
           (4.0 * std::numbers::pi * std::numbers::pi);
  }
  return acc;
}

}  // namespace quad_detail

/// Brute-force evaluation of the coincident-detector double integrals in the
/// rotated variables y = tau + tau', x = tau - tau'. The pole tower is summed
/// explicitly up to |n| <= n_cut. The FF contour in x is moved to Im x = -pi,
/// below the regulated pole at x = 2 i eps and above the next one; the y
/// contour of the phase-carrying Gaussian is moved to Im y = kappa s^2 where
/// the integrand is no longer oscillatory.
inline QuadratureResult oracle_I_L0(const DimensionlessParams& d, Element which,
                                    int n_cut, const QuadratureControl& ctl = {},
                                    const OracleOptions& opt = {}) {
  ctl.validate();
  if (d.aL != 0.0) throw DomainError("oracle integrals are defined at aL = 0");
  if (n_cut < 1) throw ValidationError("n_cut", "must be >= 1");
  QuadratureResult out;
  if (d.lambda == 0.0) return out;

  using cplx = std::complex<double>;
  const double s = d.a_sigma;
  const double kappa = d.delta_over_a;
  const double half = ctl.domain_halfwidth * s;
  const double inv_2s2 = 0.5 / (s * s);

  const bool phase_on_y = which == Element::I3 || which == Element::I4;
  auto y_integrand = [&](double y) -> cplx {
    if (!phase_on_y) return {std::exp(-y * y * inv_2s2), 0.0};
    const cplx yy(y, kappa * s * s);
    return std::exp(-yy * yy * inv_2s2 + cplx(0.0, kappa) * yy);
  };
  auto ry = gk::integrate<cplx>(y_integrand, -half, half, ctl.abs_tol,
                                ctl.rel_tol * 1e-2, ctl.max_subdivisions,
                                quad_detail::uniform_cuts(-half, half, 16));

  const bool ff = which == Element::I1 || which == Element::I4;
  const double shift = ff ? -std::numbers::pi : 0.0;
  double x_phase = 0.0;
  if (which == Element::I1) x_phase = opt.i1_phase * kappa;
  if (which == Element::I2) x_phase = -kappa;
  auto x_integrand = [&](double t) -> cplx {
    const cplx z(t, shift);
    const cplx gauss = std::exp(-z * z * inv_2s2 + cplx(0.0, x_phase) * z);
    const cplx tower = ff ? quad_detail::tower_ff(z, n_cut, opt.tower_tail)
                          : quad_detail::tower_fp(z, n_cut, opt.tower_tail);
    return gauss * tower;
  };
  std::vector<double> cuts = quad_detail::uniform_cuts(-half, half, 32);
  for (double c : {-20.0, -5.0, -1.0, 1.0, 5.0, 20.0}) cuts.push_back(c);
  cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  auto rx = gk::integrate<cplx>(x_integrand, -half, half, ctl.abs_tol,
                                ctl.rel_tol * 1e-2, ctl.max_subdivisions, cuts);

  const double pre = d.lambda * d.lambda / (8.0 * std::numbers::pi * std::numbers::pi);
  const double sign = ff ? -1.0 : 1.0;
  out.value = sign * pre * ry.value * rx.value;
  out.error = pre * (std::abs(ry.value) * rx.error + std::abs(rx.value) * ry.error);
  out.evaluations = ry.evaluations + rx.evaluations;
  if (!ry.converged || !rx.converged) {
    throw ToleranceNotMet("oracle quadrature did not reach tolerance",
                          out.value.real(), out.value.imag(), out.error);
  }
  return out;
}

/// All four elements: series at aL = 0; at aL > 0 the single-detector I1, I4
/// keep their series values and I2, I3 come from the double integral.
inline MatrixElements matrix_elements(const DimensionlessParams& d,
                                      const SeriesControl& sctl = {},
                                      const QuadratureControl& qctl = {}) {
  if (d.aL == 0.0) return series_elements(d, sctl);
  const DimensionlessParams coincident = params_from_dimensionless(
      d.a_sigma, d.sigma_delta, 0.0, d.lambda);
  MatrixElements m;
  m.I1 = series_I1(coincident, sctl);
  m.I4 = series_I4(coincident, sctl);
  const QuadratureResult r2 = integral_I23_L(d, i2_phase, qctl);
  const QuadratureResult r3 = integral_I23_L(d, i3_phase, qctl);
  m.I2 = r2.value;
  m.I3 = r3.value;
  m.I2_error = r2.error;
  m.I3_error = r3.error;
  m.provenance = Provenance::quadrature;
  return m;
}

}  // namespace udw
