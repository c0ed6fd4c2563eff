#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>

#include "udw/errors.hpp"
#include "udw/params.hpp"
#include "udw/special.hpp"

namespace udw {

/// Truncation policy for the pole-tower sums.
struct SeriesControl {
  std::int64_t max_terms = 1'000'000;
  double tail_tol = 1e-14;

  void validate() const {
    if (max_terms < 1) throw ValidationError("max_terms", "must be >= 1");
    if (!(tail_tol > 0.0 && tail_tol < 1.0))
      throw ValidationError("tail_tol", "must lie in (0, 1)");
  }
};

enum class Provenance { series, quadrature };

inline const char* to_string(Provenance p) {
  return p == Provenance::series ? "series" : "quadrature";
}

/// The four vacuum correlator integrals. I2 and I3 carry the error
/// estimate of whichever route produced them (zero for the series).
struct MatrixElements {
  std::complex<double> I1{0.0, 0.0};
  std::complex<double> I2{0.0, 0.0};
  std::complex<double> I3{0.0, 0.0};
  std::complex<double> I4{0.0, 0.0};
  Provenance provenance = Provenance::series;
  double I2_error = 0.0;
  double I3_error = 0.0;
};

namespace series_detail {

/// Compensated (Neumaier) accumulator.
class Accumulator {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline constexpr double tail_switch = 40.0;

/// Sum over n >= n_start of g(alpha (n + beta)), g = erfcx_deficit, with
/// alpha (n_start + beta) >= 0. Terms are added explicitly until the
/// argument reaches the asymptotic regime, where the remainder is summed
/// in closed form through Hurwitz zeta values.
inline double lattice_deficit_sum(double alpha, double beta,
                                  std::int64_t n_start,
                                  const SeriesControl& ctl) {
  Accumulator acc;
  std::int64_t n = n_start;
  const auto& c = special::deficit_asymptotic_coefficients;
  for (std::int64_t count = 0;; ++count, ++n) {
    const double z = alpha * (static_cast<double>(n) + beta);
    if (z >= tail_switch) {
      const double q = static_cast<double>(n) + beta;
      const double inv_a2 = 1.0 / (alpha * alpha);
      double tail = 0.0;
      double scale = inv_a2;
      for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        tail += c[k] * scale * special::hurwitz_zeta(2 * static_cast<int>(k + 1), q);
        scale *= inv_a2;
      }
      // Truncation estimate: first omitted asymptotic term.
      const double omitted =
          std::abs(c.back() * scale * special::hurwitz_zeta(2 * static_cast<int>(c.size()), q));
      const double total = acc.value() + tail;
      if (omitted <= ctl.tail_tol * std::abs(total)) return total;
      // The explicit region is extended when the estimate is still too big.
      acc.add(special::erfcx_deficit(z));
      if (count >= ctl.max_terms)
        throw NonConvergence("series tail did not reach tail_tol within max_terms");
      continue;
    }
    if (count >= ctl.max_terms)
      throw NonConvergence("series did not reach its asymptotic tail within max_terms");
    acc.add(special::erfcx_deficit(z));
  }
}

/// Number of lattice points u_m = x - spacing*(m + offset) (m >= 0) with u_m >= 0.
inline std::int64_t count_nonnegative(double x, double spacing, double offset) {
  const double m_max = x / spacing - offset;
  if (m_max < 0.0) return 0;
  return static_cast<std::int64_t>(std::floor(m_max)) + 1;
}

/// exp(-x^2/2) [2 + sqrt(2 pi) exp(u^2/2) u (1 + erf(u/sqrt 2))] for u >= 0,
/// with the two Gaussians combined before exponentiation.
inline double plus_bracket_nonnegative(double u, double x) {
  const double ex = std::exp(-0.5 * x * x);
  const double combined = std::exp(-0.5 * (x - u) * (x + u));
  return 2.0 * ex + std::sqrt(2.0 * std::numbers::pi) * u * combined *
                        (2.0 - std::erfc(u / std::numbers::sqrt2));
}

/// Sum over m >= 0 of the plus bracket at u_m = x - spacing (m + offset).
/// Entries with u >= 0 are summed directly; the u < 0 remainder equals
/// 2 exp(-x^2/2) g(|u|/sqrt 2) and goes through the lattice engine.
inline double plus_bracket_sum(double x, double spacing,
                               double offset, const SeriesControl& ctl) {
  const std::int64_t n_pos = count_nonnegative(x, spacing, offset);
  if (n_pos > ctl.max_terms)
    throw NonConvergence("too many near-peak terms for max_terms");
  Accumulator acc;
  for (std::int64_t m = 0; m < n_pos; ++m) {
    const double u = x - spacing * (static_cast<double>(m) + offset);
    acc.add(plus_bracket_nonnegative(u, x));
  }
  const double ex = std::exp(-0.5 * x * x);
  if (ex > 0.0) {
    // |u_m| / sqrt 2 = alpha (m + offset - x / spacing), alpha = spacing / sqrt 2
    const double alpha = spacing / std::numbers::sqrt2;
    const double beta = offset - x / spacing;
    acc.add(2.0 * ex * lattice_deficit_sum(alpha, beta, n_pos, ctl));
  }
  return acc.value();
}

inline double prefactor(const DimensionlessParams& d) {
  return d.lambda * d.lambda / (8.0 * std::numbers::pi);
}

inline void require_coincident(const DimensionlessParams& d) {
  if (d.aL != 0.0)
    throw DomainError("closed-form series hold only at aL = 0");
}

}  // namespace series_detail

/// Plus part of I1: poles with n <= 0, momenta below the gap.
inline double series_I1_plus(const DimensionlessParams& d,
                             const SeriesControl& ctl = {}) {
  ctl.validate();
  const double two_pi_over_s = 2.0 * std::numbers::pi / d.a_sigma;
  return series_detail::prefactor(d) *
         series_detail::plus_bracket_sum(d.sigma_delta, two_pi_over_s, 0.0, ctl);
}

/// Minus part of I1: poles with n >= 1.
inline double series_I1_minus(const DimensionlessParams& d,
                              const SeriesControl& ctl = {}) {
  ctl.validate();
  const double x = d.sigma_delta;
  const double ex = std::exp(-0.5 * x * x);
  if (ex == 0.0 || d.lambda == 0.0) return 0.0;
  const double alpha = std::numbers::sqrt2 * std::numbers::pi / d.a_sigma;
  const double beta = x * d.a_sigma / (2.0 * std::numbers::pi);
  return 2.0 * series_detail::prefactor(d) * ex *
         series_detail::lattice_deficit_sum(alpha, beta, 1, ctl);
}

inline double series_I1(const DimensionlessParams& d,
                        const SeriesControl& ctl = {}) {
  series_detail::require_coincident(d);
  return series_I1_plus(d, ctl) + series_I1_minus(d, ctl);
}

inline double series_I2_plus(const DimensionlessParams& d,
                             const SeriesControl& ctl = {}) {
  ctl.validate();
  // n <= -1: u = x - (2m - 1) pi / s for m = -n >= 1, i.e. offset 1/2
  // on a lattice of spacing 2 pi / s.
  const double spacing = 2.0 * std::numbers::pi / d.a_sigma;
  return -series_detail::prefactor(d) *
         series_detail::plus_bracket_sum(d.sigma_delta, spacing, 0.5, ctl);
}

inline double series_I2_minus(const DimensionlessParams& d,
                              const SeriesControl& ctl = {}) {
  ctl.validate();
  const double x = d.sigma_delta;
  const double ex = std::exp(-0.5 * x * x);
  if (ex == 0.0 || d.lambda == 0.0) return 0.0;
  const double alpha = std::numbers::sqrt2 * std::numbers::pi / d.a_sigma;
  const double beta = x * d.a_sigma / (2.0 * std::numbers::pi) + 0.5;
  return -2.0 * series_detail::prefactor(d) * ex *
         series_detail::lattice_deficit_sum(alpha, beta, 0, ctl);
}

inline double series_I2(const DimensionlessParams& d,
                        const SeriesControl& ctl = {}) {
  series_detail::require_coincident(d);
  return series_I2_plus(d, ctl) + series_I2_minus(d, ctl);
}

/// n >= 0 half of I3, written with (1 - erf).
inline double series_I3_plus(const DimensionlessParams& d,
                             const SeriesControl& ctl = {}) {
  ctl.validate();
  const double ex = std::exp(-0.5 * d.sigma_delta * d.sigma_delta);
  if (ex == 0.0 || d.lambda == 0.0) return 0.0;
  const double alpha = std::numbers::sqrt2 * std::numbers::pi / d.a_sigma;
  return -2.0 * series_detail::prefactor(d) * ex *
         series_detail::lattice_deficit_sum(alpha, 0.5, 0, ctl);
}

/// n <= -1 half of I3, written with (1 + erf) and a negative pole index.
/// Evaluated from its own summand; analytically equal to series_I3_plus.
inline double series_I3_minus(const DimensionlessParams& d,
                              const SeriesControl& ctl = {}) {
  ctl.validate();
  const double ex = std::exp(-0.5 * d.sigma_delta * d.sigma_delta);
  if (ex == 0.0 || d.lambda == 0.0) return 0.0;
  const double s = d.a_sigma;
  const double root_2pi = std::sqrt(2.0 * std::numbers::pi);
  series_detail::Accumulator acc;
  std::int64_t n = -1;
  for (std::int64_t count = 0;; ++count, --n) {
    const double w = (2.0 * static_cast<double>(n) + 1.0) * std::numbers::pi / s;
    const double z = -w / std::numbers::sqrt2;
    if (z >= series_detail::tail_switch) {
      // Remaining n <= current index: the summand is -2 g(z) on the lattice
      // z = alpha (m + 1/2), m = -n - 1.
      const double alpha = std::numbers::sqrt2 * std::numbers::pi / s;
      acc.add(-2.0 * series_detail::lattice_deficit_sum(
                         alpha, 0.5, -n - 1, ctl));
      break;
    }
    if (count >= ctl.max_terms)
      throw NonConvergence("I3 minus series exceeded max_terms");
    // exp(w^2/2) (1 + erf(w/sqrt 2)) = erfcx(-w/sqrt 2)
    acc.add(-2.0 - w * root_2pi * special::erfcx(-w / std::numbers::sqrt2));
  }
  return series_detail::prefactor(d) * ex * acc.value();
}

inline double series_I3(const DimensionlessParams& d,
                        const SeriesControl& ctl = {}) {
  series_detail::require_coincident(d);
  return 2.0 * series_I3_plus(d, ctl);
}

inline double series_I4_plus(const DimensionlessParams& d,
                             const SeriesControl& ctl = {}) {
  ctl.validate();
  const double ex = std::exp(-0.5 * d.sigma_delta * d.sigma_delta);
  if (ex == 0.0 || d.lambda == 0.0) return 0.0;
  const double alpha = std::numbers::sqrt2 * std::numbers::pi / d.a_sigma;
  return 2.0 * series_detail::prefactor(d) * ex *
         series_detail::lattice_deficit_sum(alpha, 0.0, 0, ctl);
}

/// n <= -1 half of I4 from its own summand (no n = 0 term).
inline double series_I4_minus(const DimensionlessParams& d,
                              const SeriesControl& ctl = {}) {
  ctl.validate();
  const double ex = std::exp(-0.5 * d.sigma_delta * d.sigma_delta);
  if (ex == 0.0 || d.lambda == 0.0) return 0.0;
  const double s = d.a_sigma;
  const double root_2pi = std::sqrt(2.0 * std::numbers::pi);
  series_detail::Accumulator acc;
  std::int64_t n = -1;
  for (std::int64_t count = 0;; ++count, --n) {
    const double nd = static_cast<double>(n);
    const double z = -nd * std::numbers::pi * std::numbers::sqrt2 / s;
    if (z >= series_detail::tail_switch) {
      const double alpha = std::numbers::sqrt2 * std::numbers::pi / s;
      acc.add(-2.0 * series_detail::lattice_deficit_sum(alpha, 0.0, -n, ctl));
      break;
    }
    if (count >= ctl.max_terms)
      throw NonConvergence("I4 minus series exceeded max_terms");
    // exp(2 n^2 pi^2 / s^2) (1 + erf(n pi sqrt 2 / s)) = erfcx(-n pi sqrt 2 / s)
    acc.add(-2.0 - 2.0 * nd * std::numbers::pi * root_2pi / s * special::erfcx(z));
  }
  return -series_detail::prefactor(d) * ex * acc.value();
}

inline double series_I4(const DimensionlessParams& d,
                        const SeriesControl& ctl = {}) {
  series_detail::require_coincident(d);
  return series_I4_plus(d, ctl) + series_I4_minus(d, ctl);
}

/// All four elements at coincident positions.
inline MatrixElements series_elements(const DimensionlessParams& d,
                                      const SeriesControl& ctl = {}) {
  MatrixElements m;
  m.I1 = series_I1(d, ctl);
  m.I2 = series_I2(d, ctl);
  m.I3 = series_I3(d, ctl);
  m.I4 = series_I4(d, ctl);
  m.provenance = Provenance::series;
  return m;
}

/// Ratio I3/I2 of the pole-tower sums of the 1-D moment integrals
/// int_0^inf z exp(-z^2/2 - k z) dz = g(k / sqrt 2). Equals 1 when the
/// gap is a multiple of 2 pi / (a sigma) and dips below 1 in between.
inline double ratio_I3_over_I2(const DimensionlessParams& d,
                               const SeriesControl& ctl = {}) {
  ctl.validate();
  if (!(d.a_sigma > 0.0)) throw ValidationError("a_sigma", "must be > 0");
  if (d.sigma_delta < 0.0) throw ValidationError("sigma_delta", "must be >= 0");
  const double s = d.a_sigma;
  const double x = d.sigma_delta;
  const double alpha = std::numbers::sqrt2 * std::numbers::pi / s;
  // Numerator: all n, |2n+1| pi / s. Both halves coincide.
  const double num = 2.0 * series_detail::lattice_deficit_sum(alpha, 0.5, 0, ctl);
  // Denominator: |x - (2n+1) pi / s|; split at the first pole above x.
  const double h = x * s / (2.0 * std::numbers::pi);  // x in units of 2 pi / s
  const auto n0 = static_cast<std::int64_t>(std::ceil(h - 0.5));
  const double above = series_detail::lattice_deficit_sum(alpha, 0.5 - h, n0, ctl);
  // n < n0 mirrored to m = n0 - 1 - n >= 0.
  const double below = series_detail::lattice_deficit_sum(
      alpha, h - static_cast<double>(n0) + 0.5, 0, ctl);
  return num / (above + below);
}

}  // namespace udw
