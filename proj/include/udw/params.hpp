#pragma once

#include <cmath>
#include <string>

#include "udw/errors.hpp"

namespace udw {

inline constexpr double speed_of_light = 299792458.0;  // m/s

/// Physical detector inputs. Both detectors share a, sigma, delta, lambda.
struct DetectorParams {
  double a = 1.0;       ///< acceleration scale [Hz]
  double sigma = 1.0;   ///< Gaussian window width [s]
  double delta = 0.0;   ///< energy gap [Hz]
  double lambda = 0.0;  ///< coupling strength, in [0, 1]
  double L = 0.0;       ///< spatial separation [m]
};

/// The dimensionless groups every downstream formula is written in.
struct DimensionlessParams {
  double a_sigma = 1.0;       ///< a * sigma
  double sigma_delta = 0.0;   ///< sigma * delta
  double aL = 0.0;            ///< a * L / c
  double delta_over_a = 0.0;  ///< delta / a
  double lambda = 0.0;
  double a_tau0 = 0.0;        ///< ln(aL + 1), Bob's conformal offset

  DimensionlessParams with_lambda(double lam) const {
    DimensionlessParams d = *this;
    d.lambda = lam;
    return d;
  }
};

namespace detail {

inline void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
}

inline void require_nonnegative(double v, const char* field) {
  require_finite(v, field);
  if (v < 0.0) throw ValidationError(field, "must be >= 0");
}

inline void require_positive(double v, const char* field) {
  require_finite(v, field);
  if (!(v > 0.0)) throw ValidationError(field, "must be > 0");
}

inline void require_coupling(double v) {
  require_finite(v, "lambda");
  if (v < 0.0 || v > 1.0) throw ValidationError("lambda", "must lie in [0, 1]");
}

}  // namespace detail

/// Conformal-time offset a*tau0 = ln(aL + 1); log1p keeps tiny aL exact.
inline double conformal_offset(double aL) { return std::log1p(aL); }

inline DimensionlessParams derive_dimensionless(const DetectorParams& p) {
  detail::require_positive(p.a, "a");
  detail::require_positive(p.sigma, "sigma");
  detail::require_nonnegative(p.delta, "delta");
  detail::require_coupling(p.lambda);
  detail::require_nonnegative(p.L, "L");

  DimensionlessParams d;
  d.a_sigma = p.a * p.sigma;
  d.sigma_delta = p.sigma * p.delta;
  d.aL = p.a * p.L / speed_of_light;
  d.delta_over_a = p.delta / p.a;
  d.lambda = p.lambda;
  d.a_tau0 = conformal_offset(d.aL);
  detail::require_positive(d.a_sigma, "a_sigma");
  detail::require_nonnegative(d.sigma_delta, "sigma_delta");
  detail::require_nonnegative(d.aL, "aL");
  detail::require_nonnegative(d.delta_over_a, "delta_over_a");
  return d;
}

inline DimensionlessParams params_from_dimensionless(double a_sigma,
                                                     double sigma_delta,
                                                     double aL, double lambda) {
  detail::require_positive(a_sigma, "a_sigma");
  detail::require_nonnegative(sigma_delta, "sigma_delta");
  detail::require_nonnegative(aL, "aL");
  detail::require_coupling(lambda);

  DimensionlessParams d;
  d.a_sigma = a_sigma;
  d.sigma_delta = sigma_delta;
  d.aL = aL;
  d.delta_over_a = sigma_delta / a_sigma;
  d.lambda = lambda;
  d.a_tau0 = conformal_offset(aL);
  return d;
}

/// Separation in meters that corresponds to a given aL at acceleration a.
inline double meters_from_aL(double aL, double a) {
  return aL * speed_of_light / a;
}

}  // namespace udw
