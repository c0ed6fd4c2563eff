#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace udw::special {

namespace detail {

/// exp(y*y) with the rounding error of y*y folded back in.
inline double exp_square(double y) {
  const double hi = y * y;
  const double lo = std::fma(y, y, -hi);
  return std::exp(hi) * (1.0 + lo);
}

/// Tail K(z) of the continued fraction erfcx(z) = 1 / (sqrt(pi) (z + K(z))),
/// K(z) = (1/2) / (z + 1 / (z + (3/2) / (z + ...))). Modified Lentz.
inline double erfc_cf_tail(double z) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  // G = z + 1 / (z + (3/2) / (z + ...)) so that K = (1/2) / G.
  double f = z;
  double c = f;
  double d = 0.0;
  for (int k = 2; k < 5000; ++k) {
    const double ak = 0.5 * k;
    d = z + ak * d;
    if (std::abs(d) < tiny) d = tiny;
    c = z + ak / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return 0.5 / f;
}

inline constexpr double cf_threshold = 5.0;

}  // namespace detail

/// Scaled complementary error function exp(y^2) erfc(y).
inline double erfcx(double y) {
  if (std::isnan(y)) return y;
  if (y < 0.0) {
    if (y < -26.7) return std::numeric_limits<double>::infinity();
    return 2.0 * detail::exp_square(y) - erfcx(-y);
  }
  if (y <= detail::cf_threshold) return detail::exp_square(y) * std::erfc(y);
  if (std::isinf(y)) return 0.0;
  const double k = detail::erfc_cf_tail(y);
  return std::numbers::inv_sqrtpi / (y + k);
}

/// g(z) = 1 - sqrt(pi) z erfcx(z) for z >= 0, without cancellation at large z.
/// Equals the Gaussian moment integral of z' exp(-z'^2/2 - sqrt(2) z z') dz'
/// over [0, inf), and decays like 1/(2 z^2).
inline double erfcx_deficit(double z) {
  if (z <= detail::cf_threshold) {
    return 1.0 - std::sqrt(std::numbers::pi) * z * erfcx(z);
  }
  if (std::isinf(z)) return 0.0;
  const double k = detail::erfc_cf_tail(z);
  return k / (z + k);
}

/// Coefficients of g(z) ~ sum_k c_k z^{-2k}: c_k = (-1)^{k+1} (2k-1)!! / 2^k.
inline constexpr std::array<double, 9> deficit_asymptotic_coefficients = {
    0.5, -0.75, 1.875, -6.5625, 29.53125, -162.421875, 1055.7421875,
    -7918.06640625, 67303.564453125};

/// Hurwitz zeta sum_{m>=0} (m+q)^{-s} for integer s >= 2 and q > 0.
inline double hurwitz_zeta(int s, double q) {
  // Bernoulli numbers B_2 .. B_20.
  static constexpr std::array<double, 10> b2k = {
      1.0 / 6,         -1.0 / 30,    1.0 / 42,         -1.0 / 30,
      5.0 / 66,        -691.0 / 2730, 7.0 / 6,         -3617.0 / 510,
      43867.0 / 798,   -174611.0 / 330};
  constexpr double shift_to = 30.0;
  double direct = 0.0;
  while (q < shift_to) {
    direct += std::pow(q, -s);
    q += 1.0;
  }
  const double sd = static_cast<double>(s);
  double em = std::pow(q, 1.0 - sd) / (sd - 1.0) + 0.5 * std::pow(q, -sd);
  // Rising factorial s (s+1) ... (s+2j-2) and (2j)! accumulate together.
  double rising = sd;
  double fact = 2.0;
  double qpow = std::pow(q, -sd - 1.0);
  for (std::size_t j = 0; j < b2k.size(); ++j) {
    const double term = b2k[j] / fact * rising * qpow;
    em += term;
    if (std::abs(term) < 1e-20 * std::abs(em)) break;
    const double jj = 2.0 * static_cast<double>(j + 1);
    rising *= (sd + jj - 1.0) * (sd + jj);
    fact *= (jj + 1.0) * (jj + 2.0);
    qpow /= q * q;
  }
  return direct + em;
}

/// Trigamma function psi_1(q) = sum_{m>=0} 1/(m+q)^2 for complex q, Re q > 0.
inline std::complex<double> trigamma(std::complex<double> q) {
  std::complex<double> acc{0.0, 0.0};
  while (std::abs(q) < 20.0) {
    acc += 1.0 / (q * q);
    q += 1.0;
  }
  const std::complex<double> inv = 1.0 / q;
  const std::complex<double> inv2 = inv * inv;
  // 1/q + 1/(2q^2) + sum_k B_2k / q^{2k+1}
  static constexpr std::array<double, 8> b2k = {
      1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
      7.0 / 6, -3617.0 / 510};
  std::complex<double> series{0.0, 0.0};
  for (auto it = b2k.rbegin(); it != b2k.rend(); ++it) {
    series = (series + *it) * inv2;
  }
  return acc + inv + 0.5 * inv2 + series * inv;
}

}  // namespace udw::special
