#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

namespace udw::gk {

namespace detail {

// 15-point Kronrod nodes (non-negative half) and weights, with the embedded
// 7-point Gauss weights on the odd-indexed nodes.
inline constexpr std::array<double, 8> xk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

}  // namespace detail

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
  bool converged = false;
};

template <class T>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
};

/// One Gauss-Kronrod (7, 15) panel on [a, b].
template <class T, class F>
Panel<T> kronrod15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * detail::wk[7];
  T gauss = fc * detail::wg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = h * detail::xk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    kron += (f1 + f2) * detail::wk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * detail::wg[j / 2];
  }
  Panel<T> p;
  p.a = a;
  p.b = b;
  p.value = kron * h;
  p.error = detail::magnitude((kron - gauss) * h);
  return p;
}

/// Globally adaptive bisection over [a, b]. Splits the panel with the largest
/// error estimate until the summed error meets max(abs_tol, rel_tol |I|) or the
/// panel budget is spent. Optional breakpoints seed the initial partition.
template <class T, class F>
Result<T> integrate(F&& f, double a, double b, double abs_tol, double rel_tol,
                    std::size_t max_panels,
                    const std::vector<double>& breakpoints = {}) {
  Result<T> res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  auto cmp = [](const Panel<T>& x, const Panel<T>& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  };
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(cmp)> heap(cmp);

  std::vector<double> cuts{a};
  for (double bp : breakpoints)
    if (bp > a && bp < b) cuts.push_back(bp);
  cuts.push_back(b);

  T total{};
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    Panel<T> p = kronrod15<T>(f, cuts[i], cuts[i + 1]);
    res.evaluations += 15;
    total += p.value;
    err += p.error;
    heap.push(p);
  }

  while (!heap.empty()) {
    const double target = std::max(abs_tol, rel_tol * detail::magnitude(total));
    if (err <= target) {
      res.converged = true;
      break;
    }
    if (heap.size() >= max_panels) break;
    Panel<T> worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    Panel<T> left = kronrod15<T>(f, worst.a, mid);
    Panel<T> right = kronrod15<T>(f, mid, worst.b);
    res.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-add in a fixed order so the sum does not carry update drift.
  T clean{};
  double clean_err = 0.0;
  std::vector<Panel<T>> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
  for (const auto& p : panels) {
    clean += p.value;
    clean_err += p.error;
  }
  res.value = clean;
  res.error = clean_err;
  res.intervals = panels.size();
  return res;
}

}  // namespace udw::gk
