#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <thread>
#include <vector>

#include "udw/errors.hpp"

namespace udw {

struct OptimizerControl {
  int restarts = 24;
  int max_iters = 2000;
  std::uint64_t seed = 20240601;
  double x_tol = 1e-10;
  double f_tol = 1e-13;
  double initial_step = 0.5;
  int workers = 1;  ///< restarts evaluated concurrently

  void validate() const {
    if (restarts < 1) throw ValidationError("restarts", "must be >= 1");
    if (max_iters < 1) throw ValidationError("max_iters", "must be >= 1");
    if (!(x_tol > 0.0)) throw ValidationError("x_tol", "must be > 0");
    if (!(f_tol > 0.0)) throw ValidationError("f_tol", "must be > 0");
    if (!(initial_step > 0.0)) throw ValidationError("initial_step", "must be > 0");
    if (workers < 1) throw ValidationError("workers", "must be >= 1");
  }
};

struct SimplexResult {
  std::vector<double> x;
  double f = std::numeric_limits<double>::infinity();
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

struct OptimizerDiagnostics {
  int restarts = 0;
  int best_restart = -1;
  int converged_restarts = 0;
  long evaluations = 0;
  double best_objective = std::numeric_limits<double>::infinity();
  bool diverged = false;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Nelder-Mead with dimension-adaptive coefficients. Non-finite objective
/// values are treated as +inf so the simplex retreats from them.
inline SimplexResult nelder_mead(const Objective& f, std::vector<double> x0,
                                 double step, int max_iters, double x_tol,
                                 double f_tol) {
  const std::size_t n = x0.size();
  const double nd = static_cast<double>(n);
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / nd;
  const double rho = 0.75 - 1.0 / (2.0 * nd);
  const double shrink = 1.0 - 1.0 / nd;

  SimplexResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  for (res.iterations = 0; res.iterations < max_iters; ++res.iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    {
      std::vector<std::vector<double>> p2(n + 1);
      std::vector<double> f2(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        p2[i] = std::move(pts[order[i]]);
        f2[i] = fv[order[i]];
      }
      pts = std::move(p2);
      fv = std::move(f2);
    }

    double fspread = 0.0;
    double xspread = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      fspread = std::max(fspread, std::abs(fv[i] - fv[0]));
      for (std::size_t k = 0; k < n; ++k)
        xspread = std::max(xspread, std::abs(pts[i][k] - pts[0][k]));
    }
    if (fspread <= f_tol && xspread <= x_tol) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k];
    for (double& c : centroid) c /= nd;

    for (std::size_t k = 0; k < n; ++k)
      xr[k] = centroid[k] + alpha * (centroid[k] - pts[n][k]);
    const double fr = eval(xr);
    if (fr < fv[0]) {
      for (std::size_t k = 0; k < n; ++k)
        xe[k] = centroid[k] + gamma * (xr[k] - centroid[k]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[n] = xe;
        fv[n] = fe;
      } else {
        pts[n] = xr;
        fv[n] = fr;
      }
      continue;
    }
    if (fr < fv[n - 1]) {
      pts[n] = xr;
      fv[n] = fr;
      continue;
    }
    const bool outside = fr < fv[n];
    for (std::size_t k = 0; k < n; ++k) {
      xc[k] = outside ? centroid[k] + rho * (xr[k] - centroid[k])
                      : centroid[k] + rho * (pts[n][k] - centroid[k]);
    }
    const double fc = eval(xc);
    if (fc < (outside ? fr : fv[n])) {
      pts[n] = xc;
      fv[n] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k)
        pts[i][k] = pts[0][k] + shrink * (pts[i][k] - pts[0][k]);
      fv[i] = eval(pts[i]);
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.x = pts[best];
  res.f = fv[best];
  return res;
}

/// Independent generator for one restart, derived from (seed, index) only.
inline std::mt19937_64 restart_stream(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x5eedu};
  return std::mt19937_64(seq);
}

/// Runs `body(index, rng)` for every restart, possibly on several threads,
/// and keeps the minimum; ties go to the lowest restart index.
inline SimplexResult best_of_restarts(
    const std::function<SimplexResult(int, std::mt19937_64&)>& body,
    const OptimizerControl& ctl, OptimizerDiagnostics& diag) {
  ctl.validate();
  std::vector<SimplexResult> results(static_cast<std::size_t>(ctl.restarts));
  auto run = [&](int i) {
    std::mt19937_64 rng = restart_stream(ctl.seed, i);
    results[static_cast<std::size_t>(i)] = body(i, rng);
  };
  const int workers = std::min(ctl.workers, ctl.restarts);
  if (workers <= 1) {
    for (int i = 0; i < ctl.restarts; ++i) run(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int i = w; i < ctl.restarts; i += workers) run(i);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  diag.restarts = ctl.restarts;
  SimplexResult best;
  for (int i = 0; i < ctl.restarts; ++i) {
    const SimplexResult& r = results[static_cast<std::size_t>(i)];
    diag.evaluations += r.evaluations;
    if (r.converged) ++diag.converged_restarts;
    if (r.f < best.f) {
      best = r;
      diag.best_restart = i;
    }
  }
  diag.best_objective = best.f;
  diag.diverged = !std::isfinite(best.f);
  return best;
}

}  // namespace udw
