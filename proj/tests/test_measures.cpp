#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "udw/linalg.hpp"
#include "udw/measures.hpp"
#include "udw/quadrature.hpp"

namespace {

using udw::cplx;
using udw::DenseState;
using udw::XState;

XState bell_xstate() {
  XState s;
  s.a1 = 0.5;
  s.b1 = 0.5;
  s.c1 = 0.5;
  return s;
}

XState random_xstate(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 4> p{e(rng), e(rng), e(rng), e(rng)};
  const double n = p[0] + p[1] + p[2] + p[3];
  XState s;
  s.a1 = p[0] / n;
  s.b1 = p[1] / n;
  s.a2 = p[2] / n;
  s.b2 = p[3] / n;
  s.c1 = std::polar(u(rng) * std::sqrt(s.a1 * s.b1), 2.0 * M_PI * u(rng));
  s.c2 = std::polar(u(rng) * std::sqrt(s.a2 * s.b2), 2.0 * M_PI * u(rng));
  return s;
}

Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Matrix2cd g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = cplx(n(rng), n(rng));
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
  return qr.householderQ();
}

DenseState random_dense(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Matrix4cd g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = cplx(n(rng), n(rng));
  DenseState d;
  d.m = g * g.adjoint();
  d.m /= d.m.trace();
  return d;
}

DenseState product(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  DenseState d;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) d.m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return d;
}

udw::OptimizerControl quick(int restarts = 4) {
  udw::OptimizerControl c;
  c.restarts = restarts;
  return c;
}

TEST(Entropy, Examples) {
  const std::vector<double> pure{1, 0, 0, 0};
  const std::vector<double> flat{0.25, 0.25, 0.25, 0.25};
  const std::vector<double> half{0.5, 0.5, 0, 0};
  EXPECT_EQ(udw::von_neumann_entropy(pure), 0.0);
  EXPECT_DOUBLE_EQ(udw::von_neumann_entropy(flat), 2.0);
  EXPECT_DOUBLE_EQ(udw::von_neumann_entropy(half), 1.0);
}

TEST(Entropy, ClampsDustAndRejectsInvalidSpectra) {
  const std::vector<double> dust{1.0 + 1e-12, -1e-12, 0, 0};
  EXPECT_NEAR(udw::von_neumann_entropy(dust), 0.0, 1e-10);
  const std::vector<double> negative{1.1, -0.1, 0, 0};
  const std::vector<double> unnormalized{0.5, 0.4, 0, 0};
  EXPECT_THROW(udw::von_neumann_entropy(negative), udw::InvalidSpectrum);
  EXPECT_THROW(udw::von_neumann_entropy(unnormalized), udw::InvalidSpectrum);
}

TEST(BellState, AllMeasures) {
  const XState x = bell_xstate();
  const DenseState d = udw::to_dense(x);
  EXPECT_NEAR(udw::concurrence_xstate(x), 1.0, 1e-15);
  EXPECT_NEAR(udw::concurrence_wootters(d), 1.0, 1e-10);
  EXPECT_NEAR(udw::eof(x), 1.0, 1e-12);
  const auto ppt = udw::ppt_and_negativity(d);
  EXPECT_FALSE(ppt.ppt);
  EXPECT_NEAR(ppt.negativity, 0.5, 1e-12);
  EXPECT_NEAR(udw::squashed_identity(d), 1.0, 1e-12);
  EXPECT_NEAR(udw::bmax(d, quick()).value, 1.0, 1e-3);
  EXPECT_LE(udw::squashed_optimized(d, quick(2)).value, 1.0 + 1e-9);
}

TEST(ProductStates, AllMeasuresVanish) {
  std::mt19937_64 rng(3);
  std::vector<DenseState> states{udw::to_dense(XState{})};
  for (int i = 0; i < 3; ++i) {
    Eigen::Matrix2cd a = Eigen::Matrix2cd::Zero();
    a(0, 0) = 0.7;
    a(1, 1) = 0.3;
    Eigen::Matrix2cd b = Eigen::Matrix2cd::Zero();
    b(0, 0) = 1.0;
    const Eigen::Matrix2cd ua = random_unitary(rng);
    const Eigen::Matrix2cd ub = random_unitary(rng);
    states.push_back(product(ua * a * ua.adjoint(), ub * b * ub.adjoint()));
  }
  for (const DenseState& d : states) {
    const auto ppt = udw::ppt_and_negativity(d);
    EXPECT_TRUE(ppt.ppt);
    EXPECT_NEAR(ppt.negativity, 0.0, 1e-12);
    EXPECT_NEAR(udw::concurrence_wootters(d), 0.0, 1e-7);
    EXPECT_NEAR(udw::squashed_identity(d), 0.0, 1e-10);
    EXPECT_NEAR(udw::squashed_optimized(d, quick(2)).value, 0.0, 1e-6);
    EXPECT_LE(udw::bmax(d, quick(2)).value, 1e-6);
  }
  const XState g;
  EXPECT_EQ(udw::eof(g), 0.0);
  EXPECT_EQ(udw::coherent_information(g), 0.0);
}

TEST(FastPaths, AgreeWithDenseOraclesOnRandomStates) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const XState x = random_xstate(rng);
    const DenseState d = udw::to_dense(x);
    ASSERT_NEAR(udw::concurrence_xstate(x), udw::concurrence_wootters(d), 1e-10);
    const auto fast = udw::ppt_and_negativity(x);
    const auto dense = udw::ppt_and_negativity(d);
    ASSERT_NEAR(fast.negativity, dense.negativity, 1e-10);
    if (std::abs(dense.negativity) > 1e-10) {
      ASSERT_EQ(fast.ppt, dense.ppt);
    }
    if (fast.negativity > 1e-10) {
      ASSERT_GT(udw::concurrence_xstate(x), 0.0);
    }
    if (udw::concurrence_xstate(x) > 1e-10) {
      ASSERT_FALSE(fast.ppt);
    }
    // Coherent information from the dense marginal and spectrum.
    const double hb = udw::linalg::entropy_bits(
        udw::linalg::Matrix(udw::linalg::partial_trace(d.m, {2, 2}, {false, true})));
    const double hab = udw::linalg::entropy_bits(udw::linalg::Matrix(d.m));
    ASSERT_NEAR(udw::coherent_information(x), hb - hab, 1e-10);
  }
}

TEST(FastPaths, SeparabilityCriterionMatchesClosedForm) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 10000; ++i) {
    const XState x = random_xstate(rng);
    const bool closed = std::abs(x.c1) <= std::sqrt(x.a2 * x.b2) &&
                        std::abs(x.c2) <= std::sqrt(x.a1 * x.b1);
    const auto dense = udw::ppt_and_negativity(udw::to_dense(x));
    if (dense.negativity > 1e-10 || dense.negativity == 0.0) {
      ASSERT_EQ(closed, dense.ppt);
    }
  }
}

TEST(Eof, ClosedFormEndpoints) {
  EXPECT_EQ(udw::eof_from_concurrence(0.0), 0.0);
  EXPECT_NEAR(udw::eof_from_concurrence(1.0), 1.0, 1e-15);
  double prev = 0.0;
  for (double c = 0.01; c <= 1.0; c += 0.01) {
    const double e = udw::eof_from_concurrence(c);
    EXPECT_GT(e, prev);
    prev = e;
  }
}

TEST(LocalUnitaries, LeaveMeasuresInvariant) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const DenseState d = random_dense(rng);
    DenseState mixed = d;
    // Make roughly half of the samples entangled.
    if (i % 2 == 0) mixed.m = 0.4 * d.m + 0.6 * udw::to_dense(bell_xstate()).m;
    const Eigen::Matrix2cd ua = random_unitary(rng);
    const Eigen::Matrix2cd ub = random_unitary(rng);
    Eigen::Matrix4cd u;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) u(2 * r + k, 2 * c + l) = ua(r, c) * ub(k, l);
    DenseState rot;
    rot.m = u * mixed.m * u.adjoint();
    EXPECT_NEAR(udw::concurrence_wootters(rot), udw::concurrence_wootters(mixed), 1e-9);
    EXPECT_NEAR(udw::eof(rot), udw::eof(mixed), 1e-9);
    EXPECT_NEAR(udw::ppt_and_negativity(rot).negativity,
                udw::ppt_and_negativity(mixed).negativity, 1e-9);
    EXPECT_NEAR(udw::squashed_identity(rot), udw::squashed_identity(mixed), 1e-9);
  }
}

TEST(SquashedIdentity, RejectsStronglyNegativeStates) {
  XState x;
  x.a1 = 0.5;
  x.b1 = 0.5;
  x.c1 = 0.7;
  EXPECT_THROW(udw::squashed_identity(udw::to_dense(x)), udw::PerturbationBreakdown);
}

TEST(Bmax, BellStateGridOracle) {
  // Isotropic separable states p Phi + (1 - p) 1/4, p <= 1/3, and the
  // classically correlated family q(|00><00| + |11><11|)/2 + (1 - q) 1/4.
  const Eigen::Matrix4cd rho = udw::to_dense(bell_xstate()).m;
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity() / 4.0;
  Eigen::Matrix4cd cc = Eigen::Matrix4cd::Zero();
  cc(0, 0) = 0.5;
  cc(3, 3) = 0.5;
  double grid = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 1000; ++k) {
    const double p = k / 3000.0;
    grid = std::min(grid, udw::bmax_detail::objective(rho, p * rho + (1.0 - p) * id));
    const double q = k / 1000.0;
    grid = std::min(grid, udw::bmax_detail::objective(rho, q * cc + (1.0 - q) * id));
  }
  EXPECT_NEAR(grid, 1.0, 1e-9);
  const double opt = udw::bmax(udw::to_dense(bell_xstate()), quick()).value;
  EXPECT_NEAR(opt, grid, 1e-3);
  EXPECT_GE(opt, grid - 1e-9);
}

TEST(Bmax, SeparableStatesReachZero) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 5; ++i) {
    XState x = random_xstate(rng);
    const double r = 0.5 * std::min(std::sqrt(x.a1 * x.b1), std::sqrt(x.a2 * x.b2));
    x.c1 *= r / std::max(std::abs(x.c1), 1e-300);
    x.c2 *= r / std::max(std::abs(x.c2), 1e-300);
    const auto ev = udw::eigenvalues_xstate(x);
    ASSERT_GE(*std::min_element(ev.begin(), ev.end()), 0.0);
    ASSERT_TRUE(udw::ppt_and_negativity(x).ppt);
    EXPECT_LE(udw::bmax(udw::to_dense(x), quick(2)).value, 1e-6);
  }
}

TEST(Bounds, SecondParameterSetOrdering) {
  const auto d = udw::params_from_dimensionless(24, 6.6, 0, 0.581);
  const XState x = udw::assemble_fourth_order(udw::series_elements(d));
  udw::MeasureSelection all{true, true, true, true, true, true};
  const auto r = udw::evaluate_bounds(x, all, quick());
  EXPECT_GT(r.esq_id, r.eof);
  EXPECT_LE(r.esq_opt, r.esq_id + 1e-9);
  EXPECT_LT(r.esq_opt, r.esq_id);
  EXPECT_GE(r.bmax, r.eof);
  EXPECT_NEAR(r.coherent_info, 0.008, 0.004);
  EXPECT_FALSE(r.ppt);
  EXPECT_EQ(r.esq_diagnostics.restarts, 4);
  EXPECT_GE(r.esq_diagnostics.best_restart, 0);
  EXPECT_GT(r.bmax_diagnostics.evaluations, 0);
}

TEST(Bounds, FlagsConsistent) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    const XState x = random_xstate(rng);
    const auto r = udw::evaluate_bounds(x);
    EXPECT_EQ(r.ppt, r.concurrence == 0.0);
    EXPECT_EQ(r.eof == 0.0, r.concurrence == 0.0);
    EXPECT_GE(r.eof, 0.0);
    EXPECT_LE(r.eof, 1.0);
    EXPECT_GE(r.esq_id, 0.0);
  }
}

TEST(Bounds, DeterministicForFixedSeed) {
  const auto d = udw::params_from_dimensionless(24, 6.6, 0, 0.581);
  const XState x = udw::assemble_fourth_order(udw::series_elements(d));
  udw::MeasureSelection all{true, true, true, true, true, true};
  auto ctl = quick(3);
  ctl.max_iters = 300;
  const auto a = udw::evaluate_bounds(x, all, ctl);
  const auto b = udw::evaluate_bounds(x, all, ctl);
  EXPECT_EQ(a.esq_opt, b.esq_opt);
  EXPECT_EQ(a.bmax, b.bmax);
  EXPECT_EQ(a.esq_diagnostics.evaluations, b.esq_diagnostics.evaluations);
  ctl.workers = 3;
  const auto c = udw::evaluate_bounds(x, all, ctl);
  EXPECT_EQ(a.esq_opt, c.esq_opt);
  EXPECT_EQ(a.bmax, c.bmax);
  EXPECT_EQ(a.esq_diagnostics.best_restart, c.esq_diagnostics.best_restart);
}

TEST(Bounds, RejectsBrokenState) {
  XState x;
  x.a1 = 0.5;
  x.b1 = 0.5;
  x.c1 = 0.6;
  EXPECT_THROW(udw::evaluate_bounds(x), udw::PerturbationBreakdown);
}

TEST(Optimizer, NelderMeadFindsQuadraticMinimum) {
  const udw::Objective f = [](const std::vector<double>& p) {
    return (p[0] - 1.0) * (p[0] - 1.0) + 3.0 * (p[1] + 2.0) * (p[1] + 2.0) + 0.5;
  };
  const auto r = udw::nelder_mead(f, {0.0, 0.0}, 0.5, 5000, 1e-10, 1e-14);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], -2.0, 1e-6);
  EXPECT_NEAR(r.f, 0.5, 1e-12);
}

TEST(Optimizer, RestartStreamsDependOnlyOnSeedAndIndex) {
  auto a = udw::restart_stream(42, 3);
  auto b = udw::restart_stream(42, 3);
  auto c = udw::restart_stream(42, 4);
  const auto va = a();
  EXPECT_EQ(va, b());
  EXPECT_NE(va, c());
}

TEST(Optimizer, ControlValidation) {
  udw::OptimizerControl c;
  c.restarts = 0;
  EXPECT_THROW(c.validate(), udw::ValidationError);
}

}  // namespace
