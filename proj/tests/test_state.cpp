#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "udw/linalg.hpp"
#include "udw/measures.hpp"
#include "udw/quadrature.hpp"
#include "udw/state.hpp"

namespace {

using udw::cplx;
using udw::MatrixElements;
using udw::XState;

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

MatrixElements random_elements(std::mt19937_64& rng, double scale, bool complex_values) {
  std::uniform_real_distribution<double> u(-scale, scale);
  MatrixElements m;
  // I1 dominates the squared elements, as it does for any physical detector.
  m.I1 = 0.5 * scale + 0.5 * std::abs(u(rng));
  m.I2 = {u(rng), complex_values ? u(rng) : 0.0};
  m.I3 = {u(rng), complex_values ? u(rng) : 0.0};
  m.I4 = {u(rng), complex_values ? u(rng) : 0.0};
  return m;
}

std::array<double, 4> sorted(std::array<double, 4> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::array<double, 4> dense_spectrum(const Eigen::Matrix4cd& m) {
  const auto ev = udw::linalg::hermitian_eigenvalues(m);
  return sorted({ev[0], ev[1], ev[2], ev[3]});
}

TEST(SecondOrder, UncoupledIsGroundState) {
  const XState s = udw::assemble_second_order(MatrixElements{});
  EXPECT_EQ(s, XState{});
}

TEST(SecondOrder, EntriesAndTrace) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const MatrixElements m = random_elements(rng, 0.2, true);
    const XState s = udw::assemble_second_order(m);
    EXPECT_NEAR(s.trace(), 1.0, 1e-15);
    EXPECT_EQ(s.b1, 0.0);
    EXPECT_EQ(s.a2, m.I1.real());
    EXPECT_EQ(s.c1, -m.I2);
    EXPECT_EQ(s.c2, m.I3);
  }
}

TEST(SecondOrder, NotPositiveWhenSecondElementNonzero) {
  MatrixElements m;
  m.I1 = 0.05;
  m.I2 = -0.02;
  const auto ev = udw::eigenvalues_xstate(udw::assemble_second_order(m));
  EXPECT_LT(*std::min_element(ev.begin(), ev.end()), 0.0);
}

TEST(FourthOrder, UncoupledIsGroundState) {
  EXPECT_EQ(udw::assemble_fourth_order(MatrixElements{}), XState{});
}

TEST(FourthOrder, TraceIsOne) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const XState s = udw::assemble_fourth_order(random_elements(rng, 0.1, i % 2 == 0));
    EXPECT_NEAR(s.trace(), 1.0, 1e-15);
  }
}

TEST(FourthOrder, SwapOfSecondAndThirdExchangesCoherenceModuli) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    MatrixElements m = random_elements(rng, 0.1, false);
    MatrixElements w = m;
    std::swap(w.I2, w.I3);
    const XState s = udw::assemble_fourth_order(m);
    const XState t = udw::assemble_fourth_order(w);
    EXPECT_NEAR(std::abs(t.c1), std::abs(s.c2), 1e-15);
    EXPECT_NEAR(std::abs(t.c2), std::abs(s.c1), 1e-15);
    // Up to the sign the coherences trade places outright.
    EXPECT_NEAR(std::abs(t.c1 + s.c2), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(t.a1, s.a1);
    EXPECT_DOUBLE_EQ(t.b1, s.b1);
  }
}

TEST(FourthOrder, SwapExchangesSpectrumAndPartialTransposeSpectrum) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    MatrixElements m = random_elements(rng, 0.1, false);
    MatrixElements w = m;
    std::swap(w.I2, w.I3);
    const auto s = udw::to_dense(udw::assemble_fourth_order(m));
    const auto t = udw::to_dense(udw::assemble_fourth_order(w));
    const auto s_pt = dense_spectrum(udw::linalg::partial_transpose_B(s.m));
    const auto t_pt = dense_spectrum(udw::linalg::partial_transpose_B(t.m));
    const auto s_ev = dense_spectrum(s.m);
    const auto t_ev = dense_spectrum(t.m);
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(t_pt[k], s_ev[k], 1e-14);
      EXPECT_NEAR(t_ev[k], s_pt[k], 1e-14);
    }
  }
}

TEST(FourthOrder, PositiveForStudiedParameterSets) {
  struct P {
    double s, x, lambda;
  };
  for (const P& p : {P{50, 20, 0.363}, P{24, 6.6, 0.581}, P{98, 30, 0.27}}) {
    for (double aL : {0.0, 1e-20, 1.0, 1e6}) {
      const auto d = udw::params_from_dimensionless(p.s, p.x, aL, p.lambda);
      const XState s = udw::assemble_fourth_order(udw::matrix_elements(d));
      const auto ev = udw::eigenvalues_xstate(s);
      EXPECT_GE(*std::min_element(ev.begin(), ev.end()), -1e-9) << p.s << " " << aL;
      EXPECT_NEAR(s.trace(), 1.0, 1e-14);
    }
  }
}

TEST(FourthOrder, FirstParameterSetAnchors) {
  const auto d = udw::params_from_dimensionless(50, 20, 0, 0.363);
  const XState s = udw::assemble_fourth_order(udw::series_elements(d));
  EXPECT_NEAR(udw::eof(s), 0.05, 0.025);
  EXPECT_NEAR(udw::coherent_information(s), 0.02, 0.01);
}

TEST(FourthOrder, StrongCouplingRaisesPerturbationBreakdown) {
  const auto d = udw::params_from_dimensionless(98, 30, 0, 0.581);
  EXPECT_THROW(udw::assemble_fourth_order(udw::series_elements(d)), udw::PerturbationBreakdown);
}

TEST(FourthOrder, RejectsNonFiniteInput) {
  MatrixElements m;
  m.I2 = {std::nan(""), 0.0};
  EXPECT_THROW(udw::assemble_fourth_order(m), udw::ValidationError);
}

TEST(Eigenvalues, Examples) {
  EXPECT_EQ(sorted(udw::eigenvalues_xstate(XState{})), (std::array<double, 4>{0, 0, 0, 1}));
  XState bell;
  bell.a1 = 0.5;
  bell.b1 = 0.5;
  bell.c1 = 0.5;
  const auto ev = sorted(udw::eigenvalues_xstate(bell));
  EXPECT_NEAR(ev[3], 1.0, 1e-15);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(ev[k], 0.0, 1e-15);
}

TEST(Eigenvalues, MatchDenseSolverOnRandomStates) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 10000; ++i) {
    const XState s = random_xstate(rng);
    const auto fast = sorted(udw::eigenvalues_xstate(s));
    const auto dense = dense_spectrum(udw::to_dense(s).m);
    for (int k = 0; k < 4; ++k) ASSERT_NEAR(fast[k], dense[k], 1e-12);
    ASSERT_NEAR(fast[0] + fast[1] + fast[2] + fast[3], 1.0, 1e-14);
  }
}

TEST(Marginal, Examples) {
  EXPECT_EQ(udw::marginal_B(XState{}), (std::array<double, 2>{1.0, 0.0}));
  XState bell;
  bell.a1 = 0.5;
  bell.b1 = 0.5;
  bell.c1 = 0.5;
  EXPECT_EQ(udw::marginal_B(bell), (std::array<double, 2>{0.5, 0.5}));
}

TEST(Marginal, MatchesPartialTraceOnRandomStates) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10000; ++i) {
    const XState s = random_xstate(rng);
    const auto pb = udw::marginal_B(s);
    const auto rb = udw::linalg::partial_trace(udw::to_dense(s).m, {2, 2}, {false, true});
    ASSERT_NEAR(pb[0], rb(0, 0).real(), 1e-14);
    ASSERT_NEAR(pb[1], rb(1, 1).real(), 1e-14);
    ASSERT_NEAR(std::abs(rb(0, 1)), 0.0, 1e-14);
  }
}

TEST(Dense, LayoutAndRoundTrip) {
  const auto g = udw::to_dense(XState{});
  EXPECT_EQ(g.m(0, 0), cplx(1.0, 0.0));
  EXPECT_EQ((g.m.cwiseAbs().array() > 0.0).count(), 1);

  XState c;
  c.a1 = 0.5;
  c.b1 = 0.5;
  c.c1 = cplx(0.2, 0.1);
  const auto d = udw::to_dense(c);
  EXPECT_EQ(d.m(0, 3), c.c1);
  EXPECT_EQ(d.m(3, 0), std::conj(c.c1));
  EXPECT_EQ((d.m.cwiseAbs().array() > 0.0).count(), 4);

  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    const XState s = random_xstate(rng);
    const auto ds = udw::to_dense(s);
    EXPECT_EQ(udw::from_dense(ds), s);
    EXPECT_EQ(ds.m, ds.m.adjoint());
    EXPECT_NO_THROW(ds.validate());
  }
}

TEST(Dense, ValidationRejectsBadMatrices) {
  udw::DenseState d = udw::to_dense(XState{});
  d.m(0, 1) = 0.3;
  EXPECT_THROW(d.validate(), udw::InvalidSpectrum);
  d = udw::to_dense(XState{});
  d.m(0, 0) = 0.9;
  EXPECT_THROW(d.validate(), udw::InvalidSpectrum);
  d.m(0, 0) = 1.1;
  d.m(1, 1) = -0.1;
  EXPECT_THROW(d.validate(), udw::InvalidSpectrum);
}

}  // namespace
