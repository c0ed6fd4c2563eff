// Command line front end: single points, sweeps, separability thresholds and
// the series-versus-quadrature validation table.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "udw/udw.hpp"

namespace {

struct GlobalOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> workers;
  bool print_config = false;
  std::optional<double> a_sigma, sigma_delta, aL, lambda;
};

udw::SweepSpec build_spec(const GlobalOptions& g) {
  udw::SweepSpec spec;
  if (!g.config.empty()) {
    spec = udw::load_spec(g.config);
  } else {
    spec.points = {0.0};
    spec.axis = udw::Axis::aL;
  }
  if (g.a_sigma || g.sigma_delta || g.aL || g.lambda) {
    spec.base = udw::params_from_dimensionless(
        g.a_sigma.value_or(spec.base.a_sigma), g.sigma_delta.value_or(spec.base.sigma_delta),
        g.aL.value_or(spec.base.aL), g.lambda.value_or(spec.base.lambda));
  }
  if (g.seed) spec.optimizer.seed = *g.seed;
  if (g.tol) spec.quadrature.rel_tol = *g.tol;
  if (g.workers) spec.workers = *g.workers;
  spec.validate();
  return spec;
}

void print_report(const udw::DimensionlessParams& d, const udw::SweepRow& row) {
  const auto& b = row.bounds;
  const auto& m = row.elements;
  std::printf("a_sigma        %.10g\n", d.a_sigma);
  std::printf("sigma_delta    %.10g\n", d.sigma_delta);
  std::printf("aL             %.10g\n", d.aL);
  std::printf("lambda         %.10g\n", d.lambda);
  std::printf("I1             %.12g %+.3gi\n", m.I1.real(), m.I1.imag());
  std::printf("I2             %.12g %+.3gi  (+- %.2g)\n", m.I2.real(), m.I2.imag(), m.I2_error);
  std::printf("I3             %.12g %+.3gi  (+- %.2g)\n", m.I3.real(), m.I3.imag(), m.I3_error);
  std::printf("I4             %.12g %+.3gi\n", m.I4.real(), m.I4.imag());
  std::printf("elements from  %s\n", udw::to_string(m.provenance));
  std::printf("state          a1=%.10g b1=%.10g a2=%.10g b2=%.10g\n", row.state.a1, row.state.b1,
              row.state.a2, row.state.b2);
  std::printf("               c1=%.10g%+.3gi c2=%.10g%+.3gi\n", row.state.c1.real(),
              row.state.c1.imag(), row.state.c2.real(), row.state.c2.imag());
  std::printf("min eigenvalue %.6g\n", b.min_eigenvalue);
  std::printf("ppt            %s\n", b.ppt ? "yes" : "no");
  std::printf("negativity     %.10g\n", b.negativity);
  std::printf("concurrence    %.10g\n", b.concurrence);
  std::printf("eof            %.10g bits\n", b.eof);
  std::printf("coherent info  %.10g bits\n", b.coherent_info);
  std::printf("esq (identity) %.10g bits\n", b.esq_id);
  std::printf("esq (squashed) %.10g bits  [best restart %d of %d, %ld evaluations]\n", b.esq_opt,
              b.esq_diagnostics.best_restart, b.esq_diagnostics.restarts,
              b.esq_diagnostics.evaluations);
  std::printf("bmax           %.10g bits  [best restart %d of %d, %ld evaluations]\n", b.bmax,
              b.bmax_diagnostics.best_restart, b.bmax_diagnostics.restarts,
              b.bmax_diagnostics.evaluations);
}

int run_point(const GlobalOptions& g, std::optional<double> at) {
  udw::SweepSpec spec = build_spec(g);
  if (g.config.empty()) spec.measures = {true, true, true, true, true, true};
  if (g.print_config) std::cout << udw::spec_to_json(spec).dump(2) << '\n';
  udw::DimensionlessParams d = spec.base;
  double v = 0.0;
  if (at) {
    d = spec.at(*at);
    v = *at;
  } else {
    spec.axis = udw::Axis::aL;
    v = spec.base.aL;
  }
  udw::SweepRow row = udw::evaluate_point(spec, v);
  if (!row.error.empty()) {
    std::fprintf(stderr, "error: %s\n", row.error.c_str());
    return row.error.rfind("validation", 0) == 0 ? 1 : 2;
  }
  print_report(d, row);
  return 0;
}

int run_sweep(const GlobalOptions& g) {
  const udw::SweepSpec spec = build_spec(g);
  if (g.print_config) std::cerr << udw::spec_to_json(spec).dump(2) << '\n';
  const auto rows = udw::run_sweep(spec);
  if (g.out.empty()) {
    udw::emit_csv(rows, spec.measures, std::cout);
  } else {
    udw::emit_csv(rows, spec.measures, g.out);
  }
  return 0;
}

int run_threshold(const GlobalOptions& g) {
  const udw::SweepSpec spec = build_spec(g);
  if (g.print_config) std::cerr << udw::spec_to_json(spec).dump(2) << '\n';
  const double v = udw::find_threshold(spec, spec.threshold);
  std::printf("%.10g\n", v);
  return 0;
}

int run_oracle(const GlobalOptions& g, int n_cut) {
  udw::SweepSpec spec = build_spec(g);
  const udw::DimensionlessParams d = udw::params_from_dimensionless(
      spec.base.a_sigma, spec.base.sigma_delta, 0.0, spec.base.lambda);
  if (g.print_config) std::cerr << udw::spec_to_json(spec).dump(2) << '\n';
  const udw::MatrixElements s = udw::series_elements(d, spec.series);
  const std::complex<double> series[4] = {s.I1, s.I2, s.I3, s.I4};
  const udw::Element which[4] = {udw::Element::I1, udw::Element::I2, udw::Element::I3,
                                 udw::Element::I4};
  bool ok = true;
  std::printf("%-4s %-24s %-24s %-10s\n", "elem", "series", "quadrature", "rel.diff");
  for (int i = 0; i < 4; ++i) {
    const auto r = udw::oracle_I_L0(d, which[i], n_cut, spec.quadrature);
    const double rel = std::abs(r.value - series[i]) / std::max(std::abs(series[i]), 1e-300);
    ok = ok && rel <= 1e-6;
    std::printf("%-4s %-24.16g %-24.16g %-10.2e\n", udw::to_string(which[i]), series[i].real(),
                r.value.real(), rel);
  }
  const auto q2 = udw::integral_I23_L(d, udw::i2_phase, spec.quadrature);
  const auto q3 = udw::integral_I23_L(d, udw::i3_phase, spec.quadrature);
  const double r2 = std::abs(q2.value - s.I2) / std::abs(s.I2);
  const double r3 = std::abs(q3.value - s.I3) / std::max(std::abs(s.I3), 1e-300);
  ok = ok && r2 <= 1e-4 && r3 <= 1e-4;
  std::printf("I2L  %-24.16g %-24.16g %-10.2e\n", s.I2.real(), q2.value.real(), r2);
  std::printf("I3L  %-24.16g %-24.16g %-10.2e\n", s.I3.real(), q3.value.real(), r3);
  std::printf("%s\n", ok ? "agreement" : "MISMATCH");
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vacuum-correlation detector states and communication-rate bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config, "JSON configuration file");
  app.add_option("--out", g.out, "output file (sweep CSV)");
  app.add_option("--seed", g.seed, "optimizer seed");
  app.add_option("--tol", g.tol, "relative quadrature tolerance");
  app.add_option("--workers", g.workers, "concurrent sweep points");
  app.add_option("--a-sigma", g.a_sigma, "override a*sigma");
  app.add_option("--sigma-delta", g.sigma_delta, "override sigma*delta");
  app.add_option("--aL", g.aL, "override a*L/c");
  app.add_option("--lambda", g.lambda, "override the coupling");
  app.add_flag("--print-config", g.print_config, "print the effective configuration");

  std::optional<double> at;
  auto* point = app.add_subcommand("point", "evaluate every bound at one parameter point");
  point->add_option("--at", at, "axis value of the point (default: the base parameters)");
  auto* sweep = app.add_subcommand("sweep", "write one CSV row per sweep point");
  auto* threshold = app.add_subcommand("threshold", "locate the separability threshold");
  int n_cut = 200;
  auto* oracle = app.add_subcommand("oracle", "compare the series with direct quadrature");
  oracle->add_option("--n-cut", n_cut, "explicit pole-tower terms per side");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*point) return run_point(g, at);
    if (*sweep) return run_sweep(g);
    if (*threshold) return run_threshold(g);
    if (*oracle) return run_oracle(g, n_cut);
  } catch (const udw::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
