#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "kerrgcs/cli/app.hpp"
#include "kerrgcs/correlators.hpp"
#include "kerrgcs/fock_oracle.hpp"
#include "kerrgcs/glauber.hpp"
#include "kerrgcs/loschmidt.hpp"
#include "kerrgcs/phasespace.hpp"

#ifndef KERRGCS_VERSION
#define KERRGCS_VERSION "unknown"
#endif

namespace kerrgcs::cli {

namespace {

std::vector<ParamSpec> with_common(std::vector<ParamSpec> params) {
  std::vector<ParamSpec> all = {
      {"config", "", "key=value file; command-line flags take precedence", false, false},
      {"out", "-", "CSV output path ('-' for stdout)", false, false},
      {"svg", "", "optional SVG plot path", false, false},
      {"threads", "0", "worker threads (0 = hardware concurrency); output does not depend on it", false, false},
  };
  all.insert(all.end(), params.begin(), params.end());
  return all;
}

std::vector<ParamSpec> theta_range(const char* max, const char* points) {
  return {{"theta-min", "0", "first theta = U t"},
          {"theta-max", max, "last theta (inclusive); accepts multiples of pi, e.g. 4pi"},
          {"theta-points", points, "number of theta samples"}};
}

std::vector<ParamSpec> truncation_params() {
  return {{"n-cut", "", "occupation cutoff (default: mean + 12 sqrt(mean) + 25)"},
          {"tail-tol", "1e-14", "largest allowed Poisson tail beyond n-cut"}};
}

std::vector<ParamSpec> concat(std::initializer_list<std::vector<ParamSpec>> parts) {
  std::vector<ParamSpec> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// ---- shared helpers -------------------------------------------------------

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void reject_together(const ResolvedConfig& cfg, const char* a, const char* b) {
  if (cfg.user_set(a) && cfg.user_set(b) && cfg.has(a) && cfg.has(b)) {
    throw ConfigError(std::string("contradictory parameters: --") + a + " and --" + b + " cannot be combined");
  }
}

unsigned threads(const ResolvedConfig& cfg) { return static_cast<unsigned>(cfg.count("threads")); }

TimeGrid theta_grid(const ResolvedConfig& cfg) {
  const std::uint64_t points = cfg.count("theta-points");
  if (points == 0) throw ConfigError("theta-points must be >= 1");
  return TimeGrid::uniform(cfg.real("theta-min"), cfg.real("theta-max"), points);
}

TruncationSpec truncation(const ResolvedConfig& cfg, double mean) {
  TruncationSpec spec = cfg.has("n-cut") ? TruncationSpec{cfg.count("n-cut")} : TruncationSpec::for_mean(mean);
  spec.tail_tol = cfg.real("tail-tol");
  return spec;
}

std::size_t site_index(const ResolvedConfig& cfg, const char* name, std::size_t M) {
  const std::uint64_t k = cfg.count(name);
  if (k < 1 || k > M) throw ConfigError(std::string(name) + " must be a site number in 1.." + std::to_string(M));
  return static_cast<std::size_t>(k - 1);
}

Boundary boundary(const ResolvedConfig& cfg) {
  const std::string& b = cfg.raw("boundary");
  if (b == "periodic") return Boundary::Periodic;
  if (b == "open") return Boundary::Open;
  throw ConfigError("boundary must be 'periodic' or 'open', got '" + b + "'");
}

ConvolutionBackend backend(const ResolvedConfig& cfg) {
  const std::string& b = cfg.raw("backend");
  if (b == "auto") return ConvolutionBackend::Auto;
  if (b == "direct") return ConvolutionBackend::Direct;
  if (b == "fft") return ConvolutionBackend::Fft;
  throw ConfigError("backend must be 'auto', 'direct' or 'fft', got '" + b + "'");
}

GcsState gcs_state(const ResolvedConfig& cfg) {
  reject_together(cfg, "xi", "lambda");
  reject_together(cfg, "xi", "M");
  reject_together(cfg, "lambda", "M");
  const std::uint64_t S = cfg.count("S");
  if (cfg.has("xi")) return GcsState::normalized(S, cfg.complexes("xi"));
  if (cfg.has("lambda")) return homogeneous_gcs(S, sites_for_filling(S, cfg.real("lambda")));
  return homogeneous_gcs(S, cfg.count("M"));
}

MmgsState mmgs_state(const ResolvedConfig& cfg) {
  reject_together(cfg, "alpha", "lambda");
  reject_together(cfg, "alpha", "M");
  if (cfg.has("alpha")) return MmgsState(cfg.complexes("alpha"));
  return homogeneous_mmgs(cfg.has("lambda") ? cfg.real("lambda") : 1.0, cfg.count("M"));
}

double max_population(const MmgsState& st) {
  double m = 0.0;
  for (const cplx& a : st.alpha()) m = std::max(m, std::norm(a));
  return m;
}

std::vector<double> as_vector(const TimeGrid& grid) { return {grid.values().begin(), grid.values().end()}; }

// ---- tpcf -----------------------------------------------------------------

Report run_tpcf(const ResolvedConfig& cfg) {
  Report r;
  r.x_label = "theta = U t";
  if (cfg.flag("thermo-gap")) {
    for (const char* other : {"xi", "alpha", "M"}) reject_together(cfg, "thermo-gap", other);
    const double lambda = cfg.has("lambda") ? cfg.real("lambda") : 1.0;
    const double theta = cfg.real("theta");
    r.table.add_column("S");
    r.table.add_column("M");
    r.table.add_complex_column("tpcf_gcs");
    r.table.add_column("tpcf_thermo");
    r.table.add_column("gap");
    r.table.add_column("gap_ratio");
    PlotSeries series{"gap", {}, {}};
    double previous = NAN;
    for (std::uint64_t S : cfg.counts("S-list")) {
      const std::size_t M = sites_for_filling(S, lambda);
      const cplx value = tpcf_gcs(homogeneous_gcs(S, M), theta, 0, 1);
      const double gap = thermo_gap(S, lambda, theta);
      r.table.new_row();
      r.table.push(static_cast<std::int64_t>(S));
      r.table.push(static_cast<std::int64_t>(M));
      r.table.push_complex(value);
      r.table.push(tpcf_thermo(lambda, theta));
      r.table.push(gap);
      r.table.push(std::isnan(previous) ? Cell{std::string()} : Cell{gap / previous});
      previous = gap;
      series.x.push_back(static_cast<double>(S));
      series.y.push_back(gap);
    }
    r.plot = {series};
    r.plot_title = "GCS vs thermodynamic-limit correlator";
    r.x_label = "S";
    r.y_label = "gap";
    return r;
  }

  const std::string family = cfg.raw("family");
  const TimeGrid grid = theta_grid(cfg);
  r.table.add_column("theta");
  PlotSeries series{"|<a_i^+ a_j>|", as_vector(grid), {}};
  if (family == "thermo") {
    const double lambda = cfg.has("lambda") ? cfg.real("lambda") : 1.0;
    r.table.add_column("tpcf_thermo");
    for (double theta : grid.values()) {
      r.table.new_row();
      r.table.push(theta);
      r.table.push(tpcf_thermo(lambda, theta));
      series.y.push_back(tpcf_thermo(lambda, theta));
    }
  } else if (family == "gcs" || family == "mmgs") {
    std::function<cplx(double, std::size_t, std::size_t)> eval;
    std::size_t M = 0;
    if (family == "gcs") {
      if (cfg.has("alpha")) throw ConfigError("--alpha belongs to --family mmgs");
      const GcsState st = gcs_state(cfg);
      M = st.sites();
      eval = [st](double t, std::size_t i, std::size_t j) { return tpcf_gcs(st, t, i, j); };
    } else {
      if (cfg.has("xi")) throw ConfigError("--xi belongs to --family gcs");
      const MmgsState st = mmgs_state(cfg);
      M = st.sites();
      eval = [st](double t, std::size_t i, std::size_t j) { return tpcf_mmgs(st, t, i, j); };
    }
    const std::size_t i = site_index(cfg, "i", M), j = site_index(cfg, "j", M);
    r.table.add_complex_column("tpcf");
    r.table.add_column("tpcf_abs");
    for (double theta : grid.values()) {
      const cplx v = eval(theta, i, j);
      r.table.new_row();
      r.table.push(theta);
      r.table.push_complex(v);
      r.table.push(std::abs(v));
      series.y.push_back(std::abs(v));
    }
  } else {
    throw ConfigError("family must be 'gcs', 'mmgs' or 'thermo', got '" + family + "'");
  }
  r.plot = {series};
  r.plot_title = "two-point correlator (" + family + ")";
  r.y_label = "|tpcf|";
  return r;
}

// ---- loschmidt-gcs --------------------------------------------------------

Report run_loschmidt_gcs(const ResolvedConfig& cfg) {
  reject_together(cfg, "xi", "lambda");
  reject_together(cfg, "xi", "M");
  reject_together(cfg, "lambda", "M");
  const std::uint64_t S = cfg.count("S");
  std::vector<std::pair<std::string, GcsState>> states;
  if (cfg.has("xi")) {
    states.emplace_back("xi", GcsState::normalized(S, cfg.complexes("xi")));
  } else if (cfg.user_set("M") && cfg.has("M")) {
    for (std::uint64_t M : cfg.counts("M")) states.emplace_back("M" + std::to_string(M), homogeneous_gcs(S, M));
  } else {
    for (double lambda : cfg.reals("lambda")) {
      const std::size_t M = sites_for_filling(S, lambda);
      states.emplace_back("M" + std::to_string(M), homogeneous_gcs(S, M));
    }
  }

  const TimeGrid grid = theta_grid(cfg);
  const CurveOptions options{threads(cfg), backend(cfg)};
  std::vector<FreeEnergyCurve> curves;
  for (const auto& [tag, st] : states) curves.push_back(free_energy_curve(st, grid, options));

  Report r;
  r.table.add_column("theta");
  for (const auto& [tag, st] : states) {
    r.table.add_complex_column("A_" + tag);
    r.table.add_column("L_" + tag);
    r.table.add_column("saturated_" + tag);
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    r.table.new_row();
    r.table.push(grid[k]);
    for (const auto& c : curves) {
      r.table.push_complex(c.amplitude[k]);
      r.table.push(c.L[k]);
      r.table.push(static_cast<std::int64_t>(c.saturated[k]));
    }
  }

  Table peaks;
  peaks.add_column("curve");
  peaks.add_column("theta");
  peaks.add_column("L");
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& tag = states[c].first;
    const auto ranked = curves[c].peaks_between(grid[0], grid[grid.size() - 1]);
    std::string line = "peaks " + tag + ": " + std::to_string(ranked.size()) + " local maxima";
    for (std::size_t k = 0; k < std::min<std::size_t>(ranked.size(), 3); ++k) {
      line += (k ? "; " : ", largest at theta = ") + format_real(ranked[k].theta) + " (L = " +
              format_real(ranked[k].value) + ")";
    }
    r.results.push_back(line);
    for (const Peak& p : curves[c].peaks) {
      peaks.new_row();
      peaks.push(tag);
      peaks.push(p.theta);
      peaks.push(p.value);
    }
    const auto& st = states[c].second;
    r.plot.push_back({tag == "xi" ? "xi" : "M=" + std::to_string(st.sites()) + " (lambda=" +
                                               num(double(S) / st.sites()) + ")",
                      as_vector(grid), curves[c].L});
  }
  if (cfg.has("peaks")) {
    std::ostringstream os;
    write_csv(os, csv_comments(cfg, r.results), peaks);
    r.artifacts.push_back({cfg.raw("peaks"), os.str()});
  }
  r.plot_title = "GCS dynamical free energy, S=" + std::to_string(S);
  r.x_label = "theta = U t";
  r.y_label = "L(theta)";
  return r;
}

// ---- loschmidt-glauber ----------------------------------------------------

Report run_loschmidt_glauber(const ResolvedConfig& cfg) {
  reject_together(cfg, "alpha", "lambda");
  reject_together(cfg, "alpha", "M");
  std::vector<std::pair<std::string, MmgsState>> states;
  if (cfg.has("alpha")) {
    states.emplace_back("alpha", MmgsState(cfg.complexes("alpha")));
  } else {
    for (double lambda : cfg.reals("lambda")) states.emplace_back("lambda" + num(lambda), homogeneous_mmgs(lambda, cfg.count("M")));
  }
  const TimeGrid grid = theta_grid(cfg);
  Report r;
  r.table.add_column("theta");
  for (const auto& [tag, st] : states) {
    r.table.add_complex_column("survival_" + tag);
    r.table.add_column("L_" + tag);
    r.table.add_column("saturated_" + tag);
  }
  std::vector<std::vector<cplx>> values;
  for (const auto& [tag, st] : states) {
    const TruncationSpec trunc = truncation(cfg, max_population(st));
    std::vector<cplx> v;
    for (double theta : grid.values()) v.push_back(survival_mmgs(st, theta, trunc));
    values.push_back(std::move(v));
  }
  std::vector<std::vector<double>> L(states.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    r.table.new_row();
    r.table.push(grid[k]);
    for (std::size_t c = 0; c < states.size(); ++c) {
      const FreeEnergy f = free_energy(values[c][k], states[c].second.sites());
      r.table.push_complex(values[c][k]);
      r.table.push(f.value);
      r.table.push(static_cast<std::int64_t>(f.saturated));
      L[c].push_back(f.value);
    }
  }
  for (std::size_t c = 0; c < states.size(); ++c) r.plot.push_back({states[c].first, as_vector(grid), L[c]});
  r.plot_title = "Glauber-state dynamical free energy";
  r.x_label = "theta = U t";
  r.y_label = "L(theta)";
  return r;
}

// ---- fourier --------------------------------------------------------------

Report run_fourier(const ResolvedConfig& cfg) {
  const std::uint64_t S = cfg.count("S");
  const std::size_t M = cfg.count("M");
  if (S == 0 || M == 0) throw ConfigError("fourier needs S >= 1 and M >= 1");
  const double J = cfg.real("J"), U = cfg.real("U");
  const bool hopping = J != 0.0;
  bool want_exact = cfg.flag("exact"), want_stirling = cfg.flag("stirling");
  if (!want_exact && !want_stirling) {
    want_exact = true;
    want_stirling = !hopping;
  }
  if (hopping && want_stirling) throw ConfigError("the Stirling form holds only in the deep lattice (J = 0)");
  if (!hopping && !(U > 0.0)) throw ConfigError("the deep lattice needs U > 0");
  const std::string unit = cfg.raw("time-unit");
  if (unit != "U" && unit != "J") throw ConfigError("time-unit must be 'U' or 'J', got '" + unit + "'");
  if (!hopping && unit == "J") throw ConfigError("time-unit J needs J != 0");

  const double lambda = double(S) / double(M);
  const MmgsState mmgs = homogeneous_mmgs(lambda, M);
  const GcsState gcs = homogeneous_gcs(S, M);
  const XGrid xgrid = cfg.has("x-points") ? XGrid(cfg.count("x-points")) : default_xgrid(S, M, lambda);
  const TruncationSpec trunc = truncation(cfg, lambda);
  const TimeGrid grid = theta_grid(cfg);

  std::vector<cplx> reference(grid.size()), exact(grid.size()), stirling(grid.size());
  if (hopping) {
    const BoseHubbardModel model(U, J, M, boundary(cfg));
    const double energy_unit = unit == "J" ? J : 0.0;
    reference = sector_autocorr(gcs, model, grid, energy_unit).values;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const AssembledCrossCorrelation provider(mmgs, model, grid[k], sector_cutoff(mmgs.mean_particles()),
                                               energy_unit, threads(cfg));
      exact[k] = fourier_autocorr_exact(S, mmgs, std::cref(provider), xgrid);
    }
  } else {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double theta = grid[k];
      reference[k] = number_phase(S, theta) * autocorr_genfun(gcs, theta);
      if (want_exact) exact[k] = fourier_autocorr_exact(S, mmgs, deep_lattice_provider(mmgs, theta, trunc), xgrid);
      if (want_stirling) stirling[k] = fourier_autocorr_stirling(S, M, theta, xgrid, trunc);
    }
  }

  Report r;
  r.table.add_column("theta");
  r.table.add_complex_column("reference");
  if (want_exact) {
    r.table.add_complex_column("exact");
    r.table.add_column("exact_absdiff");
  }
  if (want_stirling) {
    r.table.add_complex_column("stirling");
    r.table.add_column("stirling_abs_ratio");
  }
  double worst = 0.0;
  PlotSeries ref_plot{"|reference|", as_vector(grid), {}}, exact_plot{"|exact projection|", as_vector(grid), {}},
      st_plot{"|Stirling form|", as_vector(grid), {}};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    r.table.new_row();
    r.table.push(grid[k]);
    r.table.push_complex(reference[k]);
    ref_plot.y.push_back(std::abs(reference[k]));
    if (want_exact) {
      const double diff = std::abs(exact[k] - reference[k]);
      worst = std::max(worst, diff);
      r.table.push_complex(exact[k]);
      r.table.push(diff);
      exact_plot.y.push_back(std::abs(exact[k]));
    }
    if (want_stirling) {
      r.table.push_complex(stirling[k]);
      r.table.push(std::abs(stirling[k]) / std::abs(reference[k]));
      st_plot.y.push_back(std::abs(stirling[k]));
    }
  }
  r.results.push_back("x grid points = " + std::to_string(xgrid.size()));
  r.results.push_back(std::string("reference = ") + (hopping ? "dense sector evolution" : "generating function"));
  if (want_exact) r.results.push_back("max exact_absdiff = " + format_real(worst));
  if (want_stirling) {
    const double expected =
        std::exp(0.5 * std::log(kTwoPi * double(S)) - double(S) + double(S) * std::log(double(S)) - log_factorial(S));
    r.results.push_back("Stirling ratio sqrt(2 pi S) e^-S S^S / S! = " + format_real(expected));
  }
  r.plot = {ref_plot};
  if (want_exact) r.plot.push_back(exact_plot);
  if (want_stirling) r.plot.push_back(st_plot);
  r.plot_title = "Fourier projection, S=" + std::to_string(S) + " M=" + std::to_string(M);
  r.x_label = unit == "J" ? "theta = J t" : "theta = U t";
  r.y_label = "|A(theta)|";
  return r;
}

// ---- fx-profile -----------------------------------------------------------

Report run_fx_profile(const ResolvedConfig& cfg) {
  const std::uint64_t S = cfg.count("S");
  const std::size_t M = cfg.count("M");
  if (S == 0 || M == 0) throw ConfigError("fx-profile needs S >= 1 and M >= 1");
  const double lambda = double(S) / double(M);
  const double theta = cfg.real("theta");
  const XGrid grid = cfg.has("x-points") ? XGrid(cfg.count("x-points"))
                                         : XGrid(std::max<std::size_t>(4096, default_xgrid(S, M, lambda).size()));
  const auto samples = f_integrand_profile(S, lambda, M, theta, grid, truncation(cfg, lambda));

  Report r;
  r.table.add_column("x");
  r.table.add_complex_column("F");
  r.table.add_column("F_abs");
  std::vector<cplx> values;
  std::vector<double> magnitudes;
  PlotSeries re{"Re F", {}, {}}, im{"Im F", {}, {}};
  for (const auto& s : samples) {
    r.table.new_row();
    r.table.push(s.x);
    r.table.push_complex(s.value);
    r.table.push(std::abs(s.value));
    values.push_back(s.value);
    magnitudes.push_back(std::abs(s.value));
    re.x.push_back(s.x);
    re.y.push_back(s.value.real());
    im.x.push_back(s.x);
    im.y.push_back(s.value.imag());
  }
  const double n = static_cast<double>(samples.size());
  const cplx net = pairwise_sum(values) / n;
  const double total = pairwise_sum(magnitudes) / n;
  r.results.push_back("net integral = " + format_real(net.real()) + " + " + format_real(net.imag()) + "i");
  r.results.push_back("integral of |F| = " + format_real(total));
  r.results.push_back("|net| / integral of |F| = " + format_real(std::abs(net) / total));
  r.plot = {re, im};
  r.plot_title = "F(x) at theta = " + num(theta) + ", S=" + std::to_string(S) + " M=" + std::to_string(M);
  r.x_label = "x";
  r.y_label = "F(x)";
  return r;
}

// ---- phasespace -----------------------------------------------------------

Report run_phasespace(const ResolvedConfig& cfg) {
  reject_together(cfg, "alpha", "lambda");
  if (cfg.has("svg")) throw ConfigError("phasespace writes heatmaps as PGM; use --pgm instead of --svg");
  const cplx alpha = cfg.has("alpha") ? cfg.complex("alpha") : cplx{std::sqrt(cfg.has("lambda") ? cfg.real("lambda") : 1.0)};
  const std::size_t M = cfg.count("M");
  const double theta = cfg.real("theta");
  PhaseGridSpec spec = PhaseGridSpec::around(alpha, cfg.real("margin"), cfg.count("points"));
  const int ranges = cfg.has("re-min") + cfg.has("re-max") + cfg.has("im-min") + cfg.has("im-max");
  if (ranges != 0 && ranges != 4) throw ConfigError("give all of re-min, re-max, im-min, im-max or none");
  if (ranges == 4) {
    spec.re_min = cfg.real("re-min");
    spec.re_max = cfg.real("re-max");
    spec.im_min = cfg.real("im-min");
    spec.im_max = cfg.real("im-max");
  }
  spec.validate();
  TruncationSpec trunc = truncation_for_grid(alpha, spec);
  if (cfg.has("n-cut")) trunc.n_cut = cfg.count("n-cut");
  trunc.tail_tol = cfg.real("tail-tol");

  const PhaseGrid grid = distribution_grid(alpha, theta, M, spec, trunc, threads(cfg));
  Report r;
  r.table.add_column("re_beta");
  r.table.add_column("im_beta");
  r.table.add_column("value");
  double peak = 0.0;
  for (std::size_t row = 0; row < spec.im_points; ++row) {
    for (std::size_t col = 0; col < spec.re_points; ++col) {
      r.table.new_row();
      r.table.push(spec.re(col));
      r.table.push(spec.im(row));
      r.table.push(grid.at(row, col));
      peak = std::max(peak, grid.at(row, col));
    }
  }
  r.results.push_back("grid " + std::to_string(spec.re_points) + " x " + std::to_string(spec.im_points) +
                      ", max value = " + format_real(peak));
  if (cfg.flag("husimi")) {
    r.results.push_back("husimi_norm = " + format_real(husimi_norm_check(alpha, theta, spec, trunc)));
  }
  if (cfg.has("pgm")) {
    std::vector<double> flipped;  // top image row = largest Im beta
    for (std::size_t row = spec.im_points; row-- > 0;)
      for (std::size_t col = 0; col < spec.re_points; ++col) flipped.push_back(grid.at(row, col));
    std::ostringstream os;
    write_pgm(os, spec.re_points, spec.im_points, flipped, 0.0, 1.0);
    r.artifacts.push_back({cfg.raw("pgm"), os.str()});
  }
  if (cfg.has("circle")) {
    const XGrid xs(cfg.count("x-points"));
    const double mag = std::abs(alpha);
    const auto section = circle_section(mag, theta, M, xs, TruncationSpec::for_mean(mag * mag));
    Table t;
    t.add_column("x");
    t.add_column("abs_G");
    for (std::size_t k = 0; k < xs.size(); ++k) {
      t.new_row();
      t.push(xs.node(k));
      t.push(section[k]);
    }
    std::ostringstream os;
    write_csv(os, csv_comments(cfg, r.results), t);
    r.artifacts.push_back({cfg.raw("circle"), os.str()});
  }
  return r;
}

// ---- oracle-check ---------------------------------------------------------

struct CheckTable {
  Table table;
  std::size_t total = 0, passed = 0;

  CheckTable() {
    for (const char* c : {"check", "S", "M", "J", "max_error", "tolerance", "pass"}) table.add_column(c);
  }
  void add(const std::string& name, std::uint64_t S, std::size_t M, double J, double err, double tol) {
    const bool ok = err <= tol;
    ++total;
    passed += ok;
    table.new_row();
    table.push(name);
    table.push(static_cast<std::int64_t>(S));
    table.push(static_cast<std::int64_t>(M));
    table.push(J);
    table.push(err);
    table.push(tol);
    table.push(static_cast<std::int64_t>(ok));
  }
};

// Deterministic inhomogeneous amplitudes (1 + j/2) e^{0.7 i j}.
GcsState skewed_gcs(std::uint64_t S, std::size_t M) {
  std::vector<cplx> xi(M);
  for (std::size_t j = 0; j < M; ++j) xi[j] = std::polar(1.0 + 0.5 * double(j), 0.7 * double(j));
  return GcsState::normalized(S, std::move(xi));
}

std::vector<double> midpoints(std::uint64_t count, double span) {
  std::vector<double> t;
  for (std::uint64_t k = 0; k < count; ++k) t.push_back(span * (double(k) + 0.5) / double(count));
  return t;
}

Report run_oracle_check(const ResolvedConfig& cfg) {
  const std::uint64_t S_max = cfg.count("S-max");
  const std::size_t M_max = cfg.count("M-max");
  const auto thetas = midpoints(cfg.count("theta-points"), 4.0 * kPi);
  CheckTable checks;

  for (std::uint64_t S = 1; S <= S_max; ++S) {
    for (std::size_t M = 1; M <= M_max; ++M) {
      double genfun = 0.0, oracle = 0.0, unitarity = 0.0, reversal = 0.0, symmetry = 0.0;
      for (const GcsState& st : {homogeneous_gcs(S, M), skewed_gcs(S, M)}) {
        unitarity = std::max(unitarity, std::abs(autocorr_genfun(st, 0.0) - 1.0));
        for (double theta : thetas) {
          const cplx reference = autocorr_enumerated(st, theta);
          const cplx a = autocorr_genfun(st, theta);
          genfun = std::max(genfun, std::abs(a - reference));
          oracle = std::max(oracle, std::abs(deep_lattice_autocorr_oracle(st, theta) - reference));
          unitarity = std::max(unitarity, std::abs(a) - 1.0);
          reversal = std::max(reversal, std::abs(autocorr_genfun(st, -theta) - std::conj(a)));
          for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < M; ++j)
              symmetry = std::max(symmetry, std::abs(tpcf_gcs(st, theta, i, j) - std::conj(tpcf_gcs(st, theta, j, i))));
        }
      }
      checks.add("genfun_vs_enumerated", S, M, 0.0, genfun, 1e-10);
      checks.add("oracle_vs_enumerated", S, M, 0.0, oracle, 1e-10);
      checks.add("unitarity", S, M, 0.0, std::max(unitarity, 0.0), 1e-9);
      checks.add("time_reversal", S, M, 0.0, reversal, 1e-12);
      checks.add("tpcf_conjugate_symmetry", S, M, 0.0, symmetry, 1e-12);
    }
  }

  const auto rt_thetas = midpoints(cfg.count("round-trip-theta-points"), 4.0 * kPi);
  const Boundary bc = boundary(cfg);
  for (double J : cfg.reals("J")) {
    for (std::uint64_t S = 1; S <= cfg.count("round-trip-S-max"); ++S) {
      for (std::size_t M = 1; M <= cfg.count("round-trip-M-max"); ++M) {
        const BoseHubbardModel model(1.0, J, M, bc);
        const MmgsState mmgs = homogeneous_mmgs(double(S) / double(M), M);
        const XGrid xgrid = default_xgrid(S, M, double(S) / double(M));
        const auto direct = sector_autocorr(homogeneous_gcs(S, M), model, TimeGrid(rt_thetas)).values;
        double round_trip = 0.0, unitarity = 0.0;
        for (std::size_t k = 0; k < rt_thetas.size(); ++k) {
          const AssembledCrossCorrelation provider(mmgs, model, rt_thetas[k], sector_cutoff(mmgs.mean_particles()),
                                                   0.0, threads(cfg));
          round_trip = std::max(round_trip, std::abs(fourier_autocorr_exact(S, mmgs, std::cref(provider), xgrid) -
                                                     direct[k]));
          unitarity = std::max(unitarity, std::abs(direct[k]) - 1.0);
        }
        unitarity = std::max(unitarity, std::abs(sector_autocorr(homogeneous_gcs(S, M), model,
                                                                 TimeGrid({0.0})).values[0] - 1.0));
        checks.add("projection_round_trip", S, M, J, round_trip, 1e-9);
        checks.add("sector_unitarity", S, M, J, std::max(unitarity, 0.0), 1e-10);
      }
    }
  }

  Report r;
  r.table = std::move(checks.table);
  r.results.push_back("checks passed: " + std::to_string(checks.passed) + "/" + std::to_string(checks.total));
  r.checks_failed = checks.passed != checks.total;
  return r;
}

using Runner = Report (*)(const ResolvedConfig&);

struct Command {
  CommandInfo info;
  Runner run;
};

const std::vector<Command>& registry() {
  static const std::vector<Command> table = [] {
    std::vector<Command> c;
    c.push_back({{"tpcf", "two-point correlators <a_i^+ a_j>(theta) of GCS / Glauber states",
                  with_common(concat({{{"family", "gcs", "gcs | mmgs | thermo"},
                                       {"S", "100", "particle number (gcs)"},
                                       {"M", "3", "number of sites"},
                                       {"lambda", "", "filling factor (gcs: sets M = S/lambda)"},
                                       {"xi", "", "explicit GCS amplitudes, comma-separated complex (normalized)"},
                                       {"alpha", "", "explicit Glauber amplitudes, comma-separated complex"},
                                       {"i", "1", "first site (1-based)"},
                                       {"j", "2", "second site (1-based)"},
                                       {"thermo-gap", "", "tabulate |GCS - thermodynamic limit| over S-list", true},
                                       {"S-list", "50,100,200,400", "particle numbers for --thermo-gap"},
                                       {"theta", "pi", "theta for --thermo-gap"}},
                                      theta_range("2pi", "201")}))},
                 run_tpcf});
    c.push_back({{"loschmidt-gcs", "GCS Loschmidt amplitudes and dynamical free energy",
                  with_common(concat({{{"S", "100", "particle number"},
                                       {"lambda", "0.5,1,2,5", "filling factors, one curve each (M = S/lambda)"},
                                       {"M", "", "site counts, one curve each (instead of lambda)"},
                                       {"xi", "", "explicit amplitudes for a single curve"},
                                       {"backend", "auto", "polynomial products: auto | direct | fft"},
                                       {"peaks", "", "optional CSV path listing every local maximum of L"}},
                                      theta_range("4pi", "2001")}))},
                 run_loschmidt_gcs});
    c.push_back({{"loschmidt-glauber", "Glauber-state survival amplitude and dynamical free energy",
                  with_common(concat({{{"lambda", "2", "filling factors, one curve each"},
                                       {"M", "1", "number of sites"},
                                       {"alpha", "", "explicit amplitudes for a single curve"}},
                                      theta_range("4pi", "2001"), truncation_params()}))},
                 run_loschmidt_glauber});
    c.push_back({{"fourier", "GCS amplitude from the Fourier projection of Glauber cross-correlations",
                  with_common(concat({{{"S", "20", "particle number"},
                                       {"M", "2", "number of sites"},
                                       {"exact", "", "exact projection", true},
                                       {"stirling", "", "Stirling-form projection (deep lattice only)", true},
                                       {"x-points", "", "x grid size (default: next power of two above the aliasing bound)"},
                                       {"U", "1", "on-site interaction"},
                                       {"J", "0", "hopping; J != 0 uses dense sector evolution"},
                                       {"boundary", "periodic", "periodic | open"},
                                       {"time-unit", "U", "theta = U t or J t (J required when U = 0)"}},
                                      theta_range("4pi", "64"), truncation_params()}))},
                 run_fourier});
    c.push_back({{"fx-profile", "integrand F(x) = e^{-i 2 pi x S} G(x, theta)",
                  with_common(concat({{{"S", "100", "particle number"},
                                       {"M", "3", "number of sites"},
                                       {"theta", "pi/2", "theta = U t"},
                                       {"x-points", "", "x grid size (default max(4096, aliasing bound))"}},
                                      truncation_params()}))},
                 run_fx_profile});
    c.push_back({{"phasespace", "phase-space distribution |<beta| e^{-iHt} |alpha>|^M",
                  with_common(concat({{{"alpha", "", "Glauber amplitude (complex)"},
                                       {"lambda", "", "alpha = sqrt(lambda) (default 1)"},
                                       {"M", "3", "exponent M"},
                                       {"theta", "pi", "theta = U t"},
                                       {"margin", "4", "grid half-width beyond |alpha|"},
                                       {"points", "201", "grid points per axis"},
                                       {"re-min", "", "explicit Re beta range start"},
                                       {"re-max", "", "explicit Re beta range end"},
                                       {"im-min", "", "explicit Im beta range start"},
                                       {"im-max", "", "explicit Im beta range end"},
                                       {"pgm", "", "optional PGM heatmap path"},
                                       {"circle", "", "optional CSV path for the circle section |G(x)|"},
                                       {"x-points", "256", "circle section samples"},
                                       {"husimi", "", "report the phase-space norm of the evolved state", true}},
                                      truncation_params()}))},
                 run_phasespace});
    c.push_back({{"oracle-check", "cross-check fast methods against brute-force oracles",
                  with_common({{"S-max", "6", "largest S for the deep-lattice checks"},
                               {"M-max", "4", "largest M for the deep-lattice checks"},
                               {"theta-points", "16", "theta samples in (0, 4pi)"},
                               {"J", "0,0.3,1", "hopping values (U = 1) for the projection round trip"},
                               {"boundary", "periodic", "periodic | open"},
                               {"round-trip-S-max", "5", "largest S for the round trip"},
                               {"round-trip-M-max", "3", "largest M for the round trip"},
                               {"round-trip-theta-points", "4", "theta samples for the round trip"}})},
                 run_oracle_check});
    return c;
  }();
  return table;
}

}  // namespace

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> infos = [] {
    std::vector<CommandInfo> out;
    for (const auto& c : registry()) out.push_back(c.info);
    return out;
  }();
  return infos;
}

const CommandInfo& command_info(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return c;
  throw ConfigError("unknown command '" + name + "'");
}

Report execute(const ResolvedConfig& config) {
  for (const auto& c : registry())
    if (c.info.name == config.command()) return c.run(config);
  throw ConfigError("unknown command '" + config.command() + "'");
}

std::vector<std::string> csv_comments(const ResolvedConfig& config, const std::vector<std::string>& results) {
  std::vector<std::string> lines = {std::string("kerrgcs ") + KERRGCS_VERSION + " " + config.command()};
  for (const auto& e : config.echo()) lines.push_back("config: " + e);
  for (const auto& r : results) lines.push_back("result: " + r);
  return lines;
}

}  // namespace kerrgcs::cli
