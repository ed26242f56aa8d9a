#include "hoskip/commands.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hoskip/coverage.hpp"
#include "hoskip/distances.hpp"
#include "hoskip/montecarlo.hpp"
#include "hoskip/numerics.hpp"
#include "hoskip/throughput.hpp"

namespace hoskip {

namespace {

using std::numbers::pi;

std::vector<double> to_linear(const std::vector<double>& db) {
  std::vector<double> out;
  out.reserve(db.size());
  for (double d : db) out.push_back(db_to_linear(d));
  return out;
}

Cell num(double v) { return v; }
Cell integer(std::uint64_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

CoverageMode parse_coverage_mode(const std::string& s) {
  if (s == "analytic") return CoverageMode::Analytic;
  if (s == "mc") return CoverageMode::MonteCarlo;
  if (s == "both") return CoverageMode::Both;
  throw InvalidParameter("mode must be analytic, mc or both");
}

nlohmann::json output_meta(const RunConfig& cfg, const std::string& command) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"config", cfg.to_json()}};
}

Table coverage_table(const RunConfig& cfg, const std::vector<SchemeSpec>& schemes,
                     const std::vector<double>& thresholds_db, CoverageMode mode) {
  cfg.validate();
  for (const SchemeSpec& s : schemes) {
    validate_scheme(s);
    if (s.coherent && mode == CoverageMode::Analytic) throw InvalidParameter("coherent scheme is simulation-only");
  }
  const bool want_mc = mode != CoverageMode::Analytic;
  const bool want_analytic = mode != CoverageMode::MonteCarlo;

  std::optional<SimulationTally> tally;
  if (want_mc) tally = simulate(schemes, cfg.network, cfg.simulation, to_linear(thresholds_db));

  Table t;
  t.columns = {"threshold_db", "scheme_id", "analytic_value", "mc_value", "mc_ci_halfwidth", "trials"};
  for (std::size_t k = 0; k < schemes.size(); ++k) {
    const SchemeSpec& s = schemes[k];
    std::optional<CoverageCurve> analytic;
    if (want_analytic && !s.coherent) analytic = coverage_curve(s, cfg.network, thresholds_db);
    std::optional<CoverageCurve> mc;
    if (tally) mc = coverage_from_tally(*tally, k, s, cfg.network, thresholds_db);
    for (std::size_t i = 0; i < thresholds_db.size(); ++i) {
      std::vector<Cell> row{num(thresholds_db[i]), scheme_id(s)};
      row.push_back(analytic ? num(analytic->values[i]) : Cell{});
      row.push_back(mc ? num(mc->values[i]) : Cell{});
      row.push_back(mc ? num(mc->ci_halfwidth[i]) : Cell{});
      row.push_back(mc ? integer(mc->trials) : Cell{});
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table table1_table(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<SchemeSpec> schemes(std::begin(kAnalyticSchemes), std::end(kAnalyticSchemes));
  const SimulationTally tally = simulate(schemes, cfg.network, cfg.simulation, {});

  Table t;
  t.columns = {"case", "scheme_id", "ic", "analytic_se_nats", "mc_se_nats", "mc_ci_halfwidth", "trials"};
  std::vector<double> analytic;
  std::vector<Estimate> mc;
  for (std::size_t k = 0; k < schemes.size(); ++k) {
    analytic.push_back(spectral_efficiency(schemes[k], cfg.network));
    mc.push_back(spectral_efficiency_from_tally(tally, k));
    const SchemeSpec& s = schemes[k];
    const char* name = s.association == Association::BestConnected ? "best-connected"
                       : s.association == Association::SkipNoCoop ? "blackout"
                                                                   : "blackout-comp";
    t.rows.push_back({std::string(name), scheme_id(s), integer(s.ic ? 1 : 0), num(analytic[k]), num(mc[k].mean),
                      num(mc[k].ci_halfwidth), integer(tally.trials)});
  }
  for (std::size_t k = 1; k < schemes.size(); ++k) {
    const SchemeSpec& s = schemes[k];
    t.rows.push_back({std::string("skipping-average"), scheme_id(s), integer(s.ic ? 1 : 0),
                      num(skipping_avg_se(analytic[0], analytic[k])), num(skipping_avg_se(mc[0].mean, mc[k].mean)),
                      Cell{}, integer(tally.trials)});
  }
  return t;
}

Table throughput_table(const RunConfig& cfg, const std::vector<SchemeSpec>& schemes,
                       const std::vector<double>& velocities_kmh, const std::vector<double>& delays_s) {
  cfg.validate();
  for (const SchemeSpec& s : schemes)
    if (s.coherent) throw InvalidParameter("coherent scheme is simulation-only");
  const std::vector<ThroughputPoint> pts =
      throughput_sweep(cfg.network, cfg.overhead, schemes, velocities_kmh, delays_s);
  Table t;
  t.columns = {"velocity_kmh",          "ho_delay_s",    "scheme_id",        "ho_rate_per_s",
               "ho_cost",               "spectral_efficiency_nats", "throughput_nats_per_s",
               "throughput_bits_per_s"};
  for (const ThroughputPoint& p : pts)
    t.rows.push_back({num(p.velocity_kmh), num(p.ho_delay_s), scheme_id(p.scheme), num(p.ho_rate), num(p.ho_cost),
                      num(p.spectral_efficiency), num(p.throughput_nats), num(p.throughput_bits)});
  return t;
}

Table distance_table(const RunConfig& cfg, int points) {
  cfg.validate();
  if (points < 2) throw InvalidParameter("points must be >= 2");
  const double lambda = cfg.network.lambda;
  const double rmax = 3.0 / std::sqrt(pi * lambda);
  auto grid = [rmax](int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(rmax * i / (n - 1));
    return g;
  };
  const std::vector<double> g1 = grid(points);
  // Joint grids are coarser to keep the file size bounded.
  const std::vector<double> g2 = grid(std::min(points, 41));
  const std::vector<double> g3 = grid(std::min(points, 16));
  const double r2_ref = std::sqrt(3.0 / (2.0 * pi * lambda));

  Table t;
  t.columns = {"pdf", "x_km", "y_km", "z_km", "density"};
  for (double r : g1) t.rows.push_back({std::string("marginal_r1"), num(r), Cell{}, Cell{}, num(marginal_pdf_r1(r, lambda))});
  for (double r : g1) t.rows.push_back({std::string("marginal_r2"), Cell{}, num(r), Cell{}, num(marginal_pdf_r2(r, lambda))});
  for (double r : g1)
    t.rows.push_back({std::string("conditional_r1_given_r2"), num(r), num(r2_ref), Cell{},
                      num(conditional_pdf_r1_given_r2(r, r2_ref))});
  for (double y : g2)
    for (double z : g2)
      t.rows.push_back({std::string("joint_r2_r3"), Cell{}, num(y), num(z), num(joint_pdf_r2_r3(y, z, lambda))});
  for (double x : g3)
    for (double y : g3)
      for (double z : g3)
        t.rows.push_back({std::string("joint_r123"), num(x), num(y), num(z), num(joint_pdf_r123({x, y, z}, lambda))});
  return t;
}

std::vector<CheckOutcome> run_validation(const RunConfig& cfg) {
  cfg.validate();
  std::vector<CheckOutcome> out;
  auto record = [&out](const std::string& name, bool ok, const std::string& detail) {
    out.push_back({name, ok ? CheckOutcome::Status::Pass : CheckOutcome::Status::Fail, detail});
  };
  auto fmt = [](double v) { return format_double(v); };
  const double lambda = cfg.network.lambda;
  const QuadratureSpec quad{};

  {
    double worst = 0.0;
    worst = std::max(worst, std::abs(integrate_1d([&](double r) { return marginal_pdf_r1(r, lambda); }, 0.0, INFINITY, quad).value - 1.0));
    worst = std::max(worst, std::abs(integrate_1d([&](double r) { return marginal_pdf_r2(r, lambda); }, 0.0, INFINITY, quad).value - 1.0));
    worst = std::max(worst, std::abs(integrate_ordered_2d([&](double y, double z) { return joint_pdf_r2_r3(y, z, lambda); }, quad).value - 1.0));
    worst = std::max(worst, std::abs(integrate_ordered_3d([&](double x, double y, double z) { return joint_pdf_r123({x, y, z}, lambda); }, quad).value - 1.0));
    const double r2 = 0.3;
    worst = std::max(worst, std::abs(integrate_1d([&](double x) { return conditional_pdf_r1_given_r2(x, r2); }, 0.0, r2, quad).value - 1.0));
    record("pdf normalization", worst <= 1e-6, "max |integral - 1| = " + fmt(worst));
  }
  {
    double worst = 0.0;
    const double scale = 1.0 / std::sqrt(pi * lambda);
    for (double a : {0.3, 0.7, 1.0, 1.5, 2.2}) {
      const double y = a * scale, z = 1.3 * y;
      const double joint23 = integrate_1d([&](double x) { return joint_pdf_r123({x, y, z}, lambda); }, 0.0, y, quad).value;
      worst = std::max(worst, std::abs(joint23 - joint_pdf_r2_r3(y, z, lambda)) / joint_pdf_r2_r3(y, z, lambda));
      const double m2 = integrate_1d([&](double zz) { return joint_pdf_r2_r3(y, zz, lambda); }, y, INFINITY, quad).value;
      worst = std::max(worst, std::abs(m2 - marginal_pdf_r2(y, lambda)) / marginal_pdf_r2(y, lambda));
      const double x = 0.4 * y;
      const double cond = joint_pdf_r123({x, y, z}, lambda) / joint_pdf_r2_r3(y, z, lambda);
      worst = std::max(worst, std::abs(cond - conditional_pdf_r1_given_r2(x, y)) / conditional_pdf_r1_given_r2(x, y));
    }
    record("marginal consistency chain", worst <= 1e-8, "max relative deviation = " + fmt(worst));
  }
  {
    NetworkParams p = cfg.network;
    p.eta = 4.0;
    const AnalyticOptions general{QuadratureSpec{}, false};
    double worst = 0.0;
    for (double t : {0.1, 1.0, 10.0}) {
      worst = std::max(worst, std::abs(coverage_best(t, p) - coverage_best(t, p, general)));
      for (bool ic : {false, true}) {
        worst = std::max(worst, std::abs(coverage_blackout_nocoop(t, p, ic) - coverage_blackout_nocoop(t, p, ic, general)));
        worst = std::max(worst, std::abs(coverage_blackout_coop(t, p, ic) - coverage_blackout_coop(t, p, ic, general)));
      }
    }
    record("eta=4 closed forms vs general forms", worst <= 1e-6, "max deviation = " + fmt(worst));
  }
  if (cfg.network.eta == 4.0 && cfg.network.noise_power == 0.0) {
    const double closed = 1.0 / (1.0 + (pi / 2.0 - std::atan(1.0)));
    const double dev = std::abs(coverage_best(1.0, cfg.network) - closed);
    record("best-connected anchor at 0 dB", dev <= 1e-4, "deviation = " + fmt(dev));
  } else {
    out.push_back({"best-connected anchor at 0 dB", CheckOutcome::Status::Skipped, "needs eta=4, noise=0"});
  }

  const std::vector<double> grid13 = uniform_grid(-10.0, 20.0, 2.5);
  std::vector<CoverageCurve> curves;
  for (const SchemeSpec& s : kAnalyticSchemes) curves.push_back(coverage_curve(s, cfg.network, grid13));
  {
    bool ok = true;
    std::string detail = "all curves in [0,1] and non-increasing";
    for (const CoverageCurve& c : curves)
      for (std::size_t i = 0; i < c.values.size(); ++i) {
        if (c.values[i] < 0.0 || c.values[i] > 1.0 || (i > 0 && c.values[i] > c.values[i - 1] + 1e-9)) {
          ok = false;
          detail = scheme_id(c.scheme) + " violates bounds/monotonicity at " + fmt(c.thresholds_db[i]) + " dB";
        }
      }
    record("coverage bounds and monotonicity", ok, detail);
  }
  {
    // nocoop <= coop for the same IC setting; no IC <= IC for the same association
    bool ok = true;
    for (std::size_t i = 0; i < grid13.size(); ++i) {
      ok = ok && curves[1].values[i] <= curves[3].values[i] + 1e-9;
      ok = ok && curves[2].values[i] <= curves[4].values[i] + 1e-9;
      ok = ok && curves[1].values[i] <= curves[2].values[i] + 1e-9;
      ok = ok && curves[3].values[i] <= curves[4].values[i] + 1e-9;
    }
    record("coverage ordering across schemes", ok, ok ? "ordering holds on 13-point grid" : "ordering violated");
  }
  if (cfg.network.noise_power == 0.0) {
    NetworkParams other = cfg.network;
    other.lambda = cfg.network.lambda * 2.0;
    double worst = 0.0;
    for (const SchemeSpec& s : kAnalyticSchemes)
      for (double t : {0.1, 1.0, 10.0}) worst = std::max(worst, std::abs(coverage(s, t, cfg.network) - coverage(s, t, other)));
    record("lambda invariance (noise-free)", worst <= 1e-6, "max deviation = " + fmt(worst));
  } else {
    out.push_back({"lambda invariance (noise-free)", CheckOutcome::Status::Skipped, "noise_power > 0"});
  }

  const std::uint64_t trials = cfg.simulation.trials;
  if (trials < 10000) {
    out.push_back({"analytic vs Monte Carlo", CheckOutcome::Status::Skipped, "skipped: underpowered"});
    out.push_back({"seeded determinism", CheckOutcome::Status::Skipped, "skipped: underpowered"});
    return out;
  }
  {
    const std::vector<double> grid = uniform_grid(-10.0, 20.0, 1.0);
    const std::vector<SchemeSpec> schemes(std::begin(kAnalyticSchemes), std::end(kAnalyticSchemes));
    const SimulationTally tally = simulate(schemes, cfg.network, cfg.simulation, to_linear(grid));
    const double tol = std::max(0.015, 5.0 * 0.5 / std::sqrt(static_cast<double>(trials)));
    double worst = 0.0;
    for (std::size_t k = 0; k < schemes.size(); ++k) {
      const CoverageCurve a = coverage_curve(schemes[k], cfg.network, grid);
      const CoverageCurve m = coverage_from_tally(tally, k, schemes[k], cfg.network, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - m.values[i]));
    }
    record("analytic vs Monte Carlo", worst <= tol, "max |analytic - mc| = " + fmt(worst) + " (tol " + fmt(tol) + ")");
  }
  {
    SimulationSpec small = cfg.simulation;
    small.trials = 2000;
    small.batch_size = 256;
    const std::vector<double> th = {0.1, 1.0, 10.0};
    const SchemeSpec s[] = {kAnalyticSchemes[0], kAnalyticSchemes[4]};
    const SimulationTally a = simulate(s, cfg.network, small, th);
    const SimulationTally b = simulate(s, cfg.network, small, th);
    const SimulationTally c = simulate_serial(s, cfg.network, small, th);
    bool ok = true;
    for (std::size_t k = 0; k < 2; ++k) {
      ok = ok && a.schemes[k].covered == b.schemes[k].covered && a.schemes[k].sum_log == b.schemes[k].sum_log;
      ok = ok && a.schemes[k].covered == c.schemes[k].covered;
      ok = ok && std::abs(a.schemes[k].sum_log - c.schemes[k].sum_log) <= 1e-9 * std::abs(c.schemes[k].sum_log);
    }
    record("seeded determinism", ok, ok ? "repeat and serial runs agree" : "runs differ");
  }
  return out;
}

namespace {

struct CliOptions {
  std::string config_path;
  std::optional<double> lambda, eta;
  std::optional<std::uint64_t> trials, seed;
  std::string scheme;
  bool ic = false;
  bool coherent = false;
  std::string out_path;
  std::string format;
  double tmin = -10.0, tmax = 20.0, tstep = 1.0;
  std::optional<double> vmin, vmax, vstep;
  std::vector<double> delays;
  std::string mode = "both";
  int points = 61;
};

void add_common(CLI::App* sub, CliOptions& o) {
  sub->add_option("--config", o.config_path, "JSON config file");
  sub->add_option("--lambda", o.lambda, "BS intensity (BS/km^2)");
  sub->add_option("--eta", o.eta, "path-loss exponent");
  sub->add_option("--trials", o.trials, "Monte Carlo trials");
  sub->add_option("--seed", o.seed, "Monte Carlo seed");
  sub->add_option("--out", o.out_path, "output file (stdout when omitted)");
  sub->add_option("--format", o.format, "csv or json");
}

void add_scheme(CLI::App* sub, CliOptions& o, const std::string& def) {
  sub->add_option("--scheme", o.scheme, "best, skip, skip-comp or all")->default_str(def);
  sub->add_flag("--ic", o.ic, "nearest-BS interference cancellation");
  sub->add_flag("--coherent", o.coherent, "phase-aligned CoMP benchmark (Monte Carlo only)");
}

RunConfig resolve(const CliOptions& o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  if (o.lambda) cfg.network.lambda = *o.lambda;
  if (o.eta) cfg.network.eta = *o.eta;
  if (o.trials) cfg.simulation.trials = *o.trials;
  if (o.seed) cfg.simulation.seed = *o.seed;
  if (!o.delays.empty()) {
    cfg.ho_delays = o.delays;
    cfg.mobility.ho_delay_s = o.delays.front();
  }
  if (!o.out_path.empty()) cfg.output_path = o.out_path;
  if (!o.format.empty()) cfg.output_format = parse_output_format(o.format);
  cfg.validate();
  return cfg;
}

std::vector<SchemeSpec> resolve_schemes(const CliOptions& o, const std::string& def) {
  const std::string& name = o.scheme.empty() ? def : o.scheme;
  if (name == "all") {
    if (o.coherent) return {{Association::SkipCoop, false, true}, {Association::SkipCoop, true, true}};
    return {std::begin(kAnalyticSchemes), std::end(kAnalyticSchemes)};
  }
  SchemeSpec s = parse_scheme_id(name);
  s.ic = s.ic || o.ic;
  s.coherent = s.coherent || o.coherent;
  return {validate_scheme(s)};
}

void emit(const RunConfig& cfg, const Table& t, const std::string& command, std::ostream& out) {
  const nlohmann::json meta = output_meta(cfg, command);
  if (cfg.output_path.empty() || cfg.output_path == "-")
    write_table(out, t, cfg.output_format, meta);
  else
    write_table_file(cfg.output_path, t, cfg.output_format, meta);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coverage and mobility-aware throughput of HO skipping with CoMP in PPP cellular networks",
               kToolName};
  app.require_subcommand(1);
  CliOptions o;

  auto* cov = app.add_subcommand("coverage", "coverage probability vs SINR threshold");
  add_common(cov, o);
  add_scheme(cov, o, "best");
  cov->add_option("--mode", o.mode, "analytic, mc or both")->capture_default_str();
  cov->add_option("--tmin-db", o.tmin, "lowest threshold (dB)")->capture_default_str();
  cov->add_option("--tmax-db", o.tmax, "highest threshold (dB)")->capture_default_str();
  cov->add_option("--tstep-db", o.tstep, "threshold step (dB)")->capture_default_str();

  auto* tab = app.add_subcommand("table1", "spectral efficiency of every scheme");
  add_common(tab, o);

  auto* thr = app.add_subcommand("throughput", "average throughput vs velocity");
  add_common(thr, o);
  add_scheme(thr, o, "all");
  thr->add_option("--vmin", o.vmin, "lowest velocity (km/h), default 0");
  thr->add_option("--vmax", o.vmax, "highest velocity (km/h), default 160");
  thr->add_option("--vstep", o.vstep, "velocity step (km/h), default 10");
  thr->add_option("--delay", o.delays, "HO delay(s) in seconds")->delimiter(',');

  auto* val = app.add_subcommand("validate", "run the invariant self-check");
  add_common(val, o);

  auto* dist = app.add_subcommand("distance", "dump nearest-BS distance densities");
  add_common(dist, o);
  dist->add_option("--points", o.points, "grid points for the 1-D densities")->capture_default_str();

  std::vector<std::string> argv_store = {kToolName};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    const RunConfig cfg = resolve(o);
    if (cov->parsed()) {
      const CoverageMode mode = parse_coverage_mode(o.mode);
      emit(cfg, coverage_table(cfg, resolve_schemes(o, "best"), uniform_grid(o.tmin, o.tmax, o.tstep), mode), "coverage", out);
    } else if (tab->parsed()) {
      emit(cfg, table1_table(cfg), "table1", out);
    } else if (thr->parsed()) {
      std::vector<double> velocities;
      if (o.vmin || o.vmax || o.vstep)
        velocities = uniform_grid(o.vmin.value_or(0.0), o.vmax.value_or(160.0), o.vstep.value_or(10.0));
      else if (cfg.velocity_from_file)
        velocities = {cfg.mobility.velocity_kmh};
      else
        velocities = uniform_grid(0.0, 160.0, 10.0);
      emit(cfg, throughput_table(cfg, resolve_schemes(o, "all"), velocities, cfg.ho_delays), "throughput", out);
    } else if (dist->parsed()) {
      emit(cfg, distance_table(cfg, o.points), "distance", out);
    } else if (val->parsed()) {
      bool all_ok = true;
      for (const CheckOutcome& c : run_validation(cfg)) {
        const char* tag = c.status == CheckOutcome::Status::Pass   ? "PASS"
                          : c.status == CheckOutcome::Status::Fail ? "FAIL"
                                                                   : "SKIP";
        out << "[" << tag << "] " << c.name << ": " << c.detail << '\n';
        all_ok = all_ok && c.status != CheckOutcome::Status::Fail;
      }
      return all_ok ? 0 : 1;
    }
  } catch (const InvalidParameter& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const NumericalFailure& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const TooFewPoints& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}

}  // namespace hoskip
