#include "dikin/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dikin/afs.hpp"
#include "dikin/csv.hpp"
#include "dikin/errors.hpp"
#include "dikin/orbits.hpp"
#include "dikin/stability.hpp"
#include "dikin/svg.hpp"

namespace dikin::cli {

namespace {

using linalg::Vec;

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + path);
  return out;
}

afs::LinearProgram resolve_lp(const std::string& spec) {
  if (spec == "castillo-barnes") return afs::castillo_barnes();
  return afs::load_lp_json(spec);
}

struct SweepFlags {
  std::size_t dim = 3;
  double theta_min = 0.5, theta_max = 1.0;
  std::size_t steps = 100;
  std::string projection = "sorted-middle";
  std::uint64_t seed = 0;
  std::size_t seeds_per_theta = 1;
  std::size_t emit = 64;
  orbits::OrbitConfig cfg;
  bool serial = false;
};

void add_orbit_cfg_flags(CLI::App* cmd, orbits::OrbitConfig& cfg) {
  cmd->add_option("--burn-in", cfg.burn_in, "steps discarded before the tail");
  cmd->add_option("--burn-in-max", cfg.burn_in_max,
                  "burn-in cap while unresolved");
  cmd->add_option("--keep", cfg.keep, "tail length kept for matching");
  cmd->add_option("--period-max", cfg.period_max, "largest period probed");
  cmd->add_option("--match-tol", cfg.match_tol, "cyclic match tolerance");
}

void scatter_from_table(const csv::Table& table, const std::string& xcol,
                        const std::string& ypattern, const std::string& out,
                        const std::string& title, double marker) {
  const auto xi = table.column_index(xcol);
  const auto ys = table.match_columns(ypattern);
  const std::vector<double> xs = table.numeric_column(xi);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t yi : ys) {
    const std::vector<double> yv = table.numeric_column(yi);
    for (std::size_t k = 0; k < yv.size(); ++k)
      if (std::isfinite(xs[k]) && std::isfinite(yv[k]))
        pts.emplace_back(xs[k], yv[k]);
  }
  svg::ScatterOptions opts;
  opts.title = title;
  opts.x_label = xcol;
  opts.y_label = ypattern;
  opts.marker_radius = marker;
  svg::write_file(out, svg::scatter(pts, opts));
}

int cmd_dikin_orbit(const std::size_t dim, double theta, std::uint64_t seed,
                    const orbits::OrbitConfig& cfg_in, const std::string& out,
                    const std::string& svg_out) {
  orbits::OrbitConfig cfg = cfg_in;
  cfg.seed = seed;
  Rng rng(seed);
  const StateVector w0 = random_state(dim, rng);
  const Theta th(theta);
  auto step = [th](const StateVector& w) { return dikin_step(th, w); };
  auto [summary, tail] = orbits::classify_orbit_with_tail(step, w0, cfg);
  if (!summary.error.empty()) throw Error(summary.error);

  std::cout << "theta " << fmt(theta) << " dim " << dim << ": "
            << orbits::to_string(summary.classification);
  if (summary.classification == orbits::Classification::Periodic)
    std::cout << " period " << summary.period;
  if (summary.tolerance_widened) std::cout << " (tolerance widened)";
  std::cout << " after burn-in " << summary.burn_in_used << "\n";

  if (!out.empty()) {
    auto os = open_out(out);
    os << "iter";
    for (std::size_t i = 1; i <= dim; ++i) os << ",w_" << i;
    os << "\n";
    for (std::size_t k = 0; k < tail.size(); ++k) {
      os << summary.burn_in_used + k + 1;
      for (double v : tail[k]) os << ',' << fmt(v, "%.17g");
      os << "\n";
    }
  }
  if (!svg_out.empty()) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < tail.size(); ++k)
      for (double v : tail[k]) pts.emplace_back(double(k), v);
    svg::ScatterOptions opts;
    opts.title = "orbit tail, theta=" + fmt(theta);
    opts.x_label = "tail step";
    opts.y_label = "w_i";
    svg::write_file(svg_out, svg::scatter(pts, opts));
  }
  return 0;
}

int cmd_dikin_sweep(const SweepFlags& fl, const std::string& out,
                    const std::string& svg_out) {
  orbits::OrbitConfig cfg = fl.cfg;
  cfg.seed = fl.seed;
  const auto grid = orbits::theta_grid(fl.theta_min, fl.theta_max, fl.steps);
  const orbits::Projection proj = orbits::Projection::parse(fl.projection);
  const auto points =
      fl.serial
          ? orbits::feigenbaum_sweep_serial(fl.dim, grid, proj, cfg,
                                            fl.seeds_per_theta, fl.emit)
          : orbits::feigenbaum_sweep(fl.dim, grid, proj, cfg,
                                     fl.seeds_per_theta, fl.emit);
  {
    auto os = open_out(out);
    orbits::write_sweep_csv(os, points, fl.emit);
  }
  if (!svg_out.empty()) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& pt : points)
      for (double v : pt.values)
        if (std::isfinite(v)) pts.emplace_back(pt.theta, v);
    svg::ScatterOptions opts;
    opts.title = "omega-limit sweep, dim=" + std::to_string(fl.dim) + ", " +
                 proj.describe();
    opts.x_label = "theta";
    opts.y_label = proj.describe();
    svg::write_file(svg_out, svg::scatter(pts, opts));
  }
  std::size_t errors = 0;
  for (const auto& pt : points)
    if (!pt.summary.error.empty()) ++errors;
  std::cout << "sweep: " << points.size() << " points, " << errors
            << " in-band errors -> " << out << "\n";
  return 0;
}

int cmd_afs_solve(const std::string& lp_spec, double theta,
                  const afs::SolverConfig& cfg, const std::string& out,
                  const std::string& svg_out) {
  const afs::LinearProgram lp = resolve_lp(lp_spec);
  const afs::PdIterate start = afs::default_start(lp);
  const afs::SolveTrace trace = afs::solve(lp, start, Theta(theta), cfg);
  if (!out.empty()) {
    auto os = open_out(out);
    afs::write_trace_csv(os, lp, trace);
  }
  const afs::TraceRow& last = trace.rows.back();
  std::cout << lp.name << " theta " << fmt(theta) << ": "
            << afs::to_string(trace.termination) << " after "
            << trace.rows.size() - 1 << " iterations, gap " << fmt(last.gap)
            << ", y = (";
  for (std::size_t i = 0; i < last.y.size(); ++i)
    std::cout << (i ? ", " : "") << fmt(last.y[i]);
  std::cout << ")\n";
  if (!trace.message.empty()) std::cout << "  " << trace.message << "\n";
  if (!svg_out.empty()) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : trace.rows)
      if (r.y.size() >= 2) pts.emplace_back(r.y[0], r.y[1]);
    svg::ScatterOptions opts;
    opts.title = lp.name + " dual iterates, theta=" + fmt(theta);
    opts.x_label = "y_1";
    opts.y_label = "y_2";
    svg::write_file(svg_out, svg::scatter(pts, opts));
  }
  return trace.termination == afs::Termination::Converged ? 0 : 1;
}

int cmd_afs_sweep(const std::string& lp_spec, double theta_min,
                  double theta_max, std::size_t steps,
                  const std::string& projection, const afs::SolverConfig& scfg,
                  orbits::OrbitConfig ocfg, std::size_t emit,
                  const std::string& out, const std::string& svg_out) {
  const afs::LinearProgram lp = resolve_lp(lp_spec);
  const afs::PdIterate start = afs::default_start(lp);
  const auto grid = orbits::theta_grid(theta_min, theta_max, steps);
  const orbits::Projection proj = orbits::Projection::parse(projection);

  std::vector<orbits::SweepPoint> points(grid.size());
  const std::ptrdiff_t total = std::ptrdiff_t(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    orbits::SweepPoint pt;
    pt.theta = grid[std::size_t(i)];
    pt.seed = 0;
    try {
      const afs::SolveTrace trace =
          afs::solve(lp, start, Theta(pt.theta), scfg);
      std::vector<Vec> tail;
      for (const auto& r : trace.rows)
        if (r.recorded) tail.push_back(r.w_scaled);
      pt.summary = orbits::classify_tail(tail, ocfg);
      const std::size_t take = std::min(emit, tail.size());
      for (std::size_t k = tail.size() - take; k < tail.size(); ++k)
        pt.values.push_back(proj.apply(tail[k]));
    } catch (const Error& e) {
      pt.summary.error = e.what();
    }
    points[std::size_t(i)] = std::move(pt);
  }
  {
    auto os = open_out(out);
    orbits::write_sweep_csv(os, points, emit);
  }
  if (!svg_out.empty()) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& pt : points)
      for (double v : pt.values)
        if (std::isfinite(v)) pts.emplace_back(pt.theta, v);
    svg::ScatterOptions opts;
    opts.title = lp.name + " scaled-w sweep, " + proj.describe();
    opts.x_label = "theta";
    opts.y_label = proj.describe();
    svg::write_file(svg_out, svg::scatter(pts, opts));
  }
  std::cout << "afs-sweep: " << points.size() << " thetas -> " << out << "\n";
  return 0;
}

int cmd_attractor(const std::string& lp_spec, double theta,
                  const afs::SolverConfig& cfg, std::size_t restarts,
                  double sigma, std::uint64_t seed, const std::string& out,
                  const std::string& svg_out) {
  const afs::LinearProgram lp = resolve_lp(lp_spec);
  const afs::AttractorCapture cap =
      afs::capture_attractor(lp, Theta(theta), cfg, restarts, sigma, seed);
  {
    auto os = open_out(out);
    os << "run,iter,gap";
    for (std::size_t i = 1; i <= lp.m(); ++i) os << ",y_" << i;
    os << "\n";
    for (const auto& p : cap.points) {
      os << p.run << ',' << p.iter << ',' << fmt(p.gap, "%.17g");
      for (double v : p.y) os << ',' << fmt(v, "%.17g");
      os << "\n";
    }
  }
  if (!svg_out.empty()) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : cap.points)
      if (p.y.size() >= 2) pts.emplace_back(p.y[0], p.y[1]);
    svg::ScatterOptions opts;
    opts.title = lp.name + " dual omega-limit, theta=" + fmt(theta);
    opts.x_label = "y_1";
    opts.y_label = "y_2";
    svg::write_file(svg_out, svg::scatter(pts, opts));
  }
  std::cout << "attractor: " << cap.points.size() << " recorded points (gap <= "
            << fmt(cfg.record_gap_threshold) << ") from " << restarts
            << " runs (" << cap.failed_runs << " failed) -> " << out << "\n";
  return 0;
}

int cmd_analytic(const std::string& report, const std::string& out_path) {
  if (report != "thresholds")
    throw UsageError("unknown report '" + report + "' (available: thresholds)");
  std::ostringstream os;
  os << "bifurcation thresholds of the scaled process\n";
  os << "  period-2 onset (global attractor bound):  2/3 = "
     << fmt(2.0 / 3.0, "%.12g") << "\n";
  os << "  two-coordinate reduction bound:           (1+sqrt(5))/4 = "
     << fmt((1.0 + std::sqrt(5.0)) / 4.0, "%.12g") << "\n";
  const Theta t4 = stability::find_period4_threshold();
  os << "  period-4 threshold (transversal eigenvalue = -1): "
     << fmt(t4.value(), "%.12g") << "\n";
  os << "  superstable logistic parameters:\n";
  for (int m = 2; m <= 4; ++m) {
    const Theta th = stability::logistic_superstable_theta(m);
    os << "    m = " << m << ":  theta = " << fmt(th.value(), "%.12g") << "\n";
  }
  os << "  cyclic periodic point sufficient-condition thresholds:\n";
  for (std::size_t n = 3; n <= 5; ++n)
    os << "    n = " << n
       << ":  theta >= " << fmt(stability::percondit_threshold(n), "%.12g")
       << "\n";
  std::cout << os.str();
  if (!out_path.empty()) {
    auto f = open_out(out_path);
    f << os.str();
  }
  return 0;
}

int cmd_render(const std::string& in, const std::string& xcol,
               const std::string& ycol, const std::string& out,
               const std::string& title, double marker) {
  const csv::Table table = csv::read_file(in);
  scatter_from_table(table, xcol, ycol, out, title, marker);
  std::cout << "render: " << table.rows.size() << " rows -> " << out << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"numerical laboratory for a quadratic interior-point template"};
  app.require_subcommand(1);

  // dikin-orbit
  auto* orbit = app.add_subcommand("dikin-orbit", "classify a single orbit");
  std::size_t o_dim = 3;
  double o_theta = 0.8;
  std::uint64_t o_seed = 0;
  std::string o_out, o_svg;
  orbits::OrbitConfig o_cfg;
  orbit->add_option("--dim", o_dim, "dimension")->check(CLI::Range(2, 1000));
  orbit->add_option("--theta", o_theta, "step fraction")->required();
  orbit->add_option("--seed", o_seed, "random start seed")->required();
  orbit->add_option("--out", o_out, "tail CSV path");
  orbit->add_option("--svg", o_svg, "tail scatter SVG path");
  add_orbit_cfg_flags(orbit, o_cfg);

  // dikin-sweep
  auto* sweep = app.add_subcommand("dikin-sweep", "Feigenbaum sweep");
  SweepFlags s;
  std::string s_out, s_svg;
  sweep->add_option("--dim", s.dim)->check(CLI::Range(2, 1000));
  sweep->add_option("--theta-min", s.theta_min)->required();
  sweep->add_option("--theta-max", s.theta_max)->required();
  sweep->add_option("--steps", s.steps, "grid points in [min, max)")->required();
  sweep->add_option("--projection", s.projection,
                    "sorted-middle | fixed-index:<i> | sorted-index:<i>");
  sweep->add_option("--seed", s.seed)->required();
  sweep->add_option("--seeds-per-theta", s.seeds_per_theta);
  sweep->add_option("--emit", s.emit, "projected tail samples per row");
  sweep->add_flag("--serial", s.serial, "use the serial reference sweep");
  sweep->add_option("--out", s_out)->required();
  sweep->add_option("--svg", s_svg);
  add_orbit_cfg_flags(sweep, s.cfg);

  // afs-solve
  auto* solve = app.add_subcommand("afs-solve", "run the modified solver");
  std::string a_lp = "castillo-barnes", a_out, a_svg;
  double a_theta = 0.5;
  afs::SolverConfig a_cfg;
  solve->add_option("--lp", a_lp, "LP JSON path or 'castillo-barnes'");
  solve->add_option("--theta", a_theta)->required();
  solve->add_option("--epsilon", a_cfg.epsilon);
  solve->add_option("--max-iters", a_cfg.max_iters);
  solve->add_option("--record-gap", a_cfg.record_gap_threshold);
  solve->add_option("--out", a_out)->required();
  solve->add_option("--svg", a_svg);

  // afs-sweep
  auto* asweep = app.add_subcommand("afs-sweep", "sweep the solver over theta");
  std::string w_lp = "castillo-barnes", w_out, w_svg,
              w_proj = "fixed-index:4";
  double w_min = 0.5, w_max = 1.0;
  std::size_t w_steps = 100, w_emit = 64;
  afs::SolverConfig w_scfg;
  orbits::OrbitConfig w_ocfg;
  w_ocfg.match_tol = 0.02;   // traces are short and not fully converged
  w_ocfg.period_max = 16;
  w_ocfg.keep = 64;
  asweep->add_option("--lp", w_lp);
  asweep->add_option("--theta-min", w_min)->required();
  asweep->add_option("--theta-max", w_max)->required();
  asweep->add_option("--steps", w_steps)->required();
  asweep->add_option("--projection", w_proj);
  asweep->add_option("--emit", w_emit);
  asweep->add_option("--epsilon", w_scfg.epsilon);
  asweep->add_option("--max-iters", w_scfg.max_iters);
  asweep->add_option("--record-gap", w_scfg.record_gap_threshold);
  asweep->add_option("--match-tol", w_ocfg.match_tol);
  asweep->add_option("--period-max", w_ocfg.period_max);
  asweep->add_option("--out", w_out)->required();
  asweep->add_option("--svg", w_svg);

  // attractor
  auto* attr = app.add_subcommand("attractor", "dual omega-limit capture");
  std::string t_lp = "castillo-barnes", t_out, t_svg;
  double t_theta = 0.94, t_sigma = 0.05;
  std::size_t t_restarts = 64;
  std::uint64_t t_seed = 0;
  afs::SolverConfig t_cfg;
  attr->add_option("--lp", t_lp);
  attr->add_option("--theta", t_theta)->required();
  attr->add_option("--restarts", t_restarts, "pooled seeded solves");
  attr->add_option("--sigma", t_sigma, "start perturbation scale");
  attr->add_option("--seed", t_seed)->required();
  attr->add_option("--epsilon", t_cfg.epsilon);
  attr->add_option("--max-iters", t_cfg.max_iters);
  attr->add_option("--record-gap", t_cfg.record_gap_threshold);
  attr->add_option("--out", t_out)->required();
  attr->add_option("--svg", t_svg);

  // analytic
  auto* ana = app.add_subcommand("analytic", "closed-form reports");
  std::string n_report = "thresholds", n_out;
  ana->add_option("--report", n_report, "report name (thresholds)");
  ana->add_option("--out", n_out, "also write the report to a file");

  // render
  auto* ren = app.add_subcommand("render", "CSV -> SVG scatter");
  std::string r_in, r_x, r_y, r_out, r_title;
  double r_marker = 1.4;
  ren->add_option("--in", r_in)->required();
  ren->add_option("--x", r_x, "x column name")->required();
  ren->add_option("--y", r_y, "y column name or prefix wildcard")->required();
  ren->add_option("--out", r_out)->required();
  ren->add_option("--title", r_title);
  ren->add_option("--marker-radius", r_marker);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (orbit->parsed())
      return cmd_dikin_orbit(o_dim, o_theta, o_seed, o_cfg, o_out, o_svg);
    if (sweep->parsed()) return cmd_dikin_sweep(s, s_out, s_svg);
    if (solve->parsed())
      return cmd_afs_solve(a_lp, a_theta, a_cfg, a_out, a_svg);
    if (asweep->parsed())
      return cmd_afs_sweep(w_lp, w_min, w_max, w_steps, w_proj, w_scfg, w_ocfg,
                           w_emit, w_out, w_svg);
    if (attr->parsed())
      return cmd_attractor(t_lp, t_theta, t_cfg, t_restarts, t_sigma, t_seed,
                           t_out, t_svg);
    if (ana->parsed()) return cmd_analytic(n_report, n_out);
    if (ren->parsed())
      return cmd_render(r_in, r_x, r_y, r_out, r_title, r_marker);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "usage error: no subcommand\n";
  return 2;
}

}  // namespace dikin::cli
