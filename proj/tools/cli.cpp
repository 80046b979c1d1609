#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "harmonic_aaa/conformal.hpp"
#include "harmonic_aaa/errors.hpp"
#include "harmonic_aaa/geometry.hpp"
#include "harmonic_aaa/io.hpp"
#include "harmonic_aaa/laplace.hpp"
#include "harmonic_aaa/svg.hpp"

namespace harmonic_aaa::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Solver flags shared by solve and map.
struct SolverFlags {
  std::optional<std::size_t> n_smooth;
  std::optional<std::size_t> mmax;
  double tol = 1e-13;
  int lawson = 0;
  std::optional<std::size_t> cluster_corners;

  void add_to(CLI::App& app) {
    app.add_option("--n-smooth", n_smooth, "degree N of the smooth part (default 10 + ceil(ln n))");
    app.add_option("--mmax", mmax, "AAA degree cap (default 1000; 200 with --cluster-corners)");
    app.add_option("--tol", tol, "AAA relative tolerance")->capture_default_str();
    app.add_option("--lawson", lawson, "Lawson reweighting passes")->check(CLI::IsMember({0, 1}))->capture_default_str();
    app.add_option("--cluster-corners", cluster_corners, "insert K exponentially clustered points per corner side")
        ->check(CLI::PositiveNumber);
  }

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.smooth_degree = n_smooth;
    cfg.mmax = mmax;
    cfg.aaa_tol = tol;
    cfg.lawson = lawson;
    if (cluster_corners) cfg.cluster = ClusterConfig{*cluster_corners, -6.0};
    return cfg;
  }
};

struct GridSpec {
  GridWindow window;
  std::size_t nx = 0;
  std::size_t ny = 0;
};

GridSpec parse_grid(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(field, &used));
      if (used != field.size()) throw UsageError("");
    } catch (const std::exception&) {
      throw UsageError("--grid: expected xmin,xmax,ymin,ymax,nx,ny, got '" + text + "'");
    }
  }
  if (v.size() != 6 || !(v[0] < v[1]) || !(v[2] < v[3]) || v[4] < 2 || v[5] < 2 || v[4] != std::floor(v[4]) ||
      v[5] != std::floor(v[5])) {
    throw UsageError("--grid: expected xmin<xmax, ymin<ymax and integer nx, ny >= 2, got '" + text + "'");
  }
  return {{v[0], v[1], v[2], v[3]}, static_cast<std::size_t>(v[4]), static_cast<std::size_t>(v[5])};
}

Complex parse_center(const std::string& text) {
  try {
    return io::parse_complex(text);
  } catch (const InvalidInput& e) {
    throw UsageError(std::string("--center: ") + e.what());
  }
}

std::string write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  io::write_text(path.string(), text);
  return path.string();
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream out;
  fn(out);
  return out.str();
}

// Square window around the polygons; exterior solves get a wider margin.
GridSpec default_grid(const std::vector<PolygonRegion>& polys, SolveRegion region, std::size_t n) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& p : polys) {
    for (Complex v : p.vertices()) {
      xmin = std::min(xmin, v.real());
      xmax = std::max(xmax, v.real());
      ymin = std::min(ymin, v.imag());
      ymax = std::max(ymax, v.imag());
    }
  }
  const double margin = (region == SolveRegion::Exterior ? 0.5 : 0.05) * std::max(xmax - xmin, ymax - ymin);
  return {{xmin - margin, xmax + margin, ymin - margin, ymax + margin}, n, n};
}

void fill_solution(RunReport& report, const LaplaceSolution& sol) {
  report.samples = sol.samples.size();
  report.smooth_degree = sol.smooth_degree;
  report.total_poles = sol.all_poles.size();
  report.kept_poles = sol.potential.kept_poles.size();
  report.boundary_max_error = sol.potential.boundary_max_error;
  if (!sol.warning.empty()) report.extra.emplace_back("warning", sol.warning);
}

// Writes the solution artifacts shared by demo and solve.
void write_solution(RunReport& report, const LaplaceSolution& sol, const SolverConfig& cfg, const fs::path& dir,
                    const std::string& prefix, const std::optional<GridSpec>& grid,
                    const std::optional<fs::path>& svg_path) {
  report.outputs.push_back(
      write_file(dir / (prefix + "solution.json"), io::solution_to_json(sol, cfg).dump(2) + "\n"));
  report.outputs.push_back(write_file(dir / (prefix + "poles.csv"), render([&](std::ostream& o) {
                                        io::write_poles_csv(o, sol.all_poles, sol.potential.kept_poles);
                                      })));
  std::optional<svg::FieldLayer> layer;
  if (grid) {
    auto rows = evaluate_grid(sol.potential, grid->window, grid->nx, grid->ny);
    report.outputs.push_back(
        write_file(dir / (prefix + "field.csv"), render([&](std::ostream& o) { io::write_field_csv(o, rows); })));
    layer = svg::FieldLayer{std::move(rows), grid->nx, grid->ny};
  }
  if (svg_path) {
    report.outputs.push_back(write_file(*svg_path, svg::render({svg::solution_panel(sol, std::move(layer))})));
  }
}

void fill_map(RunReport& report, const ConformalMap& map) {
  fill_solution(report, map.solution);
  if (map.modulus) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8f", *map.modulus);
    report.extra.emplace_back("modulus", buf);
  }
  double ring = 0.0;
  double composition = 0.0;
  for (std::size_t j = 0; j < map.points.size(); ++j) {
    const Complex f = map.forward(map.points[j]);
    const double target = map.modulus && j >= map.inner_start ? *map.modulus : 1.0;
    ring = std::max(ring, std::abs(std::abs(f) - target));
    composition = std::max(composition, std::abs(map.inverse(f) - map.points[j]));
  }
  report.extra.emplace_back("forward_support", std::to_string(map.forward.size()));
  report.extra.emplace_back("inverse_support", std::to_string(map.inverse.size()));
  report.extra.emplace_back("max_abs_forward_minus_radius", sci(ring));
  report.extra.emplace_back("max_composition_residual", sci(composition));
}

void write_map(RunReport& report, const ConformalMap& map, const SolverConfig& cfg, const fs::path& dir,
               const std::string& prefix, const std::optional<fs::path>& svg_path) {
  report.outputs.push_back(write_file(dir / (prefix + "map.json"), io::map_to_json(map, cfg).dump(2) + "\n"));
  report.outputs.push_back(write_file(dir / (prefix + "poles.csv"), render([&](std::ostream& o) {
                                        io::write_poles_csv(o, map.solution.all_poles,
                                                            map.solution.potential.kept_poles);
                                      })));
  const auto lines = map_gridlines(map);
  report.outputs.push_back(write_file(dir / (prefix + "gridlines.csv"),
                                      render([&](std::ostream& o) { io::write_gridlines_csv(o, lines); })));
  if (svg_path) report.outputs.push_back(write_file(*svg_path, svg::render(svg::map_panels(map, lines))));
}

void set_x_squared(Boundary& b) {
  b.samples.values.clear();
  for (Complex z : b.samples.points) b.samples.values.push_back(z.real() * z.real());
}

std::string boundary_csv(const BoundarySamples& s) {
  return render([&](std::ostream& o) { io::write_boundary_csv(o, s); });
}

struct DemoFlags {
  std::string name;
  std::string out = ".";
  bool svg = false;
  std::size_t grid_n = 121;
  bool dedup = false;
  std::optional<std::size_t> cluster_corners;
};

RunReport run_demo(const DemoFlags& f) {
  RunReport report;
  report.command = "demo " + f.name;
  const fs::path dir(f.out);
  const Duplicates dup = f.dedup ? Duplicates::Remove : Duplicates::Keep;
  const std::string prefix = f.name + "_";
  const std::optional<fs::path> svg_path = f.svg ? std::optional(dir / (f.name + ".svg")) : std::nullopt;

  SolverConfig cfg;
  if (f.cluster_corners) {
    if (f.name != "l-shape") throw UsageError("--cluster-corners applies to the l-shape demo only");
    cfg.cluster = ClusterConfig{*f.cluster_corners, -6.0};
  }

  const auto solve_demo = [&](Boundary b, Complex center, SolveRegion region) {
    set_x_squared(b);
    report.outputs.push_back(write_file(dir / (prefix + "boundary.csv"), boundary_csv(b.samples)));
    const LaplaceSolution sol = region == SolveRegion::Interior ? solve_interior(b.samples, b.polygon, center, cfg)
                                                                : solve_exterior(b.samples, b.polygon, center, cfg);
    fill_solution(report, sol);
    if (f.name == "l-shape") {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.10f", evaluate_potential(sol.potential, {0.99, 0.99}).real());
      report.extra.emplace_back("re_w(0.99+0.99i)", buf);
    } else if (region == SolveRegion::Exterior) {
      report.extra.emplace_back("im_w(inf)", sci(evaluate_potential(sol.potential, {INFINITY, 0.0}).imag()));
    }
    write_solution(report, sol, cfg, dir, prefix, default_grid(sol.potential.polygons, region, f.grid_n), svg_path);
  };

  const auto map_demo = [&](const ConformalMap& map, const std::vector<const Boundary*>& loops) {
    if (loops.size() == 1) {
      report.outputs.push_back(write_file(dir / (prefix + "boundary.csv"), boundary_csv(loops[0]->samples)));
    } else {
      report.outputs.push_back(write_file(dir / (prefix + "outer_boundary.csv"), boundary_csv(loops[0]->samples)));
      report.outputs.push_back(write_file(dir / (prefix + "inner_boundary.csv"), boundary_csv(loops[1]->samples)));
    }
    fill_map(report, map);
    write_map(report, map, cfg, dir, prefix, svg_path);
  };

  if (f.name == "l-shape") {
    solve_demo(l_shape_boundary(0.01, dup), {0.5, 0.5}, SolveRegion::Interior);
  } else if (f.name == "blade") {
    solve_demo(blade_boundary(500, dup), {0.0, 0.0}, SolveRegion::Interior);
  } else if (f.name == "l-exterior") {
    solve_demo(l_shape_boundary(0.01, dup), {0.5, 0.5}, SolveRegion::Exterior);
  } else if (f.name == "map-l") {
    const Boundary b = l_shape_boundary(0.01, dup);
    map_demo(map_interior(b, {0.5, 0.5}, cfg), {&b});
  } else if (f.name == "map-l-exterior") {
    const Boundary b = l_shape_boundary(0.01, dup);
    map_demo(map_exterior(b, {0.5, 0.5}, cfg), {&b});
  } else if (f.name == "annulus") {
    const DoubleBoundary d = double_boundary(0.01, dup);
    map_demo(map_doubly_connected(d.outer, d.inner, {-0.25, -0.25}, cfg), {&d.outer, &d.inner});
  } else {
    throw UsageError("unknown demo '" + f.name + "'");
  }
  return report;
}

struct SolveFlags {
  std::string boundary;
  std::string region = "interior";
  std::string center;
  std::optional<std::string> vertices;
  std::optional<std::string> grid;
  std::optional<std::string> svg;
  std::string out = ".";
  SolverFlags solver;
};

RunReport run_solve(const SolveFlags& f) {
  RunReport report;
  report.command = "solve " + f.boundary;
  const Complex center = parse_center(f.center);
  const std::optional<GridSpec> grid = f.grid ? std::optional(parse_grid(*f.grid)) : std::nullopt;
  const SolverConfig cfg = f.solver.config();

  const Boundary b = io::load_boundary(f.boundary, f.vertices);
  const LaplaceSolution sol = f.region == "interior" ? solve_interior(b.samples, b.polygon, center, cfg)
                                                     : solve_exterior(b.samples, b.polygon, center, cfg);
  fill_solution(report, sol);
  write_solution(report, sol, cfg, fs::path(f.out), "", grid,
                 f.svg ? std::optional<fs::path>(*f.svg) : std::nullopt);
  return report;
}

struct MapFlags {
  std::string kind;
  std::vector<std::string> boundaries;
  std::string center;
  std::optional<std::string> vertices;
  std::optional<std::string> inner_vertices;
  std::optional<std::string> svg;
  std::string out = ".";
  SolverFlags solver;
};

RunReport run_map(const MapFlags& f) {
  RunReport report;
  report.command = "map " + f.kind;
  const bool annulus = f.kind == "annulus";
  if (annulus && f.boundaries.size() != 2) throw UsageError("map annulus needs two boundary files (outer, inner)");
  if (!annulus && f.boundaries.size() != 1) throw UsageError("map " + f.kind + " takes exactly one boundary file");
  const Complex center = parse_center(f.center);
  const SolverConfig cfg = f.solver.config();

  const Boundary outer = io::load_boundary(f.boundaries[0], f.vertices, io::ValueColumn::Optional);
  ConformalMap map;
  if (f.kind == "disk-interior") {
    map = map_interior(outer, center, cfg);
  } else if (f.kind == "disk-exterior") {
    map = map_exterior(outer, center, cfg);
  } else {
    const Boundary inner = io::load_boundary(f.boundaries[1], f.inner_vertices, io::ValueColumn::Optional);
    map = map_doubly_connected(outer, inner, center, cfg);
  }
  fill_map(report, map);
  write_map(report, map, cfg, fs::path(f.out), "", f.svg ? std::optional<fs::path>(*f.svg) : std::nullopt);
  return report;
}

struct EvalFlags {
  std::string solution;
  std::optional<std::string> points;
  std::optional<std::string> grid;
  std::string out = "field.csv";
};

RunReport run_eval(const EvalFlags& f) {
  if (f.points.has_value() == f.grid.has_value()) throw UsageError("eval needs exactly one of --points or --grid");
  RunReport report;
  report.command = "eval " + f.solution;
  const std::optional<GridSpec> grid = f.grid ? std::optional(parse_grid(*f.grid)) : std::nullopt;

  io::Json j = io::read_json(f.solution);
  // A map file carries its potential under "solution".
  if (j.contains("solution") && j["solution"].is_object()) j = j["solution"];
  const ComplexPotential w = io::potential_from_json(j);

  const std::vector<FieldRow> rows = grid ? evaluate_grid(w, grid->window, grid->nx, grid->ny)
                                          : evaluate_points(w, io::read_points_csv(*f.points));
  report.samples = rows.size();
  report.smooth_degree = w.smooth.degree;
  report.kept_poles = w.kept_poles.size();
  report.total_poles = j.value("total_poles", std::size_t{0});
  report.boundary_max_error = w.boundary_max_error;
  std::size_t valid = 0, outside = 0, failed = 0;
  for (const FieldRow& r : rows) {
    (r.mask == FieldMask::Valid ? valid : r.mask == FieldMask::Outside ? outside : failed) += 1;
  }
  report.extra.emplace_back("valid_rows", std::to_string(valid));
  report.extra.emplace_back("outside_rows", std::to_string(outside));
  report.extra.emplace_back("error_rows", std::to_string(failed));
  report.outputs.push_back(write_file(fs::path(f.out), render([&](std::ostream& o) { io::write_field_csv(o, rows); })));
  return report;
}

}  // namespace

void print_report(std::ostream& out, const RunReport& r) {
  out << "command: " << r.command << '\n'
      << "samples: " << r.samples << '\n'
      << "smooth_degree: " << r.smooth_degree << '\n'
      << "total_poles: " << r.total_poles << '\n'
      << "kept_poles: " << r.kept_poles << '\n'
      << "boundary_max_error: " << sci(r.boundary_max_error) << '\n';
  for (const auto& [key, value] : r.extra) out << key << ": " << value << '\n';
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", r.wall_time_s);
  out << "wall_time_s: " << buf << '\n';
  for (const auto& path : r.outputs) out << "output: " << path << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic functions and conformal maps from boundary samples via AAA rational approximation",
               "harmonic-aaa"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "harmonic-aaa 1.0.0");

  DemoFlags demo;
  auto* demo_cmd = app.add_subcommand("demo", "reproduce one of the built-in experiments");
  demo_cmd->add_option("name", demo.name, "l-shape | blade | l-exterior | map-l | map-l-exterior | annulus")
      ->required()
      ->check(CLI::IsMember({"l-shape", "blade", "l-exterior", "map-l", "map-l-exterior", "annulus"}));
  demo_cmd->add_option("--out", demo.out, "output directory")->capture_default_str();
  demo_cmd->add_flag("--svg", demo.svg, "also write <out>/<name>.svg");
  demo_cmd->add_option("--grid-n", demo.grid_n, "field grid nodes per axis")
      ->check(CLI::Range(std::size_t{2}, std::size_t{2000}))
      ->capture_default_str();
  demo_cmd->add_flag("--dedup", demo.dedup, "drop repeated segment endpoints before fitting");
  demo_cmd->add_option("--cluster-corners", demo.cluster_corners, "l-shape only: K clustered points per corner side")
      ->check(CLI::PositiveNumber);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Dirichlet problem from a boundary CSV (x,y,u)");
  solve_cmd->add_option("boundary", solve.boundary, "boundary CSV")->required();
  solve_cmd->add_option("--region", solve.region, "interior | exterior")
      ->check(CLI::IsMember({"interior", "exterior"}))
      ->capture_default_str();
  solve_cmd->add_option("--center", solve.center, "interior point, e.g. 0.5+0.5i")->required();
  solve_cmd->add_option("--vertices", solve.vertices, "polygon vertex CSV (x,y); default: the sample loop");
  solve_cmd->add_option("--grid", solve.grid, "field grid xmin,xmax,ymin,ymax,nx,ny");
  solve_cmd->add_option("--svg", solve.svg, "SVG output path");
  solve_cmd->add_option("--out", solve.out, "output directory")->capture_default_str();
  solve.solver.add_to(*solve_cmd);

  MapFlags map;
  auto* map_cmd = app.add_subcommand("map", "conformal map of a polygonal domain");
  map_cmd->add_option("kind", map.kind, "disk-interior | disk-exterior | annulus")
      ->required()
      ->check(CLI::IsMember({"disk-interior", "disk-exterior", "annulus"}));
  map_cmd->add_option("boundaries", map.boundaries, "boundary CSV (annulus: outer inner)")->required();
  map_cmd->add_option("--center", map.center, "interior point (annulus: inside the hole)")->required();
  map_cmd->add_option("--vertices", map.vertices, "vertex CSV of the (outer) polygon");
  map_cmd->add_option("--inner-vertices", map.inner_vertices, "vertex CSV of the hole");
  map_cmd->add_option("--svg", map.svg, "SVG output path");
  map_cmd->add_option("--out", map.out, "output directory")->capture_default_str();
  map.solver.add_to(*map_cmd);

  EvalFlags eval;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a stored solution");
  eval_cmd->add_option("solution", eval.solution, "solution (or map) JSON")->required();
  eval_cmd->add_option("--points", eval.points, "CSV of x,y points");
  eval_cmd->add_option("--grid", eval.grid, "xmin,xmax,ymin,ymax,nx,ny");
  eval_cmd->add_option("--out", eval.out, "field CSV path")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    RunReport report;
    if (*demo_cmd) {
      report = run_demo(demo);
    } else if (*solve_cmd) {
      report = run_solve(solve);
    } else if (*map_cmd) {
      report = run_map(map);
    } else {
      report = run_eval(eval);
    }
    report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    print_report(out, report);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace harmonic_aaa::cli
