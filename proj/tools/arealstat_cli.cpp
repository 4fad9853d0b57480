// Command-line front end: one-shot tests (ann, kest), draw generation
// (gen), the lattice divergence table (theory) and the simulation harness
// (simulate). Exit codes: 0 success, 2 invalid input, 3 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arealstat/areal.hpp"
#include "arealstat/ann.hpp"
#include "arealstat/dgm.hpp"
#include "arealstat/errors.hpp"
#include "arealstat/harness.hpp"
#include "arealstat/ripley.hpp"
#include "arealstat/theory.hpp"

namespace {

using namespace arealstat;

std::vector<Point> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open points file '" + path.string() + "'");
  std::vector<Point> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream ss(line);
    std::string xs, ys;
    if (!std::getline(ss, xs, ',') || !std::getline(ss, ys, ',')) {
      throw LoadError("points file line " + std::to_string(lineno) +
                      ": expected 'x,y'");
    }
    try {
      pts.push_back(Point{std::stod(xs), std::stod(ys)});
    } catch (const std::exception&) {
      if (lineno == 1) continue;  // header row
      throw LoadError("points file line " + std::to_string(lineno) +
                      ": non-numeric coordinate");
    }
  }
  if (pts.empty()) throw LoadError("points file '" + path.string() + "' has no points");
  return pts;
}

Region parse_region_arg(const std::string& arg) {
  if (arg.rfind("rect:", 0) == 0) {
    double x0, y0, x1, y1;
    char extra = 0;
    if (std::sscanf(arg.c_str() + 5, "%lf,%lf,%lf,%lf%c", &x0, &y0, &x1, &y1,
                    &extra) != 4)
      throw DomainError("bad region spec '" + arg +
                        "' (expected rect:x0,y0,x1,y1)");
    if (!(x1 > x0) || !(y1 > y0))
      throw DomainError("degenerate rectangle in region spec '" + arg + "'");
    return Region::rectangle(Rect{x0, y0, x1, y1});
  }
  return load_region(arg);
}

WindowChoice parse_window(const std::string& s) {
  if (s == "study") return WindowChoice::StudyArea;
  if (s == "bbox") return WindowChoice::ObservedBBox;
  throw DomainError("unknown window '" + s + "' (expected study|bbox)");
}

void print_kv(const char* key, const std::string& value) {
  std::cout << key << std::string(9 - std::min<std::size_t>(8, std::string(key).size()), ' ')
            << value << "\n";
}

int cmd_ann(const std::string& points_file, const std::string& region_arg,
            const std::string& window, const std::string& tail) {
  const std::vector<Point> pts = read_points_csv(points_file);
  const Region region = parse_region_arg(region_arg);
  const AnnResult res = ann_test(pts, region, parse_window(window), parse_tail(tail));
  print_kv("n", std::to_string(res.n));
  print_kv("area", format_g6(res.area));
  print_kv("rho", format_g6(res.rho));
  print_kv("r_bar_o", format_g6(res.r_bar_o));
  print_kv("r_bar_e", format_g6(res.r_bar_e));
  print_kv("ratio", format_g6(res.ratio));
  print_kv("sigma", format_g6(res.sigma));
  print_kv("z", format_g6(res.z));
  print_kv("tail", tail_name(res.tail));
  print_kv("reject", res.reject ? "true" : "false");
  return 0;
}

int cmd_kest(const std::string& points_file, const std::string& region_arg,
             const std::string& radii_arg, int n_sim, const std::string& tail,
             std::uint64_t seed) {
  const std::vector<Point> pts = read_points_csv(points_file);

  std::optional<Region> region;
  RadiusGrid radii;
  if (radii_arg == "auto" || radii_arg == "auto:structure") {
    if (region_arg.rfind("rect:", 0) == 0)
      throw DomainError("auto radii need a structure file region, not rect:...");
    const ArealStructure s = load_structure(region_arg);
    radii = radius_grid(s);
    region = s.region();
  } else {
    std::array<double, kNumRadii> t{};
    char extra = 0;
    if (std::sscanf(radii_arg.c_str(), "%lf,%lf,%lf,%lf,%lf%c", &t[0], &t[1], &t[2],
                    &t[3], &t[4], &extra) != kNumRadii)
      throw DomainError("bad radii '" + radii_arg +
                        "' (expected 5 ascending values or auto:structure)");
    radii = make_radius_grid(t);
    region = parse_region_arg(region_arg);
  }

  const Tail t = parse_tail(tail);
  const Envelope env =
      mc_envelope(static_cast<int>(pts.size()), *region, radii, n_sim, seed);
  const KTestResult res = k_test(pts, *region, env, t);

  print_kv("n", std::to_string(res.estimate.n));
  print_kv("area", format_g6(res.estimate.area));
  print_kv("lambda", format_g6(res.estimate.lambda_hat));
  print_kv("n_sim", std::to_string(n_sim));
  print_kv("seed", std::to_string(seed));
  print_kv("tail", tail_name(t));
  std::cout << "radius,khat,lhat,q025,q05,q95,q975,reject\n";
  for (int k = 0; k < kNumRadii; ++k) {
    std::cout << format_g6(res.estimate.radii.radii[k]) << ","
              << format_g6(res.estimate.khat[k]) << ","
              << format_g6(res.estimate.lhat[k]) << "," << format_g6(env.q025[k])
              << "," << format_g6(env.q05[k]) << "," << format_g6(env.q95[k]) << ","
              << format_g6(env.q975[k]) << "," << (res.reject[k] ? "true" : "false")
              << "\n";
  }
  return 0;
}

int cmd_gen(const std::string& structure_arg, const std::string& dgm_arg,
            const std::string& n_arg, std::uint64_t seed,
            const std::string& cluster_file) {
  const StructureSource src = StructureSource::parse(structure_arg);
  const ArealStructure s = src.build();
  int n = 0;
  if (n_arg == "tenth")
    n = sample_size(static_cast<int>(s.n_units()), SampleSizeRule::Tenth);
  else if (n_arg == "quarter")
    n = sample_size(static_cast<int>(s.n_units()), SampleSizeRule::Quarter);
  else
    try {
      n = std::stoi(n_arg);
    } catch (const std::exception&) {
      throw DomainError("bad --n '" + n_arg + "' (expected int|tenth|quarter)");
    }

  const Dgm dgm = parse_dgm(dgm_arg);
  std::optional<ClusterRegionSpec> cluster;
  if (!cluster_file.empty()) cluster = load_cluster_spec(cluster_file);
  const Draw d = run_dgm(s, dgm, n, cluster, seed);

  std::cout << "id,x,y\n";
  for (const std::string& id : d.observed_ids) {
    const Point c = s.unit(s.index_of(id)).centroid;
    std::cout << id << "," << format_g6(c.x) << "," << format_g6(c.y) << "\n";
  }
  return 0;
}

int cmd_theory(double t_max, double step) {
  const std::vector<LatticeCount> rows = divergence_table(t_max, step);
  std::cout << "t,n_t,pi_t_squared,error,abs_error_over_sqrt_t\n";
  for (const LatticeCount& row : rows) {
    std::cout << format_g6(row.t) << "," << row.n_of_t << "," << format_g6(row.k_csr)
              << "," << format_g6(row.error) << ","
              << format_g6(std::abs(row.error) / std::sqrt(row.t)) << "\n";
  }
  return 0;
}

int cmd_simulate(const std::string& config_file, const std::string& out_dir,
                 int threads, std::optional<std::uint64_t> seed) {
  std::vector<Scenario> scenarios = load_scenario_config(config_file);
  if (seed) {
    for (Scenario& s : scenarios) s.base_seed = *seed;
  }
  const std::vector<SimulationReport> reports = run_matrix(scenarios, threads);
  const RenderedTables tables = render_tables(reports);

  std::filesystem::create_directories(out_dir);
  auto write = [&](const char* name, const std::string& content) {
    const std::filesystem::path p = std::filesystem::path(out_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw LoadError("cannot write '" + p.string() + "'");
    out << content;
  };
  write("results.csv", tables.csv);
  write("table_ann.txt", tables.ann_table);
  write("table_k.txt", tables.k_table);

  for (const SimulationReport& r : reports) {
    std::cout << r.scenario << ": n=" << r.n << " replicates=" << r.replicates
              << " rate(s)=";
    bool first = true;
    for (double rate : r.rates()) {
      if (!first) std::cout << "/";
      std::cout << format_g6(rate);
      first = false;
    }
    std::cout << " (" << format_g6(r.wall_seconds) << "s)\n";
  }
  std::cout << "wrote " << out_dir << "/results.csv, table_ann.txt, table_k.txt\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point-pattern cluster tests on areal data"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Run a scenario matrix from a config file");
  std::string config_file, out_dir = "out";
  int threads = 1;
  std::optional<std::uint64_t> sim_seed;
  sim->add_option("--config", config_file, "Scenario matrix JSON")->required();
  sim->add_option("--out", out_dir, "Output directory");
  sim->add_option("--threads", threads, "Worker threads");
  sim->add_option("--seed", sim_seed, "Override base seed for all scenarios");

  auto* ann = app.add_subcommand("ann", "One-shot average nearest neighbor test");
  std::string ann_points, ann_region, ann_window = "study", ann_tail = "two";
  ann->add_option("--points", ann_points, "CSV of x,y points")->required();
  ann->add_option("--region", ann_region, "GeoJSON path or rect:x0,y0,x1,y1")->required();
  ann->add_option("--window", ann_window, "study|bbox");
  ann->add_option("--tail", ann_tail, "two|left|right");

  auto* kest = app.add_subcommand("kest", "One-shot K-function test");
  std::string k_points, k_region, k_radii = "auto", k_tail = "two";
  int k_nsim = 1000;
  std::uint64_t k_seed = kDefaultBaseSeed;
  kest->add_option("--points", k_points, "CSV of x,y points")->required();
  kest->add_option("--region", k_region, "GeoJSON path or rect:x0,y0,x1,y1")->required();
  kest->add_option("--radii", k_radii, "t1,t2,t3,t4,t5 or auto:structure");
  kest->add_option("--nsim", k_nsim, "Envelope simulation count");
  kest->add_option("--tail", k_tail, "two|right");
  kest->add_option("--seed", k_seed, "Envelope seed");

  auto* gen = app.add_subcommand("gen", "Emit one observed-unit draw as CSV");
  std::string g_structure, g_dgm = "d1", g_n = "tenth", g_cluster;
  std::uint64_t g_seed = kDefaultBaseSeed;
  gen->add_option("--structure", g_structure, "grid:R,C,S or file:PATH")->required();
  gen->add_option("--dgm", g_dgm, "d1|d2|d3");
  gen->add_option("--n", g_n, "int|tenth|quarter");
  gen->add_option("--seed", g_seed, "Draw seed");
  gen->add_option("--cluster", g_cluster, "Cluster spec JSON (required for d2)");

  auto* theory = app.add_subcommand("theory", "Emit the grid-vs-CSR divergence table");
  double t_max = 10.0, t_step = 0.5;
  theory->add_option("--tmax", t_max, "Largest radius");
  theory->add_option("--step", t_step, "Radius step");

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return cmd_simulate(config_file, out_dir, threads, sim_seed);
    if (ann->parsed()) return cmd_ann(ann_points, ann_region, ann_window, ann_tail);
    if (kest->parsed())
      return cmd_kest(k_points, k_region, k_radii, k_nsim, k_tail, k_seed);
    if (gen->parsed()) return cmd_gen(g_structure, g_dgm, g_n, g_seed, g_cluster);
    if (theory->parsed()) return cmd_theory(t_max, t_step);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const arealstat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
