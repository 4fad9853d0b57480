#include "arealstat/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "arealstat/errors.hpp"
#include "arealstat/parallel.hpp"
#include "arealstat/rng.hpp"

namespace arealstat {

using nlohmann::json;

const char* dgm_name(Dgm d) {
  switch (d) {
    case Dgm::D1: return "d1";
    case Dgm::D2: return "d2";
    case Dgm::D3: return "d3";
  }
  return "?";
}

Dgm parse_dgm(const std::string& s) {
  if (s == "d1" || s == "D1") return Dgm::D1;
  if (s == "d2" || s == "D2") return Dgm::D2;
  if (s == "d3" || s == "D3") return Dgm::D3;
  throw DomainError("unknown DGM '" + s + "' (expected d1|d2|d3)");
}

StructureSource StructureSource::parse(const std::string& text) {
  StructureSource src;
  if (text.rfind("grid:", 0) == 0) {
    GridSpec g;
    char extra = 0;
    if (std::sscanf(text.c_str() + 5, "%d,%d,%lf%c", &g.rows, &g.cols,
                    &g.cell_size, &extra) != 3)
      throw DomainError("bad structure spec '" + text +
                        "' (expected grid:ROWS,COLS,CELL_SIZE)");
    if (g.rows < 1 || g.cols < 1 || g.cell_size <= 0.0)
      throw DomainError("bad grid dimensions in '" + text + "'");
    src.grid = g;
    src.label = "grid:" + std::to_string(g.rows) + "x" + std::to_string(g.cols);
  } else if (text.rfind("file:", 0) == 0) {
    src.file = std::filesystem::path(text.substr(5));
    src.label = src.file->stem().string();
  } else {
    throw DomainError("bad structure spec '" + text +
                      "' (expected grid:... or file:...)");
  }
  return src;
}

ArealStructure StructureSource::build() const {
  if (grid) return build_grid(grid->rows, grid->cols, grid->cell_size);
  if (file) return load_structure(*file);
  throw ContractViolationError("empty structure source");
}

Tail effective_tail(const Scenario& s) {
  if (s.tail) return *s.tail;
  if (s.dgm == Dgm::D1) return Tail::TwoSided;
  return std::holds_alternative<AnnMethod>(s.method) ? Tail::Left : Tail::Right;
}

Draw run_dgm(const ArealStructure& s, Dgm dgm, int n,
             const std::optional<ClusterRegionSpec>& cluster, std::uint64_t seed) {
  switch (dgm) {
    case Dgm::D1:
      return sample_d1(s, n, seed);
    case Dgm::D2:
      if (!cluster) throw DomainError("DGM d2 requires a cluster region spec");
      return sample_d2(s, n, *cluster, seed);
    case Dgm::D3:
      return sample_d3(s, n, seed);
  }
  throw ContractViolationError("unreachable DGM");
}

std::vector<double> SimulationReport::rates() const {
  std::vector<double> out;
  out.reserve(rejections.size());
  for (int r : rejections) out.push_back(empirical_rate(r, replicates));
  return out;
}

SimulationReport run_scenario(const Scenario& s, int threads) {
  const auto start = std::chrono::steady_clock::now();
  if (s.replicates < 1) throw DomainError("scenario needs replicates >= 1");
  if (s.dgm == Dgm::D2 && !s.cluster)
    throw DomainError("scenario '" + s.name + "': DGM d2 requires a cluster spec");

  const ArealStructure structure = s.structure.build();
  if (s.cluster) {
    for (const std::string& id : s.cluster->member_ids)
      structure.index_of(id);  // throws DomainError on unknown ids
  }
  const int n = sample_size(static_cast<int>(structure.n_units()), s.size_rule);
  const Tail tail = effective_tail(s);

  SimulationReport report;
  report.scenario = s.name;
  report.structure_label = s.structure.label;
  report.dgm = s.dgm;
  report.tail = tail;
  report.size_rule = s.size_rule;
  report.n = n;
  report.replicates = s.replicates;
  report.base_seed = s.base_seed;

  auto replicate_draw = [&](std::size_t i) {
    const std::uint64_t seed = Rng::derive_seed(s.base_seed, kStreamReplicate, i + 1);
    return run_dgm(structure, s.dgm, n, s.cluster, seed);
  };
  auto wrap = [&](std::size_t i, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      throw Error("scenario '" + s.name + "' replicate " + std::to_string(i + 1) +
                  ": " + e.what());
    }
  };

  if (const auto* ann = std::get_if<AnnMethod>(&s.method)) {
    report.method = "ann";
    report.window = ann->window;
    report.rejections = {0};
    std::vector<char> rejected(s.replicates, 0);
    parallel_for_indexed(s.replicates, threads, [&](std::size_t i) {
      wrap(i, [&] {
        const std::vector<Point> pts = draw_centroids(structure, replicate_draw(i));
        rejected[i] = ann_test(pts, structure.region(), ann->window, tail).reject;
      });
    });
    for (char r : rejected) report.rejections[0] += r;
  } else {
    const auto& ripley = std::get<RipleyMethod>(s.method);
    report.method = "ripley_k";
    const RadiusGrid radii = radius_grid(structure);
    report.radii.assign(radii.radii.begin(), radii.radii.end());
    report.envelope_seed = Rng::derive_seed(s.base_seed, kStreamEnvelope, 0);
    const Envelope envelope = mc_envelope(n, structure.region(), radii, ripley.n_sim,
                                          report.envelope_seed, ripley.config, threads);
    report.rejections.assign(kNumRadii, 0);
    std::vector<std::array<char, kNumRadii>> rejected(s.replicates);
    parallel_for_indexed(s.replicates, threads, [&](std::size_t i) {
      wrap(i, [&] {
        const std::vector<Point> pts = draw_centroids(structure, replicate_draw(i));
        const KTestResult res = k_test(pts, structure.region(), envelope, tail);
        for (int r = 0; r < kNumRadii; ++r) rejected[i][r] = res.reject[r];
      });
    });
    for (const auto& rep : rejected)
      for (int r = 0; r < kNumRadii; ++r) report.rejections[r] += rep[r];
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SimulationReport> run_matrix(std::span<const Scenario> scenarios,
                                         int threads) {
  std::vector<SimulationReport> reports;
  reports.reserve(scenarios.size());
  for (const Scenario& s : scenarios) reports.push_back(run_scenario(s, threads));
  return reports;
}

double empirical_rate(int rejections, int replicates) {
  if (replicates < 1)
    throw ContractViolationError("empirical_rate: replicates must be >= 1");
  if (rejections < 0 || rejections > replicates)
    throw ContractViolationError("empirical_rate: rejections outside [0, replicates]");
  return static_cast<double>(rejections) / replicates;
}

std::string format_g6(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

namespace {

const char* size_rule_name(SampleSizeRule r) {
  return r == SampleSizeRule::Tenth ? "tenth" : "quarter";
}

const char* window_name(WindowChoice w) {
  return w == WindowChoice::StudyArea ? "study" : "bbox";
}

std::string dgm_row_label(Dgm d) {
  switch (d) {
    case Dgm::D1: return "D1 (type I error)";
    case Dgm::D2: return "D2 (power)";
    case Dgm::D3: return "D3 (power)";
  }
  return "?";
}

std::string size_row_label(SampleSizeRule r) {
  return r == SampleSizeRule::Tenth ? "floor(n_a/10)" : "floor(n_a/4)";
}

// Width in code points, so the em-dash placeholder pads correctly.
std::size_t display_len(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t len = display_len(s);
  return len >= width ? s : s + std::string(width - len, ' ');
}

constexpr const char* kMissingCell = "—";  // em dash

}  // namespace

RenderedTables render_tables(std::span<const SimulationReport> reports) {
  std::set<std::string> names;
  std::set<std::string> cell_keys;
  for (const SimulationReport& r : reports) {
    if (!names.insert(r.scenario).second)
      throw RenderError("duplicate scenario name '" + r.scenario + "'");
    const std::string key = r.structure_label + "|" + dgm_name(r.dgm) + "|" +
                            r.method + "|" +
                            (r.window ? window_name(*r.window) : "") + "|" +
                            size_rule_name(r.size_rule);
    if (!cell_keys.insert(key).second)
      throw RenderError("duplicate scenario key '" + key + "'");
  }

  RenderedTables out;

  // --- CSV ---------------------------------------------------------------
  std::ostringstream csv;
  csv << "scenario,structure,dgm,method,window,tail,size_rule,n,replicates,"
         "radius_index,radius,rejections,rate\n";
  for (const SimulationReport& r : reports) {
    const std::string prefix =
        r.scenario + "," + r.structure_label + "," + dgm_name(r.dgm) + "," +
        r.method + "," + (r.window ? window_name(*r.window) : "") + "," +
        tail_name(r.tail) + "," + size_rule_name(r.size_rule) + "," +
        std::to_string(r.n) + "," + std::to_string(r.replicates);
    if (r.method == "ann") {
      csv << prefix << ",,," << r.rejections[0] << ","
          << format_g6(empirical_rate(r.rejections[0], r.replicates)) << "\n";
    } else {
      for (std::size_t k = 0; k < r.radii.size(); ++k) {
        csv << prefix << "," << k + 1 << "," << format_g6(r.radii[k]) << ","
            << r.rejections[k] << ","
            << format_g6(empirical_rate(r.rejections[k], r.replicates)) << "\n";
      }
    }
  }
  out.csv = csv.str();

  // --- ANN text table ----------------------------------------------------
  std::vector<std::string> structures;
  for (const SimulationReport& r : reports) {
    if (std::find(structures.begin(), structures.end(), r.structure_label) ==
        structures.end())
      structures.push_back(r.structure_label);
  }
  auto ann_cell = [&](WindowChoice w, Dgm d, SampleSizeRule rule,
                      const std::string& structure) -> std::string {
    for (const SimulationReport& r : reports) {
      if (r.method == "ann" && r.window == w && r.dgm == d && r.size_rule == rule &&
          r.structure_label == structure)
        return format_g6(empirical_rate(r.rejections[0], r.replicates));
    }
    return kMissingCell;
  };
  constexpr std::size_t kLabelW = 20, kSizeW = 15, kCellW = 14;
  std::ostringstream ann;
  ann << "ANN ratio: empirical rejection rate\n";
  for (WindowChoice w : {WindowChoice::StudyArea, WindowChoice::ObservedBBox}) {
    ann << "\nWindow " << (w == WindowChoice::StudyArea ? "1 (study area)" : "2 (observed bbox)")
        << "\n";
    ann << pad("DGM", kLabelW) << pad("N", kSizeW);
    for (const std::string& s : structures) ann << pad(s, kCellW);
    ann << "\n";
    for (Dgm d : {Dgm::D1, Dgm::D2, Dgm::D3}) {
      for (SampleSizeRule rule : {SampleSizeRule::Tenth, SampleSizeRule::Quarter}) {
        ann << pad(dgm_row_label(d), kLabelW) << pad(size_row_label(rule), kSizeW);
        for (const std::string& s : structures) ann << pad(ann_cell(w, d, rule, s), kCellW);
        ann << "\n";
      }
    }
  }
  out.ann_table = ann.str();

  // --- Ripley text table ---------------------------------------------------
  std::ostringstream kt;
  kt << "Ripley's K: empirical rejection rate per radius\n";
  for (const std::string& structure : structures) {
    const SimulationReport* any = nullptr;
    for (const SimulationReport& r : reports) {
      if (r.method == "ripley_k" && r.structure_label == structure) {
        any = &r;
        break;
      }
    }
    if (!any) continue;
    kt << "\nstructure " << structure << "  (radii:";
    for (double t : any->radii) kt << " " << format_g6(t);
    kt << ")\n";
    kt << pad("DGM", kLabelW);
    for (int k = 1; k <= kNumRadii; ++k) {
      kt << pad("R" + std::to_string(k) + " n_a/10", kCellW)
         << pad("R" + std::to_string(k) + " n_a/4", kCellW);
    }
    kt << "\n";
    auto k_cell = [&](Dgm d, SampleSizeRule rule, int radius_idx) -> std::string {
      for (const SimulationReport& r : reports) {
        if (r.method == "ripley_k" && r.dgm == d && r.size_rule == rule &&
            r.structure_label == structure)
          return format_g6(empirical_rate(r.rejections[radius_idx], r.replicates));
      }
      return kMissingCell;
    };
    for (Dgm d : {Dgm::D1, Dgm::D2, Dgm::D3}) {
      kt << pad(dgm_row_label(d), kLabelW);
      for (int k = 0; k < kNumRadii; ++k) {
        kt << pad(k_cell(d, SampleSizeRule::Tenth, k), kCellW)
           << pad(k_cell(d, SampleSizeRule::Quarter, k), kCellW);
      }
      kt << "\n";
    }
  }
  out.k_table = kt.str();
  return out;
}

ClusterRegionSpec load_cluster_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open cluster spec '" + path.string() + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError("cluster spec '" + path.string() + "': " + e.what());
  }
  ClusterRegionSpec spec;
  if (!root.contains("member_ids") || !root["member_ids"].is_array())
    throw LoadError("cluster spec '" + path.string() + "' needs a member_ids array");
  for (const json& id : root["member_ids"]) {
    if (!id.is_string())
      throw LoadError("cluster spec '" + path.string() + "': member ids must be strings");
    spec.member_ids.push_back(id.get<std::string>());
  }
  spec.weight_ratio = root.value("weight_ratio", 10.0);
  if (spec.member_ids.empty())
    throw LoadError("cluster spec '" + path.string() + "' has no member ids");
  if (spec.weight_ratio < 1.0)
    throw LoadError("cluster spec '" + path.string() + "': weight_ratio must be >= 1");
  return spec;
}

std::vector<Scenario> load_scenario_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open config '" + path.string() + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError("config '" + path.string() + "': " + e.what());
  }
  const std::filesystem::path base_dir = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base_dir / fp;
  };

  const int default_replicates = root.value("replicates", 500);
  const std::uint64_t default_seed = root.value("base_seed", kDefaultBaseSeed);
  if (!root.contains("scenarios") || !root["scenarios"].is_array())
    throw LoadError("config '" + path.string() + "' needs a scenarios array");

  std::vector<Scenario> scenarios;
  std::set<std::string> names;
  for (const json& entry : root["scenarios"]) {
    Scenario sc;
    if (!entry.contains("structure") || !entry["structure"].is_string())
      throw LoadError("scenario entry needs a structure string");
    sc.structure = StructureSource::parse(entry["structure"].get<std::string>());
    if (sc.structure.file) sc.structure.file = resolve(sc.structure.file->string());
    sc.dgm = parse_dgm(entry.value("dgm", "d1"));
    const std::string size = entry.value("size", "tenth");
    if (size == "tenth")
      sc.size_rule = SampleSizeRule::Tenth;
    else if (size == "quarter")
      sc.size_rule = SampleSizeRule::Quarter;
    else
      throw LoadError("scenario size must be tenth|quarter, got '" + size + "'");

    const std::string method = entry.value("method", "ann");
    std::string window = entry.value("window", "study");
    if (method == "ann") {
      AnnMethod m;
      if (window == "study")
        m.window = WindowChoice::StudyArea;
      else if (window == "bbox")
        m.window = WindowChoice::ObservedBBox;
      else
        throw LoadError("scenario window must be study|bbox, got '" + window + "'");
      sc.method = m;
    } else if (method == "ripley_k") {
      RipleyMethod m;
      m.n_sim = entry.value("n_sim", 1000);
      const std::string norm = entry.value("normalization", "n_squared");
      if (norm == "n_squared")
        m.config.normalization = Normalization::NSquared;
      else if (norm == "n_times_n_minus_1")
        m.config.normalization = Normalization::NTimesNMinusOne;
      else
        throw LoadError("unknown normalization '" + norm + "'");
      m.config.arc_samples = entry.value("arc_samples", 2048);
      sc.method = m;
    } else {
      throw LoadError("scenario method must be ann|ripley_k, got '" + method + "'");
    }

    const std::string tail = entry.value("tail", "auto");
    if (tail != "auto") sc.tail = parse_tail(tail);

    if (entry.contains("cluster")) {
      const json& c = entry["cluster"];
      ClusterRegionSpec spec;
      for (const json& id : c.value("member_ids", json::array()))
        spec.member_ids.push_back(id.get<std::string>());
      spec.weight_ratio = c.value("weight_ratio", 10.0);
      if (spec.member_ids.empty())
        throw LoadError("inline cluster spec has no member ids");
      sc.cluster = spec;
    } else if (entry.contains("cluster_file")) {
      sc.cluster = load_cluster_spec(resolve(entry["cluster_file"].get<std::string>()));
    }
    if (sc.dgm == Dgm::D2 && !sc.cluster)
      throw LoadError("DGM d2 scenario needs cluster or cluster_file");

    sc.replicates = entry.value("replicates", default_replicates);
    sc.base_seed = entry.value("base_seed", default_seed);

    std::string name = entry.value("name", "");
    if (name.empty()) {
      name = sc.structure.label + "_" + dgm_name(sc.dgm) + "_" + size + "_" + method;
      if (method == "ann") name += "_" + window;
    }
    sc.name = name;
    if (!names.insert(sc.name).second)
      throw LoadError("duplicate scenario name '" + sc.name + "'");
    scenarios.push_back(std::move(sc));
  }
  if (scenarios.empty()) throw LoadError("config has no scenarios");
  return scenarios;
}

}  // namespace arealstat
