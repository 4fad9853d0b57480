#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "arealstat/ann.hpp"
#include "arealstat/dgm.hpp"
#include "arealstat/ripley.hpp"

namespace arealstat {

inline constexpr std::uint64_t kDefaultBaseSeed = 20260808;

enum class Dgm { D1, D2, D3 };

const char* dgm_name(Dgm d);
Dgm parse_dgm(const std::string& s);

struct GridSpec {
  int rows = 20;
  int cols = 20;
  double cell_size = 1.0;
};

// Structure reference: "grid:ROWS,COLS,CELL_SIZE" or "file:PATH".
struct StructureSource {
  std::optional<GridSpec> grid;
  std::optional<std::filesystem::path> file;
  std::string label;

  static StructureSource parse(const std::string& text);
  ArealStructure build() const;
};

struct AnnMethod {
  WindowChoice window = WindowChoice::StudyArea;
};

struct RipleyMethod {
  int n_sim = 1000;
  KConfig config{};
};

// One cell of the simulation design.
struct Scenario {
  std::string name;
  StructureSource structure;
  Dgm dgm = Dgm::D1;
  std::optional<ClusterRegionSpec> cluster;  // required when dgm == D2
  SampleSizeRule size_rule = SampleSizeRule::Tenth;
  std::variant<AnnMethod, RipleyMethod> method;
  std::optional<Tail> tail;  // unset: per-DGM default
  int replicates = 500;
  std::uint64_t base_seed = kDefaultBaseSeed;
};

// Default tails: two-sided under D1; clustering-sensitive tails under
// D2/D3 (left for the ANN z, right for K).
Tail effective_tail(const Scenario& s);

// Draws the observed units for one replicate.
Draw run_dgm(const ArealStructure& s, Dgm dgm, int n,
             const std::optional<ClusterRegionSpec>& cluster, std::uint64_t seed);

struct SimulationReport {
  std::string scenario;
  std::string structure_label;
  Dgm dgm = Dgm::D1;
  std::string method;  // "ann" | "ripley_k"
  std::optional<WindowChoice> window;
  Tail tail = Tail::TwoSided;
  SampleSizeRule size_rule = SampleSizeRule::Tenth;
  int n = 0;
  int replicates = 0;
  std::uint64_t base_seed = 0;
  std::uint64_t envelope_seed = 0;     // ripley only
  std::vector<double> radii;           // ripley: 5 entries; ann: empty
  std::vector<int> rejections;         // ann: 1 entry; ripley: per radius
  double wall_seconds = 0.0;           // not part of rendered output

  std::vector<double> rates() const;
};

// Runs every replicate of one scenario. Replicate r uses the substream
// derive_seed(base_seed, kStreamReplicate, r); the Ripley envelope is
// built once per scenario from derive_seed(base_seed, kStreamEnvelope, 0),
// disjoint from all replicate streams. Reports are identical for any
// thread count. A replicate failure aborts the scenario, naming the
// replicate index; partial results are never reported.
SimulationReport run_scenario(const Scenario& s, int threads = 1);

std::vector<SimulationReport> run_matrix(std::span<const Scenario> scenarios,
                                         int threads = 1);

// Exact ratio rejections / replicates.
double empirical_rate(int rejections, int replicates);

struct RenderedTables {
  std::string csv;        // one row per scenario (ANN) or scenario x radius
  std::string ann_table;  // aligned text, window sections x DGM rows
  std::string k_table;    // aligned text, per-structure radius columns
};

// Throws RenderError on duplicate scenario keys. Output is byte-stable:
// it contains no timestamps or timing.
RenderedTables render_tables(std::span<const SimulationReport> reports);

// JSON scenario-matrix configuration; relative file references resolve
// against the config file's directory.
std::vector<Scenario> load_scenario_config(const std::filesystem::path& path);

ClusterRegionSpec load_cluster_spec(const std::filesystem::path& path);

// Shortest form with at most 6 significant digits.
std::string format_g6(double value);

}  // namespace arealstat
