#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reach/block_store.hpp"
#include "reach/contacts.hpp"
#include "reach/core.hpp"
#include "reach/oracle.hpp"
#include "reach/reachgraph.hpp"
#include "reach/reachgraph_disk.hpp"
#include "reach/reachgrid.hpp"
#include "reach/traj_store.hpp"

namespace reach {

struct BenchRecord {
  std::string engine;
  std::size_t query_id = 0;
  bool result = false;
  std::uint64_t io_random = 0;
  std::uint64_t io_sequential = 0;
  double io_normalized = 0.0;
  std::uint64_t cpu_micros = 0;
};

// An engine disagreed with the oracle; bench aborts on this.
struct EngineMismatch : std::runtime_error {
  EngineMismatch(const std::string& engine, const Query& q, bool got,
                 bool want);
  std::string engine;
  Query query;
  bool got = false;
  bool want = false;
};

struct GraphBuildResult {
  ReachGraph graph;
  std::uint64_t ten_vertices = 0;
  std::uint64_t ten_edges = 0;
  std::uint64_t reduced_vertices = 0;  // after both reduction steps
  std::uint64_t reduced_edges = 0;
};

GraphBuildResult build_reachgraph(const ContactSet& contacts,
                                  ObjectId n_objects, Tick n_ticks,
                                  const std::vector<Tick>& resolutions);

struct BuildParams {
  Tick r_t = 40;
  double r_s = 1024.0;
  Tick d_p = 32;
  std::vector<Tick> resolutions = default_resolutions();
  std::uint32_t page_size = BlockStore::kDefaultPageSize;
  std::size_t buffer_blocks = BlockStore::kDefaultBufferBlocks;
  Placement placement = Placement::kTopological;
  std::uint64_t placement_seed = 0;
};

// Everything a bench run needs, built in memory from one trajectory set.
// Stores sit behind unique_ptr so the context can move while the index
// handles keep valid store pointers.
struct BenchContext {
  ObjectId n_objects = 0;
  Tick n_ticks = 0;
  ContactSet contacts;
  std::optional<Oracle> oracle;

  std::unique_ptr<BlockStore> grid_store;
  std::optional<GridManifest> grid_manifest;
  std::optional<GridIndex> grid;

  std::unique_ptr<BlockStore> graph_store;
  std::optional<GraphManifest> graph_manifest;
  std::optional<PlacedGraph> graph;
  GraphBuildResult graph_build;

  std::unique_ptr<BlockStore> spj_store;
  std::optional<TrajStoreManifest> spj_manifest;
  std::optional<TrajStore> spj;

  BenchContext() = default;
};

BenchContext build_bench_context(const TrajectorySet& ts, const BuildParams& p);

extern const std::vector<std::string> kAllEngines;  // canonical order

// Runs each engine on each query from a cold buffer, cross-checking every
// answer against the oracle (a mismatch throws EngineMismatch). cpu_micros
// stays 0 unless measure_cpu: the CPU pass re-runs the query with all
// blocks preloaded so disk retrievals are excluded from the timing.
std::vector<BenchRecord> run_bench(BenchContext& ctx,
                                   const std::vector<Query>& queries,
                                   const std::vector<std::string>& engines,
                                   bool measure_cpu = false);

// One engine, one query, cold buffer; the record is not oracle-checked.
BenchRecord run_query(BenchContext& ctx, const std::string& engine,
                      const Query& q, std::size_t query_id);

double mean_io(const std::vector<BenchRecord>& records,
               const std::string& engine);

void write_bench_csv(const std::string& path,
                     const std::vector<BenchRecord>& records,
                     const std::string& header_note);

struct TuneRow {
  double param1 = 0;  // r_t or d_p
  double param2 = 0;  // r_s or resolution count
  double mean_normalized_io = 0;
};

std::vector<TuneRow> tune_grid(const TrajectorySet& ts,
                               const std::vector<Tick>& rt_values,
                               const std::vector<double>& rs_values,
                               const std::vector<Query>& queries,
                               const BuildParams& base);

std::vector<TuneRow> tune_graph(const TrajectorySet& ts,
                                const std::vector<Tick>& dp_values,
                                const std::vector<int>& resolution_counts,
                                const std::vector<Query>& queries,
                                const BuildParams& base);

void write_tune_csv(const std::string& path, const std::string& kind,
                    const std::vector<TuneRow>& rows);

}  // namespace reach
