#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reach/block_store.hpp"
#include "reach/reachgraph.hpp"

namespace reach {

using PartitionId = std::uint32_t;
constexpr PartitionId kNoPartition = 0xffffffffu;

// Vertex record as laid out on disk. Out- and in-edges carry the target's
// partition id so traversal can locate the next read without extra lookups.
struct VertexRecord {
  VertexId id = 0;
  Tick t_start = 0;
  Tick t_end = 0;
  std::vector<ObjectId> members;
  std::vector<std::pair<VertexId, PartitionId>> out_edges;   // base, forward
  std::vector<std::pair<VertexId, PartitionId>> in_edges;    // reverse base
  Tick long_resolution = 0;  // 0: no long edges stored
  Tick long_boundary = 0;
  std::vector<std::pair<VertexId, PartitionId>> long_targets;
};

struct PartitionRange {
  BlockId first = 0;
  BlockId last = 0;  // inclusive
};

enum class Placement { kTopological, kRandom };

// Index layout inside one block-store file:
//   [partition records][spacer][time index][spacer]
// The time index holds one (vertex, partition) entry per (tick, object).
// The manifest (a small text file) carries the section ranges, the
// per-partition block ranges and the build parameters.
struct GraphManifest {
  std::uint32_t page_size = BlockStore::kDefaultPageSize;
  ObjectId n_objects = 0;
  Tick n_ticks = 0;
  Tick d_p = 1;
  std::vector<Tick> resolutions;
  std::uint64_t n_vertices = 0;  // alive vertices
  std::uint64_t id_space = 0;    // vertex ids live in [0, id_space)
  std::uint64_t n_base_edges = 0;
  std::uint64_t n_long_edges = 0;
  BlockId time_index_first = 0;
  std::vector<PartitionRange> partitions;
  std::string placement = "topological";

  void save(const std::string& path) const;
  static GraphManifest load(const std::string& path);
};

// Partitions the graph (base edges only, depth <= d_p from each root,
// roots taken in topological order), serializes partitions to contiguous
// blocks in creation order, and writes the time index.
GraphManifest partition_and_place(const ReachGraph& graph, Tick d_p,
                                  BlockStore& store,
                                  Placement placement = Placement::kTopological,
                                  std::uint64_t random_seed = 0);

// Placed index handle: the store plus the manifest tables.
class PlacedGraph {
 public:
  PlacedGraph(BlockStore& store, GraphManifest manifest)
      : store_(&store), manifest_(std::move(manifest)) {}

  const GraphManifest& manifest() const { return manifest_; }
  BlockStore& store() { return *store_; }

  struct Located {
    VertexId vertex = kNoVertex;
    PartitionId partition = kNoPartition;
  };

  // One time-index block read (plus nothing else): the vertex and
  // partition holding (o, t).
  Located find_vertex(ObjectId o, Tick t);

  // Reads (and buffers) a partition, returning its parsed records.
  const std::vector<VertexRecord>& fetch_partition(PartitionId p);

  // Record of one vertex; reads its partition if needed.
  const VertexRecord& fetch_vertex(VertexId v, PartitionId p);

 private:
  BlockStore* store_;
  GraphManifest manifest_;
  // Parse cache, mirroring the buffer pool: cleared when a query starts cold.
 public:
  void clear_cache() { cache_.clear(); }

 private:
  std::unordered_map<PartitionId, std::vector<VertexRecord>> cache_;
};

}  // namespace reach
