#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "reach/block_store.hpp"
#include "reach/core.hpp"

namespace reach {

using CellIndex = std::uint32_t;

struct Mbr {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
  void expand(const Point& p);
};

// Grid layout inside one block-store file:
//   [cell payloads, bucket-major then row-major][spacer][object locator]
// Cells are packed back to back; the manifest maps each (bucket, cell) to
// its byte range. The locator holds one cell index per (tick, object).
struct GridManifest {
  std::uint32_t page_size = BlockStore::kDefaultPageSize;
  ObjectId n_objects = 0;
  Tick n_ticks = 0;
  double d_t = 0.0;
  double width = 0.0;
  double height = 0.0;
  Tick r_t = 20;     // temporal resolution: ticks per bucket
  double r_s = 512;  // spatial resolution: cell side, meters
  std::uint32_t cells_x = 0, cells_y = 0;
  Tick n_buckets = 0;
  BlockId locator_first = 0;
  std::vector<std::uint64_t> cell_offset;  // [bucket * cells + cell]
  std::vector<std::uint64_t> cell_length;

  std::uint32_t cells_per_bucket() const { return cells_x * cells_y; }
  Tick bucket_start(Tick b) const { return b * r_t; }
  Tick bucket_end(Tick b) const {
    Tick e = (b + 1) * r_t;
    return (e > n_ticks ? n_ticks : e) - 1;
  }
  Tick bucket_of(Tick t) const { return t / r_t; }
  CellIndex cell_of_point(const Point& p) const;

  void save(const std::string& path) const;
  static GridManifest load(const std::string& path);
};

GridManifest build_grid(const TrajectorySet& ts, Tick r_t, double r_s,
                        BlockStore& store);

struct GridQueryStats {
  Tick buckets_processed = 0;
  std::uint64_t cells_read = 0;
  std::uint64_t sweep_ticks = 0;
  std::vector<std::pair<Tick, CellIndex>> cells;        // (bucket, cell) loaded
  std::vector<std::pair<ObjectId, Tick>> seeds_added;   // discovery order
};

// Placed grid handle with the incremental seed-set sweep.
class GridIndex {
 public:
  GridIndex(BlockStore& store, GridManifest manifest)
      : store_(&store), manifest_(std::move(manifest)) {}

  const GridManifest& manifest() const { return manifest_; }
  BlockStore& store() { return *store_; }

  // Cells holding the given objects at tick t (one locator read per
  // distinct locator block).
  std::vector<CellIndex> find_cells(const std::vector<ObjectId>& seeds,
                                    Tick t);

  // All cells intersecting the d_T-inflated MBR.
  std::vector<CellIndex> cells_near(const Mbr& box, double d_t) const;

  // Seed-set sweep over the bucketed interval; stops the moment the
  // destination becomes reachable.
  bool query(const Query& q, GridQueryStats* stats = nullptr);

 private:
  struct CellSegment {
    ObjectId object;
    std::vector<std::pair<Tick, Point>> samples;
  };
  const std::vector<CellSegment>& fetch_cell(Tick bucket, CellIndex cell,
                                             std::vector<BlockId>* pinned);

  BlockStore* store_;
  GridManifest manifest_;
  std::unordered_map<std::uint64_t, std::vector<CellSegment>> cell_cache_;
};

}  // namespace reach
