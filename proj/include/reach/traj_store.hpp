#pragma once

#include <string>

#include "reach/block_store.hpp"
#include "reach/core.hpp"

namespace reach {

// Raw trajectory samples on blocks in (tick, object) order, 16 bytes per
// sample (x, y as doubles). The layout places a tick window on a
// contiguous block range, so the join baseline reads it mostly
// sequentially.
struct TrajStoreManifest {
  std::uint32_t page_size = BlockStore::kDefaultPageSize;
  ObjectId n_objects = 0;
  Tick n_ticks = 0;
  double d_t = 0.0;
  double width = 0.0;
  double height = 0.0;

  void save(const std::string& path) const;
  static TrajStoreManifest load(const std::string& path);
};

TrajStoreManifest build_traj_store(const TrajectorySet& ts, BlockStore& store);

class TrajStore {
 public:
  TrajStore(BlockStore& store, TrajStoreManifest manifest)
      : store_(&store), manifest_(manifest) {}

  const TrajStoreManifest& manifest() const { return manifest_; }
  BlockStore& store() { return *store_; }

  // Reads all samples of ticks [w.start, w.end] (every object), counting
  // block IO.
  TrajectorySet read_window(const TimeInterval& w);

 private:
  BlockStore* store_;
  TrajStoreManifest manifest_;
};

// Baseline query: materializes the contact network of the whole query
// interval from the trajectory blocks, then answers by time-ordered label
// propagation. Reads every trajectory segment overlapping the interval.
bool spj_query(TrajStore& ts, const Query& q);

}  // namespace reach
