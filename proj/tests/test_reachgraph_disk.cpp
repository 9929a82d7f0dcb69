#include "reach/reachgraph_disk.hpp"

#include <filesystem>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "reach/ten.hpp"

using namespace reach;
using namespace reach::testing;

namespace {

ReachGraph figure1_graph(const std::vector<Tick>& resolutions = {2}) {
  ContactSet cs = extract_contacts(figure1());
  return augment(merge_runs(reduce_components(build_ten(cs, 4, 4))),
                 resolutions);
}

}  // namespace

TEST_CASE("depth-1 partitioning reproduces the five running-example partitions") {
  ReachGraph g = figure1_graph();
  BlockStore store;
  GraphManifest m = partition_and_place(g, 1, store);
  REQUIRE(m.partitions.size() == 5);

  PlacedGraph placed(store, m);
  std::vector<std::set<VertexId>> members(5);
  for (PartitionId p = 0; p < 5; ++p)
    for (const VertexRecord& r : placed.fetch_partition(p))
      members[p].insert(r.id);

  CHECK(members[0] == std::set<VertexId>{0, 3, 4});
  CHECK(members[1] == std::set<VertexId>{1});
  CHECK(members[2] == std::set<VertexId>{2});
  CHECK(members[3] == std::set<VertexId>{6, 8, 9});
  CHECK(members[4] == std::set<VertexId>{7});
}

TEST_CASE("every vertex lands in exactly one partition") {
  for (std::uint64_t seed : {3u, 4u}) {
    TrajectorySet ts = random_instance(seed, 20, 50);
    ContactSet cs = extract_contacts(ts);
    ReachGraph g = augment(merge_runs(reduce_components(build_ten(cs, 20, 50))),
                           default_resolutions());
    for (Tick d_p : {1u, 2u, 8u}) {
      BlockStore store;
      GraphManifest m = partition_and_place(g, d_p, store);
      PlacedGraph placed(store, m);
      std::set<VertexId> seen;
      std::size_t total = 0;
      for (PartitionId p = 0; p < m.partitions.size(); ++p)
        for (const VertexRecord& r : placed.fetch_partition(p)) {
          CHECK(seen.insert(r.id).second);  // no vertex twice
          ++total;
        }
      CHECK(total == g.base.vertex_count());
    }
  }
}

TEST_CASE("find_vertex on the running example") {
  ReachGraph g = figure1_graph();
  BlockStore store;
  GraphManifest m = partition_and_place(g, 1, store);
  PlacedGraph placed(store, m);

  // (o2, 1) sits in the {o2,o3,o4} component.
  auto loc = placed.find_vertex(1, 1);
  const VertexRecord& rec = placed.fetch_vertex(loc.vertex, loc.partition);
  CHECK(rec.members == std::vector<ObjectId>{1, 2, 3});

  // (o1, 0) sits in the {o1,o2} component.
  auto loc2 = placed.find_vertex(0, 0);
  CHECK(placed.fetch_vertex(loc2.vertex, loc2.partition).members ==
        std::vector<ObjectId>{0, 1});

  // Ticks of a merged run resolve to the surviving vertex.
  CHECK(placed.find_vertex(0, 2).vertex == 7);
  CHECK(placed.find_vertex(0, 3).vertex == 7);

  CHECK_THROWS(placed.find_vertex(9, 0));
  CHECK_THROWS(placed.find_vertex(0, 99));
}

TEST_CASE("records carry reverse edges mirroring the base edges") {
  TrajectorySet ts = random_instance(9, 15, 40);
  ContactSet cs = extract_contacts(ts);
  ReachGraph g =
      augment(merge_runs(reduce_components(build_ten(cs, 15, 40))), {2, 4});
  BlockStore store;
  GraphManifest m = partition_and_place(g, 4, store);
  PlacedGraph placed(store, m);

  std::set<std::pair<VertexId, VertexId>> forward, reversed;
  for (PartitionId p = 0; p < m.partitions.size(); ++p)
    for (const VertexRecord& r : placed.fetch_partition(p)) {
      for (auto [v, pid] : r.out_edges) forward.emplace(r.id, v);
      for (auto [v, pid] : r.in_edges) reversed.emplace(v, r.id);
    }
  CHECK(forward == reversed);
}

TEST_CASE("records store the highest non-empty long-edge layer") {
  TrajectorySet ts = random_instance(12, 15, 70);
  ContactSet cs = extract_contacts(ts);
  ReachGraph g = augment(merge_runs(reduce_components(build_ten(cs, 15, 70))),
                         default_resolutions());
  BlockStore store;
  GraphManifest m = partition_and_place(g, 4, store);
  PlacedGraph placed(store, m);

  std::size_t with_long = 0;
  for (PartitionId p = 0; p < m.partitions.size(); ++p)
    for (const VertexRecord& r : placed.fetch_partition(p)) {
      if (r.long_resolution == 0) {
        // No layer may hold edges for this vertex.
        for (const auto& layer : g.layers) CHECK(!layer.has_edges[r.id]);
        continue;
      }
      ++with_long;
      // The stored layer is the highest with edges.
      bool above = false;
      for (const auto& layer : g.layers)
        if (layer.resolution > r.long_resolution && layer.has_edges[r.id])
          above = true;
      CHECK(!above);
      const LongEdgeLayer* stored = nullptr;
      for (const auto& layer : g.layers)
        if (layer.resolution == r.long_resolution) stored = &layer;
      REQUIRE(stored != nullptr);
      CHECK(r.long_boundary == stored->boundary[r.id]);
      REQUIRE(r.long_targets.size() == stored->targets[r.id].size());
      for (std::size_t i = 0; i < r.long_targets.size(); ++i)
        CHECK(r.long_targets[i].first == stored->targets[r.id][i]);
    }
  CHECK(with_long > 0);
}

TEST_CASE("manifest text round trip") {
  namespace fs = std::filesystem;
  ReachGraph g = figure1_graph({2});
  BlockStore store;
  GraphManifest m = partition_and_place(g, 1, store);
  fs::path path = fs::temp_directory_path() / "reach_graph_test.manifest";
  m.save(path.string());
  GraphManifest back = GraphManifest::load(path.string());
  CHECK(back.n_objects == m.n_objects);
  CHECK(back.n_ticks == m.n_ticks);
  CHECK(back.d_p == m.d_p);
  CHECK(back.resolutions == m.resolutions);
  CHECK(back.n_vertices == m.n_vertices);
  CHECK(back.id_space == m.id_space);
  CHECK(back.time_index_first == m.time_index_first);
  REQUIRE(back.partitions.size() == m.partitions.size());
  for (std::size_t i = 0; i < m.partitions.size(); ++i) {
    CHECK(back.partitions[i].first == m.partitions[i].first);
    CHECK(back.partitions[i].last == m.partitions[i].last);
  }
  fs::remove(path);
}

TEST_CASE("rebuilding produces an identical store and manifest") {
  TrajectorySet ts = random_instance(14, 20, 60);
  ContactSet cs = extract_contacts(ts);
  ReachGraph g = augment(merge_runs(reduce_components(build_ten(cs, 20, 60))),
                         default_resolutions());
  BlockStore s1, s2;
  GraphManifest m1 = partition_and_place(g, 8, s1);
  GraphManifest m2 = partition_and_place(g, 8, s2);
  REQUIRE(s1.block_count() == s2.block_count());
  for (BlockId b = 0; b < s1.block_count(); ++b)
    CHECK(s1.read(b) == s2.read(b));
  CHECK(m1.partitions.size() == m2.partitions.size());
}

TEST_CASE("random placement isolates each vertex") {
  ReachGraph g = figure1_graph();
  BlockStore store;
  GraphManifest m =
      partition_and_place(g, 1, store, Placement::kRandom, 1234);
  CHECK(m.partitions.size() == g.base.vertex_count());
  CHECK(m.placement == "random");
}

TEST_CASE("time index lookups cost one block read") {
  TrajectorySet ts = random_instance(16, 30, 50);
  ContactSet cs = extract_contacts(ts);
  ReachGraph g = augment(merge_runs(reduce_components(build_ten(cs, 30, 50))),
                         {2});
  BlockStore store;
  GraphManifest m = partition_and_place(g, 4, store);
  PlacedGraph placed(store, m);
  store.begin_cold_run();
  placed.find_vertex(3, 17);
  IoReport r = store.report();
  CHECK(r.random_reads + r.sequential_reads == 1);
}
