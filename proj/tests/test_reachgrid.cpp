#include "reach/reachgrid.hpp"

#include <filesystem>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "reach/oracle.hpp"

using namespace reach;
using namespace reach::testing;

namespace {

struct GridFixture {
  BlockStore store;
  GridManifest manifest;
  GridIndex grid;

  GridFixture(const TrajectorySet& ts, Tick r_t, double r_s)
      : store(),
        manifest(build_grid(ts, r_t, r_s, store)),
        grid(store, manifest) {}
};

}  // namespace

TEST_CASE("bucket layout") {
  TrajectorySet ts = random_instance(1, 5, 120);
  GridFixture f(ts, 20, 25.0);
  CHECK(f.manifest.n_buckets == 6);
  CHECK(f.manifest.bucket_start(1) == 20);
  CHECK(f.manifest.bucket_end(5) == 119);

  SUBCASE("ragged final bucket") {
    GridFixture g(random_instance(1, 5, 110), 20, 25.0);
    CHECK(g.manifest.n_buckets == 6);
    CHECK(g.manifest.bucket_end(5) == 109);
  }
}

TEST_CASE("stationary object occupies one cell per bucket") {
  TrajectorySet ts;
  ts.config.d_t = 1.0;
  ts.config.environment = {100.0, 100.0};
  ts.config.horizon = TimeInterval{0, 39};
  Trajectory tr;
  tr.object = 0;
  for (Tick t = 0; t < 40; ++t) tr.positions.push_back(Point{55.0, 70.0});
  ts.trajectories.push_back(tr);

  BlockStore store;
  GridManifest m = build_grid(ts, 10, 25.0, store);
  CHECK(m.n_buckets == 4);
  for (Tick b = 0; b < 4; ++b) {
    std::size_t non_empty = 0;
    for (CellIndex c = 0; c < m.cells_per_bucket(); ++c)
      if (m.cell_length[static_cast<std::size_t>(b) * m.cells_per_bucket() +
                        c] > 0)
        ++non_empty;
    CHECK(non_empty == 1);
  }
}

TEST_CASE("cell payloads reconstruct every trajectory exactly") {
  TrajectorySet ts = random_instance(23, 25, 60);
  GridFixture f(ts, 15, 20.0);
  const GridManifest& m = f.manifest;

  // Walk every cell payload and collect samples per object.
  std::vector<std::vector<std::pair<Tick, Point>>> rebuilt(25);
  for (Tick b = 0; b < m.n_buckets; ++b)
    for (CellIndex c = 0; c < m.cells_per_bucket(); ++c) {
      const std::size_t idx =
          static_cast<std::size_t>(b) * m.cells_per_bucket() + c;
      if (m.cell_length[idx] == 0) continue;
      std::vector<std::uint8_t> bytes =
          read_bytes(f.store, m.cell_offset[idx], m.cell_length[idx]);
      const std::uint8_t* p = bytes.data();
      std::uint32_t n = get_u32(p);
      p += 4;
      for (std::uint32_t i = 0; i < n; ++i) {
        ObjectId o = get_u32(p);
        Tick first = get_u32(p + 4);
        std::uint32_t k = get_u32(p + 8);
        p += 12;
        for (std::uint32_t s = 0; s < k; ++s, p += 16)
          rebuilt[o].emplace_back(first + s, Point{get_f64(p), get_f64(p + 8)});
      }
    }
  for (ObjectId o = 0; o < 25; ++o) {
    std::sort(rebuilt[o].begin(), rebuilt[o].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    REQUIRE(rebuilt[o].size() == 60);
    for (Tick t = 0; t < 60; ++t) {
      CHECK(rebuilt[o][t].first == t);
      CHECK(rebuilt[o][t].second == ts.position(o, t));
    }
  }
}

TEST_CASE("find_cells") {
  TrajectorySet ts = figure1();
  GridFixture f(ts, 2, 2.0);

  SUBCASE("single seed maps to one cell") {
    auto cells = f.grid.find_cells({0}, 0);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0] == f.manifest.cell_of_point(Point{0, 0}));
  }
  SUBCASE("seeds sharing a cell collapse to one entry") {
    // o1 (0,0) and o2 (0.5,0) share the origin cell at t=0.
    auto cells = f.grid.find_cells({0, 1}, 0);
    CHECK(cells.size() == 1);
  }
  SUBCASE("locator matches position arithmetic") {
    for (ObjectId o = 0; o < 4; ++o)
      for (Tick t = 0; t < 4; ++t) {
        auto cells = f.grid.find_cells({o}, t);
        REQUIRE(cells.size() == 1);
        CHECK(cells[0] == f.manifest.cell_of_point(ts.position(o, t)));
      }
  }
  SUBCASE("unknown object rejected") { CHECK_THROWS(f.grid.find_cells({9}, 0)); }
}

TEST_CASE("cells_near covers the inflated bounding box") {
  TrajectorySet ts = figure1();
  GridFixture f(ts, 2, 2.0);  // 5x5 cells over 10x10

  SUBCASE("box well inside one cell stays one cell") {
    Mbr box{2.5, 2.5, 3.0, 3.0};
    auto cells = f.grid.cells_near(box, 0.4);
    CHECK(cells.size() == 1);
  }
  SUBCASE("box near a border pulls the neighbor") {
    Mbr box{1.5, 1.0, 1.9, 1.0};  // within d_T of the x=2 gridline
    auto cells = f.grid.cells_near(box, 0.5);
    CHECK(cells.size() == 2);
  }
}

TEST_CASE("candidate superset: contacts never involve unread cells") {
  // For every contact, the partner lies inside the d_T-inflated MBR of the
  // seed's bucket segment, hence in a candidate cell.
  for (std::uint64_t seed = 301; seed < 1301; ++seed) {
    TrajectorySet ts = random_instance(seed, 8, 20);
    GridFixture f(ts, 10, 20.0);
    ContactSet cs = extract_contacts(ts);
    for (const Contact& c : cs.contacts) {
      for (Tick t = c.validity.start; t <= c.validity.end; ++t) {
        const Tick b = f.manifest.bucket_of(t);
        Mbr box;
        bool first = true;
        for (Tick u = f.manifest.bucket_start(b); u <= f.manifest.bucket_end(b);
             ++u) {
          const Point& p = ts.position(c.a, u);
          if (first) {
            box = Mbr{p.x, p.y, p.x, p.y};
            first = false;
          } else {
            box.expand(p);
          }
        }
        auto cand = f.grid.cells_near(box, ts.config.d_t);
        CellIndex partner = f.manifest.cell_of_point(ts.position(c.b, t));
        CHECK(std::find(cand.begin(), cand.end(), partner) != cand.end());
      }
    }
  }
}

TEST_CASE("grid query answers the running-example queries") {
  TrajectorySet ts = figure1();
  GridFixture f(ts, 2, 2.0);

  CHECK(f.grid.query(q(0, 3, 0, 1)));
  CHECK(!f.grid.query(q(3, 0, 0, 1)));
  CHECK(f.grid.query(q(0, 1, 2, 3)));
  CHECK(f.grid.query(q(1, 1, 0, 0)));  // reflexive
  CHECK_THROWS(f.grid.query(q(0, 1, 0, 9)));
}

TEST_CASE("early stop never touches the trailing bucket") {
  TrajectorySet ts = figure1();
  GridFixture f(ts, 2, 2.0);
  const GridManifest& m = f.manifest;

  // Blocks belonging to the second bucket (ticks [2,3]).
  std::set<BlockId> bucket1_blocks;
  for (CellIndex c = 0; c < m.cells_per_bucket(); ++c) {
    const std::size_t idx = 1 * m.cells_per_bucket() + c;
    if (m.cell_length[idx] == 0) continue;
    for (BlockId blk = m.cell_offset[idx] / m.page_size;
         blk <= (m.cell_offset[idx] + m.cell_length[idx] - 1) / m.page_size;
         ++blk)
      bucket1_blocks.insert(blk);
  }
  REQUIRE(!bucket1_blocks.empty());

  f.store.begin_cold_run();
  f.store.enable_read_log(true);
  GridQueryStats stats;
  CHECK(f.grid.query(q(0, 3, 0, 3), &stats));  // reachable during [0,1]
  for (BlockId blk : f.store.read_log()) CHECK(!bucket1_blocks.count(blk));
  CHECK(stats.buckets_processed == 1);
  f.store.enable_read_log(false);
}

TEST_CASE("query for a nearby pair skips far-away cells") {
  TrajectorySet ts = figure1();
  GridFixture f(ts, 2, 2.0);
  GridQueryStats stats;
  CHECK(f.grid.query(q(0, 1, 2, 3), &stats));
  // Cells holding only o3/o4 segments (around (5,5) and (9,9)) stay
  // untouched: every loaded cell is near o1's corner of the environment.
  for (auto [bucket, cell] : stats.cells) {
    CHECK(bucket == 1);
    const CellIndex cx = cell % f.manifest.cells_x;
    const CellIndex cy = cell / f.manifest.cells_x;
    CHECK(cx <= 1);
    CHECK(cy <= 2);
  }
  CHECK(!stats.cells.empty());
}

TEST_CASE("grid build rejects bad parameters") {
  TrajectorySet ts = figure1();
  BlockStore store;
  CHECK_THROWS(build_grid(ts, 0, 2.0, store));
  CHECK_THROWS(build_grid(ts, 2, 0.0, store));
}

TEST_CASE("seeds enter in non-decreasing earliest-reach order") {
  for (std::uint64_t seed : {501u, 502u, 503u}) {
    TrajectorySet ts = random_instance(seed, 20, 60);
    ContactSet cs = extract_contacts(ts);
    Oracle oracle(cs, 20);
    GridFixture f(ts, 10, 25.0);
    Rng rng(seed);
    for (int trial = 0; trial < 100; ++trial) {
      ObjectId a = rng.below(20), b = rng.below(20);
      if (a == b) continue;
      Tick t1 = rng.below(30);
      Tick t2 = t1 + rng.below(60 - t1);
      GridQueryStats stats;
      f.grid.query(q(a, b, t1, t2), &stats);
      Tick prev = t1;
      for (auto [o, tick] : stats.seeds_added) {
        CHECK(tick >= prev);  // discovery follows reach order
        prev = tick;
        // The discovery tick is the object's true earliest reach time.
        ReachResult r = oracle.reach(q(a, o, t1, t2));
        REQUIRE(r.reachable);
        CHECK(*r.earliest_reach == tick);
      }
    }
  }
}

TEST_CASE("grid query agrees with the oracle on random instances") {
  for (std::uint64_t seed = 401; seed < 406; ++seed) {
    TrajectorySet ts = random_instance(seed, 25, 80);
    ContactSet cs = extract_contacts(ts);
    Oracle oracle(cs, 25);
    GridFixture f(ts, 16, 25.0);
    Rng rng(seed);
    for (int trial = 0; trial < 2000; ++trial) {
      ObjectId a = rng.below(25), b = rng.below(25);
      Tick t1 = rng.below(80);
      Tick t2 = t1 + rng.below(80 - t1);
      Query query = q(a, b, t1, t2);
      CHECK(f.grid.query(query) == oracle.reachable(query));
    }
  }
}

TEST_CASE("degenerate single-cell grid still answers correctly") {
  TrajectorySet ts = random_instance(17, 15, 40);
  GridFixture f(ts, 10, ts.config.environment.width);
  CHECK(f.manifest.cells_per_bucket() == 1);
  ContactSet cs = extract_contacts(ts);
  Oracle oracle(cs, 15);
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    ObjectId a = rng.below(15), b = rng.below(15);
    Tick t1 = rng.below(40);
    Tick t2 = t1 + rng.below(40 - t1);
    CHECK(f.grid.query(q(a, b, t1, t2)) == oracle.reachable(q(a, b, t1, t2)));
  }
}

TEST_CASE("padding a reachable interval does not change grid IO") {
  TrajectorySet ts = random_instance(88, 30, 240, 100.0, 7.0);
  ContactSet cs = extract_contacts(ts);
  Oracle oracle(cs, 30);
  GridFixture f(ts, 20, 25.0);
  Rng rng(12);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 60; ++trial) {
    ObjectId a = rng.below(30), b = rng.below(30);
    Tick t1 = rng.below(50);
    Tick len = 20 + rng.below(30);
    Query base = q(a, b, t1, t1 + len - 1);
    Query padded = base;
    padded.interval.end = base.interval.end + 2 * len;
    if (padded.interval.end >= 240) continue;
    if (!oracle.reachable(base)) continue;

    f.store.begin_cold_run();
    CHECK(f.grid.query(base));
    IoReport io1 = f.store.report();
    f.store.begin_cold_run();
    CHECK(f.grid.query(padded));
    IoReport io2 = f.store.report();
    CHECK(io1.random_reads == io2.random_reads);
    CHECK(io1.sequential_reads == io2.sequential_reads);
    ++checked;
  }
  CHECK(checked >= 40);
}

TEST_CASE("unreachable query processes every bucket of the interval") {
  // A destination pinned far away from everything else.
  TrajectorySet ts = random_instance(19, 10, 60, 60.0, 5.0);
  for (Tick t = 0; t < 60; ++t)
    ts.trajectories[9].positions[t] = Point{0.5, 0.5};
  for (ObjectId o = 0; o < 9; ++o)
    for (Tick t = 0; t < 60; ++t) {
      Point& p = ts.trajectories[o].positions[t];
      p.x = std::max(20.0, p.x);
      p.y = std::max(20.0, p.y);
    }
  ContactSet cs = extract_contacts(ts);
  Oracle oracle(cs, 10);
  REQUIRE(!oracle.reachable(q(0, 9, 5, 55)));
  GridFixture f(ts, 10, 15.0);
  GridQueryStats stats;
  CHECK(!f.grid.query(q(0, 9, 5, 55), &stats));
  CHECK(stats.buckets_processed == 6);  // buckets 0..5 all touched
}
