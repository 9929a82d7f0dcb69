#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "reach/oracle.hpp"
#include "reach/ten.hpp"

using namespace reach;
using namespace reach::testing;

TEST_CASE("ten construction on the running example") {
  ContactSet cs = extract_contacts(figure1());
  TenGraph ten = build_ten(cs, 4, 4);

  CHECK(ten.vertex_count() == 16);
  CHECK(ten.hold_edge_count() == 12);
  // Contact edges: one per contact per covered tick.
  CHECK(ten.contact_edge_count() == 1 + 1 + 2 + 2);

  // G_0 has exactly one contact edge, (o1(0), o2(0)).
  REQUIRE(ten.snapshot(0).size() == 1);
  CHECK(ten.snapshot(0)[0] == std::pair<ObjectId, ObjectId>{0, 1});

  // The path (o1(0), o2(0), o2(1), o4(1)) exists edge by edge.
  CHECK(ten.has_contact_edge(0, 1, 0));
  CHECK(ten.has_contact_edge(1, 3, 1));
}

TEST_CASE("ten with empty contact set") {
  ContactSet cs;
  cs.horizon = TimeInterval{0, 1};
  TenGraph ten = build_ten(cs, 3, 2);
  CHECK(ten.vertex_count() == 6);
  CHECK(ten.hold_edge_count() == 3);
  CHECK(ten.contact_edge_count() == 0);
  CHECK(!ten_reachable(ten, q(0, 1, 0, 1)));
  CHECK(ten_reachable(ten, q(2, 2, 0, 1)));
}

TEST_CASE("ten rejects malformed input") {
  ContactSet cs;
  cs.horizon = TimeInterval{0, 3};
  cs.contacts.push_back(Contact{1, 9, {0, 0}});
  CHECK_THROWS(build_ten(cs, 4, 4));
  TenGraph ok = build_ten(ContactSet{{}, {0, 3}, {}, 0}, 4, 4);
  CHECK_THROWS(ten_reachable(ok, q(0, 1, 0, 9)));
}

TEST_CASE("ten reachability on the running example") {
  ContactSet cs = extract_contacts(figure1());
  TenGraph ten = build_ten(cs, 4, 4);

  CHECK(ten_reachable(ten, q(0, 3, 0, 1)));   // o1 -> o4 over [0,1]
  CHECK(!ten_reachable(ten, q(3, 0, 0, 1)));  // o4 -> o1 over [0,1]
  CHECK(ten_reachable(ten, q(0, 1, 2, 3)));   // o1 -> o2 via c4
  CHECK(ten_reachable(ten, q(1, 1, 2, 2)));   // reflexive, single tick
}

TEST_CASE("snapshot symmetry: single-tick reachability is symmetric") {
  for (std::uint64_t seed = 1; seed < 6; ++seed) {
    TrajectorySet ts = random_instance(seed, 20, 30);
    ContactSet cs = extract_contacts(ts);
    TenGraph ten = build_ten(cs, 20, 30);
    for (Tick t = 0; t < 30; t += 3)
      for (ObjectId a = 0; a < 20; ++a)
        for (ObjectId b = a + 1; b < 20; ++b)
          CHECK(ten_reachable(ten, q(a, b, t, t)) ==
                ten_reachable(ten, q(b, a, t, t)));
  }
}

TEST_CASE("transitivity: paths concatenate at the junction tick") {
  for (std::uint64_t seed = 1; seed < 5; ++seed) {
    TrajectorySet ts = random_instance(seed, 15, 40);
    ContactSet cs = extract_contacts(ts);
    TenGraph ten = build_ten(cs, 15, 40);
    Rng rng(seed);
    for (int trial = 0; trial < 300; ++trial) {
      ObjectId i = rng.below(15), j = rng.below(15), k = rng.below(15);
      Tick t1 = rng.below(20);
      Tick tm = t1 + rng.below(10);
      Tick t2 = tm + rng.below(39 - tm);
      if (ten_reachable(ten, q(i, j, t1, tm)) &&
          ten_reachable(ten, q(j, k, tm, t2)))
        CHECK(ten_reachable(ten, q(i, k, t1, t2)));
    }
  }
}

TEST_CASE("interval monotonicity: widening never flips true to false") {
  for (std::uint64_t seed = 11; seed < 15; ++seed) {
    TrajectorySet ts = random_instance(seed, 15, 30);
    ContactSet cs = extract_contacts(ts);
    TenGraph ten = build_ten(cs, 15, 30);
    Rng rng(seed);
    for (int trial = 0; trial < 200; ++trial) {
      ObjectId a = rng.below(15), b = rng.below(15);
      Tick t1 = 1 + rng.below(20);
      Tick t2 = t1 + rng.below(29 - t1);
      if (ten_reachable(ten, q(a, b, t1, t2))) {
        CHECK(ten_reachable(ten, q(a, b, t1 - 1, t2)));
        CHECK(ten_reachable(ten, q(a, b, t1, t2 + 1)));
      }
    }
  }
}

TEST_CASE("oracle on the running example") {
  ContactSet cs = extract_contacts(figure1());
  Oracle oracle(cs, 4);

  ReachResult r = oracle.reach(q(0, 3, 0, 3));
  CHECK(r.reachable);
  CHECK(r.earliest_reach == 1);  // o4 reachable from o1 during [0,1]

  CHECK(!oracle.reach(q(3, 0, 0, 1)).reachable);

  ReachResult self = oracle.reach(q(2, 2, 1, 3));
  CHECK(self.reachable);
  CHECK(self.earliest_reach == 1);
}

TEST_CASE("oracle matches ten reachability exhaustively") {
  for (std::uint64_t seed = 21; seed < 26; ++seed) {
    TrajectorySet ts = random_instance(seed, 12, 25);
    ContactSet cs = extract_contacts(ts);
    TenGraph ten = build_ten(cs, 12, 25);
    Oracle oracle(cs, 12);
    for (ObjectId a = 0; a < 12; ++a)
      for (ObjectId b = 0; b < 12; ++b)
        for (Tick t1 = 0; t1 < 25; t1 += 4)
          for (Tick t2 = t1; t2 < 25; t2 += 3)
            CHECK(oracle.reachable(q(a, b, t1, t2)) ==
                  ten_reachable(ten, q(a, b, t1, t2)));
  }
}

TEST_CASE("earliest reach is minimal") {
  for (std::uint64_t seed = 31; seed < 36; ++seed) {
    TrajectorySet ts = random_instance(seed, 15, 30);
    ContactSet cs = extract_contacts(ts);
    Oracle oracle(cs, 15);
    Rng rng(seed);
    for (int trial = 0; trial < 200; ++trial) {
      ObjectId a = rng.below(15), b = rng.below(15);
      if (a == b) continue;
      Tick t1 = rng.below(20);
      Tick t2 = t1 + rng.below(30 - t1);
      ReachResult r = oracle.reach(q(a, b, t1, t2));
      if (!r.reachable) continue;
      Tick er = *r.earliest_reach;
      CHECK(er <= t2);
      CHECK(oracle.reach(q(a, b, t1, er)).reachable);
      if (er > t1)
        CHECK(!oracle.reach(q(a, b, t1, er - 1)).reachable);
    }
  }
}

TEST_CASE("ten edge dump is stable") {
  ContactSet cs = extract_contacts(figure1());
  TenGraph ten = build_ten(cs, 4, 4);
  std::ostringstream out;
  ten.dump_edges(out);
  CHECK(out.str() == "0 0 1\n1 1 3\n1 2 3\n2 2 3\n2 0 1\n3 0 1\n");
}
