#pragma once

// Shared test fixtures and the independent brute-force references the unit
// and acceptance suites check against.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "reach/contacts.hpp"
#include "reach/core.hpp"
#include "reach/io.hpp"
#include "reach/reachgraph.hpp"
#include "reach/workload.hpp"

namespace reach::testing {

// Four objects over ticks [0,3] in a 10x10 environment with d_T = 1,
// realizing contacts {0,1}@[0,0], {1,3}@[1,1], {2,3}@[1,2], {0,1}@[2,3].
// Objects o1..o4 of the running example map to ids 0..3.
inline TrajectorySet figure1() {
  TrajectorySet ts;
  ts.config.d_t = 1.0;
  ts.config.environment = {10.0, 10.0};
  ts.config.horizon = TimeInterval{0, 3};
  const double pos[4][4][2] = {
      // o1                o2                o3               o4
      {{0, 0}, {0, 3}, {0, 3}, {0, 3}},
      {{0.5, 0}, {4.2, 5}, {0.5, 3}, {0.5, 3}},
      {{5, 5}, {5.8, 5}, {5.8, 5}, {9, 9}},
      {{7, 7}, {5, 5}, {5, 5}, {5, 5}},
  };
  for (ObjectId o = 0; o < 4; ++o) {
    Trajectory tr;
    tr.object = o;
    for (Tick t = 0; t < 4; ++t)
      tr.positions.push_back(Point{pos[o][t][0], pos[o][t][1]});
    ts.trajectories.push_back(tr);
  }
  return ts;
}

// O(|O|^2 |T|) all-pairs reference for contact extraction.
inline std::vector<Contact> naive_contacts(const TrajectorySet& ts) {
  const double d2 = ts.config.d_t * ts.config.d_t;
  std::vector<Contact> out;
  for (ObjectId a = 0; a < ts.n_objects(); ++a) {
    for (ObjectId b = a + 1; b < ts.n_objects(); ++b) {
      Tick run_start = 0;
      bool open = false;
      for (Tick t = 0; t < ts.n_ticks(); ++t) {
        bool close_now =
            squared_distance(ts.position(a, t), ts.position(b, t)) <= d2;
        if (close_now && !open) {
          open = true;
          run_start = t;
        } else if (!close_now && open) {
          open = false;
          out.emplace_back(a, b, TimeInterval{run_start, t - 1});
        }
      }
      if (open) out.emplace_back(a, b, TimeInterval{run_start, ts.n_ticks() - 1});
    }
  }
  std::sort(out.begin(), out.end(), [](const Contact& l, const Contact& r) {
    if (l.validity.start != r.validity.start)
      return l.validity.start < r.validity.start;
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
  });
  return out;
}

// Random-walk population for exhaustive small-instance checks; density is
// tuned so per-tick contact graphs stay sparse but non-trivial.
inline TrajectorySet random_instance(std::uint64_t seed, ObjectId n_objects,
                                     Tick n_ticks, double width = 100.0,
                                     double d_t = 8.0) {
  TrajectorySet ts;
  ts.config.d_t = d_t;
  ts.config.environment = {width, width};
  ts.config.horizon = TimeInterval{0, n_ticks - 1};
  for (ObjectId o = 0; o < n_objects; ++o) {
    Rng rng(splitmix64(seed * 7919 + o));
    Trajectory tr;
    tr.object = o;
    double x = rng.uniform(0.0, width), y = rng.uniform(0.0, width);
    for (Tick t = 0; t < n_ticks; ++t) {
      tr.positions.push_back(Point{quantize_cm(x), quantize_cm(y)});
      x = std::clamp(x + rng.uniform(-5.0, 5.0), 0.0, width);
      y = std::clamp(y + rng.uniform(-5.0, 5.0), 0.0, width);
    }
    ts.trajectories.push_back(tr);
  }
  return ts;
}

// Per-tick connected components by brute-force BFS over active contacts;
// returns, per tick, the sorted member partition.
inline std::vector<std::vector<std::vector<ObjectId>>> brute_components(
    const ContactSet& cs, ObjectId n_objects) {
  const Tick ticks = cs.horizon.length();
  std::vector<std::vector<std::vector<ObjectId>>> out(ticks);
  for (Tick t = 0; t < ticks; ++t) {
    std::vector<std::vector<ObjectId>> adj(n_objects);
    for (const Contact& c : cs.contacts)
      if (c.validity.contains(t)) {
        adj[c.a].push_back(c.b);
        adj[c.b].push_back(c.a);
      }
    std::vector<char> seen(n_objects, 0);
    for (ObjectId o = 0; o < n_objects; ++o) {
      if (seen[o]) continue;
      std::vector<ObjectId> comp, stack{o};
      seen[o] = 1;
      while (!stack.empty()) {
        ObjectId u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for (ObjectId v : adj[u])
          if (!seen[v]) {
            seen[v] = 1;
            stack.push_back(v);
          }
      }
      std::sort(comp.begin(), comp.end());
      out[t].push_back(comp);
    }
  }
  return out;
}

// Path existence in the component DAG, ignoring long edges.
inline bool dag_path(const ComponentDag& dag, VertexId from, VertexId to) {
  if (from == to) return true;
  std::vector<char> seen(dag.vertices.size(), 0);
  std::vector<VertexId> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    if (u == to) return true;
    for (const DagEdge& e : dag.out[u])
      if (!seen[e.to]) {
        seen[e.to] = 1;
        stack.push_back(e.to);
      }
  }
  return false;
}

// Brute-force long-edge layer: for every aligned boundary pair and every
// vertex pair covering them, an edge iff a directed path connects them.
inline std::vector<std::pair<VertexId, VertexId>> brute_layer(
    const ComponentDag& dag, Tick resolution) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (Tick t_a = 0; t_a + resolution < dag.n_ticks; t_a += resolution) {
    const Tick t_b = t_a + resolution;
    std::set<VertexId> at_a, at_b;
    for (ObjectId o = 0; o < dag.n_objects; ++o) {
      at_a.insert(dag.vertex_at(o, t_a));
      at_b.insert(dag.vertex_at(o, t_b));
    }
    for (VertexId u : at_a)
      for (VertexId v : at_b)
        if (u != v && dag_path(dag, u, v)) edges.emplace_back(u, v);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

inline Query q(ObjectId s, ObjectId d, Tick t1, Tick t2) {
  return Query{s, d, TimeInterval{t1, t2}};
}

}  // namespace reach::testing
