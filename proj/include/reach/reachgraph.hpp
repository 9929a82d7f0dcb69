#pragma once

#include <cstdint>
#include <vector>

#include "reach/core.hpp"
#include "reach/ten.hpp"

namespace reach {

using VertexId = std::uint32_t;
constexpr VertexId kNoVertex = 0xffffffffu;

// One connected component of the contact graph, spanning [t_start, t_end]
// after run merging (t_start == t_end before). Members are mutually
// reachable, and reachable only to each other, at every covered tick.
struct ComponentVertex {
  VertexId id = 0;
  Tick t_start = 0;
  Tick t_end = 0;
  std::vector<ObjectId> members;  // sorted
  bool alive = true;              // false once merged away
};

struct DagEdge {
  VertexId to = 0;
  Tick weight = 1;  // ticks advanced: to.t_end - from.t_end
};

// DAG of per-tick components. Vertex ids are assigned in creation order
// (tick-major, components ordered by smallest member); merging removes
// vertices without renumbering the survivors.
struct ComponentDag {
  ObjectId n_objects = 0;
  Tick n_ticks = 0;
  std::vector<ComponentVertex> vertices;
  std::vector<std::vector<DagEdge>> out;  // indexed by VertexId
  std::vector<std::vector<VertexId>> in;  // reverse adjacency
  std::vector<VertexId> vertex_of;        // [t * n_objects + o] -> VertexId

  VertexId vertex_at(ObjectId o, Tick t) const {
    return vertex_of[static_cast<std::size_t>(t) * n_objects + o];
  }
  std::uint64_t vertex_count() const;  // alive vertices
  std::uint64_t edge_count() const;

  // Directed-path reachability between the components covering the query
  // endpoints (the in-memory query route used by tests and losslessness
  // checks).
  bool reachable(const Query& q) const;
};

// Per-tick union-find over contact edges; edges of weight 1 connect
// components sharing an object at consecutive ticks.
ComponentDag reduce_components(const TenGraph& ten);

// Collapses maximal runs of identical consecutive member sets. The run's
// last snapshot survives and absorbs the whole span; parents of the run
// head are reconnected by aggregated edges whose weight is the number of
// ticks skipped. max_span, when non-zero, caps a merged vertex's span in
// ticks (long runs split into chunks), which bounds how far any vertex
// stays alive past its entry; builders cap at the largest long-edge
// resolution so traversal IO stays invariant under trailing-interval
// padding.
ComponentDag merge_runs(const ComponentDag& dag, Tick max_span = 0);

// Precomputed reachability spanning exactly L ticks between aligned
// boundaries: an edge (from @ t_a) -> (to, covering t_a + L) exists iff a
// directed path connects them.
struct LongEdge {
  VertexId from = 0;
  Tick boundary = 0;  // t_a, a multiple of the resolution
  std::vector<VertexId> targets;
};

struct LongEdgeLayer {
  Tick resolution = 0;                         // L
  std::vector<std::vector<VertexId>> targets;  // [VertexId] -> targets
  std::vector<Tick> boundary;                  // [VertexId] -> t_a (or 0)
  std::vector<char> has_edges;                 // [VertexId]
  std::uint64_t edge_count = 0;
};

// Multi-resolution graph: the component DAG plus one long-edge layer per
// resolution.
struct ReachGraph {
  ComponentDag base;
  std::vector<LongEdgeLayer> layers;  // ascending resolution

  // Reachability using base edges plus any subset of layers (tests).
  bool reachable_via(const Query& q, const std::vector<Tick>& resolutions) const;
};

ReachGraph augment(ComponentDag dag, const std::vector<Tick>& resolutions);

std::vector<Tick> default_resolutions();  // {2, 4, 8, 16, 32}
std::vector<Tick> resolutions_for_count(int n);  // n=1 -> {}, n=6 -> {2..32}

}  // namespace reach
