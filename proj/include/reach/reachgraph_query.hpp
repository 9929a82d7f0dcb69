#pragma once

#include <cstdint>
#include <vector>

#include "reach/core.hpp"
#include "reach/reachgraph_disk.hpp"

namespace reach {

// One traversal step, recorded when a trace sink is supplied.
struct TraceStep {
  VertexId vertex = 0;
  Tick arrival = 0;
  Tick fired_resolution = 0;  // 0: base edges expanded
  bool forward = true;
};

struct TraversalTrace {
  std::vector<TraceStep> steps;
  ObjectId meet_object = kInvalidObject;  // set when a member meet fired
};

// Reachability over the placed graph by forward traversal in arrival-tick
// order, following the highest-resolution long edges whose target stays
// inside the query interval and base edges otherwise. Stops the moment a
// popped vertex contains the destination; IO therefore scales with the
// earliest-reach prefix of the interval, not its full length.
bool bm_bfs(PlacedGraph& index, const Query& q,
            TraversalTrace* trace = nullptr);

// BM-BFS with the long edges disabled: the same arrival-ordered forward
// traversal over base edges only.
bool b_bfs(PlacedGraph& index, const Query& q,
           TraversalTrace* trace = nullptr);

// Bidirectional variant per the original meet-in-the-middle scheme: strict
// alternation between a forward pass over base edges (entries up to the
// interval midpoint) and a backward pass over reverse base edges (exits
// down to the midpoint), terminating when one side pops a vertex sharing
// an object with the other side's visited set. Exercises the reverse
// layer; not part of the measured engine set because its IO depends on
// the interval end even for early-reach queries.
bool bd_bfs(PlacedGraph& index, const Query& q,
            TraversalTrace* trace = nullptr);

// Naive baseline: forward depth-first search over base edges bounded by
// the interval end, answering true only upon visiting the exact vertex
// that contains the destination at the interval end. No member checks.
bool e_dfs(PlacedGraph& index, const Query& q);

}  // namespace reach
