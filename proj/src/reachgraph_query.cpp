#include "reach/reachgraph_query.hpp"

#include <queue>
#include <stdexcept>
#include <tuple>

namespace reach {
namespace {

void check_query(const PlacedGraph& index, const Query& q) {
  const GraphManifest& m = index.manifest();
  if (q.interval.end >= m.n_ticks)
    throw IndexError("query interval outside horizon");
  if (q.source >= m.n_objects || q.destination >= m.n_objects)
    throw IndexError("query references unknown object");
}

// (arrival, vertex, partition); ordered by (arrival, vertex) so heap order
// does not depend on insertion sequence.
using HeapEntry = std::tuple<Tick, VertexId, PartitionId>;
using MinHeap =
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

bool forward_search(PlacedGraph& index, const Query& q, bool use_long_edges,
                    TraversalTrace* trace) {
  check_query(index, q);
  const Tick t1 = q.interval.start, t2 = q.interval.end;
  const auto v1 = index.find_vertex(q.source, t1);
  index.find_vertex(q.destination, t2);  // H_t lookup for the destination

  MinHeap queue;
  queue.emplace(t1, v1.vertex, v1.partition);
  std::vector<char> visited(index.manifest().id_space, 0);

  while (!queue.empty()) {
    auto [arrival, v, p] = queue.top();
    queue.pop();
    if (arrival > t2) break;  // nothing left inside the interval
    if (visited[v]) continue;
    visited[v] = 1;
    const VertexRecord& rec = index.fetch_vertex(v, p);

    bool meet = false;
    for (ObjectId o : rec.members)
      if (o == q.destination) {
        meet = true;
        break;
      }
    // Largest stored resolution whose boundary is still ahead of the
    // arrival tick and whose target tick stays inside the interval.
    const bool fired = use_long_edges && !meet && rec.long_resolution > 0 &&
                       rec.long_boundary >= arrival &&
                       rec.long_boundary + rec.long_resolution <= t2;
    if (trace)
      trace->steps.push_back(
          TraceStep{v, arrival, fired ? rec.long_resolution : 0, true});
    if (meet) {
      if (trace) trace->meet_object = q.destination;
      return true;
    }
    if (fired) {
      const Tick target_tick = rec.long_boundary + rec.long_resolution;
      for (auto [tv, tp] : rec.long_targets)
        if (!visited[tv]) queue.emplace(target_tick, tv, tp);
    } else {
      const Tick entry = rec.t_end + 1;
      for (auto [cv, cp] : rec.out_edges)
        if (!visited[cv]) queue.emplace(entry, cv, cp);
    }
  }
  return false;
}

}  // namespace

bool bm_bfs(PlacedGraph& index, const Query& q, TraversalTrace* trace) {
  return forward_search(index, q, true, trace);
}

bool b_bfs(PlacedGraph& index, const Query& q, TraversalTrace* trace) {
  return forward_search(index, q, false, trace);
}

bool bd_bfs(PlacedGraph& index, const Query& q, TraversalTrace* trace) {
  check_query(index, q);
  const GraphManifest& m = index.manifest();
  const Tick t1 = q.interval.start, t2 = q.interval.end;
  const Tick midpoint = t1 + (t2 - t1) / 2;

  const auto v1 = index.find_vertex(q.source, t1);
  const auto v2 = index.find_vertex(q.destination, t2);

  // Object sets seen on each side; the traversal stops as soon as they
  // intersect (the shared object is reachable from the source and reaches
  // the destination).
  std::vector<char> in_forward(m.n_objects, 0), in_backward(m.n_objects, 0);
  const VertexRecord& rec1 = index.fetch_vertex(v1.vertex, v1.partition);
  for (ObjectId o : rec1.members) in_forward[o] = 1;
  const VertexRecord& rec2 = index.fetch_vertex(v2.vertex, v2.partition);
  for (ObjectId o : rec2.members) in_backward[o] = 1;
  for (ObjectId o : rec2.members)
    if (in_forward[o]) {
      if (trace) trace->meet_object = o;
      return true;
    }

  struct Entry {
    VertexId v;
    PartitionId p;
    Tick tick;  // forward: arrival; backward: exit
  };
  std::deque<Entry> q_f{{v1.vertex, v1.partition, t1}};
  std::deque<Entry> q_b{{v2.vertex, v2.partition, t2}};
  std::vector<char> visited_f(m.id_space, 0), visited_b(m.id_space, 0);

  auto process = [&](std::deque<Entry>& queue, std::vector<char>& visited,
                     std::vector<char>& own, std::vector<char>& other,
                     bool forward) -> bool {
    if (queue.empty()) return false;
    Entry e = queue.front();
    queue.pop_front();
    if (visited[e.v]) return false;
    visited[e.v] = 1;
    const VertexRecord& rec = index.fetch_vertex(e.v, e.p);
    if (trace) trace->steps.push_back(TraceStep{e.v, e.tick, 0, forward});
    for (ObjectId o : rec.members) {
      if (other[o]) {
        if (trace) trace->meet_object = o;
        return true;
      }
      own[o] = 1;
    }
    if (forward) {
      const Tick entry = rec.t_end + 1;
      if (entry <= midpoint)
        for (auto [cv, cp] : rec.out_edges)
          if (!visited[cv]) queue.push_back(Entry{cv, cp, entry});
    } else {
      if (rec.t_start > 0) {
        const Tick parent_end = rec.t_start - 1;
        if (parent_end >= midpoint)
          for (auto [pv, pp] : rec.in_edges)
            if (!visited[pv]) queue.push_back(Entry{pv, pp, parent_end});
      }
    }
    return false;
  };

  while (!q_f.empty() || !q_b.empty()) {
    if (process(q_f, visited_f, in_forward, in_backward, true)) return true;
    if (process(q_b, visited_b, in_backward, in_forward, false)) return true;
  }
  return false;
}

bool e_dfs(PlacedGraph& index, const Query& q) {
  check_query(index, q);
  const Tick t2 = q.interval.end;
  const auto v1 = index.find_vertex(q.source, q.interval.start);
  const auto v2 = index.find_vertex(q.destination, t2);
  if (v1.vertex == v2.vertex) return true;

  std::vector<char> visited(index.manifest().id_space, 0);
  std::vector<std::pair<VertexId, PartitionId>> stack{{v1.vertex, v1.partition}};
  while (!stack.empty()) {
    auto [v, p] = stack.back();
    stack.pop_back();
    if (visited[v]) continue;
    visited[v] = 1;
    if (v == v2.vertex) return true;
    const VertexRecord& rec = index.fetch_vertex(v, p);
    if (rec.t_end >= t2) continue;  // children enter past the interval
    for (auto [cv, cp] : rec.out_edges)
      if (!visited[cv]) stack.emplace_back(cv, cp);
  }
  return false;
}

}  // namespace reach
