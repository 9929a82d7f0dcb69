#include "reach/reachgraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace reach {
namespace {

// Plain union-find over object ids, reused per tick.
class UnionFind {
 public:
  explicit UnionFind(ObjectId n) : parent_(n) { reset(); }
  void reset() { std::iota(parent_.begin(), parent_.end(), 0u); }
  ObjectId find(ObjectId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(ObjectId a, ObjectId b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<ObjectId> parent_;
};

}  // namespace

std::uint64_t ComponentDag::vertex_count() const {
  std::uint64_t n = 0;
  for (const auto& v : vertices)
    if (v.alive) ++n;
  return n;
}

std::uint64_t ComponentDag::edge_count() const {
  std::uint64_t n = 0;
  for (VertexId v = 0; v < out.size(); ++v)
    if (vertices[v].alive) n += out[v].size();
  return n;
}

bool ComponentDag::reachable(const Query& q) const {
  if (q.interval.end >= n_ticks)
    throw std::invalid_argument("dag reachable: interval outside horizon");
  const VertexId v1 = vertex_at(q.source, q.interval.start);
  const VertexId v2 = vertex_at(q.destination, q.interval.end);
  if (v1 == v2) return true;
  // Forward BFS; edges only move forward in time, so bound by v2's entry.
  std::vector<char> seen(vertices.size(), 0);
  std::deque<VertexId> queue{v1};
  seen[v1] = 1;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    if (u == v2) return true;
    for (const DagEdge& e : out[u]) {
      if (seen[e.to]) continue;
      if (vertices[e.to].t_start > vertices[v2].t_start) continue;
      seen[e.to] = 1;
      queue.push_back(e.to);
    }
  }
  return false;
}

ComponentDag reduce_components(const TenGraph& ten) {
  ComponentDag dag;
  dag.n_objects = ten.n_objects();
  dag.n_ticks = ten.n_ticks();
  dag.vertex_of.assign(
      static_cast<std::size_t>(dag.n_ticks) * dag.n_objects, kNoVertex);

  UnionFind uf(dag.n_objects);
  std::vector<VertexId> root_vertex(dag.n_objects);
  for (Tick t = 0; t < dag.n_ticks; ++t) {
    uf.reset();
    for (auto [a, b] : ten.snapshot(t)) uf.unite(a, b);
    // Components ordered by smallest member; the smallest member is the
    // union-find root by construction.
    std::fill(root_vertex.begin(), root_vertex.end(), kNoVertex);
    for (ObjectId o = 0; o < dag.n_objects; ++o) {
      ObjectId r = uf.find(o);
      VertexId vid;
      if (root_vertex[r] == kNoVertex) {
        vid = static_cast<VertexId>(dag.vertices.size());
        root_vertex[r] = vid;
        dag.vertices.push_back(ComponentVertex{vid, t, t, {}, true});
      } else {
        vid = root_vertex[r];
      }
      dag.vertices[vid].members.push_back(o);
      dag.vertex_of[static_cast<std::size_t>(t) * dag.n_objects + o] = vid;
    }
  }

  dag.out.resize(dag.vertices.size());
  dag.in.resize(dag.vertices.size());
  for (Tick t = 0; t + 1 < dag.n_ticks; ++t) {
    for (ObjectId o = 0; o < dag.n_objects; ++o) {
      VertexId u = dag.vertex_at(o, t);
      VertexId v = dag.vertex_at(o, t + 1);
      auto& edges = dag.out[u];
      bool dup = false;
      for (const DagEdge& e : edges)
        if (e.to == v) {
          dup = true;
          break;
        }
      if (!dup) {
        edges.push_back(DagEdge{v, 1});
        dag.in[v].push_back(u);
      }
    }
  }
  return dag;
}

ComponentDag merge_runs(const ComponentDag& dag, Tick max_span) {
  ComponentDag merged = dag;

  // Follow the chain of identical consecutive member sets; the last
  // snapshot of each maximal run survives.
  std::vector<VertexId> survivor(merged.vertices.size());
  for (VertexId v = 0; v < merged.vertices.size(); ++v) survivor[v] = v;

  for (VertexId v = 0; v < merged.vertices.size(); ++v) {
    ComponentVertex& cur = merged.vertices[v];
    if (!cur.alive) continue;
    // The vertex's own snapshot tick; folding only moves t_start.
    const Tick t = cur.t_end;
    if (t + 1 >= merged.n_ticks) continue;
    const VertexId nxt = merged.vertex_at(cur.members.front(), t + 1);
    if (merged.vertices[nxt].members != cur.members) continue;
    if (max_span != 0 && t + 1 - cur.t_start + 1 > max_span)
      continue;  // span cap reached: start a new chunk at t+1
    // cur is a non-final snapshot of a run: fold it into its successor.
    // Iterating in id order means cur's span is already maximal leftward.
    ComponentVertex& keep = merged.vertices[nxt];
    keep.t_start = cur.t_start;
    cur.alive = false;
    survivor[v] = nxt;  // chains resolve transitively below
  }
  for (VertexId v = 0; v < merged.vertices.size(); ++v) {
    VertexId r = v;
    while (survivor[r] != r) r = survivor[r];
    survivor[v] = r;
  }

  // Remap the per-tick lookup table onto the survivors.
  for (auto& vid : merged.vertex_of) vid = survivor[vid];

  // Rebuild edges between survivors; the weight is the number of ticks the
  // edge advances (target.t_end - source.t_end), >1 along merged runs.
  merged.out.assign(merged.vertices.size(), {});
  merged.in.assign(merged.vertices.size(), {});
  for (Tick t = 0; t + 1 < merged.n_ticks; ++t) {
    for (ObjectId o = 0; o < merged.n_objects; ++o) {
      VertexId u = merged.vertex_at(o, t);
      VertexId v = merged.vertex_at(o, t + 1);
      if (u == v) continue;
      auto& edges = merged.out[u];
      bool dup = false;
      for (const DagEdge& e : edges)
        if (e.to == v) {
          dup = true;
          break;
        }
      if (!dup) {
        Tick w = merged.vertices[v].t_end - merged.vertices[u].t_end;
        edges.push_back(DagEdge{v, w});
        merged.in[v].push_back(u);
      }
    }
  }
  return merged;
}

std::vector<Tick> default_resolutions() { return {2, 4, 8, 16, 32}; }

std::vector<Tick> resolutions_for_count(int n) {
  std::vector<Tick> out;
  for (int i = 1; i < n; ++i) out.push_back(static_cast<Tick>(1) << i);
  return out;
}

ReachGraph augment(ComponentDag dag, const std::vector<Tick>& resolutions) {
  ReachGraph g;
  g.base = std::move(dag);
  const ComponentDag& base = g.base;
  const std::size_t n_vertices = base.vertices.size();

  // Vertices grouped by entry tick, for the per-interval sweeps.
  std::vector<std::vector<VertexId>> entering(base.n_ticks);
  for (VertexId v = 0; v < n_vertices; ++v)
    if (base.vertices[v].alive) entering[base.vertices[v].t_start].push_back(v);

  for (Tick res : resolutions) {
    LongEdgeLayer layer;
    layer.resolution = res;
    layer.targets.resize(n_vertices);
    layer.boundary.assign(n_vertices, 0);
    layer.has_edges.assign(n_vertices, 0);

    // label_bits[v] = bitset over the sources of the current interval.
    std::vector<std::vector<std::uint64_t>> label_bits(n_vertices);

    for (Tick t_a = 0; t_a + res < base.n_ticks; t_a += res) {
      const Tick t_b = t_a + res;
      // Sources: components covering t_a. Their unique candidate boundary
      // at this resolution is the last one in the span, so only sources
      // with t_end < t_b can have targets.
      std::vector<VertexId> sources;
      for (ObjectId o = 0; o < base.n_objects; ++o) {
        VertexId v = base.vertex_at(o, t_a);
        if (label_bits[v].empty()) sources.push_back(v);
        label_bits[v].assign(1, 0);  // placeholder, sized below
      }
      std::sort(sources.begin(), sources.end());
      const std::size_t words = (sources.size() + 63) / 64;
      std::vector<VertexId> touched;
      for (std::size_t i = 0; i < sources.size(); ++i) {
        auto& bits = label_bits[sources[i]];
        bits.assign(words, 0);
        bits[i / 64] |= 1ull << (i % 64);
        touched.push_back(sources[i]);
      }
      // Forward sweep over vertices entering within (t_a, t_b].
      for (Tick t = t_a + 1; t <= t_b; ++t) {
        for (VertexId v : entering[t]) {
          std::vector<std::uint64_t> acc;
          for (VertexId p : base.in[v]) {
            const auto& src_bits = label_bits[p];
            if (src_bits.empty()) continue;
            if (acc.empty()) acc.assign(words, 0);
            for (std::size_t w = 0; w < words; ++w) acc[w] |= src_bits[w];
          }
          if (!acc.empty()) {
            label_bits[v] = std::move(acc);
            touched.push_back(v);
          }
        }
      }
      // Read off the targets covering t_b.
      for (std::size_t i = 0; i < sources.size(); ++i) {
        VertexId s = sources[i];
        const ComponentVertex& sv = base.vertices[s];
        if (sv.t_end >= t_b) continue;  // still alive at t_b: no targets
        std::vector<VertexId>& tgt = layer.targets[s];
        for (VertexId v : touched) {
          const ComponentVertex& cv = base.vertices[v];
          if (cv.t_start <= t_b && t_b <= cv.t_end && v != s &&
              !label_bits[v].empty() &&
              (label_bits[v][i / 64] >> (i % 64) & 1)) {
            tgt.push_back(v);
          }
        }
        if (!tgt.empty()) {
          std::sort(tgt.begin(), tgt.end());
          layer.boundary[s] = t_a;
          layer.has_edges[s] = 1;
          layer.edge_count += tgt.size();
        }
      }
      for (VertexId v : touched) label_bits[v].clear();
    }
    g.layers.push_back(std::move(layer));
  }
  std::sort(g.layers.begin(), g.layers.end(),
            [](const LongEdgeLayer& a, const LongEdgeLayer& b) {
              return a.resolution < b.resolution;
            });
  return g;
}

bool ReachGraph::reachable_via(const Query& q,
                               const std::vector<Tick>& resolutions) const {
  const VertexId v1 = base.vertex_at(q.source, q.interval.start);
  const VertexId v2 = base.vertex_at(q.destination, q.interval.end);
  if (v1 == v2) return true;
  const Tick t2 = q.interval.end;
  std::vector<char> seen(base.vertices.size(), 0);
  std::deque<std::pair<VertexId, Tick>> queue;  // (vertex, arrival tick)
  queue.emplace_back(v1, q.interval.start);
  seen[v1] = 1;
  while (!queue.empty()) {
    auto [u, arrival] = queue.front();
    queue.pop_front();
    if (u == v2) return true;
    for (const DagEdge& e : base.out[u]) {
      Tick entry = base.vertices[e.to].t_start;
      if (entry > t2 || seen[e.to]) continue;
      seen[e.to] = 1;
      queue.emplace_back(e.to, entry);
    }
    for (const LongEdgeLayer& layer : layers) {
      if (std::find(resolutions.begin(), resolutions.end(),
                    layer.resolution) == resolutions.end())
        continue;
      if (!layer.has_edges[u]) continue;
      Tick t_a = layer.boundary[u];
      if (t_a < arrival || t_a + layer.resolution > t2) continue;
      for (VertexId v : layer.targets[u]) {
        if (seen[v]) continue;
        seen[v] = 1;
        queue.emplace_back(v, t_a + layer.resolution);
      }
    }
  }
  return false;
}

}  // namespace reach
