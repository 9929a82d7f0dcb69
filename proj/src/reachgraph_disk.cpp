#include "reach/reachgraph_disk.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace reach {
namespace {

void put_edge_list(std::vector<std::uint8_t>& buf,
                   const std::vector<std::pair<VertexId, PartitionId>>& edges) {
  put_u32(buf, static_cast<std::uint32_t>(edges.size()));
  for (auto [v, p] : edges) {
    put_u32(buf, v);
    put_u32(buf, p);
  }
}

const std::uint8_t* get_edge_list(
    const std::uint8_t* p, std::vector<std::pair<VertexId, PartitionId>>* out) {
  std::uint32_t n = get_u32(p);
  p += 4;
  out->reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    VertexId v = get_u32(p);
    PartitionId pid = get_u32(p + 4);
    out->emplace_back(v, pid);
    p += 8;
  }
  return p;
}

void serialize_record(std::vector<std::uint8_t>& buf, const VertexRecord& r) {
  put_u32(buf, r.id);
  put_u32(buf, r.t_start);
  put_u32(buf, r.t_end);
  put_u32(buf, static_cast<std::uint32_t>(r.members.size()));
  for (ObjectId m : r.members) put_u32(buf, m);
  put_edge_list(buf, r.out_edges);
  put_edge_list(buf, r.in_edges);
  put_u32(buf, r.long_resolution);
  put_u32(buf, r.long_boundary);
  put_edge_list(buf, r.long_targets);
}

const std::uint8_t* parse_record(const std::uint8_t* p, VertexRecord* r) {
  r->id = get_u32(p);
  r->t_start = get_u32(p + 4);
  r->t_end = get_u32(p + 8);
  std::uint32_t n_members = get_u32(p + 12);
  p += 16;
  r->members.reserve(n_members);
  for (std::uint32_t i = 0; i < n_members; ++i, p += 4)
    r->members.push_back(get_u32(p));
  p = get_edge_list(p, &r->out_edges);
  p = get_edge_list(p, &r->in_edges);
  r->long_resolution = get_u32(p);
  r->long_boundary = get_u32(p + 4);
  p += 8;
  p = get_edge_list(p, &r->long_targets);
  return p;
}

}  // namespace

void GraphManifest::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "reachgraph-manifest v1\n";
  out << "page_size=" << page_size << "\n";
  out << "objects=" << n_objects << "\n";
  out << "ticks=" << n_ticks << "\n";
  out << "d_p=" << d_p << "\n";
  out << "placement=" << placement << "\n";
  out << "resolutions=";
  for (std::size_t i = 0; i < resolutions.size(); ++i)
    out << (i ? "," : "") << resolutions[i];
  out << "\n";
  out << "vertices=" << n_vertices << "\n";
  out << "id_space=" << id_space << "\n";
  out << "base_edges=" << n_base_edges << "\n";
  out << "long_edges=" << n_long_edges << "\n";
  out << "reverse_edges=inline\n";
  out << "time_index_first=" << time_index_first << "\n";
  out << "partitions=" << partitions.size() << "\n";
  for (std::size_t i = 0; i < partitions.size(); ++i)
    out << "p " << i << ' ' << partitions[i].first << ' '
        << partitions[i].last << "\n";
}

GraphManifest GraphManifest::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  GraphManifest m;
  std::string line;
  if (!std::getline(in, line) || line != "reachgraph-manifest v1")
    throw ParseError(path + ": not a reachgraph manifest");
  std::size_t n_partitions = 0;
  while (std::getline(in, line)) {
    if (line.rfind("p ", 0) == 0) {
      std::istringstream ss(line.substr(2));
      std::size_t idx;
      PartitionRange r;
      ss >> idx >> r.first >> r.last;
      if (idx != m.partitions.size())
        throw ParseError(path + ": partition table out of order");
      m.partitions.push_back(r);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "page_size") m.page_size = std::stoul(val);
    else if (key == "objects") m.n_objects = std::stoul(val);
    else if (key == "ticks") m.n_ticks = std::stoul(val);
    else if (key == "d_p") m.d_p = std::stoul(val);
    else if (key == "placement") m.placement = val;
    else if (key == "vertices") m.n_vertices = std::stoull(val);
    else if (key == "id_space") m.id_space = std::stoull(val);
    else if (key == "base_edges") m.n_base_edges = std::stoull(val);
    else if (key == "long_edges") m.n_long_edges = std::stoull(val);
    else if (key == "time_index_first") m.time_index_first = std::stoull(val);
    else if (key == "resolutions" && !val.empty()) {
      std::istringstream ss(val);
      std::string tok;
      while (std::getline(ss, tok, ',')) m.resolutions.push_back(std::stoul(tok));
    } else if (key == "partitions") {
      n_partitions = std::stoull(val);
    }
  }
  if (m.partitions.size() != n_partitions)
    throw ParseError(path + ": partition table truncated");
  return m;
}

GraphManifest partition_and_place(const ReachGraph& graph, Tick d_p,
                                  BlockStore& store, Placement placement,
                                  std::uint64_t random_seed) {
  if (d_p < 1) throw std::invalid_argument("partition_and_place: d_p >= 1");
  const ComponentDag& dag = graph.base;

  // Topological order: by entry tick; creation ids break ties.
  std::vector<VertexId> order;
  for (VertexId v = 0; v < dag.vertices.size(); ++v)
    if (dag.vertices[v].alive) order.push_back(v);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (dag.vertices[a].t_start != dag.vertices[b].t_start)
      return dag.vertices[a].t_start < dag.vertices[b].t_start;
    return a < b;
  });

  std::vector<PartitionId> partition_of(dag.vertices.size(), kNoPartition);
  std::vector<std::vector<VertexId>> partition_members;

  if (placement == Placement::kTopological) {
    // Roots in topological order; each partition takes every still
    // unassigned vertex within base-edge depth <= d_p of its root. Long
    // edges are ignored here. Visit marks are epoch-stamped so each root's
    // BFS starts clean without reallocating.
    std::deque<std::pair<VertexId, Tick>> bfs;
    std::vector<std::uint32_t> seen(dag.vertices.size(), 0);
    std::uint32_t epoch = 0;
    for (VertexId root : order) {
      if (partition_of[root] != kNoPartition) continue;
      PartitionId pid = static_cast<PartitionId>(partition_members.size());
      partition_members.emplace_back();
      ++epoch;
      bfs.clear();
      bfs.emplace_back(root, 0);
      seen[root] = epoch;
      while (!bfs.empty()) {
        auto [v, depth] = bfs.front();
        bfs.pop_front();
        if (partition_of[v] == kNoPartition) {
          partition_of[v] = pid;
          partition_members[pid].push_back(v);
        }
        if (depth == d_p) continue;
        for (const DagEdge& e : dag.out[v]) {
          if (seen[e.to] == epoch) continue;
          seen[e.to] = epoch;
          bfs.emplace_back(e.to, depth + 1);
        }
      }
    }
  } else {
    // Random placement baseline: one vertex per partition, shuffled order.
    std::vector<VertexId> shuffled = order;
    std::mt19937_64 rng(random_seed);
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::size_t j = rng() % i;
      std::swap(shuffled[i - 1], shuffled[j]);
    }
    for (VertexId v : shuffled) {
      partition_of[v] = static_cast<PartitionId>(partition_members.size());
      partition_members.push_back({v});
    }
  }

  // Highest non-empty long-edge layer per vertex.
  auto best_layer = [&](VertexId v) -> const LongEdgeLayer* {
    for (auto it = graph.layers.rbegin(); it != graph.layers.rend(); ++it)
      if (it->has_edges[v]) return &*it;
    return nullptr;
  };

  GraphManifest m;
  m.page_size = store.page_size();
  m.n_objects = dag.n_objects;
  m.n_ticks = dag.n_ticks;
  m.d_p = d_p;
  for (const auto& layer : graph.layers)
    m.resolutions.push_back(layer.resolution);
  m.n_vertices = dag.vertex_count();
  m.id_space = dag.vertices.size();
  m.n_base_edges = dag.edge_count();
  m.placement =
      placement == Placement::kTopological ? "topological" : "random";

  // Serialize partitions to contiguous blocks in creation order.
  for (const auto& members : partition_members) {
    std::vector<std::uint8_t> payload;
    put_u32(payload, static_cast<std::uint32_t>(members.size()));
    for (VertexId v : members) {
      const ComponentVertex& cv = dag.vertices[v];
      VertexRecord r;
      r.id = v;
      r.t_start = cv.t_start;
      r.t_end = cv.t_end;
      r.members = cv.members;
      for (const DagEdge& e : dag.out[v])
        r.out_edges.emplace_back(e.to, partition_of[e.to]);
      for (VertexId p : dag.in[v]) r.in_edges.emplace_back(p, partition_of[p]);
      if (const LongEdgeLayer* layer = best_layer(v)) {
        r.long_resolution = layer->resolution;
        r.long_boundary = layer->boundary[v];
        for (VertexId tgt : layer->targets[v]) {
          r.long_targets.emplace_back(tgt, partition_of[tgt]);
          ++m.n_long_edges;
        }
      }
      serialize_record(payload, r);
    }
    BlockId first = append_bytes(store, payload);
    m.partitions.push_back(PartitionRange{first, store.block_count() - 1});
  }

  store.append({});  // spacer block between the sections

  // Time index: one (vertex, partition) entry per (tick, object).
  m.time_index_first = store.block_count();
  std::vector<std::uint8_t> row;
  const std::uint32_t ps = store.page_size();
  for (Tick t = 0; t < dag.n_ticks; ++t) {
    for (ObjectId o = 0; o < dag.n_objects; ++o) {
      VertexId v = dag.vertex_at(o, t);
      put_u32(row, v);
      put_u32(row, partition_of[v]);
    }
    while (row.size() >= ps) {
      std::vector<std::uint8_t> chunk(row.begin(), row.begin() + ps);
      store.append(chunk);
      row.erase(row.begin(), row.begin() + ps);
    }
  }
  if (!row.empty()) store.append(row);
  return m;
}

PlacedGraph::Located PlacedGraph::find_vertex(ObjectId o, Tick t) {
  const GraphManifest& m = manifest_;
  if (o >= m.n_objects) throw IndexError("find_vertex: unknown object");
  if (t >= m.n_ticks) throw IndexError("find_vertex: tick outside horizon");
  const std::uint64_t entry =
      (static_cast<std::uint64_t>(t) * m.n_objects + o) * 8;
  const BlockId block = m.time_index_first + entry / m.page_size;
  const auto& data = store_->read(block);
  const std::uint8_t* p = data.data() + entry % m.page_size;
  return Located{get_u32(p), get_u32(p + 4)};
}

const std::vector<VertexRecord>& PlacedGraph::fetch_partition(PartitionId p) {
  if (p >= manifest_.partitions.size())
    throw IndexError("fetch_partition: bad partition id");
  const PartitionRange range = manifest_.partitions[p];
  // Always read through the store so the buffer pool decides the cost.
  for (BlockId b = range.first; b <= range.last; ++b) store_->read(b);
  auto it = cache_.find(p);
  if (it != cache_.end()) return it->second;

  std::vector<std::uint8_t> bytes;
  for (BlockId b = range.first; b <= range.last; ++b) {
    const auto& blk = store_->read(b);  // buffered: free
    bytes.insert(bytes.end(), blk.begin(), blk.end());
  }
  const std::uint8_t* ptr = bytes.data();
  std::uint32_t n = get_u32(ptr);
  ptr += 4;
  std::vector<VertexRecord> records(n);
  for (std::uint32_t i = 0; i < n; ++i) ptr = parse_record(ptr, &records[i]);
  return cache_.emplace(p, std::move(records)).first->second;
}

const VertexRecord& PlacedGraph::fetch_vertex(VertexId v, PartitionId p) {
  const auto& records = fetch_partition(p);
  for (const VertexRecord& r : records)
    if (r.id == v) return r;
  throw IndexError("fetch_vertex: vertex not in its partition");
}

}  // namespace reach
