#include "reach/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "reach/reachgraph_query.hpp"
#include "reach/ten.hpp"

namespace reach {

EngineMismatch::EngineMismatch(const std::string& engine_name, const Query& q,
                               bool got_, bool want_)
    : std::runtime_error("engine '" + engine_name + "' answered " +
                         (got_ ? "true" : "false") + " but the oracle says " +
                         (want_ ? "true" : "false") + " for query " +
                         std::to_string(q.source) + "->" +
                         std::to_string(q.destination) + " over [" +
                         std::to_string(q.interval.start) + "," +
                         std::to_string(q.interval.end) + "]"),
      engine(engine_name),
      query(q),
      got(got_),
      want(want_) {}

const std::vector<std::string> kAllEngines = {"spj", "e-dfs", "b-bfs",
                                              "bm-bfs", "reachgrid"};

GraphBuildResult build_reachgraph(const ContactSet& contacts,
                                  ObjectId n_objects, Tick n_ticks,
                                  const std::vector<Tick>& resolutions) {
  GraphBuildResult r;
  TenGraph ten = build_ten(contacts, n_objects, n_ticks);
  r.ten_vertices = ten.vertex_count();
  r.ten_edges = ten.edge_count();
  // Fixed span cap: long quiet runs split into 32-tick chunks. Bounds how
  // far any vertex outlives its entry, keeping long-edge firing decisions
  // near the interval end independent of trailing padding.
  ComponentDag reduced = merge_runs(reduce_components(ten), 32);
  r.reduced_vertices = reduced.vertex_count();
  r.reduced_edges = reduced.edge_count();
  r.graph = augment(std::move(reduced), resolutions);
  return r;
}

BenchContext build_bench_context(const TrajectorySet& ts,
                                 const BuildParams& p) {
  BenchContext ctx;
  ctx.n_objects = ts.n_objects();
  ctx.n_ticks = ts.n_ticks();
  ctx.contacts = extract_contacts(ts);
  ctx.oracle.emplace(ctx.contacts, ctx.n_objects);

  ctx.grid_store = std::make_unique<BlockStore>(p.page_size, p.buffer_blocks);
  ctx.grid_manifest = build_grid(ts, p.r_t, p.r_s, *ctx.grid_store);
  ctx.grid.emplace(*ctx.grid_store, *ctx.grid_manifest);

  ctx.graph_build =
      build_reachgraph(ctx.contacts, ctx.n_objects, ctx.n_ticks, p.resolutions);
  ctx.graph_store = std::make_unique<BlockStore>(p.page_size, p.buffer_blocks);
  ctx.graph_manifest =
      partition_and_place(ctx.graph_build.graph, p.d_p, *ctx.graph_store,
                          p.placement, p.placement_seed);
  ctx.graph.emplace(*ctx.graph_store, *ctx.graph_manifest);

  ctx.spj_store = std::make_unique<BlockStore>(p.page_size, p.buffer_blocks);
  ctx.spj_manifest = build_traj_store(ts, *ctx.spj_store);
  ctx.spj.emplace(*ctx.spj_store, *ctx.spj_manifest);
  return ctx;
}

namespace {

bool dispatch(BenchContext& ctx, const std::string& engine, const Query& q) {
  if (engine == "spj") return spj_query(*ctx.spj, q);
  if (engine == "e-dfs") return e_dfs(*ctx.graph, q);
  if (engine == "b-bfs") return b_bfs(*ctx.graph, q);
  if (engine == "bm-bfs") return bm_bfs(*ctx.graph, q);
  if (engine == "reachgrid") return ctx.grid->query(q);
  throw std::invalid_argument("unknown engine: " + engine);
}

BlockStore& store_of(BenchContext& ctx, const std::string& engine) {
  if (engine == "spj") return *ctx.spj_store;
  if (engine == "reachgrid") return *ctx.grid_store;
  return *ctx.graph_store;
}

}  // namespace

BenchRecord run_query(BenchContext& ctx, const std::string& engine,
                      const Query& q, std::size_t query_id) {
  BlockStore& store = store_of(ctx, engine);
  store.begin_cold_run();
  BenchRecord rec;
  rec.engine = engine;
  rec.query_id = query_id;
  rec.result = dispatch(ctx, engine, q);
  IoReport io = store.report();
  rec.io_random = io.random_reads;
  rec.io_sequential = io.sequential_reads;
  rec.io_normalized = io.normalized_cost();
  return rec;
}

std::vector<BenchRecord> run_bench(BenchContext& ctx,
                                   const std::vector<Query>& queries,
                                   const std::vector<std::string>& engines,
                                   bool measure_cpu) {
  std::vector<BenchRecord> out;
  out.reserve(queries.size() * engines.size());
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const Query& q = queries[qi];
    const bool want = ctx.oracle->reachable(q);
    for (const std::string& engine : engines) {
      BenchRecord rec = run_query(ctx, engine, q, qi);
      if (rec.result != want) throw EngineMismatch(engine, q, rec.result, want);
      if (measure_cpu) {
        BlockStore& store = store_of(ctx, engine);
        store.preload_all();
        auto t0 = std::chrono::steady_clock::now();
        (void)dispatch(ctx, engine, q);
        auto t1 = std::chrono::steady_clock::now();
        rec.cpu_micros = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0)
                .count());
        store.begin_cold_run();
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

double mean_io(const std::vector<BenchRecord>& records,
               const std::string& engine) {
  double sum = 0;
  std::size_t n = 0;
  for (const BenchRecord& r : records)
    if (r.engine == engine) {
      sum += r.io_normalized;
      ++n;
    }
  return n ? sum / static_cast<double>(n) : 0.0;
}

void write_bench_csv(const std::string& path,
                     const std::vector<BenchRecord>& records,
                     const std::string& header_note) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# reach-bench-csv v1 " << header_note << "\n";
  out << "engine,query_id,result,io_random,io_sequential,io_normalized,"
         "cpu_micros\n";
  char buf[64];
  for (const BenchRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%.6f", r.io_normalized);
    out << r.engine << ',' << r.query_id << ',' << (r.result ? 1 : 0) << ','
        << r.io_random << ',' << r.io_sequential << ',' << buf << ','
        << r.cpu_micros << '\n';
  }
}

std::vector<TuneRow> tune_grid(const TrajectorySet& ts,
                               const std::vector<Tick>& rt_values,
                               const std::vector<double>& rs_values,
                               const std::vector<Query>& queries,
                               const BuildParams& base) {
  std::vector<TuneRow> rows;
  for (Tick rt : rt_values) {
    for (double rs : rs_values) {
      BlockStore store(base.page_size, base.buffer_blocks);
      GridManifest manifest = build_grid(ts, rt, rs, store);
      GridIndex grid(store, manifest);
      double sum = 0;
      for (const Query& q : queries) {
        store.begin_cold_run();
        (void)grid.query(q);
        sum += store.report().normalized_cost();
      }
      rows.push_back(TuneRow{static_cast<double>(rt), rs,
                             sum / static_cast<double>(queries.size())});
    }
  }
  return rows;
}

std::vector<TuneRow> tune_graph(const TrajectorySet& ts,
                                const std::vector<Tick>& dp_values,
                                const std::vector<int>& resolution_counts,
                                const std::vector<Query>& queries,
                                const BuildParams& base) {
  ContactSet contacts = extract_contacts(ts);
  std::vector<TuneRow> rows;
  for (int rc : resolution_counts) {
    GraphBuildResult built = build_reachgraph(
        contacts, ts.n_objects(), ts.n_ticks(), resolutions_for_count(rc));
    for (Tick dp : dp_values) {
      BlockStore store(base.page_size, base.buffer_blocks);
      GraphManifest manifest = partition_and_place(built.graph, dp, store);
      PlacedGraph graph(store, manifest);
      double sum = 0;
      for (const Query& q : queries) {
        store.begin_cold_run();
        (void)bm_bfs(graph, q);
        sum += store.report().normalized_cost();
      }
      rows.push_back(TuneRow{static_cast<double>(dp), static_cast<double>(rc),
                             sum / static_cast<double>(queries.size())});
    }
  }
  return rows;
}

void write_tune_csv(const std::string& path, const std::string& kind,
                    const std::vector<TuneRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# reach-tune-csv v1 kind=" << kind << "\n";
  if (kind == "reachgrid")
    out << "r_t,r_s,mean_normalized_io\n";
  else
    out << "d_p,resolutions,mean_normalized_io\n";
  char buf[64];
  for (const TuneRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%g,%g,%.6f", r.param1, r.param2,
                  r.mean_normalized_io);
    out << buf << '\n';
  }
}

}  // namespace reach
