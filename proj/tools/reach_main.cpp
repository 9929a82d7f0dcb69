// reach: build and benchmark disk-resident reachability indexes over
// moving-object contact networks.
//
// Subcommands: generate, extract, build, query, bench, tune, verify.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reach/bench.hpp"
#include "reach/io.hpp"
#include "reach/reachgraph_query.hpp"
#include "reach/workload.hpp"

using namespace reach;

namespace {

struct GlobalFlags {
  std::uint64_t seed = 1;
  std::uint32_t page_size = BlockStore::kDefaultPageSize;
  std::size_t buffer_blocks = BlockStore::kDefaultBufferBlocks;
};

std::vector<Tick> parse_resolutions(const std::string& csv) {
  std::vector<Tick> out;
  std::istringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoul(tok));
  return out;
}

int cmd_generate_traj(const std::string& model, const GlobalFlags& g,
                      ObjectId n_objects, Tick ticks, double width,
                      double height, double d_t, double mean_speed,
                      double tick_seconds, double road_spacing,
                      double speed_min, double speed_max,
                      const std::string& out) {
  TrajectorySet ts;
  if (model == "rwp") {
    RwpParams p;
    p.n_objects = n_objects;
    p.duration_ticks = ticks;
    p.environment = {width, height};
    p.d_t = d_t;
    p.mean_speed = mean_speed;
    p.tick_seconds = tick_seconds;
    p.rng_seed = g.seed;
    ts = gen_rwp(p);
  } else if (model == "road") {
    RoadGridParams p;
    p.n_objects = n_objects;
    p.duration_ticks = ticks;
    p.environment = {width, height};
    p.d_t = d_t;
    p.road_spacing = road_spacing;
    p.speed_min = speed_min;
    p.speed_max = speed_max;
    p.tick_seconds = tick_seconds;
    p.rng_seed = g.seed;
    ts = gen_road_grid(p);
  } else {
    std::cerr << "unknown model: " << model << "\n";
    return 1;
  }
  write_trajectories_file(out, ts);
  std::cout << "wrote " << out << ": " << ts.n_objects() << " objects x "
            << ts.n_ticks() << " ticks\n";
  return 0;
}

int cmd_generate_queries(const GlobalFlags& g, const std::string& traj,
                         std::size_t n, Tick len_min, Tick len_max,
                         const std::string& out) {
  TrajectorySet ts = read_trajectories_file(traj);
  auto queries = gen_queries(ts.config.horizon, ts.n_objects(), n,
                             {len_min, len_max}, g.seed);
  write_queries_file(out, queries);
  std::cout << "wrote " << out << ": " << queries.size() << " queries\n";
  return 0;
}

int cmd_extract(const std::string& traj, const std::string& out) {
  TrajectorySet ts = read_trajectories_file(traj);
  ContactSet cs = extract_contacts(ts);
  write_contacts_file(out, cs);
  std::cout << "wrote " << out << ": " << cs.contacts.size() << " contacts\n";
  return 0;
}

int cmd_build(const std::string& kind, const GlobalFlags& g,
              const std::string& traj, const std::string& out, Tick r_t,
              double r_s, Tick d_p, const std::string& resolutions,
              const std::string& placement) {
  TrajectorySet ts = read_trajectories_file(traj);
  BlockStore store(g.page_size, g.buffer_blocks);
  if (kind == "reachgrid") {
    GridManifest m = build_grid(ts, r_t, r_s, store);
    store.save(out + ".blocks");
    m.save(out + ".manifest");
    std::cout << "reachgrid: " << m.n_buckets << " buckets of " << m.r_t
              << " ticks, " << m.cells_x << "x" << m.cells_y
              << " cells, " << store.block_count() << " blocks ("
              << store.report().writes << " writes)\n";
  } else if (kind == "reachgraph") {
    ContactSet cs = extract_contacts(ts);
    GraphBuildResult built = build_reachgraph(cs, ts.n_objects(), ts.n_ticks(),
                                              parse_resolutions(resolutions));
    Placement mode =
        placement == "random" ? Placement::kRandom : Placement::kTopological;
    GraphManifest m = partition_and_place(built.graph, d_p, store, mode, g.seed);
    store.save(out + ".blocks");
    m.save(out + ".manifest");
    const double v_drop = built.ten_vertices
                              ? 100.0 * (1.0 - double(built.reduced_vertices) /
                                                   double(built.ten_vertices))
                              : 0.0;
    const double e_drop =
        built.ten_edges ? 100.0 * (1.0 - double(built.reduced_edges) /
                                             double(built.ten_edges))
                        : 0.0;
    std::printf(
        "reachgraph: time-expanded %llu vertices / %llu edges -> reduced "
        "%llu / %llu (%.1f%% / %.1f%% smaller), %zu partitions, %llu long "
        "edges, %llu blocks\n",
        (unsigned long long)built.ten_vertices,
        (unsigned long long)built.ten_edges,
        (unsigned long long)built.reduced_vertices,
        (unsigned long long)built.reduced_edges, v_drop, e_drop,
        m.partitions.size(), (unsigned long long)m.n_long_edges,
        (unsigned long long)store.block_count());
  } else if (kind == "trajstore") {
    TrajStoreManifest m = build_traj_store(ts, store);
    store.save(out + ".blocks");
    m.save(out + ".manifest");
    std::cout << "trajstore: " << store.block_count() << " blocks\n";
  } else {
    std::cerr << "unknown index kind: " << kind << "\n";
    return 1;
  }
  return 0;
}

int cmd_query(const std::string& kind, const GlobalFlags& g,
              const std::string& index, const std::string& engine,
              const std::string& queries_path, const std::string& out) {
  std::vector<Query> queries = read_queries_file(queries_path);
  BlockStore store = BlockStore::load(index + ".blocks", g.buffer_blocks);
  std::ofstream os(out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + out);
  os << "# reach-results v1\n";
  os << "source,destination,start,end,reachable,io_random,io_sequential,"
        "io_normalized\n";

  auto emit = [&](const Query& q, bool result, const IoReport& io) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", io.normalized_cost());
    os << q.source << ',' << q.destination << ',' << q.interval.start << ','
       << q.interval.end << ',' << (result ? 1 : 0) << ',' << io.random_reads
       << ',' << io.sequential_reads << ',' << buf << '\n';
  };

  if (kind == "reachgrid") {
    GridManifest m = GridManifest::load(index + ".manifest");
    GridIndex grid(store, m);
    for (const Query& q : queries) {
      store.begin_cold_run();
      bool r = grid.query(q);
      emit(q, r, store.report());
    }
  } else if (kind == "reachgraph") {
    GraphManifest m = GraphManifest::load(index + ".manifest");
    PlacedGraph placed(store, m);
    for (const Query& q : queries) {
      store.begin_cold_run();
      bool r;
      if (engine == "e-dfs")
        r = e_dfs(placed, q);
      else if (engine == "b-bfs")
        r = b_bfs(placed, q);
      else if (engine == "bm-bfs")
        r = bm_bfs(placed, q);
      else
        throw std::invalid_argument("unknown graph engine: " + engine);
      emit(q, r, store.report());
    }
  } else {
    std::cerr << "unknown index kind: " << kind << "\n";
    return 1;
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}

BuildParams params_from(const GlobalFlags& g, Tick r_t, double r_s, Tick d_p,
                        const std::string& resolutions) {
  BuildParams p;
  p.r_t = r_t;
  p.r_s = r_s;
  p.d_p = d_p;
  p.resolutions = parse_resolutions(resolutions);
  p.page_size = g.page_size;
  p.buffer_blocks = g.buffer_blocks;
  return p;
}

int cmd_bench(const GlobalFlags& g, const std::string& traj,
              const std::string& queries_path, const std::string& engines_csv,
              Tick r_t, double r_s, Tick d_p, const std::string& resolutions,
              bool measure_cpu, const std::string& out) {
  TrajectorySet ts = read_trajectories_file(traj);
  std::vector<Query> queries = read_queries_file(queries_path);
  std::vector<std::string> engines;
  {
    std::istringstream ss(engines_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) engines.push_back(tok);
  }
  BenchContext ctx =
      build_bench_context(ts, params_from(g, r_t, r_s, d_p, resolutions));
  try {
    auto records = run_bench(ctx, queries, engines, measure_cpu);
    write_bench_csv(out, records,
                    "seed=" + std::to_string(g.seed) + " engines=" + engines_csv);
    for (const std::string& e : engines)
      std::printf("%-10s mean normalized IO %.3f\n", e.c_str(),
                  mean_io(records, e));
    std::cout << "wrote " << out << "\n";
  } catch (const EngineMismatch& m) {
    // Reproduction bundle: the failing query plus the build parameters.
    std::string bundle = out + ".mismatch";
    std::ofstream bs(bundle, std::ios::binary);
    bs << "engine=" << m.engine << "\n"
       << "query=" << m.query.source << ',' << m.query.destination << ','
       << m.query.interval.start << ',' << m.query.interval.end << "\n"
       << "got=" << m.got << " want=" << m.want << "\n"
       << "traj=" << traj << "\n"
       << "r_t=" << r_t << " r_s=" << r_s << " d_p=" << d_p
       << " resolutions=" << resolutions << "\n";
    std::cerr << m.what() << "\nreproduction bundle: " << bundle << "\n";
    return 2;
  }
  return 0;
}

int cmd_tune(const GlobalFlags& g, const std::string& kind,
             const std::string& traj, const std::string& queries_path,
             const std::string& rt_csv, const std::string& rs_csv,
             const std::string& dp_csv, const std::string& res_counts_csv,
             const std::string& out) {
  TrajectorySet ts = read_trajectories_file(traj);
  std::vector<Query> queries = read_queries_file(queries_path);
  BuildParams base;
  base.page_size = g.page_size;
  base.buffer_blocks = g.buffer_blocks;
  if (kind == "reachgrid") {
    std::vector<Tick> rts;
    std::vector<double> rss;
    for (Tick v : parse_resolutions(rt_csv)) rts.push_back(v);
    {
      std::istringstream ss(rs_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) rss.push_back(std::stod(tok));
    }
    write_tune_csv(out, kind, tune_grid(ts, rts, rss, queries, base));
  } else if (kind == "reachgraph") {
    std::vector<Tick> dps;
    std::vector<int> rcs;
    for (Tick v : parse_resolutions(dp_csv)) dps.push_back(v);
    for (Tick v : parse_resolutions(res_counts_csv))
      rcs.push_back(static_cast<int>(v));
    write_tune_csv(out, kind, tune_graph(ts, dps, rcs, queries, base));
  } else {
    std::cerr << "unknown tune kind: " << kind << "\n";
    return 1;
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_verify(const GlobalFlags& g, const std::string& traj,
               const std::string& queries_path, const std::string& engines_csv,
               Tick r_t, double r_s, Tick d_p,
               const std::string& resolutions) {
  TrajectorySet ts = read_trajectories_file(traj);
  std::vector<Query> queries = read_queries_file(queries_path);
  std::vector<std::string> engines;
  std::istringstream ss(engines_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) engines.push_back(tok);

  BenchContext ctx =
      build_bench_context(ts, params_from(g, r_t, r_s, d_p, resolutions));
  try {
    run_bench(ctx, queries, engines, false);
  } catch (const EngineMismatch& m) {
    std::cerr << "verify FAILED: " << m.what() << "\n";
    return 2;
  }
  std::cout << "verify OK: " << engines.size() << " engines x "
            << queries.size() << " queries match the oracle\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "reachability query engines over spatiotemporal contact networks"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--seed", g.seed, "global RNG seed");
  app.add_option("--page-size", g.page_size, "block size in bytes");
  app.add_option("--buffer-blocks", g.buffer_blocks, "buffer pool capacity");

  // generate trajectories|queries
  auto* generate = app.add_subcommand("generate", "synthesize workloads");
  auto* gt = generate->add_subcommand("trajectories", "trajectory file");
  std::string model = "rwp", out = "out";
  ObjectId n_objects = 500;
  Tick ticks = 2000;
  double width = 3000, height = 3000, d_t = 25, mean_speed = 2,
         tick_seconds = 6, road_spacing = 1000, speed_min = 6, speed_max = 14;
  gt->add_option("--model", model, "rwp|road");
  gt->add_option("--objects", n_objects);
  gt->add_option("--ticks", ticks);
  gt->add_option("--width", width);
  gt->add_option("--height", height);
  gt->add_option("--d-t", d_t);
  gt->add_option("--mean-speed", mean_speed);
  gt->add_option("--tick-seconds", tick_seconds);
  gt->add_option("--road-spacing", road_spacing);
  gt->add_option("--speed-min", speed_min);
  gt->add_option("--speed-max", speed_max);
  gt->add_option("--out", out)->required();

  auto* gq = generate->add_subcommand("queries", "query batch file");
  std::string gq_traj, gq_out;
  std::size_t gq_n = 400;
  Tick len_min = 150, len_max = 350;
  gq->add_option("--traj", gq_traj)->required();
  gq->add_option("--n", gq_n);
  gq->add_option("--len-min", len_min);
  gq->add_option("--len-max", len_max);
  gq->add_option("--out", gq_out)->required();

  auto* extract = app.add_subcommand("extract", "extract the contact set");
  std::string ex_traj, ex_out;
  extract->add_option("--traj", ex_traj)->required();
  extract->add_option("--out", ex_out)->required();

  auto* build = app.add_subcommand("build", "build an index");
  std::string b_kind, b_traj, b_out, b_res = "2,4,8,16,32",
                                     b_placement = "topological";
  Tick b_rt = 40, b_dp = 32;
  double b_rs = 1024;
  build->add_option("--kind", b_kind, "reachgrid|reachgraph|trajstore")
      ->required();
  build->add_option("--traj", b_traj)->required();
  build->add_option("--out", b_out)->required();
  build->add_option("--rt", b_rt, "ticks per temporal bucket");
  build->add_option("--rs", b_rs, "cell side, meters");
  build->add_option("--dp", b_dp, "partition depth");
  build->add_option("--resolutions", b_res, "long-edge resolutions");
  build->add_option("--placement", b_placement, "topological|random");

  auto* querycmd = app.add_subcommand("query", "run a query batch");
  std::string q_kind, q_index, q_engine = "bm-bfs", q_queries, q_out;
  querycmd->add_option("--kind", q_kind, "reachgrid|reachgraph")->required();
  querycmd->add_option("--index", q_index, "index path prefix")->required();
  querycmd->add_option("--engine", q_engine, "bm-bfs|b-bfs|e-dfs");
  querycmd->add_option("--queries", q_queries)->required();
  querycmd->add_option("--out", q_out)->required();

  auto* bench = app.add_subcommand("bench", "compare engines on a workload");
  std::string be_traj, be_queries, be_engines = "spj,e-dfs,b-bfs,bm-bfs,reachgrid",
              be_out, be_res = "2,4,8,16,32";
  Tick be_rt = 40, be_dp = 32;
  double be_rs = 1024;
  bool be_cpu = false;
  bench->add_option("--traj", be_traj)->required();
  bench->add_option("--queries", be_queries)->required();
  bench->add_option("--engines", be_engines);
  bench->add_option("--rt", be_rt);
  bench->add_option("--rs", be_rs);
  bench->add_option("--dp", be_dp);
  bench->add_option("--resolutions", be_res);
  bench->add_flag("--measure-cpu", be_cpu,
                  "time queries against preloaded buffers");
  bench->add_option("--out", be_out)->required();

  auto* tune = app.add_subcommand("tune", "sweep index parameters");
  std::string t_kind, t_traj, t_queries, t_out;
  std::string t_rts = "2,5,10,20,40,80", t_rss = "64,128,256,512,1024,3000";
  std::string t_dps = "1,2,4,8,16,32,64", t_rcs = "6";
  tune->add_option("--kind", t_kind, "reachgrid|reachgraph")->required();
  tune->add_option("--traj", t_traj)->required();
  tune->add_option("--queries", t_queries)->required();
  tune->add_option("--rt-values", t_rts);
  tune->add_option("--rs-values", t_rss);
  tune->add_option("--dp-values", t_dps);
  tune->add_option("--resolution-counts", t_rcs);
  tune->add_option("--out", t_out)->required();

  auto* verify = app.add_subcommand("verify", "check engines against the oracle");
  std::string v_traj, v_queries, v_engines = "spj,e-dfs,b-bfs,bm-bfs,reachgrid",
              v_res = "2,4,8,16,32";
  Tick v_rt = 40, v_dp = 32;
  double v_rs = 1024;
  verify->add_option("--traj", v_traj)->required();
  verify->add_option("--queries", v_queries)->required();
  verify->add_option("--engines", v_engines);
  verify->add_option("--rt", v_rt);
  verify->add_option("--rs", v_rs);
  verify->add_option("--dp", v_dp);
  verify->add_option("--resolutions", v_res);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gt->parsed())
      return cmd_generate_traj(model, g, n_objects, ticks, width, height, d_t,
                               mean_speed, tick_seconds, road_spacing,
                               speed_min, speed_max, out);
    if (gq->parsed())
      return cmd_generate_queries(g, gq_traj, gq_n, len_min, len_max, gq_out);
    if (extract->parsed()) return cmd_extract(ex_traj, ex_out);
    if (build->parsed())
      return cmd_build(b_kind, g, b_traj, b_out, b_rt, b_rs, b_dp, b_res,
                       b_placement);
    if (querycmd->parsed())
      return cmd_query(q_kind, g, q_index, q_engine, q_queries, q_out);
    if (bench->parsed())
      return cmd_bench(g, be_traj, be_queries, be_engines, be_rt, be_rs, be_dp,
                       be_res, be_cpu, be_out);
    if (tune->parsed())
      return cmd_tune(g, t_kind, t_traj, t_queries, t_rts, t_rss, t_dps, t_rcs,
                      t_out);
    if (verify->parsed())
      return cmd_verify(g, v_traj, v_queries, v_engines, v_rt, v_rs, v_dp,
                        v_res);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "no subcommand\n";
  return 1;
}
