#include "reach/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "reach/io.hpp"

namespace reach {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

static Rng object_stream(std::uint64_t master, ObjectId o) {
  return Rng(splitmix64(master ^ (0x5851f42d4c957f2dull *
                                  (static_cast<std::uint64_t>(o) + 1))));
}

TrajectorySet gen_rwp(const RwpParams& p) {
  if (p.n_objects == 0 || p.duration_ticks == 0 || p.mean_speed < 0 ||
      p.tick_seconds <= 0 || p.environment.width <= 0 ||
      p.environment.height <= 0)
    throw std::invalid_argument("gen_rwp: bad parameters");

  TrajectorySet ts;
  ts.config.d_t = p.d_t;
  ts.config.environment = p.environment;
  ts.config.horizon = TimeInterval{0, p.duration_ticks - 1};
  ts.trajectories.resize(p.n_objects);

  for (ObjectId o = 0; o < p.n_objects; ++o) {
    Rng rng = object_stream(p.rng_seed, o);
    Trajectory& tr = ts.trajectories[o];
    tr.object = o;
    tr.positions.reserve(p.duration_ticks);

    double x = rng.uniform(0.0, p.environment.width);
    double y = rng.uniform(0.0, p.environment.height);
    double dest_x = rng.uniform(0.0, p.environment.width);
    double dest_y = rng.uniform(0.0, p.environment.height);
    double speed = rng.uniform(0.5, 1.5) * p.mean_speed;

    for (Tick t = 0; t < p.duration_ticks; ++t) {
      tr.positions.push_back(Point{quantize_cm(x), quantize_cm(y)});
      double step = speed * p.tick_seconds;
      while (step > 0.0) {
        const double dx = dest_x - x, dy = dest_y - y;
        const double dist = std::sqrt(dx * dx + dy * dy);
        if (dist <= step) {
          x = dest_x;
          y = dest_y;
          step -= dist;
          dest_x = rng.uniform(0.0, p.environment.width);
          dest_y = rng.uniform(0.0, p.environment.height);
          speed = rng.uniform(0.5, 1.5) * p.mean_speed;
          if (dist == 0.0) break;  // degenerate: zero-length leg
        } else {
          x += dx / dist * step;
          y += dy / dist * step;
          step = 0.0;
        }
      }
      x = std::clamp(x, 0.0, p.environment.width);
      y = std::clamp(y, 0.0, p.environment.height);
    }
  }
  return ts;
}

TrajectorySet gen_road_grid(const RoadGridParams& p) {
  if (p.n_objects == 0 || p.duration_ticks == 0 || p.road_spacing <= 0 ||
      p.speed_min < 0 || p.speed_max < p.speed_min || p.tick_seconds <= 0)
    throw std::invalid_argument("gen_road_grid: bad parameters");

  const int nx = static_cast<int>(p.environment.width / p.road_spacing) + 1;
  const int ny = static_cast<int>(p.environment.height / p.road_spacing) + 1;
  if (nx < 2 || ny < 2)
    throw std::invalid_argument("gen_road_grid: spacing leaves no grid");

  TrajectorySet ts;
  ts.config.d_t = p.d_t;
  ts.config.environment = p.environment;
  ts.config.horizon = TimeInterval{0, p.duration_ticks - 1};
  ts.trajectories.resize(p.n_objects);

  for (ObjectId o = 0; o < p.n_objects; ++o) {
    Rng rng = object_stream(p.rng_seed ^ 0x726f616473ull, o);
    Trajectory& tr = ts.trajectories[o];
    tr.object = o;
    tr.positions.reserve(p.duration_ticks);

    const double speed = rng.uniform(p.speed_min, p.speed_max);
    // Start at a random intersection, heading in a random legal direction.
    int ix = static_cast<int>(rng.below(nx));
    int iy = static_cast<int>(rng.below(ny));
    double x = ix * p.road_spacing, y = iy * p.road_spacing;
    int dir = -1;  // 0:+x 1:-x 2:+y 3:-y

    auto pick_direction = [&]() {
      int choices[4], n = 0;
      if (ix + 1 < nx) choices[n++] = 0;
      if (ix > 0) choices[n++] = 1;
      if (iy + 1 < ny) choices[n++] = 2;
      if (iy > 0) choices[n++] = 3;
      dir = choices[rng.below(static_cast<std::uint64_t>(n))];
    };
    pick_direction();

    for (Tick t = 0; t < p.duration_ticks; ++t) {
      tr.positions.push_back(Point{quantize_cm(x), quantize_cm(y)});
      double step = speed * p.tick_seconds;
      while (step > 0.0) {
        const double tx = (dir == 0)   ? (ix + 1) * p.road_spacing
                          : (dir == 1) ? (ix - 1) * p.road_spacing
                                       : x;
        const double ty = (dir == 2)   ? (iy + 1) * p.road_spacing
                          : (dir == 3) ? (iy - 1) * p.road_spacing
                                       : y;
        const double dist = std::abs(tx - x) + std::abs(ty - y);
        if (dist <= step) {
          x = tx;
          y = ty;
          ix += (dir == 0) - (dir == 1);
          iy += (dir == 2) - (dir == 3);
          step -= dist;
          pick_direction();
        } else {
          if (dir == 0) x += step;
          if (dir == 1) x -= step;
          if (dir == 2) y += step;
          if (dir == 3) y -= step;
          step = 0.0;
        }
      }
    }
  }
  return ts;
}

std::vector<Query> gen_queries(const TimeInterval& horizon,
                               ObjectId n_objects, std::size_t n,
                               std::pair<Tick, Tick> len_range,
                               std::uint64_t seed) {
  if (n_objects < 2) throw std::invalid_argument("gen_queries: need 2+ objects");
  if (len_range.first < 1 || len_range.first > len_range.second)
    throw std::invalid_argument("gen_queries: bad length range");
  if (len_range.second > horizon.length())
    throw std::invalid_argument("gen_queries: length range exceeds horizon");

  Rng rng(splitmix64(seed ^ 0x9d2c5680aad2ull));
  std::vector<Query> out;
  out.reserve(n);
  while (out.size() < n) {
    ObjectId src = static_cast<ObjectId>(rng.below(n_objects));
    ObjectId dst = static_cast<ObjectId>(rng.below(n_objects));
    if (src == dst) continue;
    Tick len = len_range.first +
               static_cast<Tick>(rng.below(len_range.second - len_range.first + 1));
    Tick start = horizon.start +
                 static_cast<Tick>(rng.below(horizon.length() - len + 1));
    out.push_back(Query{src, dst, TimeInterval{start, start + len - 1}});
  }
  return out;
}

}  // namespace reach
