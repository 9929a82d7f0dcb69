#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "reach/core.hpp"

namespace reach {

// All generators draw from mt19937_64 streams derived with splitmix64, and
// map raw draws themselves (53-bit mantissa scaling for doubles, modulo for
// bounded ints), so identical seeds give identical output on every
// platform. Positions are quantized to 1 cm.
struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }
  std::uint64_t below(std::uint64_t n) { return engine() % n; }
};

std::uint64_t splitmix64(std::uint64_t x);

struct RwpParams {
  ObjectId n_objects = 500;
  EnvironmentBounds environment{2000.0, 2000.0};
  double mean_speed = 2.0;    // m/s
  double tick_seconds = 6.0;  // sampling period
  Tick duration_ticks = 2000;
  double d_t = 25.0;  // contact threshold carried into the Config
  std::uint64_t rng_seed = 1;
};

// Random waypoint: each object repeatedly picks a uniform destination and
// a speed around the mean, then walks straight to it.
TrajectorySet gen_rwp(const RwpParams& p);

struct RoadGridParams {
  ObjectId n_objects = 300;
  EnvironmentBounds environment{2000.0, 2000.0};
  double road_spacing = 1000.0;  // meters between grid roads
  double speed_min = 6.0;        // m/s
  double speed_max = 14.0;
  double tick_seconds = 6.0;
  Tick duration_ticks = 2000;
  double d_t = 100.0;
  std::uint64_t rng_seed = 1;
};

// Manhattan road grid walkers: objects stay on the grid lines and pick a
// uniform direction at every intersection. A skewed-occupancy proxy for
// vehicular workloads.
TrajectorySet gen_road_grid(const RoadGridParams& p);

// Uniform queries: source != destination, interval length uniform in
// len_range, uniform placement inside the horizon.
std::vector<Query> gen_queries(const TimeInterval& horizon,
                               ObjectId n_objects, std::size_t n,
                               std::pair<Tick, Tick> len_range,
                               std::uint64_t seed);

}  // namespace reach
