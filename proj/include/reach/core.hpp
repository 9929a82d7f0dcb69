#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Core domain types for contact-network reachability: discrete time ticks,
// 2-D positions, trajectories sampled once per tick, contacts with maximal
// validity intervals, and contact-path validation.
namespace reach {

using Tick = std::uint32_t;
using ObjectId = std::uint32_t;

constexpr ObjectId kInvalidObject = 0xffffffffu;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IndexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed interval of ticks, start <= end.
struct TimeInterval {
  Tick start = 0;
  Tick end = 0;

  TimeInterval() = default;
  TimeInterval(Tick s, Tick e) : start(s), end(e) {
    if (s > e) throw std::invalid_argument("TimeInterval: start > end");
  }

  Tick length() const { return end - start + 1; }
  bool contains(Tick t) const { return start <= t && t <= end; }
  bool contains(const TimeInterval& o) const {
    return start <= o.start && o.end <= end;
  }
  bool overlaps(const TimeInterval& o) const {
    return start <= o.end && o.start <= end;
  }
  bool operator==(const TimeInterval& o) const {
    return start == o.start && end == o.end;
  }
};

std::optional<TimeInterval> interval_intersect(const TimeInterval& a,
                                               const TimeInterval& b);

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
};

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct EnvironmentBounds {
  double width = 0.0;
  double height = 0.0;
};

struct Sample {
  ObjectId object = 0;
  Tick t = 0;
  Point pos;
};

// One position per tick over the whole horizon; positions[t] is the
// location at tick t.
struct Trajectory {
  ObjectId object = 0;
  std::vector<Point> positions;

  Tick n_ticks() const { return static_cast<Tick>(positions.size()); }
  const Point& at(Tick t) const { return positions[t]; }
};

// Contiguous window of one trajectory.
struct TrajectorySegment {
  ObjectId object = 0;
  TimeInterval window;
  const Trajectory* source = nullptr;

  const Point& at(Tick t) const { return source->positions[t]; }
};

// Unordered object pair in canonical order (a < b) plus the maximal
// interval over which the pair stays within the contact distance.
struct Contact {
  ObjectId a = 0;
  ObjectId b = 0;
  TimeInterval validity;

  Contact() = default;
  Contact(ObjectId x, ObjectId y, TimeInterval v) : validity(v) {
    if (x == y) throw std::invalid_argument("Contact: identical objects");
    a = x < y ? x : y;
    b = x < y ? y : x;
  }
  bool involves(ObjectId o) const { return a == o || b == o; }
  bool operator==(const Contact& o) const {
    return a == o.a && b == o.b && validity == o.validity;
  }
};

using ContactPath = std::vector<Contact>;

struct Query {
  ObjectId source = 0;
  ObjectId destination = 0;
  TimeInterval interval;
};

struct Config {
  double d_t = 0.0;  // contact distance threshold, meters
  EnvironmentBounds environment;
  TimeInterval horizon{0, 0};

  Tick n_ticks() const { return horizon.length(); }
};

// Full population over the horizon: one trajectory per object id,
// every object sampled at every tick.
struct TrajectorySet {
  Config config;
  std::vector<Trajectory> trajectories;

  ObjectId n_objects() const {
    return static_cast<ObjectId>(trajectories.size());
  }
  Tick n_ticks() const { return config.n_ticks(); }
  const Point& position(ObjectId o, Tick t) const {
    return trajectories[o].positions[t];
  }
  void validate() const;  // throws on malformed data
};

// True iff `path` carries an item from q.source to q.destination within
// q.interval: every validity overlaps the interval, endpoints match,
// consecutive contacts share an object and start times never decrease.
bool validate_contact_path(const ContactPath& path, const Query& q);

}  // namespace reach
