#include "reach/core.hpp"

#include <algorithm>
#include <cmath>

namespace reach {

std::optional<TimeInterval> interval_intersect(const TimeInterval& a,
                                               const TimeInterval& b) {
  const Tick lo = std::max(a.start, b.start);
  const Tick hi = std::min(a.end, b.end);
  if (lo > hi) return std::nullopt;
  return TimeInterval{lo, hi};
}

void TrajectorySet::validate() const {
  const Tick ticks = config.n_ticks();
  if (config.d_t <= 0.0) throw ParseError("config: d_T must be > 0");
  if (config.environment.width <= 0.0 || config.environment.height <= 0.0)
    throw ParseError("config: environment bounds must be positive");
  for (ObjectId o = 0; o < n_objects(); ++o) {
    const Trajectory& tr = trajectories[o];
    if (tr.object != o)
      throw ParseError("trajectory " + std::to_string(o) + ": id mismatch");
    if (tr.n_ticks() != ticks)
      throw ParseError("trajectory " + std::to_string(o) +
                       ": expected " + std::to_string(ticks) + " samples, got " +
                       std::to_string(tr.n_ticks()));
    for (const Point& p : tr.positions) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0.0 ||
          p.y < 0.0 || p.x > config.environment.width ||
          p.y > config.environment.height)
        throw ParseError("trajectory " + std::to_string(o) +
                         ": position outside environment");
    }
  }
}

bool validate_contact_path(const ContactPath& path, const Query& q) {
  if (path.empty()) return false;
  for (const Contact& c : path)
    if (!c.validity.overlaps(q.interval)) return false;
  if (!path.front().involves(q.source)) return false;
  if (!path.back().involves(q.destination)) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Contact& cur = path[i];
    const Contact& nxt = path[i + 1];
    const bool share = nxt.involves(cur.a) || nxt.involves(cur.b);
    if (!share) return false;
    if (nxt.validity.start < cur.validity.start) return false;
  }
  return true;
}

}  // namespace reach
