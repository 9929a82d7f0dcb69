#include "reach/contacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace reach {
namespace {

struct CellKey {
  std::int64_t cx;
  std::int64_t cy;
  bool operator==(const CellKey& o) const { return cx == o.cx && cy == o.cy; }
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    return static_cast<std::size_t>(k.cx * 1000003ll ^ k.cy * 998244353ll);
  }
};

// One tick of the join: hash every position into cells of side d_t and
// compare each object against its own cell and the 4 forward neighbor
// cells (east, south-west, south, south-east); that covers every
// unordered pair exactly once.
template <typename PosAt, typename Emit>
void sweep_tick(const std::vector<ObjectId>& objects, PosAt pos_at, double d_t,
                Emit emit) {
  std::unordered_map<CellKey, std::vector<ObjectId>, CellKeyHash> cells;
  cells.reserve(objects.size() * 2);
  for (ObjectId o : objects) {
    const Point p = pos_at(o);
    CellKey k{static_cast<std::int64_t>(std::floor(p.x / d_t)),
              static_cast<std::int64_t>(std::floor(p.y / d_t))};
    cells[k].push_back(o);
  }
  const double d2 = d_t * d_t;
  static constexpr int dx[] = {1, -1, 0, 1};
  static constexpr int dy[] = {0, 1, 1, 1};
  for (const auto& [key, members] : cells) {
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        ObjectId a = members[i], b = members[j];
        if (squared_distance(pos_at(a), pos_at(b)) <= d2)
          emit(std::min(a, b), std::max(a, b));
      }
    for (int n = 0; n < 4; ++n) {
      auto it = cells.find(CellKey{key.cx + dx[n], key.cy + dy[n]});
      if (it == cells.end()) continue;
      for (ObjectId a : members)
        for (ObjectId b : it->second)
          if (squared_distance(pos_at(a), pos_at(b)) <= d2)
            emit(std::min(a, b), std::max(a, b));
    }
  }
}

std::uint64_t pair_key(ObjectId a, ObjectId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Tracks maximal proximity runs per pair across a tick sweep.
class RunTracker {
 public:
  void observe(ObjectId a, ObjectId b, Tick t) {
    auto [it, fresh] = open_.try_emplace(pair_key(a, b), Run{a, b, t, t});
    if (!fresh) {
      if (it->second.last + 1 == t)
        it->second.last = t;
      else {  // gap: close the previous run, start a new one
        close(it->second);
        it->second = Run{a, b, t, t};
      }
    }
  }

  std::vector<JoinTuple> finish() {
    for (auto& [k, run] : open_) close(run);
    open_.clear();
    std::sort(done_.begin(), done_.end(), [](const JoinTuple& l,
                                             const JoinTuple& r) {
      if (l.interval.start != r.interval.start)
        return l.interval.start < r.interval.start;
      if (l.a != r.a) return l.a < r.a;
      return l.b < r.b;
    });
    return std::move(done_);
  }

 private:
  struct Run {
    ObjectId a, b;
    Tick first, last;
  };
  void close(const Run& r) {
    done_.push_back(JoinTuple{r.a, r.b, TimeInterval{r.first, r.last}});
  }
  std::unordered_map<std::uint64_t, Run> open_;
  std::vector<JoinTuple> done_;
};

}  // namespace

std::vector<JoinTuple> window_join(const std::vector<TrajectorySegment>& segs,
                                   double d_t, const TimeInterval& w) {
  for (const TrajectorySegment& s : segs)
    if (!s.window.contains(w))
      throw std::invalid_argument("window_join: segment does not cover window");
  std::vector<ObjectId> ids(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) ids[i] = static_cast<ObjectId>(i);
  RunTracker runs;
  for (Tick t = w.start; t <= w.end; ++t) {
    sweep_tick(
        ids, [&](ObjectId i) { return segs[i].at(t); }, d_t,
        [&](ObjectId i, ObjectId j) {
          ObjectId a = segs[i].object, b = segs[j].object;
          runs.observe(std::min(a, b), std::max(a, b), t);
        });
  }
  return runs.finish();
}

std::vector<std::pair<ObjectId, ObjectId>> proximity_pairs_at(
    const TrajectorySet& ts, Tick t, double d_t) {
  std::vector<ObjectId> ids(ts.n_objects());
  for (ObjectId o = 0; o < ts.n_objects(); ++o) ids[o] = o;
  std::vector<std::pair<ObjectId, ObjectId>> out;
  sweep_tick(
      ids, [&](ObjectId o) { return ts.position(o, t); }, d_t,
      [&](ObjectId a, ObjectId b) { out.emplace_back(a, b); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ContactSet extract_contacts(const TrajectorySet& ts) {
  ts.validate();
  RunTracker runs;
  const TimeInterval horizon = ts.config.horizon;
  for (Tick t = horizon.start; t <= horizon.end; ++t)
    for (auto [a, b] : proximity_pairs_at(ts, t, ts.config.d_t))
      runs.observe(a, b, t);
  ContactSet cs;
  cs.horizon = horizon;
  cs.config = ts.config;
  cs.n_objects = ts.n_objects();
  for (const JoinTuple& jt : runs.finish())
    cs.contacts.push_back(Contact{jt.a, jt.b, jt.interval});
  return cs;
}

}  // namespace reach
