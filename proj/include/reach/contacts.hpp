#pragma once

#include <vector>

#include "reach/core.hpp"

namespace reach {

// All contacts of a population over a horizon, sorted by
// (validity.start, a, b). Each (a, b) run is maximal: validities of the
// same pair never overlap and are never tick-adjacent.
struct ContactSet {
  std::vector<Contact> contacts;
  TimeInterval horizon{0, 0};
  Config config;
  ObjectId n_objects = 0;
};

struct JoinTuple {
  ObjectId a = 0;
  ObjectId b = 0;
  TimeInterval interval{0, 0};
};

// Pairs within distance d_t at some tick of `w`, each with the maximal
// sub-intervals of co-proximity. Per tick the candidates come from a
// uniform spatial hash with cell side d_t (own cell plus 8 neighbors).
std::vector<JoinTuple> window_join(const std::vector<TrajectorySegment>& segs,
                                   double d_t, const TimeInterval& w);

// Self-join over the full horizon; every maximal proximity run becomes one
// Contact.
ContactSet extract_contacts(const TrajectorySet& ts);

// Pairs within d_t at tick t among all objects (spatial-hash pass shared
// by extraction and the per-tick sweeps).
std::vector<std::pair<ObjectId, ObjectId>> proximity_pairs_at(
    const TrajectorySet& ts, Tick t, double d_t);

}  // namespace reach
