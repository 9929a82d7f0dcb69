#pragma once

#include <optional>
#include <vector>

#include "reach/contacts.hpp"
#include "reach/core.hpp"

namespace reach {

struct ReachResult {
  bool reachable = false;
  std::optional<Tick> earliest_reach;  // smallest t with destination reached
};

// Ground-truth reachability by time-ordered label propagation over the
// contact set: at each tick the reached set closes over the connected
// components of the contacts active at that tick. Pure in-memory, no IO.
class Oracle {
 public:
  Oracle(const ContactSet& contacts, ObjectId n_objects);

  ReachResult reach(const Query& q) const;
  bool reachable(const Query& q) const { return reach(q).reachable; }

 private:
  ObjectId n_objects_;
  Tick n_ticks_;
  // Per tick, the contact edges active at that tick.
  std::vector<std::vector<std::pair<ObjectId, ObjectId>>> active_;
};

ReachResult oracle_reach(const ContactSet& contacts, ObjectId n_objects,
                         const Query& q);

}  // namespace reach
