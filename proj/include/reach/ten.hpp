#pragma once

#include <iosfwd>
#include <vector>

#include "reach/contacts.hpp"
#include "reach/core.hpp"

namespace reach {

// Time expanded network over a contact set: one vertex per (object, tick),
// bidirectional contact edges inside a tick, implicit directed hold edges
// (o, t) -> (o, t+1). In-memory reference structure only; it is the input
// to the component reduction and the second correctness route next to the
// oracle.
class TenGraph {
 public:
  TenGraph(const ContactSet& contacts, ObjectId n_objects, Tick n_ticks);

  ObjectId n_objects() const { return n_objects_; }
  Tick n_ticks() const { return n_ticks_; }

  std::uint64_t vertex_count() const {
    return static_cast<std::uint64_t>(n_objects_) * n_ticks_;
  }
  std::uint64_t hold_edge_count() const {
    return n_ticks_ == 0
               ? 0
               : static_cast<std::uint64_t>(n_objects_) * (n_ticks_ - 1);
  }
  std::uint64_t contact_edge_count() const { return contact_edges_; }
  std::uint64_t edge_count() const {
    return hold_edge_count() + contact_edge_count();
  }

  // Contact edges of the snapshot G_t.
  const std::vector<std::pair<ObjectId, ObjectId>>& snapshot(Tick t) const {
    return edges_at_[t];
  }

  // Adjacency of object o inside tick t.
  const std::vector<ObjectId>& neighbors(ObjectId o, Tick t) const {
    return adj_[static_cast<std::size_t>(t) * n_objects_ + o];
  }

  bool has_contact_edge(ObjectId a, ObjectId b, Tick t) const;

  // Directed-path existence from (source, interval.start) to
  // (destination, interval.end).
  bool reachable(const Query& q) const;

  // Debug dump: one line per contact edge, "t a b".
  void dump_edges(std::ostream& out) const;

 private:
  ObjectId n_objects_;
  Tick n_ticks_;
  std::uint64_t contact_edges_ = 0;
  std::vector<std::vector<std::pair<ObjectId, ObjectId>>> edges_at_;
  std::vector<std::vector<ObjectId>> adj_;  // [t * n_objects + o]
};

inline TenGraph build_ten(const ContactSet& contacts, ObjectId n_objects,
                          Tick n_ticks) {
  return TenGraph(contacts, n_objects, n_ticks);
}

inline bool ten_reachable(const TenGraph& g, const Query& q) {
  return g.reachable(q);
}

}  // namespace reach
