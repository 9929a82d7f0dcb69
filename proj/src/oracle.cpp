#include "reach/oracle.hpp"

#include <stdexcept>

namespace reach {

Oracle::Oracle(const ContactSet& contacts, ObjectId n_objects)
    : n_objects_(n_objects), n_ticks_(contacts.horizon.length()) {
  active_.resize(n_ticks_);
  for (const Contact& c : contacts.contacts) {
    if (c.a >= n_objects_ || c.b >= n_objects_)
      throw std::invalid_argument("oracle: contact references unknown object");
    for (Tick t = c.validity.start; t <= c.validity.end; ++t)
      active_[t].emplace_back(c.a, c.b);
  }
}

ReachResult Oracle::reach(const Query& q) const {
  if (q.source >= n_objects_ || q.destination >= n_objects_)
    throw std::invalid_argument("oracle: unknown object in query");
  if (q.interval.end >= n_ticks_)
    throw std::invalid_argument("oracle: query interval outside horizon");

  std::vector<char> reached(n_objects_, 0);
  reached[q.source] = 1;
  if (q.destination == q.source)
    return ReachResult{true, q.interval.start};

  for (Tick t = q.interval.start; t <= q.interval.end; ++t) {
    // Close the reached set over this tick's contact graph.
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto [a, b] : active_[t]) {
        if (reached[a] != reached[b]) {
          reached[a] = reached[b] = 1;
          grew = true;
        }
      }
    }
    if (reached[q.destination]) return ReachResult{true, t};
  }
  return ReachResult{false, std::nullopt};
}

ReachResult oracle_reach(const ContactSet& contacts, ObjectId n_objects,
                         const Query& q) {
  return Oracle(contacts, n_objects).reach(q);
}

}  // namespace reach
