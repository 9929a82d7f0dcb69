#include "reach/ten.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace reach {

TenGraph::TenGraph(const ContactSet& contacts, ObjectId n_objects,
                   Tick n_ticks)
    : n_objects_(n_objects), n_ticks_(n_ticks) {
  edges_at_.resize(n_ticks_);
  adj_.resize(static_cast<std::size_t>(n_ticks_) * n_objects_);
  for (const Contact& c : contacts.contacts) {
    if (c.a >= n_objects_ || c.b >= n_objects_)
      throw std::invalid_argument("build_ten: contact references unknown object");
    if (c.validity.end >= n_ticks_)
      throw std::invalid_argument("build_ten: contact outside horizon");
    for (Tick t = c.validity.start; t <= c.validity.end; ++t) {
      edges_at_[t].emplace_back(c.a, c.b);
      adj_[static_cast<std::size_t>(t) * n_objects_ + c.a].push_back(c.b);
      adj_[static_cast<std::size_t>(t) * n_objects_ + c.b].push_back(c.a);
      ++contact_edges_;
    }
  }
}

bool TenGraph::has_contact_edge(ObjectId a, ObjectId b, Tick t) const {
  const auto& n = neighbors(a, t);
  return std::find(n.begin(), n.end(), b) != n.end();
}

bool TenGraph::reachable(const Query& q) const {
  if (q.interval.end >= n_ticks_)
    throw std::invalid_argument("ten_reachable: interval outside horizon");
  if (q.source >= n_objects_ || q.destination >= n_objects_)
    throw std::invalid_argument("ten_reachable: unknown object");

  // A hold edge never loses the item, so reachability is a forward sweep
  // with a per-tick BFS closure over contact edges.
  std::vector<char> reached(n_objects_, 0);
  std::vector<ObjectId> frontier, next;
  reached[q.source] = 1;
  for (Tick t = q.interval.start; t <= q.interval.end; ++t) {
    frontier.clear();
    for (ObjectId o = 0; o < n_objects_; ++o)
      if (reached[o]) frontier.push_back(o);
    while (!frontier.empty()) {
      next.clear();
      for (ObjectId o : frontier)
        for (ObjectId nb : neighbors(o, t))
          if (!reached[nb]) {
            reached[nb] = 1;
            next.push_back(nb);
          }
      frontier.swap(next);
    }
    if (reached[q.destination]) return true;
  }
  return false;
}

void TenGraph::dump_edges(std::ostream& out) const {
  for (Tick t = 0; t < n_ticks_; ++t)
    for (auto [a, b] : edges_at_[t]) out << t << ' ' << a << ' ' << b << '\n';
}

}  // namespace reach
