#include "reach/traj_store.hpp"

#include <fstream>
#include <stdexcept>

#include "reach/contacts.hpp"
#include "reach/io.hpp"
#include "reach/oracle.hpp"

namespace reach {

void TrajStoreManifest::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "trajstore-manifest v1\n";
  out << "page_size=" << page_size << "\n";
  out << "objects=" << n_objects << "\n";
  out << "ticks=" << n_ticks << "\n";
  out << "d_T=" << format_pos(d_t) << "\n";
  out << "width=" << format_pos(width) << "\n";
  out << "height=" << format_pos(height) << "\n";
}

TrajStoreManifest TrajStoreManifest::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "trajstore-manifest v1")
    throw ParseError(path + ": not a trajstore manifest");
  TrajStoreManifest m;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "page_size") m.page_size = std::stoul(val);
    else if (key == "objects") m.n_objects = std::stoul(val);
    else if (key == "ticks") m.n_ticks = std::stoul(val);
    else if (key == "d_T") m.d_t = std::stod(val);
    else if (key == "width") m.width = std::stod(val);
    else if (key == "height") m.height = std::stod(val);
  }
  return m;
}

TrajStoreManifest build_traj_store(const TrajectorySet& ts, BlockStore& store) {
  ts.validate();
  if (store.block_count() != 0)
    throw std::invalid_argument("build_traj_store: store not empty");
  TrajStoreManifest m;
  m.page_size = store.page_size();
  m.n_objects = ts.n_objects();
  m.n_ticks = ts.n_ticks();
  m.d_t = ts.config.d_t;
  m.width = ts.config.environment.width;
  m.height = ts.config.environment.height;

  std::vector<std::uint8_t> pending;
  const std::uint32_t ps = store.page_size();
  for (Tick t = 0; t < m.n_ticks; ++t) {
    for (ObjectId o = 0; o < m.n_objects; ++o) {
      const Point& p = ts.position(o, t);
      put_f64(pending, p.x);
      put_f64(pending, p.y);
      if (pending.size() >= ps) {
        std::vector<std::uint8_t> chunk(pending.begin(), pending.begin() + ps);
        store.append(chunk);
        pending.erase(pending.begin(), pending.begin() + ps);
      }
    }
  }
  if (!pending.empty()) store.append(pending);
  return m;
}

TrajectorySet TrajStore::read_window(const TimeInterval& w) {
  const TrajStoreManifest& m = manifest_;
  if (w.end >= m.n_ticks)
    throw IndexError("traj window outside horizon");
  const std::uint64_t sample_bytes = 16;
  const std::uint64_t begin =
      static_cast<std::uint64_t>(w.start) * m.n_objects * sample_bytes;
  const std::uint64_t len = static_cast<std::uint64_t>(w.length()) *
                            m.n_objects * sample_bytes;
  std::vector<std::uint8_t> bytes = read_bytes(*store_, begin, len);

  TrajectorySet out;  // re-based at tick 0
  out.config.d_t = m.d_t;
  out.config.environment = {m.width, m.height};
  out.config.horizon = TimeInterval{0, w.length() - 1};
  out.trajectories.resize(m.n_objects);
  for (ObjectId o = 0; o < m.n_objects; ++o) {
    out.trajectories[o].object = o;
    out.trajectories[o].positions.resize(w.length());
  }
  const std::uint8_t* p = bytes.data();
  for (Tick t = 0; t < w.length(); ++t)
    for (ObjectId o = 0; o < m.n_objects; ++o, p += 16)
      out.trajectories[o].positions[t] = Point{get_f64(p), get_f64(p + 8)};
  return out;
}

bool spj_query(TrajStore& ts, const Query& q) {
  const TrajStoreManifest& m = ts.manifest();
  if (q.interval.end >= m.n_ticks)
    throw IndexError("spj_query: interval outside horizon");
  if (q.source == q.destination) return true;

  // Materialize the interval's contact network, then propagate labels.
  TrajectorySet window = ts.read_window(q.interval);
  ContactSet contacts = extract_contacts(window);
  Oracle oracle(contacts, m.n_objects);
  // The window is re-based at tick 0.
  Query local{q.source, q.destination,
              TimeInterval{0, q.interval.length() - 1}};
  return oracle.reach(local).reachable;
}

}  // namespace reach
