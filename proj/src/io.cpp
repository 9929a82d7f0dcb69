#include "reach/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "reach/contacts.hpp"

namespace reach {

double quantize_cm(double v) { return std::llround(v * 100.0) / 100.0; }

std::string format_pos(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

static void fail_at(const std::string& name, std::size_t line,
                    const std::string& what) {
  throw ParseError(name + ":" + std::to_string(line) + ": " + what);
}

void write_trajectories(std::ostream& out, const TrajectorySet& ts) {
  std::ostringstream buf;
  buf << "#objects=" << ts.n_objects() << " #ticks=" << ts.n_ticks()
      << " width=" << format_pos(ts.config.environment.width)
      << " height=" << format_pos(ts.config.environment.height)
      << " d_T=" << format_pos(ts.config.d_t) << "\n";
  for (Tick t = 0; t < ts.n_ticks(); ++t) {
    for (ObjectId o = 0; o < ts.n_objects(); ++o) {
      const Point& p = ts.position(o, t);
      buf << o << ',' << t << ',' << format_pos(p.x) << ',' << format_pos(p.y)
          << '\n';
    }
  }
  out << buf.str();
}

void write_trajectories_file(const std::string& path,
                             const TrajectorySet& ts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open for writing: " + path);
  write_trajectories(out, ts);
}

TrajectorySet read_trajectories(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) fail_at(name, 1, "missing header");
  unsigned long long n_objects = 0, n_ticks = 0;
  double width = 0, height = 0, d_t = 0;
  if (std::sscanf(line.c_str(),
                  "#objects=%llu #ticks=%llu width=%lf height=%lf d_T=%lf",
                  &n_objects, &n_ticks, &width, &height, &d_t) != 5)
    fail_at(name, 1, "bad header: " + line);
  if (n_ticks == 0) fail_at(name, 1, "horizon must be non-empty");

  TrajectorySet ts;
  ts.config.d_t = d_t;
  ts.config.environment = {width, height};
  ts.config.horizon = TimeInterval{0, static_cast<Tick>(n_ticks - 1)};
  ts.trajectories.resize(n_objects);
  for (ObjectId o = 0; o < n_objects; ++o) {
    ts.trajectories[o].object = o;
    ts.trajectories[o].positions.resize(n_ticks);
  }

  std::vector<char> seen(n_objects * n_ticks, 0);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    unsigned long long o = 0, t = 0;
    double x = 0, y = 0;
    if (std::sscanf(line.c_str(), "%llu,%llu,%lf,%lf", &o, &t, &x, &y) != 4)
      fail_at(name, line_no, "bad record: " + line);
    if (o >= n_objects) fail_at(name, line_no, "object id out of range");
    if (t >= n_ticks) fail_at(name, line_no, "tick out of range");
    std::size_t idx = t * n_objects + o;
    if (seen[idx]) fail_at(name, line_no, "duplicate (object, tick) sample");
    seen[idx] = 1;
    ts.trajectories[o].positions[t] = Point{x, y};
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw ParseError(name + ": missing sample for object " +
                       std::to_string(i % n_objects) + " at tick " +
                       std::to_string(i / n_objects));
  ts.validate();
  return ts;
}

TrajectorySet read_trajectories_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open: " + path);
  return read_trajectories(in, path);
}

void write_contacts_file(const std::string& path, const ContactSet& cs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << "#d_T=" << format_pos(cs.config.d_t)
      << " ticks=" << cs.horizon.length() << " objects=" << cs.n_objects
      << "\n";
  for (const Contact& c : cs.contacts)
    out << c.a << ',' << c.b << ',' << c.validity.start << ','
        << c.validity.end << '\n';
}

void write_queries_file(const std::string& path,
                        const std::vector<Query>& queries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open for writing: " + path);
  for (const Query& q : queries)
    out << q.source << ',' << q.destination << ',' << q.interval.start << ','
        << q.interval.end << '\n';
}

std::vector<Query> read_queries_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open: " + path);
  std::vector<Query> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    unsigned long long s = 0, d = 0, t1 = 0, t2 = 0;
    if (std::sscanf(line.c_str(), "%llu,%llu,%llu,%llu", &s, &d, &t1, &t2) !=
        4)
      fail_at(path, line_no, "bad query: " + line);
    if (t1 > t2) fail_at(path, line_no, "query interval start > end");
    out.push_back(Query{static_cast<ObjectId>(s), static_cast<ObjectId>(d),
                        TimeInterval{static_cast<Tick>(t1),
                                     static_cast<Tick>(t2)}});
  }
  return out;
}

}  // namespace reach
