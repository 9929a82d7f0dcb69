#include "reach/reachgrid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "reach/io.hpp"

namespace reach {

void Mbr::expand(const Point& p) {
  if (xmax == 0 && ymax == 0 && xmin == 0 && ymin == 0) {
    xmin = xmax = p.x;
    ymin = ymax = p.y;
    return;
  }
  xmin = std::min(xmin, p.x);
  xmax = std::max(xmax, p.x);
  ymin = std::min(ymin, p.y);
  ymax = std::max(ymax, p.y);
}

CellIndex GridManifest::cell_of_point(const Point& p) const {
  auto clamp = [](std::int64_t v, std::int64_t hi) {
    return static_cast<std::uint32_t>(std::max<std::int64_t>(
        0, std::min<std::int64_t>(v, hi)));
  };
  std::uint32_t cx = clamp(static_cast<std::int64_t>(p.x / r_s), cells_x - 1);
  std::uint32_t cy = clamp(static_cast<std::int64_t>(p.y / r_s), cells_y - 1);
  return cy * cells_x + cx;
}

void GridManifest::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "reachgrid-manifest v1\n";
  out << "page_size=" << page_size << "\n";
  out << "objects=" << n_objects << "\n";
  out << "ticks=" << n_ticks << "\n";
  out << "d_T=" << format_pos(d_t) << "\n";
  out << "width=" << format_pos(width) << "\n";
  out << "height=" << format_pos(height) << "\n";
  out << "r_t=" << r_t << "\n";
  out << "r_s=" << format_pos(r_s) << "\n";
  out << "cells_x=" << cells_x << "\n";
  out << "cells_y=" << cells_y << "\n";
  out << "buckets=" << n_buckets << "\n";
  out << "locator_first=" << locator_first << "\n";
  for (std::size_t i = 0; i < cell_offset.size(); ++i)
    if (cell_length[i] != 0)
      out << "c " << i << ' ' << cell_offset[i] << ' ' << cell_length[i]
          << "\n";
}

GridManifest GridManifest::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "reachgrid-manifest v1")
    throw ParseError(path + ": not a reachgrid manifest");
  GridManifest m;
  std::vector<std::tuple<std::size_t, std::uint64_t, std::uint64_t>> cells;
  while (std::getline(in, line)) {
    if (line.rfind("c ", 0) == 0) {
      std::istringstream ss(line.substr(2));
      std::size_t idx;
      std::uint64_t ofs, len;
      ss >> idx >> ofs >> len;
      cells.emplace_back(idx, ofs, len);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "page_size") m.page_size = std::stoul(val);
    else if (key == "objects") m.n_objects = std::stoul(val);
    else if (key == "ticks") m.n_ticks = std::stoul(val);
    else if (key == "d_T") m.d_t = std::stod(val);
    else if (key == "width") m.width = std::stod(val);
    else if (key == "height") m.height = std::stod(val);
    else if (key == "r_t") m.r_t = std::stoul(val);
    else if (key == "r_s") m.r_s = std::stod(val);
    else if (key == "cells_x") m.cells_x = std::stoul(val);
    else if (key == "cells_y") m.cells_y = std::stoul(val);
    else if (key == "buckets") m.n_buckets = std::stoul(val);
    else if (key == "locator_first") m.locator_first = std::stoull(val);
  }
  m.cell_offset.assign(static_cast<std::size_t>(m.n_buckets) *
                           m.cells_per_bucket(),
                       0);
  m.cell_length.assign(m.cell_offset.size(), 0);
  for (auto [idx, ofs, len] : cells) {
    m.cell_offset[idx] = ofs;
    m.cell_length[idx] = len;
  }
  return m;
}

GridManifest build_grid(const TrajectorySet& ts, Tick r_t, double r_s,
                        BlockStore& store) {
  ts.validate();
  if (r_t < 1) throw std::invalid_argument("build_grid: r_t >= 1 tick");
  if (r_s <= 0) throw std::invalid_argument("build_grid: r_s > 0");
  if (store.block_count() != 0)
    throw std::invalid_argument("build_grid: store not empty");

  GridManifest m;
  m.page_size = store.page_size();
  m.n_objects = ts.n_objects();
  m.n_ticks = ts.n_ticks();
  m.d_t = ts.config.d_t;
  m.width = ts.config.environment.width;
  m.height = ts.config.environment.height;
  m.r_t = r_t;
  m.r_s = r_s;
  m.cells_x = static_cast<std::uint32_t>(std::ceil(m.width / r_s));
  m.cells_y = static_cast<std::uint32_t>(std::ceil(m.height / r_s));
  m.n_buckets = (m.n_ticks + r_t - 1) / r_t;

  const std::uint32_t n_cells = m.cells_per_bucket();
  m.cell_offset.assign(static_cast<std::size_t>(m.n_buckets) * n_cells, 0);
  m.cell_length.assign(m.cell_offset.size(), 0);

  std::vector<std::uint8_t> stream;
  for (Tick b = 0; b < m.n_buckets; ++b) {
    // Buckets start on fresh blocks: an unprocessed bucket shares no block
    // with a processed one.
    if (stream.size() % m.page_size != 0)
      stream.resize(stream.size() + m.page_size - stream.size() % m.page_size,
                    0);
    const Tick bs = m.bucket_start(b), be = m.bucket_end(b);
    // Per cell: contiguous-tick segments, one per stay of an object in
    // the cell, ordered by (object, first tick).
    struct Seg {
      ObjectId object;
      Tick first;
      std::vector<Point> samples;
    };
    std::vector<std::vector<Seg>> cell_segs(n_cells);
    for (ObjectId o = 0; o < m.n_objects; ++o) {
      CellIndex prev = 0;
      bool have_prev = false;
      for (Tick t = bs; t <= be; ++t) {
        const Point& p = ts.position(o, t);
        CellIndex c = m.cell_of_point(p);
        if (!have_prev || c != prev || cell_segs[c].back().object != o ||
            cell_segs[c].back().first +
                    cell_segs[c].back().samples.size() != t) {
          cell_segs[c].push_back(Seg{o, t, {}});
        }
        cell_segs[c].back().samples.push_back(p);
        prev = c;
        have_prev = true;
      }
    }
    for (CellIndex c = 0; c < n_cells; ++c) {
      auto& segs = cell_segs[c];
      if (segs.empty()) continue;
      std::vector<std::uint8_t> payload;
      put_u32(payload, static_cast<std::uint32_t>(segs.size()));
      for (const Seg& seg : segs) {
        put_u32(payload, seg.object);
        put_u32(payload, seg.first);
        put_u32(payload, static_cast<std::uint32_t>(seg.samples.size()));
        for (const Point& p : seg.samples) {
          put_f64(payload, p.x);
          put_f64(payload, p.y);
        }
      }
      const std::size_t idx = static_cast<std::size_t>(b) * n_cells + c;
      m.cell_offset[idx] = stream.size();
      m.cell_length[idx] = payload.size();
      stream.insert(stream.end(), payload.begin(), payload.end());
    }
  }
  append_bytes(store, stream);
  store.append({});  // spacer block between the sections

  if (m.cells_per_bucket() > 0xffff)
    throw std::invalid_argument("build_grid: too many cells for the locator");
  m.locator_first = store.block_count();
  std::vector<std::uint8_t> row;
  const std::uint32_t ps = store.page_size();
  for (Tick t = 0; t < m.n_ticks; ++t) {
    for (ObjectId o = 0; o < m.n_objects; ++o) {
      CellIndex c = m.cell_of_point(ts.position(o, t));
      row.push_back(c & 0xff);
      row.push_back((c >> 8) & 0xff);
      while (row.size() >= ps) {
        std::vector<std::uint8_t> chunk(row.begin(), row.begin() + ps);
        store.append(chunk);
        row.erase(row.begin(), row.begin() + ps);
      }
    }
  }
  if (!row.empty()) store.append(row);
  return m;
}

std::vector<CellIndex> GridIndex::find_cells(
    const std::vector<ObjectId>& seeds, Tick t) {
  if (t >= manifest_.n_ticks) throw IndexError("find_cells: tick outside horizon");
  std::set<CellIndex> out;
  for (ObjectId o : seeds) {
    if (o >= manifest_.n_objects) throw IndexError("find_cells: unknown object");
    const std::uint64_t entry =
        (static_cast<std::uint64_t>(t) * manifest_.n_objects + o) * 2;
    const BlockId block = manifest_.locator_first + entry / manifest_.page_size;
    const auto& data = store_->read(block);
    const std::uint8_t* p = data.data() + entry % manifest_.page_size;
    out.insert(static_cast<CellIndex>(p[0] | (p[1] << 8)));
  }
  return {out.begin(), out.end()};
}

std::vector<CellIndex> GridIndex::cells_near(const Mbr& box, double d_t) const {
  const GridManifest& m = manifest_;
  const double lox = std::max(0.0, box.xmin - d_t);
  const double hix = std::min(m.width, box.xmax + d_t);
  const double loy = std::max(0.0, box.ymin - d_t);
  const double hiy = std::min(m.height, box.ymax + d_t);
  const CellIndex cx0 = m.cell_of_point(Point{lox, loy}) % m.cells_x;
  const CellIndex cy0 = m.cell_of_point(Point{lox, loy}) / m.cells_x;
  const CellIndex cx1 = m.cell_of_point(Point{hix, hiy}) % m.cells_x;
  const CellIndex cy1 = m.cell_of_point(Point{hix, hiy}) / m.cells_x;
  std::vector<CellIndex> out;
  for (CellIndex cy = cy0; cy <= cy1; ++cy)
    for (CellIndex cx = cx0; cx <= cx1; ++cx)
      out.push_back(cy * m.cells_x + cx);
  return out;
}

const std::vector<GridIndex::CellSegment>& GridIndex::fetch_cell(
    Tick bucket, CellIndex cell, std::vector<BlockId>* pinned) {
  const GridManifest& m = manifest_;
  const std::uint64_t idx =
      static_cast<std::uint64_t>(bucket) * m.cells_per_bucket() + cell;
  const std::uint64_t len = m.cell_length[idx];
  static const std::vector<CellSegment> kEmpty;
  if (len == 0) return kEmpty;

  // Read (and pin) the covering blocks; parsing is cached per bucket.
  const std::uint64_t ofs = m.cell_offset[idx];
  const BlockId first = ofs / m.page_size;
  const BlockId last = (ofs + len - 1) / m.page_size;
  for (BlockId b = first; b <= last; ++b) {
    store_->read(b);
    store_->pin(b);
    if (pinned) pinned->push_back(b);
  }
  auto it = cell_cache_.find(idx);
  if (it != cell_cache_.end()) return it->second;

  std::vector<std::uint8_t> bytes = read_bytes(*store_, ofs, len);
  const std::uint8_t* p = bytes.data();
  std::uint32_t n = get_u32(p);
  p += 4;
  std::vector<CellSegment> segments(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    segments[i].object = get_u32(p);
    Tick first = get_u32(p + 4);
    std::uint32_t k = get_u32(p + 8);
    p += 12;
    segments[i].samples.reserve(k);
    for (std::uint32_t s = 0; s < k; ++s, p += 16)
      segments[i].samples.emplace_back(first + s,
                                       Point{get_f64(p), get_f64(p + 8)});
  }
  return cell_cache_.emplace(idx, std::move(segments)).first->second;
}

bool GridIndex::query(const Query& q, GridQueryStats* stats) {
  const GridManifest& m = manifest_;
  if (q.interval.end >= m.n_ticks)
    throw IndexError("grid query: interval outside horizon");
  if (q.source >= m.n_objects || q.destination >= m.n_objects)
    throw IndexError("grid query: unknown object");
  if (q.source == q.destination) return true;

  const Tick t1 = q.interval.start, t2 = q.interval.end;
  std::vector<char> seed(m.n_objects, 0);
  std::vector<ObjectId> seeds{q.source};
  seed[q.source] = 1;

  for (Tick b = m.bucket_of(t1); b <= m.bucket_of(t2); ++b) {
    const Tick be = m.bucket_end(b);
    const Tick w_lo = std::max(m.bucket_start(b), t1);
    const Tick sweep_hi = std::min(be, t2);
    std::vector<BlockId> pinned;

    // Locator rows for the bucket window: the per-tick cell of every
    // object (the windows used for reads are bucket-clamped so that
    // trailing-interval padding cannot change what a bucket reads).
    const std::uint64_t row_begin =
        (static_cast<std::uint64_t>(w_lo) * m.n_objects) * 2;
    const std::uint64_t row_len =
        (static_cast<std::uint64_t>(be - w_lo + 1) * m.n_objects) * 2;
    const std::uint64_t loc_base =
        static_cast<std::uint64_t>(m.locator_first) * m.page_size;
    {
      const BlockId first = (loc_base + row_begin) / m.page_size;
      const BlockId last = (loc_base + row_begin + row_len - 1) / m.page_size;
      for (BlockId blk = first; blk <= last; ++blk) {
        store_->read(blk);
        store_->pin(blk);
        pinned.push_back(blk);
      }
    }
    std::vector<std::uint8_t> loc_bytes =
        read_bytes(*store_, loc_base + row_begin, row_len);
    auto cell_at = [&](ObjectId o, Tick t) -> CellIndex {
      const std::uint8_t* p =
          loc_bytes.data() +
          (static_cast<std::uint64_t>(t - w_lo) * m.n_objects + o) * 2;
      return static_cast<CellIndex>(p[0] | (p[1] << 8));
    };

    // Samples of the cells loaded so far, indexed per window tick, plus a
    // direct (object, tick) -> position lookup. Both grow as new cells
    // load; cells load once per bucket.
    const Tick window = be - w_lo + 1;
    std::vector<std::vector<std::pair<ObjectId, Point>>> tick_samples(window);
    std::unordered_map<std::uint64_t, Point> pos_of;
    std::set<CellIndex> loaded;
    auto load_cell = [&](CellIndex c) {
      if (!loaded.insert(c).second) return;
      if (stats) {
        ++stats->cells_read;
        stats->cells.emplace_back(b, c);
      }
      for (const CellSegment& cs : fetch_cell(b, c, &pinned))
        for (auto& [st, sp] : cs.samples) {
          if (st < w_lo) continue;
          tick_samples[st - w_lo].emplace_back(cs.object, sp);
          pos_of.emplace(
              (static_cast<std::uint64_t>(cs.object) << 32) | st, sp);
        }
    };

    Tick cursor = w_lo;
    bool found_dst = false;
    while (true) {
      // Cells of the seeds over the remaining window, then the cells near
      // the d_T-inflated MBR of each seed's segment. Loads are batched in
      // ascending cell order so a bucket is read mostly sequentially.
      std::set<CellIndex> want;
      for (ObjectId s : seeds)
        for (Tick t = cursor; t <= be; ++t) want.insert(cell_at(s, t));
      for (CellIndex c : want) load_cell(c);
      want.clear();
      for (ObjectId s : seeds) {
        Mbr box;
        bool any = false;
        for (Tick t = cursor; t <= be; ++t) {
          auto it =
              pos_of.find((static_cast<std::uint64_t>(s) << 32) | t);
          if (it == pos_of.end()) continue;
          if (!any) {
            box = Mbr{it->second.x, it->second.y, it->second.x, it->second.y};
            any = true;
          } else {
            box.expand(it->second);
          }
        }
        if (!any) continue;
        for (CellIndex c : cells_near(box, m.d_t)) want.insert(c);
      }
      for (CellIndex c : want) load_cell(c);

      // Time sweep: earliest tick where a non-seed comes within d_T of a
      // seed; ties resolved toward the smallest object id.
      const double d2 = m.d_t * m.d_t;
      ObjectId new_seed = kInvalidObject;
      Tick new_tick = 0;
      std::vector<std::pair<ObjectId, Point>> seed_pos;
      for (Tick t = cursor; t <= sweep_hi && new_seed == kInvalidObject; ++t) {
        if (stats) ++stats->sweep_ticks;
        seed_pos.clear();
        for (auto& [o, p] : tick_samples[t - w_lo])
          if (seed[o]) seed_pos.emplace_back(o, p);
        ObjectId best = kInvalidObject;
        for (auto& [o, p] : tick_samples[t - w_lo]) {
          if (seed[o]) continue;
          if (best != kInvalidObject && o >= best) continue;
          for (auto& [s, ps] : seed_pos) {
            if (squared_distance(p, ps) <= d2) {
              best = o;
              break;
            }
          }
        }
        if (best != kInvalidObject) {
          new_seed = best;
          new_tick = t;
        }
      }
      if (new_seed == kInvalidObject) break;  // bucket exhausted
      seed[new_seed] = 1;
      seeds.push_back(new_seed);
      if (stats) stats->seeds_added.emplace_back(new_seed, new_tick);
      if (new_seed == q.destination) {
        found_dst = true;
        break;
      }
      cursor = new_tick;  // rescan the tick: same-tick chains
    }

    if (stats) ++stats->buckets_processed;
    // Retrieved cells are buffered only within their bucket.
    for (BlockId blk : pinned) store_->unpin(blk);
    store_->discard(pinned);
    cell_cache_.clear();
    if (found_dst) return true;
  }
  return false;
}

}  // namespace reach
