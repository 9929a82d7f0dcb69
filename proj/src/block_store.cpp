#include "reach/block_store.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace reach {

BlockId BlockStore::append(const std::vector<std::uint8_t>& payload) {
  if (payload.size() > page_size_)
    throw std::invalid_argument("BlockStore::append: payload exceeds page size");
  std::vector<std::uint8_t> block(page_size_, 0);
  std::memcpy(block.data(), payload.data(), payload.size());
  blocks_.push_back(std::move(block));
  ++io_.writes;
  return blocks_.size() - 1;
}

const std::vector<std::uint8_t>& BlockStore::read(BlockId id) {
  if (id >= blocks_.size())
    throw std::out_of_range("BlockStore::read: block out of range");
  auto it = resident_.find(id);
  if (it != resident_.end()) {
    touch(id);
    return blocks_[id];
  }
  // Physical read.
  if (static_cast<std::int64_t>(id) == last_physical_read_ + 1)
    ++io_.sequential_reads;
  else
    ++io_.random_reads;
  last_physical_read_ = static_cast<std::int64_t>(id);
  if (log_reads_) read_log_.push_back(id);
  insert_buffered(id);
  return blocks_[id];
}

IoReport BlockStore::reset() {
  IoReport r = io_;
  io_ = IoReport{};
  last_physical_read_ = -2;
  return r;
}

void BlockStore::clear_buffer() {
  lru_.clear();
  resident_.clear();
  unbounded_buffer_ = false;
}

void BlockStore::pin(BlockId id) {
  auto it = resident_.find(id);
  if (it != resident_.end()) it->second.pinned = true;
}

void BlockStore::unpin(BlockId id) {
  auto it = resident_.find(id);
  if (it != resident_.end()) it->second.pinned = false;
}

void BlockStore::discard(const std::vector<BlockId>& ids) {
  for (BlockId id : ids) {
    auto it = resident_.find(id);
    if (it == resident_.end()) continue;
    lru_.erase(it->second.pos);
    resident_.erase(it);
  }
}

void BlockStore::preload_all() {
  clear_buffer();
  unbounded_buffer_ = true;
  for (BlockId id = 0; id < blocks_.size(); ++id) insert_buffered(id);
}

void BlockStore::touch(BlockId id) {
  auto it = resident_.find(id);
  lru_.erase(it->second.pos);
  lru_.push_front(id);
  it->second.pos = lru_.begin();
}

void BlockStore::insert_buffered(BlockId id) {
  lru_.push_front(id);
  resident_[id] = Resident{lru_.begin(), false};
  if (!unbounded_buffer_ && resident_.size() > buffer_capacity_) evict_one();
}

void BlockStore::evict_one() {
  // Walk from the least recently used end, skipping pinned blocks.
  for (auto it = lru_.rbegin(); it != lru_.rend(); ++it) {
    auto res = resident_.find(*it);
    if (res->second.pinned) continue;
    lru_.erase(std::next(it).base());
    resident_.erase(res);
    return;
  }
  // All pinned: let the pool exceed capacity until the pins are released.
}

static constexpr char kMagic[8] = {'R', 'S', 'T', 'O', 'R', 'E', '1', '\n'};

void BlockStore::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  std::uint32_t ps = page_size_;
  std::uint64_t n = blocks_.size();
  out.write(reinterpret_cast<const char*>(&ps), sizeof(ps));
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  for (const auto& b : blocks_)
    out.write(reinterpret_cast<const char*>(b.data()), b.size());
  if (!out) throw std::runtime_error("write failed: " + path);
}

BlockStore BlockStore::load(const std::string& path,
                            std::size_t buffer_blocks) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a block store file: " + path);
  std::uint32_t ps = 0;
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&ps), sizeof(ps));
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  BlockStore store(ps, buffer_blocks);
  store.blocks_.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    store.blocks_[i].resize(ps);
    in.read(reinterpret_cast<char*>(store.blocks_[i].data()), ps);
  }
  if (!in) throw std::runtime_error("truncated block store file: " + path);
  store.io_ = IoReport{};
  return store;
}

void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back((v >> (8 * i)) & 0xff);
}
void put_u64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back((v >> (8 * i)) & 0xff);
}
void put_f64(std::vector<std::uint8_t>& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(buf, bits);
}
std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}
std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}
double get_f64(const std::uint8_t* p) {
  std::uint64_t bits = get_u64(p);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::vector<std::uint8_t> read_bytes(BlockStore& store, std::uint64_t offset,
                                     std::uint64_t len) {
  std::vector<std::uint8_t> out;
  out.reserve(len);
  const std::uint32_t ps = store.page_size();
  if (len == 0) return out;
  const BlockId first = offset / ps;
  const BlockId last = (offset + len - 1) / ps;
  for (BlockId b = first; b <= last; ++b) {
    const auto& block = store.read(b);
    std::uint64_t lo = (b == first) ? offset - b * ps : 0;
    std::uint64_t hi = (b == last) ? offset + len - b * ps : ps;
    out.insert(out.end(), block.begin() + lo, block.begin() + hi);
  }
  return out;
}

BlockId append_bytes(BlockStore& store, const std::vector<std::uint8_t>& bytes) {
  const std::uint32_t ps = store.page_size();
  BlockId first = store.block_count();
  for (std::size_t ofs = 0; ofs < bytes.size() || ofs == 0; ofs += ps) {
    std::size_t n = std::min<std::size_t>(ps, bytes.size() - ofs);
    std::vector<std::uint8_t> chunk(bytes.begin() + ofs,
                                    bytes.begin() + ofs + n);
    store.append(chunk);
    if (ofs + ps >= bytes.size()) break;
  }
  return first;
}

}  // namespace reach
