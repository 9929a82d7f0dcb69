#pragma once

#include <cstdint>
#include <list>
#include <string>
#include <unordered_map>
#include <vector>

namespace reach {

using BlockId = std::uint64_t;

// Read cost in the normalized model: one random access costs as much as
// twenty sequential ones. Writes are reported separately.
struct IoReport {
  std::uint64_t random_reads = 0;
  std::uint64_t sequential_reads = 0;
  std::uint64_t writes = 0;

  double normalized_cost() const {
    return static_cast<double>(random_reads) +
           static_cast<double>(sequential_reads) / 20.0;
  }
};

// Simulated disk: fixed-size blocks held in memory, a single-arm IO model
// (a read is sequential iff it targets the physical successor of the last
// physical read), and a bounded LRU buffer pool. Buffer hits cost nothing.
// Pinned blocks are never evicted; ReachGrid pins a bucket's cells and
// drops them when the bucket is done.
class BlockStore {
 public:
  static constexpr std::uint32_t kDefaultPageSize = 4096;
  static constexpr std::size_t kDefaultBufferBlocks = 1024;

  explicit BlockStore(std::uint32_t page_size = kDefaultPageSize,
                      std::size_t buffer_blocks = kDefaultBufferBlocks)
      : page_size_(page_size), buffer_capacity_(buffer_blocks) {}

  std::uint32_t page_size() const { return page_size_; }
  std::size_t buffer_capacity() const { return buffer_capacity_; }
  BlockId block_count() const { return blocks_.size(); }

  // Appends a new block (payload zero-padded to the page size) and returns
  // its id. Ids are dense from 0.
  BlockId append(const std::vector<std::uint8_t>& payload);

  // Reads one block through the buffer pool, updating the IO counters.
  const std::vector<std::uint8_t>& read(BlockId id);

  IoReport report() const { return io_; }
  // Returns the counters gathered so far and zeroes them.
  IoReport reset();

  void clear_buffer();
  // Fresh counters and a cold buffer: the starting state for one measured query.
  void begin_cold_run() {
    reset();
    clear_buffer();
  }

  void pin(BlockId id);
  void unpin(BlockId id);
  // Unpins and evicts the given blocks (end-of-bucket discard).
  void discard(const std::vector<BlockId>& ids);

  // Loads every block into an unbounded buffer; reads stop counting IO.
  // Used for CPU-time measurements that ignore disk retrievals.
  void preload_all();

  // Optional trace of physically read block ids (tests and debugging).
  void enable_read_log(bool on) {
    log_reads_ = on;
    read_log_.clear();
  }
  const std::vector<BlockId>& read_log() const { return read_log_; }

  void save(const std::string& path) const;
  static BlockStore load(const std::string& path, std::size_t buffer_blocks =
                                                      kDefaultBufferBlocks);

 private:
  void touch(BlockId id);
  void insert_buffered(BlockId id);
  void evict_one();

  std::uint32_t page_size_;
  std::size_t buffer_capacity_;
  std::vector<std::vector<std::uint8_t>> blocks_;

  IoReport io_;
  // -2: no physical read yet (so block 0 from cold counts as random).
  std::int64_t last_physical_read_ = -2;

  // LRU list: front = most recent. map: id -> list iterator.
  std::list<BlockId> lru_;
  struct Resident {
    std::list<BlockId>::iterator pos;
    bool pinned = false;
  };
  std::unordered_map<BlockId, Resident> resident_;
  bool unbounded_buffer_ = false;

  bool log_reads_ = false;
  std::vector<BlockId> read_log_;
};

// Helpers for packing little-endian scalars into block payloads.
void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v);
void put_u64(std::vector<std::uint8_t>& buf, std::uint64_t v);
void put_f64(std::vector<std::uint8_t>& buf, double v);
std::uint32_t get_u32(const std::uint8_t* p);
std::uint64_t get_u64(const std::uint8_t* p);
double get_f64(const std::uint8_t* p);

// Reads the byte range [offset, offset+len) out of a store, touching each
// covered block once in ascending order.
std::vector<std::uint8_t> read_bytes(BlockStore& store, std::uint64_t offset,
                                     std::uint64_t len);

// Appends a byte stream as whole blocks; returns the first block id.
BlockId append_bytes(BlockStore& store, const std::vector<std::uint8_t>& bytes);

}  // namespace reach
