#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rydqed/radial.hpp"

namespace rydqed {

/// Process-wide radial-integral cache: an in-memory index over an
/// append-only binary file. Record layout (little-endian, 36 bytes):
///   [n l n' l' kind : 5 x i32][power : i32][value : f64][checksum : u32]
/// checksum = CRC-32 of the preceding 32 bytes. Corrupt or truncated tail
/// records are skipped at load time. See docs/cache-format.md.
///
/// Many readers, one writer; writes are atomic at record granularity.
/// The environment variable RYDQED_CACHE_DIR selects the directory for the
/// persistent file; without it the cache is memory-only.
class RadialCache {
public:
  static RadialCache& instance();

  std::optional<double> lookup(const RadialIntegralKey& key);
  void store(const RadialIntegralKey& key, double value);

  /// (Re)attach to a persistent file under `dir`; loads existing records.
  void attach_directory(const std::string& dir);
  void detach();
  /// Drop the in-memory index (does not touch the file).
  void clear_memory();

  struct Stats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t entries = 0;
    std::uint64_t loaded_from_disk = 0;
    std::uint64_t skipped_bad_records = 0;
    std::string file;
  };
  Stats stats() const;

private:
  RadialCache();
  ~RadialCache();
  struct Impl;
  Impl* impl_;
};

std::uint32_t crc32_bytes(const void* data, std::size_t len);

} // namespace rydqed
