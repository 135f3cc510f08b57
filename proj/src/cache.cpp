#include "rydqed/cache.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace rydqed {

namespace {

struct KeyHash {
  std::size_t operator()(const RadialIntegralKey& k) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::int64_t v) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    };
    mix(k.n);
    mix(k.l);
    mix(k.n_prime);
    mix(k.l_prime);
    mix(k.kind);
    mix(k.power);
    return h;
  }
};

constexpr std::size_t kRecordSize = 36;

void encode_record(const RadialIntegralKey& k, double value,
                   std::array<unsigned char, kRecordSize>& buf) {
  auto put_i32 = [&buf](std::size_t off, std::int32_t v) {
    for (int i = 0; i < 4; ++i)
      buf[off + i] = static_cast<unsigned char>((static_cast<std::uint32_t>(v) >> (8 * i)) & 0xff);
  };
  put_i32(0, k.n);
  put_i32(4, k.l);
  put_i32(8, k.n_prime);
  put_i32(12, k.l_prime);
  put_i32(16, k.kind);
  put_i32(20, k.power);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  for (int i = 0; i < 8; ++i)
    buf[24 + i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  const std::uint32_t crc = crc32_bytes(buf.data(), 32);
  for (int i = 0; i < 4; ++i)
    buf[32 + i] = static_cast<unsigned char>((crc >> (8 * i)) & 0xff);
}

bool decode_record(const std::array<unsigned char, kRecordSize>& buf,
                   RadialIntegralKey& k, double& value) {
  auto get_i32 = [&buf](std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(buf[off + i]) << (8 * i);
    return static_cast<std::int32_t>(v);
  };
  const std::uint32_t crc_stored = static_cast<std::uint32_t>(get_i32(32));
  if (crc32_bytes(buf.data(), 32) != crc_stored) return false;
  k.n = get_i32(0);
  k.l = get_i32(4);
  k.n_prime = get_i32(8);
  k.l_prime = get_i32(12);
  k.kind = get_i32(16);
  k.power = get_i32(20);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i)
    bits |= static_cast<std::uint64_t>(buf[24 + i]) << (8 * i);
  std::memcpy(&value, &bits, 8);
  return true;
}

} // namespace

std::uint32_t crc32_bytes(const void* data, std::size_t len) {
  static std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int j = 0; j < 8; ++j)
        c = (c & 1) ? 0xedb88320u ^ (c >> 1) : (c >> 1);
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t crc = 0xffffffffu;
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i)
    crc = table[(crc ^ p[i]) & 0xff] ^ (crc >> 8);
  return crc ^ 0xffffffffu;
}

struct RadialCache::Impl {
  mutable std::shared_mutex mutex;
  std::unordered_map<RadialIntegralKey, double, KeyHash> map;
  std::FILE* file = nullptr;
  std::string path;
  std::uint64_t hits = 0, misses = 0, loaded = 0, skipped = 0;
};

RadialCache::RadialCache() : impl_(new Impl) {
  if (const char* dir = std::getenv("RYDQED_CACHE_DIR"))
    attach_directory(dir);
}

RadialCache::~RadialCache() {
  detach();
  delete impl_;
}

RadialCache& RadialCache::instance() {
  static RadialCache cache;
  return cache;
}

std::optional<double> RadialCache::lookup(const RadialIntegralKey& key) {
  std::shared_lock lock(impl_->mutex);
  auto it = impl_->map.find(key);
  if (it == impl_->map.end()) {
    ++impl_->misses;
    return std::nullopt;
  }
  ++impl_->hits;
  return it->second;
}

void RadialCache::store(const RadialIntegralKey& key, double value) {
  std::unique_lock lock(impl_->mutex);
  auto [it, inserted] = impl_->map.emplace(key, value);
  if (!inserted) return;
  if (impl_->file) {
    std::array<unsigned char, kRecordSize> buf;
    encode_record(key, value, buf);
    // One fwrite per record keeps entries atomic for concurrent readers.
    std::fwrite(buf.data(), 1, kRecordSize, impl_->file);
    std::fflush(impl_->file);
  }
}

void RadialCache::attach_directory(const std::string& dir) {
  std::unique_lock lock(impl_->mutex);
  if (impl_->file) {
    std::fclose(impl_->file);
    impl_->file = nullptr;
  }
  impl_->path = dir + "/radial-integrals.bin";
  if (std::FILE* in = std::fopen(impl_->path.c_str(), "rb")) {
    std::array<unsigned char, kRecordSize> buf;
    while (std::fread(buf.data(), 1, kRecordSize, in) == kRecordSize) {
      RadialIntegralKey k;
      double v;
      if (decode_record(buf, k, v)) {
        impl_->map.emplace(k, v);
        ++impl_->loaded;
      } else {
        ++impl_->skipped;
      }
    }
    std::fclose(in);
  }
  impl_->file = std::fopen(impl_->path.c_str(), "ab");
}

void RadialCache::detach() {
  std::unique_lock lock(impl_->mutex);
  if (impl_->file) {
    std::fclose(impl_->file);
    impl_->file = nullptr;
  }
  impl_->path.clear();
}

void RadialCache::clear_memory() {
  std::unique_lock lock(impl_->mutex);
  impl_->map.clear();
  impl_->hits = impl_->misses = impl_->loaded = impl_->skipped = 0;
}

RadialCache::Stats RadialCache::stats() const {
  std::shared_lock lock(impl_->mutex);
  Stats s;
  s.hits = impl_->hits;
  s.misses = impl_->misses;
  s.entries = impl_->map.size();
  s.loaded_from_disk = impl_->loaded;
  s.skipped_bad_records = impl_->skipped;
  s.file = impl_->path;
  return s;
}

} // namespace rydqed
