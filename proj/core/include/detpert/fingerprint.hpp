#pragma once

#include <bit>
#include <cstdint>
#include <span>

namespace detpert {

// Identifies one evaluated instance: a content hash of the operands plus the
// (seed, substream) pair that generated them, so any report row can be
// replayed exactly. Manually constructed instances use seed = substream = 0.
struct Fingerprint {
  std::uint64_t hash = 0;
  std::uint64_t seed = 0;
  std::uint64_t substream = 0;
};

// FNV-1a over raw 64-bit payloads.
class Hasher {
 public:
  Hasher& add(std::uint64_t v) {
    for (int shift = 0; shift < 64; shift += 8) {
      state_ ^= (v >> shift) & 0xffu;
      state_ *= 0x100000001b3ull;
    }
    return *this;
  }

  Hasher& add(double v) { return add(std::bit_cast<std::uint64_t>(v)); }

  Hasher& add(std::span<const double> values) {
    for (double v : values) add(v);
    return *this;
  }

  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ull;
};

}  // namespace detpert
