#pragma once

#include <cstdint>

namespace stratdisc {

/// Names one replicate of one seeded experiment.
struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based substream keyed on (seed, replicate, stream_index). The k-th
/// variate is a pure function of the key and k, so identical triples yield
/// identical sequences under any execution order.
class SubStream {
 public:
  SubStream(const SeedSpec& spec, std::uint64_t stream_index) {
    std::uint64_t k = detail::mix64(spec.seed + 0x9E3779B97F4A7C15ULL);
    k = detail::mix64(k ^ (spec.replicate + 0xD1B54A32D192ED03ULL));
    key_ = detail::mix64(k ^ (stream_index + 0x8CB92BA72F3D8DD7ULL));
  }

  /// Next variate, uniform on [0, 1).
  double next_unit() {
    const std::uint64_t bits =
        detail::mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace stratdisc
