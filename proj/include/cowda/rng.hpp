#pragma once

#include <cmath>
#include <cstdint>

namespace cowda {

// splitmix64 finisher; the workhorse behind all counter-based streams.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
  return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// Stateless word generator: word #counter of substream (seed, stream_id).
// Counter-based so trials can be generated in any order on any thread layout.
inline uint64_t stream_word(uint64_t seed, uint64_t stream_id, uint64_t counter) {
  return mix64(seed ^ mix64(stream_id ^ mix64(counter)));
}

// Uniform in (0,1): 53 mantissa bits, offset half an ulp so 0 never appears.
inline double stream_unit(uint64_t seed, uint64_t stream_id, uint64_t counter) {
  return (static_cast<double>(stream_word(seed, stream_id, counter) >> 11) + 0.5) *
         0x1.0p-53;
}

// Reproducible substream of standard normals (Box-Muller over the counter
// stream). Same (seed, stream_id) gives the same sequence on any machine.
class GaussianStream {
 public:
  GaussianStream(uint64_t seed, uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = stream_unit(seed_, stream_id_, counter_++);
    double u2 = stream_unit(seed_, stream_id_, counter_++);
    double r = std::sqrt(-2.0 * std::log(u1));
    double phi = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  // Raw uniform words from the same substream, interleaved with normals.
  uint64_t next_word() { return stream_word(seed_, stream_id_, counter_++); }

  // Unbiased integer in [0, bound) by rejection from the top of the range.
  uint64_t next_below(uint64_t bound) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      uint64_t w = next_word();
      if (w < limit) return w % bound;
    }
  }

 private:
  uint64_t seed_;
  uint64_t stream_id_;
  uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cowda
