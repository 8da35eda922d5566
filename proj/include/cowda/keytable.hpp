#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <vector>

#include "cowda/matrix.hpp"
#include "cowda/odometer.hpp"
#include "cowda/rng.hpp"
#include "cowda/types.hpp"

namespace cowda {

// Fixed-width packing of integer chip vectors used as hash keys. Each of the
// m entries is offset by +2n and stored in ceil(log2(4n+1)) bits; fields are
// packed LSB-first into 64-bit words and never straddle a word boundary, so
// keys compare as plain word arrays.
//
// The enumeration kernels update packed keys incrementally by adding
// precomputed per-column delta words (plain mod-2^64 integer adds). While
// every field value stays in range the word equals the canonical packing;
// transient out-of-range values can only alias other keys, never hide a
// canonical match, and every table hit is re-verified in exact integer
// arithmetic before it is believed.
struct KeyCodec {
  int entries = 0;       // m
  int offset = 0;        // +2n
  int field_bits = 0;    // ceil(log2(4n+1))
  int fields_per_word = 0;
  int words = 0;

  KeyCodec() = default;
  KeyCodec(int m, int n_total) {
    entries = m;
    offset = 2 * n_total;
    field_bits = std::bit_width(static_cast<unsigned>(4 * n_total));
    fields_per_word = 64 / field_bits;
    words = (m + fields_per_word - 1) / fields_per_word;
  }

  // Linear-form packing: out = sum over fields of (value+offset)*2^shift,
  // accumulated mod 2^64. Equals the canonical field layout whenever every
  // value lies in [-2n, 2n]; stays additively consistent even when it does
  // not, which is what lets incremental probes pass transiently out of range.
  void pack(const int* values, uint64_t* out) const {
    for (int w = 0; w < words; ++w) out[w] = 0;
    for (int i = 0; i < entries; ++i) {
      uint64_t field =
          static_cast<uint64_t>(static_cast<int64_t>(values[i] + offset));
      out[i / fields_per_word] +=
          field << (static_cast<unsigned>(i % fields_per_word) * field_bits);
    }
  }

  // Packed delta words for adding scale*column: signed contributions summed
  // mod 2^64 so that acc += delta performs per-field adds with exact borrows.
  std::vector<uint64_t> column_delta(const std::vector<int>& column, int scale) const {
    std::vector<uint64_t> d(static_cast<size_t>(words), 0);
    for (int i = 0; i < entries; ++i) {
      int64_t v = static_cast<int64_t>(scale) * column[static_cast<size_t>(i)];
      unsigned shift = static_cast<unsigned>(i % fields_per_word) * field_bits;
      d[static_cast<size_t>(i / fields_per_word)] +=
          static_cast<uint64_t>(v) << shift;
    }
    return d;
  }

  bool in_range(int value) const { return value >= -offset && value <= offset; }
};

inline uint64_t hash_words(const uint64_t* key, int words) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (int i = 0; i < words; ++i) {
    h ^= key[i];
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

// Open-addressing table from packed keys to the minimal odometer rank that
// produced them. Slot layout: [rank, key words...]; empty slots hold
// rank = kEmptySlot. Immutable after build, safe for concurrent probing.
class KeyTable {
 public:
  static constexpr uint64_t kEmptySlot = UINT64_MAX;

  KeyTable() = default;

  static size_t slots_for(uint64_t count) {
    uint64_t want = count + count / 2 + 16;  // keep load factor under 2/3
    return static_cast<size_t>(std::bit_ceil(want));
  }

  static size_t bytes_for(uint64_t count, int key_words) {
    return slots_for(count) * static_cast<size_t>(key_words + 1) * 8;
  }

  void init(uint64_t expected_count, int key_words) {
    key_words_ = key_words;
    stride_ = static_cast<size_t>(key_words + 1);
    slots_ = slots_for(expected_count);
    mask_ = slots_ - 1;
    data_.assign(slots_ * stride_, 0);
    for (size_t s = 0; s < slots_; ++s) data_[s * stride_] = kEmptySlot;
  }

  // Keeps the minimal rank when the same key is inserted twice.
  void insert(const uint64_t* key, uint64_t rank) {
    size_t s = hash_words(key, key_words_) & mask_;
    for (;;) {
      uint64_t* slot = &data_[s * stride_];
      if (slot[0] == kEmptySlot) {
        slot[0] = rank;
        std::memcpy(slot + 1, key, static_cast<size_t>(key_words_) * 8);
        return;
      }
      if (std::memcmp(slot + 1, key, static_cast<size_t>(key_words_) * 8) == 0) {
        if (rank < slot[0]) slot[0] = rank;
        return;
      }
      s = (s + 1) & mask_;
    }
  }

  // Returns the stored rank or kEmptySlot.
  uint64_t find(const uint64_t* key) const {
    size_t s = hash_words(key, key_words_) & mask_;
    for (;;) {
      const uint64_t* slot = &data_[s * stride_];
      if (slot[0] == kEmptySlot) return kEmptySlot;
      if (std::memcmp(slot + 1, key, static_cast<size_t>(key_words_) * 8) == 0)
        return slot[0];
      s = (s + 1) & mask_;
    }
  }

  size_t memory_bytes() const { return data_.size() * 8; }

 private:
  std::vector<uint64_t> data_;
  size_t slots_ = 0;
  size_t mask_ = 0;
  size_t stride_ = 0;
  int key_words_ = 0;
};

// Incremental scan of W over {0,+-1,+-2}^width in odometer order (digit
// sequence 0,+1,-1,+2,-2, last position fastest), maintaining the packed key
// of start_vals + scale * (selected columns of C) * W. visit(rank, key_words)
// is called for every rank in [begin, end); returning false stops the scan.
template <typename Visit>
void scan_quinary_packed(const KeyCodec& codec, const CodeMatrix& C,
                         const std::vector<int>& col_indices, int scale,
                         const std::vector<int>& start_vals, uint64_t begin,
                         uint64_t end, Visit&& visit) {
  const int width = static_cast<int>(col_indices.size());
  const int words = codec.words;
  if (words > 16)
    throw capacity_error("packed key exceeds 16 words; matrix too tall for enumeration");

  // Per-position delta words for the four slot transitions plus the carry wrap.
  std::vector<std::vector<uint64_t>> step(static_cast<size_t>(width) * 5);
  for (int p = 0; p < width; ++p) {
    std::vector<int> col = C.column(col_indices[static_cast<size_t>(p)]);
    for (int t = 0; t < 4; ++t)
      step[static_cast<size_t>(p) * 5 + static_cast<size_t>(t)] =
          codec.column_delta(col, scale * kQuinaryStep[t]);
    step[static_cast<size_t>(p) * 5 + 4] = codec.column_delta(col, scale * kQuinaryWrap);
  }

  std::vector<int> digit(static_cast<size_t>(width), 0);
  {
    uint64_t r = begin;
    for (int j = width - 1; j >= 0; --j) {
      digit[static_cast<size_t>(j)] = static_cast<int>(r % 5);
      r /= 5;
    }
  }
  std::vector<int> vals = start_vals;
  for (int j = 0; j < width; ++j) {
    int coeff = kQuinaryDigits[digit[static_cast<size_t>(j)]];
    if (coeff == 0) continue;
    for (int i = 0; i < codec.entries; ++i)
      vals[static_cast<size_t>(i)] +=
          scale * coeff * C.at(i, col_indices[static_cast<size_t>(j)]);
  }
  uint64_t acc[16];
  codec.pack(vals.data(), acc);

  if (!visit(begin, static_cast<const uint64_t*>(acc))) return;
  for (uint64_t rank = begin + 1; rank < end; ++rank) {
    int pos = width - 1;
    while (digit[static_cast<size_t>(pos)] == 4) {
      const uint64_t* d = step[static_cast<size_t>(pos) * 5 + 4].data();
      for (int w = 0; w < words; ++w) acc[w] += d[w];
      digit[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    const uint64_t* d =
        step[static_cast<size_t>(pos) * 5 +
             static_cast<size_t>(digit[static_cast<size_t>(pos)])]
            .data();
    for (int w = 0; w < words; ++w) acc[w] += d[w];
    ++digit[static_cast<size_t>(pos)];
    if (!visit(rank, static_cast<const uint64_t*>(acc))) return;
  }
}

}  // namespace cowda
