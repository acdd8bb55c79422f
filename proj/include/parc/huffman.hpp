#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "parc/bitio.hpp"
#include "parc/kernels.hpp"

// Canonical Huffman coding over byte symbols. Code lengths are capped at
// kMaxCodeLength so they fit the archive's 4-bit dense model form; a segment
// whose optimal code would exceed the cap is coded raw instead (the codec
// layer handles the fallback). Codewords are fully determined by the length
// assignment: symbols sorted by (length, symbol value) receive consecutive
// canonical codes, so identical symbol counts always produce bit-identical
// output.

namespace parc::huffman {

inline constexpr int kMaxCodeLength = 15;

using Lengths = std::array<std::uint8_t, 256>;  // 0 = symbol absent

struct Build {
  Lengths lengths{};
  int alphabet_size = 0;
  int max_length = 0;
  std::uint64_t payload_bits = 0;  // sum counts[s] * lengths[s]
  bool fits = true;                // max_length <= kMaxCodeLength
};

// Optimal code lengths for the given counts. A single-symbol alphabet gets
// length 0 (zero payload bits). Deterministic in the counts alone.
Build build(const kernels::Histogram& counts);

// Optimal payload bits and code depth from the count multiset only, for
// callers that maintain counts incrementally. `counts_desc` must be sorted
// descending and contain no zeros. Agrees exactly with build() on the same
// multiset.
struct Cost {
  std::uint64_t payload_bits = 0;
  int max_length = 0;
  bool fits = true;
};
Cost cost_from_counts(std::span<const std::uint32_t> counts_desc);

// Canonical codewords for a length assignment (entries valid where
// lengths[s] > 0; single-symbol codes are empty and emit no bits).
std::array<std::uint32_t, 256> canonical_codes(const Lengths& lengths);

// Canonical decoder over (symbol, code length) entries. Validates the
// length assignment: every length within the cap and Kraft equality (a lone
// symbol must have length 0). Throws CorruptionError otherwise.
class Decoder {
public:
  explicit Decoder(
      std::span<const std::pair<std::uint8_t, std::uint8_t>> entries);

  std::uint8_t decode_one(BitReader& reader) const;
  bool single_symbol() const noexcept { return single_; }

private:
  bool single_ = false;
  int min_length_ = 0;
  int max_length_ = 0;
  // first_code[len], first_index[len] into symbols_ for canonical decoding.
  std::array<std::uint32_t, kMaxCodeLength + 2> first_code_{};
  std::array<std::uint16_t, kMaxCodeLength + 2> count_by_length_{};
  std::array<std::uint16_t, kMaxCodeLength + 2> first_index_{};
  std::vector<std::uint8_t> symbols_;  // in canonical (length, symbol) order
};

}  // namespace parc::huffman
