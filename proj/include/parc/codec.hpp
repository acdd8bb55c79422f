#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "parc/common.hpp"
#include "parc/errors.hpp"
#include "parc/kernels.hpp"

// Per-segment coding schemes and the multi-coding selector. Every scheme is a
// self-contained lossless coder for one segment:
//
//   RAW_FIXED  ceil(log2 m) bits per symbol through a sorted-alphabet index
//              table; the model stores the m distinct symbols in increasing
//              order. m = 1 costs zero payload bits.
//   HUFFMAN    canonical Huffman code over the segment's symbol counts; the
//              model stores code lengths (see model layout below). A segment
//              whose optimal code exceeds depth 15 is coded RAW_FIXED instead
//              and recorded as such in the archive.
//   LZW        dictionary coding, dictionary reset per segment; empty model.
//
// Huffman model layout (part of the archive format): a 1-byte form tag, then
//   form 0 (dense)  128 bytes of 4-bit code lengths, symbol 2i in the high
//                   nibble of byte i, symbol 2i+1 in the low nibble;
//   form 1 (sparse) one (symbol, length) byte pair per distinct symbol, in
//                   increasing symbol order.
// The encoder uses the sparse form when the alphabet has at most 32 symbols
// (always the smaller of the two there) and the dense form otherwise.

namespace parc {

// Fixed per-segment overhead of the container's segment table entry; must
// match the layout in container.hpp. Accounted rates charge this to the
// segment.
inline constexpr std::uint64_t kSegmentHeaderBytes = 21;

struct EncodedSegment {
  CodecId codec = CodecId::RawFixed;
  std::vector<std::uint8_t> model;
  std::uint64_t payload_bit_length = 0;
  std::vector<std::uint8_t> payload;  // ceil(payload_bit_length / 8) bytes
  std::uint64_t original_length = 0;

  std::uint64_t ideal_bits() const noexcept { return payload_bit_length; }
  std::uint64_t accounted_bits() const noexcept {
    return payload_bit_length + 8 * model.size() + 8 * kSegmentHeaderBytes;
  }
};

// Rejects empty segments. The returned codec may differ from the request
// only for the Huffman depth fallback described above.
EncodedSegment encode_segment(std::span<const std::uint8_t> segment,
                              CodecId codec);

// Exact inverse of encode_segment. Throws CorruptionError on malformed
// models, payload underrun/overrun, or out-of-range codes.
std::vector<std::uint8_t> decode_segment(const EncodedSegment& enc);

double segment_rate(std::span<const std::uint8_t> segment, CodecId codec,
                    RateMode mode);

// The codec with the minimum rate among `allowed`; ties break to the lowest
// codec id. Rejects an empty set.
std::pair<CodecId, double> best_codec(std::span<const std::uint8_t> segment,
                                      CodecSet allowed, RateMode mode);

// Cost-only evaluation used by the optimizer; must agree bit-for-bit with
// encode_segment. Given the segment's counts (and length), returns total
// payload bits and model bytes the encoder would produce.
struct CodecCost {
  std::uint64_t payload_bits = 0;
  std::uint64_t model_bytes = 0;
  CodecId realized = CodecId::RawFixed;  // after any Huffman fallback
};
CodecCost raw_fixed_cost(int alphabet_size, std::uint64_t length);
CodecCost huffman_cost(std::span<const std::uint32_t> counts_desc,
                       int alphabet_size, std::uint64_t length);

}  // namespace parc
