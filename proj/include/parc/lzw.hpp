#pragma once

#include <cstdint>
#include <span>
#include <vector>

// LZW dictionary coding over a segment's bytes. The dictionary starts as the
// 256 single-byte strings, grows without bound within a segment and is reset
// per segment, which keeps segments independently decodable. Codes are
// emitted MSB-first at the current dictionary bit width; the width starts at
// 9 and grows by one whenever the dictionary fills the current code space.

namespace parc::lzw {

inline constexpr int kInitialWidth = 9;

struct Encoded {
  std::vector<std::uint8_t> payload;
  std::uint64_t bit_length = 0;
};

// Streaming encoder that can also report, after any prefix, how many payload
// bits the segment would occupy if it ended there. The optimizer uses this to
// cost all candidate segment ends in one left-to-right pass.
class PrefixEncoder {
public:
  PrefixEncoder();

  void push(std::uint8_t byte);
  // Payload bits if the segment ended after the bytes pushed so far
  // (emitted bits plus the flush of the pending phrase, if any).
  std::uint64_t bits_if_ended() const noexcept;
  // Finish the stream and hand over the payload.
  Encoded finish();

private:
  void emit(std::uint32_t code);
  void grow_table();

  // Open-addressed (prefix, byte) -> code map; key 2^40 marks empty slots.
  std::vector<std::uint64_t> dict_keys_;
  std::vector<std::uint32_t> dict_vals_;
  std::size_t dict_used_ = 0;
  std::uint32_t next_code_ = 256;
  int width_ = kInitialWidth;
  std::uint32_t current_ = 0;  // code of the pending phrase
  bool pending_ = false;
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bit_length_ = 0;
};

Encoded encode(std::span<const std::uint8_t> bytes);

// Throws CorruptionError on codes outside the dictionary, payload underrun,
// or when the declared bit length does not match the codes consumed.
std::vector<std::uint8_t> decode(std::span<const std::uint8_t> payload,
                                 std::uint64_t payload_bits,
                                 std::uint64_t original_length);

}  // namespace parc::lzw
