#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "parc/errors.hpp"

// MSB-first bit packing: the first bit written lands in the most significant
// bit of the first byte. Final partial bytes are zero-padded. This layout is
// part of the archive format.

namespace parc {

class BitWriter {
public:
  // Appends the low `nbits` of `value`, most significant bit first.
  void put(std::uint64_t value, int nbits) {
    for (int i = nbits - 1; i >= 0; --i) {
      if (bit_pos_ == 0) bytes_.push_back(0);
      std::uint8_t bit = (value >> i) & 1u;
      bytes_.back() |= static_cast<std::uint8_t>(bit << (7 - bit_pos_));
      bit_pos_ = (bit_pos_ + 1) & 7;
      ++bit_length_;
    }
  }

  std::uint64_t bit_length() const noexcept { return bit_length_; }
  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bit_length_ = 0;
  int bit_pos_ = 0;
};

class BitReader {
public:
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_length)
      : bytes_(bytes), bit_length_(bit_length) {
    if (bit_length_ > 8 * bytes_.size()) {
      throw CorruptionError(Corruption::PayloadUnderrun,
                            "payload shorter than its declared bit length");
    }
  }

  std::uint64_t read(int nbits) {
    std::uint64_t value = 0;
    for (int i = 0; i < nbits; ++i) value = (value << 1) | read_bit();
    return value;
  }

  std::uint32_t read_bit() {
    if (pos_ >= bit_length_) {
      throw CorruptionError(Corruption::PayloadUnderrun,
                            "read past end of payload");
    }
    std::uint32_t bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return bit;
  }

  std::uint64_t consumed() const noexcept { return pos_; }
  std::uint64_t remaining() const noexcept { return bit_length_ - pos_; }

private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t bit_length_ = 0;
  std::uint64_t pos_ = 0;
};

}  // namespace parc
