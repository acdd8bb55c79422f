#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "parc/kernels.hpp"

namespace parc {

// A fully resident byte sequence together with its observed alphabet.
// Immutable after construction.
class Sequence {
public:
  Sequence() = default;
  explicit Sequence(std::vector<std::uint8_t> data);
  static Sequence from_string(std::string_view text);

  std::span<const std::uint8_t> bytes() const noexcept { return data_; }
  std::uint64_t length() const noexcept { return data_.size(); }
  const kernels::Histogram& histogram() const noexcept { return counts_; }
  int alphabet_size() const noexcept { return alphabet_size_; }
  // Distinct symbols in increasing order.
  std::vector<std::uint8_t> alphabet() const;

  bool operator==(const Sequence& other) const { return data_ == other.data_; }

private:
  std::vector<std::uint8_t> data_;
  kernels::Histogram counts_{};
  int alphabet_size_ = 0;
};

}  // namespace parc
