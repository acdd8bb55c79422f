#include "parc/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace parc {

double alphabet_entropy_bound(std::uint64_t alphabet_size) {
  if (alphabet_size <= 1) return 0.0;
  return std::log2(static_cast<double>(alphabet_size));
}

double empirical_entropy(const kernels::Histogram& counts,
                         std::uint64_t total) {
  if (total == 0) return 0.0;
  return kernels::entropy_bits(counts, total) / static_cast<double>(total);
}

double empirical_entropy(std::span<const std::uint8_t> bytes) {
  return empirical_entropy(kernels::histogram(bytes), bytes.size());
}

double rate_lower_bound(const Partition& partition,
                        std::span<const double> entropies) {
  if (entropies.size() != partition.segment_count()) {
    throw std::invalid_argument(
        "rate_lower_bound: entropies misaligned with partition");
  }
  const auto& lengths = partition.segment_lengths();
  double bound = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    bound += size_weight(lengths[i], partition.total_length()) * entropies[i];
  }
  return bound;
}

EntropyProfile entropy_profile(std::span<const std::uint8_t> bytes,
                               std::uint64_t window_length,
                               std::uint64_t stride) {
  if (window_length == 0) {
    throw std::invalid_argument("entropy_profile: zero window");
  }
  if (stride == 0) {
    throw std::invalid_argument("entropy_profile: zero stride");
  }
  if (window_length > bytes.size()) {
    throw std::invalid_argument("entropy_profile: window " +
                                std::to_string(window_length) +
                                " exceeds sequence length " +
                                std::to_string(bytes.size()));
  }

  EntropyProfile profile;
  profile.window_length = window_length;
  profile.stride = stride;

  kernels::Histogram counts =
      kernels::histogram(bytes.subspan(0, window_length));
  std::uint64_t offset = 0;
  while (true) {
    profile.values.push_back(
        {offset, empirical_entropy(counts, window_length)});
    std::uint64_t next = offset + stride;
    if (next + window_length > bytes.size()) break;
    if (stride < window_length) {
      // Slide: retire the bytes leaving the window, admit the new ones.
      for (std::uint64_t i = offset; i < next; ++i) --counts[bytes[i]];
      kernels::active().accumulate_histogram(
          bytes.subspan(offset + window_length, stride), counts);
    } else {
      counts = kernels::histogram(bytes.subspan(next, window_length));
    }
    offset = next;
  }
  return profile;
}

}  // namespace parc
