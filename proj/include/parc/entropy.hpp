#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "parc/kernels.hpp"
#include "parc/rate.hpp"

namespace parc {

// Sliding-window empirical entropy of a sequence. Offsets advance by stride;
// a final window that would overrun the sequence is not emitted.
struct EntropyProfile {
  std::uint64_t window_length = 0;
  std::uint64_t stride = 0;
  struct Entry {
    std::uint64_t offset = 0;
    double entropy = 0.0;  // bits per symbol
  };
  std::vector<Entry> values;
};

// log2(alphabet_size); 0 for alphabet sizes 0 and 1. The maximum entropy of
// any zero-order source on that alphabet.
double alphabet_entropy_bound(std::uint64_t alphabet_size);

// Plug-in Shannon entropy of the observed symbol frequencies, base 2, with
// 0*log 0 = 0. Empty input gives 0. Never exceeds
// alphabet_entropy_bound(alphabet size), with equality iff counts are uniform.
double empirical_entropy(std::span<const std::uint8_t> bytes);
double empirical_entropy(const kernels::Histogram& counts, std::uint64_t total);

// sum w(a_i) * H_i, the entropy-based floor on the overall compression rate
// of a partitioned sequence. Rejects an entropies list not aligned with the
// partition.
double rate_lower_bound(const Partition& partition,
                        std::span<const double> entropies);

// Rejects window_length = 0, stride = 0 and window_length > bytes.size().
EntropyProfile entropy_profile(std::span<const std::uint8_t> bytes,
                               std::uint64_t window_length,
                               std::uint64_t stride);

}  // namespace parc
