#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "parc/common.hpp"

// Rate accounting for partitioned sequences. A sequence of l symbols split
// into k segments of lengths a_i, coded at R_i bits per symbol, costs
// T = sum a_i*R_i bits in total, giving the overall rate R = T/l, i.e. the
// size-weighted sum of the per-segment rates with weights w(a_i) = a_i/l.

namespace parc {

// Ordered positive segment lengths covering a sequence. k = 1 (no split) is
// legal so the unsplit sequence is always a candidate in optimization.
class Partition {
public:
  explicit Partition(std::vector<std::uint64_t> segment_lengths);
  static Partition unsplit(std::uint64_t total_length);

  const std::vector<std::uint64_t>& segment_lengths() const noexcept {
    return lengths_;
  }
  std::uint64_t total_length() const noexcept { return total_; }
  std::size_t segment_count() const noexcept { return lengths_.size(); }
  // The k+1 boundary offsets, starting at 0 and ending at total_length.
  std::vector<std::uint64_t> offsets() const;

  bool operator==(const Partition&) const = default;

private:
  std::vector<std::uint64_t> lengths_;
  std::uint64_t total_ = 0;
};

// Per-segment codec choice with its measured costs.
struct SegmentRate {
  std::uint64_t length = 0;
  CodecId codec = CodecId::RawFixed;
  double ideal_rate = 0.0;      // payload bits / length
  double accounted_rate = 0.0;  // (payload + model + segment header) / length
  double empirical_entropy = 0.0;
};

struct RateReport {
  double overall_rate = 0.0;  // bits per symbol in the active mode
  double total_bits = 0.0;
  // Size-weighted sum of per-segment empirical entropies. Reported, never
  // asserted against overall_rate: plug-in estimates and order-exploiting
  // codecs can fall below it. Absent when entropies are unknown (inspect).
  std::optional<double> lower_bound;
  double objective_square = 0.0;
  std::optional<double> objective_constrained;  // only when target_bits set
  std::optional<double> target_bits;
  std::vector<SegmentRate> per_segment;
};

// a_i / l. Rejects a_i = 0 and a_i > l.
double size_weight(std::uint64_t segment_length, std::uint64_t total_length);

// sum a_i * R_i. Rejects mismatched list lengths.
double total_bits(std::span<const std::uint64_t> segment_lengths,
                  std::span<const double> rates);

// sum (a_i/l) * R_i. Rejects sum a_i != l. Equals total_bits / l to within
// 1e-12 relative error.
double overall_rate(std::span<const std::uint64_t> segment_lengths,
                    std::span<const double> rates, std::uint64_t total_length);

// (overall rate)^2. Strictly monotone in the overall rate on nonnegative
// rates, so its argmin coincides with the rate's argmin.
double objective_square(std::span<const std::uint64_t> segment_lengths,
                        std::span<const double> rates,
                        std::uint64_t total_length);

// sum [ (w(a_i)*R_i)^2 + (target_bits - a_i*R_i)^2 ]. Rejects negative
// target_bits.
double objective_constrained(std::span<const std::uint64_t> segment_lengths,
                             std::span<const double> rates,
                             std::uint64_t total_length, double target_bits);

}  // namespace parc
