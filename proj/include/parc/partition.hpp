#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "parc/codec.hpp"
#include "parc/entropy.hpp"
#include "parc/rate.hpp"

// Partition strategies: uniform blocking, the entropic heuristic (short
// segments where local entropy is high, long ones where it is low), an exact
// dynamic program minimizing total coded bits over split points with
// per-segment codec choice, the constrained variant with a per-segment
// target bit budget, and an exhaustive oracle for small inputs.

namespace parc {

struct OptimizerConfig {
  CodecSet allowed_codecs = CodecSet::all();
  // Accounted is the default: header and model bits are the natural
  // regularizer; in ideal mode the optimum degenerates toward many tiny
  // segments.
  RateMode mode = RateMode::Accounted;
  std::uint64_t min_segment_length = 1;
  std::optional<std::uint32_t> max_segments;  // nullopt = unlimited

  enum class Candidates { All, ProfileGuided };
  Candidates boundary_candidates = Candidates::All;
  // Profile-guided candidates: entropy-profile class-change offsets plus a
  // uniform fallback every window.
  std::uint64_t profile_window = 4096;
  double profile_low = 2.0;
  double profile_high = 6.0;

  std::optional<double> target_bits;  // per-segment bit budget C
};

// A partition with its codec assignment and the rates it realizes.
struct PartitionPlan {
  Partition partition{std::vector<std::uint64_t>{}};
  std::vector<CodecId> codec_choices;
  RateMode mode = RateMode::Accounted;
  RateReport report;
};

// Blocks of the given length; the remainder, when any, forms the final
// shorter segment. Rejects block = 0.
Partition uniform_partition(std::uint64_t total_length, std::uint64_t block);

// Windows are classified low (entropy <= low_threshold), high
// (>= high_threshold) or mid, maximal same-class runs merge into segments,
// then high segments split back to window-sized pieces and low segments are
// capped at kLowClassCapWindows windows. Tail symbols shorter than a window
// join the final segment.
inline constexpr std::uint64_t kLowClassCapWindows = 64;
Partition entropic_partition(std::span<const std::uint8_t> bytes,
                             std::uint64_t window, double low_threshold,
                             double high_threshold);

// Exact DP over split points: minimizes total coded bits (equivalently the
// overall rate and its square) with each segment assigned its best codec.
// Ties break toward fewer segments, then toward the earlier final split
// point (recursively). cfg.target_bits must be absent.
PartitionPlan optimize_dp(std::span<const std::uint8_t> bytes,
                          const OptimizerConfig& cfg);

// Same search space, minimizing sum [(w_i R_i)^2 + (C - a_i R_i)^2].
// Requires cfg.target_bits > 0.
PartitionPlan optimize_constrained(std::span<const std::uint8_t> bytes,
                                   const OptimizerConfig& cfg);

// Enumerates all 2^(l-1) partitions with the same objective and tie-breaking
// as the DPs. Guarded to l <= kOracleMaxLength.
inline constexpr std::uint64_t kOracleMaxLength = 16;
PartitionPlan brute_force_oracle(std::span<const std::uint8_t> bytes,
                                 const OptimizerConfig& cfg);

// Encodes every segment with its chosen codec and fills a full RateReport
// (rates in both modes, per-segment empirical entropies, the entropy lower
// bound, and the objectives).
RateReport evaluate_plan(std::span<const std::uint8_t> bytes,
                         const Partition& partition,
                         std::span<const CodecId> codec_choices, RateMode mode,
                         std::optional<double> target_bits = std::nullopt);

// Boundary candidates the profile-guided mode would use (exposed for tests
// and the CLI).
std::vector<std::uint64_t> profile_guided_candidates(
    std::span<const std::uint8_t> bytes, const OptimizerConfig& cfg);

}  // namespace parc
