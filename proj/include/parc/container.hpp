#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "parc/partition.hpp"

// The archive format. All integers are little-endian, fixed width; payload
// bits are packed MSB-first and zero-padded to a byte boundary.
//
//   header   (18 bytes)
//     magic             4 bytes  "PARC"
//     version           1 byte   0x01
//     flags             1 byte   reserved, must be 0
//     original_length   8 bytes  unsigned LE
//     segment_count     4 bytes  unsigned LE (0 iff original_length = 0)
//   per segment, in order
//     segment_length    8 bytes  unsigned LE
//     codec_id          1 byte
//     model_byte_length 4 bytes  unsigned LE
//     payload_bit_length 8 bytes unsigned LE
//     model             model_byte_length bytes
//     payload           ceil(payload_bit_length / 8) bytes

namespace parc {

inline constexpr std::uint8_t kMagic[4] = {0x50, 0x41, 0x52, 0x43};  // "PARC"
inline constexpr std::uint8_t kFormatVersion = 0x01;
inline constexpr std::uint64_t kArchiveHeaderBytes = 18;
// 8 + 1 + 4 + 8; accounted rates charge this per segment.
static_assert(kSegmentHeaderBytes == 21);

enum class Strategy { Single, Uniform, Entropic, Dp, Constrained };

const char* to_string(Strategy s);

struct CompressOptions {
  Strategy strategy = Strategy::Dp;
  OptimizerConfig optimizer;  // codecs, mode, min/max segments, target bits

  std::uint64_t block = 4096;   // uniform strategy
  std::uint64_t window = 4096;  // entropic strategy + profile candidates
  double low_threshold = 2.0;
  double high_threshold = 6.0;

  // All-candidates DP is O(l^2); above this input size the dp/constrained
  // strategies switch to profile-guided candidates unless the caller forced
  // a candidate mode.
  enum class CandidatePolicy { Auto, All, ProfileGuided };
  CandidatePolicy candidates = CandidatePolicy::Auto;
  std::uint64_t auto_candidate_limit = 4096;
};

struct CompressResult {
  std::vector<std::uint8_t> archive;
  PartitionPlan plan;
};

// Empty input yields a header-only archive. The archive parses back to the
// same plan; identical input and options give a byte-identical archive.
CompressResult compress(std::span<const std::uint8_t> input,
                        const CompressOptions& options);

// Bit-exact inverse. Throws CorruptionError (bad magic, unsupported version,
// truncation, segment-sum mismatch, per-segment corruption).
std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> archive);

// Segment table and realized rates without decoding payloads. Per-segment
// empirical entropies are unknowable here, so report.lower_bound is absent
// and empirical_entropy fields are 0.
struct InspectEntry {
  std::uint64_t offset = 0;
  std::uint64_t length = 0;
  CodecId codec = CodecId::RawFixed;
  std::uint32_t model_bytes = 0;
  std::uint64_t payload_bits = 0;
  double weight = 0.0;
  double accounted_rate = 0.0;
};
struct InspectResult {
  std::uint64_t original_length = 0;
  std::uint32_t segment_count = 0;
  std::vector<InspectEntry> entries;
  RateReport report;  // accounted mode
};
InspectResult inspect(std::span<const std::uint8_t> archive);

}  // namespace parc
