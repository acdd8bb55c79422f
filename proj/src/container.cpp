#include "parc/container.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <string>

namespace parc {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Single: return "single";
    case Strategy::Uniform: return "uniform";
    case Strategy::Entropic: return "entropic";
    case Strategy::Dp: return "dp";
    case Strategy::Constrained: return "constrained";
  }
  return "?";
}

namespace {

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

void put_u64le(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

class Parser {
public:
  explicit Parser(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint32_t u32le() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(data_[pos_ + i]) << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  std::uint64_t u64le() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    }
    pos_ += 8;
    return v;
  }
  std::span<const std::uint8_t> bytes(std::uint64_t n) {
    need(n);
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint64_t position() const noexcept { return pos_; }
  std::uint64_t remaining() const noexcept { return data_.size() - pos_; }

private:
  void need(std::uint64_t n) const {
    if (remaining() < n) {
      throw CorruptionError(Corruption::Truncated,
                            "need " + std::to_string(n) + " bytes at offset " +
                                std::to_string(pos_) + ", have " +
                                std::to_string(remaining()));
    }
  }
  std::span<const std::uint8_t> data_;
  std::uint64_t pos_ = 0;
};

struct ParsedSegment {
  std::uint64_t length = 0;
  CodecId codec = CodecId::RawFixed;
  std::span<const std::uint8_t> model;
  std::uint64_t payload_bits = 0;
  std::span<const std::uint8_t> payload;
};

struct ParsedArchive {
  std::uint64_t original_length = 0;
  std::uint32_t segment_count = 0;
  std::vector<ParsedSegment> segments;
};

ParsedArchive parse(std::span<const std::uint8_t> archive) {
  Parser p(archive);
  std::uint8_t magic[4];
  for (auto& m : magic) m = p.u8();
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw CorruptionError(Corruption::BadMagic, "not a parc archive");
  }
  std::uint8_t version = p.u8();
  if (version != kFormatVersion) {
    throw CorruptionError(Corruption::BadVersion,
                          "version " + std::to_string(version));
  }
  std::uint8_t flags = p.u8();
  if (flags != 0) {
    throw CorruptionError(Corruption::BadFlags,
                          "flags 0x" + std::to_string(flags));
  }

  ParsedArchive out;
  out.original_length = p.u64le();
  out.segment_count = p.u32le();
  if ((out.original_length == 0) != (out.segment_count == 0)) {
    throw CorruptionError(Corruption::SegmentSumMismatch,
                          "segment count inconsistent with empty input");
  }

  std::uint64_t sum = 0;
  for (std::uint32_t i = 0; i < out.segment_count; ++i) {
    ParsedSegment seg;
    seg.length = p.u64le();
    std::uint8_t codec = p.u8();
    std::uint32_t model_len = p.u32le();
    seg.payload_bits = p.u64le();
    if (seg.length == 0) {
      throw CorruptionError(Corruption::SegmentSumMismatch,
                            "zero-length segment entry");
    }
    if (codec >= kCodecCount) {
      throw CorruptionError(Corruption::BadCodecId, std::to_string(codec));
    }
    seg.codec = static_cast<CodecId>(codec);
    seg.model = p.bytes(model_len);
    seg.payload = p.bytes((seg.payload_bits + 7) / 8);
    sum += seg.length;
    out.segments.push_back(seg);
  }
  if (sum != out.original_length) {
    throw CorruptionError(Corruption::SegmentSumMismatch,
                          std::to_string(sum) + " vs " +
                              std::to_string(out.original_length));
  }
  if (p.remaining() != 0) {
    throw CorruptionError(Corruption::PayloadOverrun,
                          "trailing bytes after the last segment");
  }
  return out;
}

}  // namespace

CompressResult compress(std::span<const std::uint8_t> input,
                        const CompressOptions& options) {
  CompressResult result;
  result.plan.mode = options.optimizer.mode;

  if (input.empty()) {
    result.archive.reserve(kArchiveHeaderBytes);
    result.archive.insert(result.archive.end(), kMagic, kMagic + 4);
    result.archive.push_back(kFormatVersion);
    result.archive.push_back(0);
    put_u64le(result.archive, 0);
    put_u32le(result.archive, 0);
    return result;
  }

  OptimizerConfig cfg = options.optimizer;
  cfg.profile_window = options.window;
  cfg.profile_low = options.low_threshold;
  cfg.profile_high = options.high_threshold;
  switch (options.candidates) {
    case CompressOptions::CandidatePolicy::All:
      cfg.boundary_candidates = OptimizerConfig::Candidates::All;
      break;
    case CompressOptions::CandidatePolicy::ProfileGuided:
      cfg.boundary_candidates = OptimizerConfig::Candidates::ProfileGuided;
      break;
    case CompressOptions::CandidatePolicy::Auto:
      cfg.boundary_candidates = input.size() <= options.auto_candidate_limit
                                    ? OptimizerConfig::Candidates::All
                                    : OptimizerConfig::Candidates::ProfileGuided;
      break;
  }
  // Inputs shorter than the configured floor still get the one-segment plan.
  cfg.min_segment_length = std::min<std::uint64_t>(
      std::max<std::uint64_t>(cfg.min_segment_length, 1), input.size());

  PartitionPlan plan;
  switch (options.strategy) {
    case Strategy::Dp: {
      plan = optimize_dp(input, cfg);
      break;
    }
    case Strategy::Constrained: {
      plan = optimize_constrained(input, cfg);
      break;
    }
    case Strategy::Single:
    case Strategy::Uniform:
    case Strategy::Entropic: {
      Partition partition = [&] {
        if (options.strategy == Strategy::Single) {
          return Partition::unsplit(input.size());
        }
        if (options.strategy == Strategy::Uniform) {
          return uniform_partition(input.size(), options.block);
        }
        return entropic_partition(input,
                                  std::min<std::uint64_t>(
                                      std::max<std::uint64_t>(options.window, 1),
                                      input.size()),
                                  options.low_threshold,
                                  options.high_threshold);
      }();
      std::vector<CodecId> choices;
      std::uint64_t offset = 0;
      for (std::uint64_t len : partition.segment_lengths()) {
        auto [codec, rate] = best_codec(input.subspan(offset, len),
                                        cfg.allowed_codecs, cfg.mode);
        choices.push_back(codec);
        offset += len;
      }
      plan.partition = partition;
      plan.mode = cfg.mode;
      plan.report = evaluate_plan(input, partition, choices, cfg.mode,
                                  cfg.target_bits);
      plan.codec_choices = std::move(choices);
      break;
    }
  }

  // Serialize. Codec ids are re-read from the encoded segments so Huffman
  // fallbacks land in the archive as what they really are.
  std::vector<std::uint8_t>& out = result.archive;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kFormatVersion);
  out.push_back(0);
  put_u64le(out, input.size());
  put_u32le(out, static_cast<std::uint32_t>(plan.partition.segment_count()));

  std::uint64_t offset = 0;
  std::vector<CodecId> realized;
  for (std::size_t i = 0; i < plan.partition.segment_count(); ++i) {
    std::uint64_t len = plan.partition.segment_lengths()[i];
    EncodedSegment enc =
        encode_segment(input.subspan(offset, len), plan.codec_choices[i]);
    realized.push_back(enc.codec);
    put_u64le(out, len);
    out.push_back(static_cast<std::uint8_t>(enc.codec));
    put_u32le(out, static_cast<std::uint32_t>(enc.model.size()));
    put_u64le(out, enc.payload_bit_length);
    out.insert(out.end(), enc.model.begin(), enc.model.end());
    out.insert(out.end(), enc.payload.begin(), enc.payload.end());
    offset += len;
  }
  plan.codec_choices = std::move(realized);
  result.plan = std::move(plan);
  return result;
}

std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> archive) {
  ParsedArchive parsed = parse(archive);
  std::vector<std::uint8_t> out;
  out.reserve(parsed.original_length);
  for (const ParsedSegment& seg : parsed.segments) {
    EncodedSegment enc;
    enc.codec = seg.codec;
    enc.model.assign(seg.model.begin(), seg.model.end());
    enc.payload_bit_length = seg.payload_bits;
    enc.payload.assign(seg.payload.begin(), seg.payload.end());
    enc.original_length = seg.length;
    std::vector<std::uint8_t> decoded = decode_segment(enc);
    out.insert(out.end(), decoded.begin(), decoded.end());
  }
  return out;
}

InspectResult inspect(std::span<const std::uint8_t> archive) {
  ParsedArchive parsed = parse(archive);
  InspectResult result;
  result.original_length = parsed.original_length;
  result.segment_count = parsed.segment_count;
  if (parsed.segment_count == 0) return result;

  std::vector<std::uint64_t> lengths;
  std::vector<double> rates;
  std::uint64_t offset = 0;
  for (const ParsedSegment& seg : parsed.segments) {
    InspectEntry entry;
    entry.offset = offset;
    entry.length = seg.length;
    entry.codec = seg.codec;
    entry.model_bytes = static_cast<std::uint32_t>(seg.model.size());
    entry.payload_bits = seg.payload_bits;
    entry.weight = size_weight(seg.length, parsed.original_length);
    std::uint64_t accounted = seg.payload_bits + 8 * seg.model.size() +
                              8 * kSegmentHeaderBytes;
    entry.accounted_rate =
        static_cast<double>(accounted) / static_cast<double>(seg.length);
    result.entries.push_back(entry);

    SegmentRate sr;
    sr.length = seg.length;
    sr.codec = seg.codec;
    sr.ideal_rate = static_cast<double>(seg.payload_bits) /
                    static_cast<double>(seg.length);
    sr.accounted_rate = entry.accounted_rate;
    sr.empirical_entropy = 0.0;  // unknown without decoding
    result.report.per_segment.push_back(sr);

    lengths.push_back(seg.length);
    rates.push_back(entry.accounted_rate);
    offset += seg.length;
  }
  result.report.overall_rate =
      overall_rate(lengths, rates, parsed.original_length);
  result.report.total_bits = total_bits(lengths, rates);
  result.report.objective_square =
      result.report.overall_rate * result.report.overall_rate;
  return result;
}

}  // namespace parc
