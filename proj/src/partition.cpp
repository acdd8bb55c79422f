#include "parc/partition.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "parc/huffman.hpp"
#include "parc/lzw.hpp"

namespace parc {

namespace {

// Per-segment codec costs while the segment grows one byte to the right.
// Keeps the histogram, the nonzero counts sorted descending (an increment
// only bubbles the changed entry a few slots), and an LZW encoder whose
// emitted-bits-so-far gives the cost of ending the segment at any point.
// Must agree bit-for-bit with encode_segment; tests enforce that.
class SegmentCoster {
public:
  SegmentCoster(CodecSet codecs, RateMode mode)
      : codecs_(codecs), mode_(mode) {
    if (codecs_.contains(CodecId::Lzw)) lzw_.emplace();
    sorted_.reserve(64);
    symbol_at_.reserve(64);
  }

  void extend(std::uint8_t byte) {
    ++length_;
    std::uint32_t c = ++counts_[byte];
    if (c == 1) {
      // A new symbol has the minimum count; descending order keeps it last.
      slot_of_[byte] = static_cast<std::uint16_t>(sorted_.size());
      sorted_.push_back(1);
      symbol_at_.push_back(byte);
      ++alphabet_size_;
    } else {
      int i = slot_of_[byte];
      sorted_[i] = c;
      while (i > 0 && sorted_[i - 1] < sorted_[i]) {
        std::swap(sorted_[i - 1], sorted_[i]);
        std::swap(slot_of_[symbol_at_[i - 1]], slot_of_[symbol_at_[i]]);
        std::swap(symbol_at_[i - 1], symbol_at_[i]);
        --i;
      }
    }
    if (lzw_) lzw_->push(byte);
  }

  std::uint64_t length() const noexcept { return length_; }

  struct Entry {
    CodecId realized = CodecId::RawFixed;
    std::uint64_t bits = 0;
  };
  struct Costs {
    std::array<Entry, kCodecCount> entry;
    int n = 0;
  };

  // Cost (in cfg mode bits) of each allowed codec, in codec-id order, with
  // the Huffman depth fallback already applied to both the bits and the id.
  Costs costs() const {
    Costs out;
    if (codecs_.contains(CodecId::RawFixed)) {
      out.entry[out.n++] = from_cost(raw_fixed_cost(alphabet_size_, length_));
    }
    if (codecs_.contains(CodecId::Huffman)) {
      out.entry[out.n++] =
          from_cost(huffman_cost(sorted_, alphabet_size_, length_));
    }
    if (codecs_.contains(CodecId::Lzw)) {
      CodecCost cc;
      cc.payload_bits = lzw_->bits_if_ended();
      cc.model_bytes = 0;
      cc.realized = CodecId::Lzw;
      out.entry[out.n++] = from_cost(cc);
    }
    return out;
  }

  // Minimum-bit codec; ties break to the lowest realized id.
  Entry best() const {
    Costs all = costs();
    Entry best = all.entry[0];
    for (int i = 1; i < all.n; ++i) {
      const Entry& e = all.entry[i];
      if (e.bits < best.bits ||
          (e.bits == best.bits && e.realized < best.realized)) {
        best = e;
      }
    }
    return best;
  }

private:
  Entry from_cost(const CodecCost& cc) const {
    std::uint64_t bits = cc.payload_bits;
    if (mode_ == RateMode::Accounted) {
      bits += 8 * cc.model_bytes + 8 * kSegmentHeaderBytes;
    }
    return Entry{cc.realized, bits};
  }

  CodecSet codecs_;
  RateMode mode_;
  std::uint64_t length_ = 0;
  kernels::Histogram counts_{};
  std::vector<std::uint32_t> sorted_;  // nonzero counts, descending
  std::array<std::uint16_t, 256> slot_of_{};
  std::vector<std::uint8_t> symbol_at_;
  int alphabet_size_ = 0;
  std::optional<lzw::PrefixEncoder> lzw_;
};

// Objectives the split-point DP can minimize. Both are additive over
// segments, which is what keeps the DP exact.
struct BitsObjective {
  using Cost = std::uint64_t;
  static constexpr Cost kInf = std::numeric_limits<Cost>::max();
  Cost segment_cost(const SegmentCoster& coster) const {
    return coster.best().bits;
  }
};

struct ConstrainedObjective {
  using Cost = double;
  static constexpr Cost kInf = std::numeric_limits<Cost>::infinity();
  double total_length;
  double target;

  // With b total segment bits, w*R = b/l and a*R = b, so the per-segment
  // term is (b/l)^2 + (C-b)^2. It is not monotone in b: a codec overshooting
  // the target can lose to a cheaper one, so every codec is tried.
  double term(std::uint64_t bits) const {
    double b = static_cast<double>(bits);
    double weighted = b / total_length;
    double miss = target - b;
    return weighted * weighted + miss * miss;
  }
  Cost segment_cost(const SegmentCoster& coster) const {
    SegmentCoster::Costs all = coster.costs();
    double best = term(all.entry[0].bits);
    for (int i = 1; i < all.n; ++i) {
      best = std::min(best, term(all.entry[i].bits));
    }
    return best;
  }
};

void validate_config(std::span<const std::uint8_t> bytes,
                     const OptimizerConfig& cfg) {
  if (bytes.empty()) {
    throw std::invalid_argument("optimizer: empty sequence");
  }
  if (cfg.allowed_codecs.empty()) {
    throw std::invalid_argument("optimizer: empty codec set");
  }
  if (cfg.min_segment_length == 0) {
    throw std::invalid_argument("optimizer: min segment length must be >= 1");
  }
  if (cfg.min_segment_length > bytes.size()) {
    throw std::invalid_argument("optimizer: min segment length " +
                                std::to_string(cfg.min_segment_length) +
                                " exceeds sequence length " +
                                std::to_string(bytes.size()));
  }
  if (cfg.max_segments && *cfg.max_segments == 0) {
    throw std::invalid_argument("optimizer: max segments must be >= 1");
  }
}

std::vector<std::uint64_t> all_candidates(std::uint64_t total_length) {
  std::vector<std::uint64_t> cands(total_length + 1);
  for (std::uint64_t i = 0; i <= total_length; ++i) cands[i] = i;
  return cands;
}

std::vector<std::uint64_t> candidate_positions(
    std::span<const std::uint8_t> bytes, const OptimizerConfig& cfg) {
  if (cfg.boundary_candidates == OptimizerConfig::Candidates::All) {
    return all_candidates(bytes.size());
  }
  return profile_guided_candidates(bytes, cfg);
}

// Reconstructed plan skeleton: boundary positions plus per-segment codecs.
struct DpPath {
  std::vector<std::uint64_t> boundaries;  // 0 = first, back() = l
};

template <class Objective>
DpPath run_dp(std::span<const std::uint8_t> bytes, const OptimizerConfig& cfg,
              const std::vector<std::uint64_t>& cands, const Objective& obj) {
  using Cost = typename Objective::Cost;
  const std::uint64_t l = bytes.size();
  const std::size_t n = cands.size();
  const std::uint64_t min_seg = cfg.min_segment_length;

  struct State {
    Cost cost;
    std::uint32_t segs;
    std::int32_t prev;
  };
  const State unreached{Objective::kInf, 0, -1};

  // Layered by segment count only when a cap is requested.
  const bool layered = cfg.max_segments.has_value();
  const std::uint32_t max_k =
      layered ? std::min<std::uint32_t>(*cfg.max_segments,
                                        static_cast<std::uint32_t>(n - 1))
              : 0;

  std::vector<State> flat;
  std::vector<std::vector<State>> layers;
  if (layered) {
    layers.assign(n, std::vector<State>(max_k + 1, unreached));
    layers[0][0] = State{Cost{}, 0, -1};
  } else {
    flat.assign(n, unreached);
    flat[0] = State{Cost{}, 0, -1};
  }

  auto reachable = [&](std::size_t si) {
    if (layered) {
      for (std::uint32_t k = 0; k < max_k; ++k) {
        if (layers[si][k].prev != -1 || (si == 0 && k == 0)) return true;
      }
      return false;
    }
    return flat[si].prev != -1 || si == 0;
  };

  for (std::size_t si = 0; si + 1 < n; ++si) {
    if (!reachable(si)) continue;
    SegmentCoster coster(cfg.allowed_codecs, cfg.mode);
    const std::uint64_t start = cands[si];
    std::size_t next_cand = si + 1;
    for (std::uint64_t pos = start; pos < l; ++pos) {
      coster.extend(bytes[pos]);
      const std::uint64_t end = pos + 1;
      if (next_cand >= n || cands[next_cand] != end) continue;
      const std::size_t ei = next_cand++;
      if (end - start < min_seg) continue;
      const Cost seg = obj.segment_cost(coster);
      if (layered) {
        for (std::uint32_t k = 0; k < max_k; ++k) {
          const State& from = layers[si][k];
          if (from.prev == -1 && !(si == 0 && k == 0)) continue;
          State& to = layers[ei][k + 1];
          Cost cost = from.cost + seg;
          if (to.prev == -1 || cost < to.cost) {
            to = State{cost, k + 1, static_cast<std::int32_t>(si)};
          }
        }
      } else {
        const State& from = flat[si];
        State& to = flat[ei];
        Cost cost = from.cost + seg;
        std::uint32_t segs = from.segs + 1;
        if (to.prev == -1 || cost < to.cost ||
            (cost == to.cost && segs < to.segs)) {
          to = State{cost, segs, static_cast<std::int32_t>(si)};
        }
      }
    }
  }

  // Walk back from the full-sequence node.
  std::vector<std::uint64_t> rev;
  std::size_t node = n - 1;
  if (layered) {
    std::uint32_t best_k = 0;
    for (std::uint32_t k = 1; k <= max_k; ++k) {
      if (layers[node][k].prev == -1) continue;
      if (best_k == 0 || layers[node][k].cost < layers[node][best_k].cost) {
        best_k = k;
      }
    }
    if (best_k == 0) {
      throw std::invalid_argument(
          "optimizer: no partition satisfies the segment constraints");
    }
    std::uint32_t k = best_k;
    while (node != 0) {
      rev.push_back(cands[node]);
      node = static_cast<std::size_t>(layers[node][k].prev);
      --k;
    }
  } else {
    if (flat[node].prev == -1) {
      throw std::invalid_argument(
          "optimizer: no partition satisfies the segment constraints");
    }
    while (node != 0) {
      rev.push_back(cands[node]);
      node = static_cast<std::size_t>(flat[node].prev);
    }
  }
  rev.push_back(0);

  DpPath path;
  path.boundaries.assign(rev.rbegin(), rev.rend());
  return path;
}

// The codec the DP charged for a segment; Huffman fallbacks surface as
// RAW_FIXED so the plan matches the archive byte-for-byte.
CodecId choose_codec(std::span<const std::uint8_t> segment,
                     const OptimizerConfig& cfg, bool constrained,
                     double total_length) {
  SegmentCoster coster(cfg.allowed_codecs, cfg.mode);
  for (std::uint8_t b : segment) coster.extend(b);
  if (!constrained) return coster.best().realized;

  ConstrainedObjective obj{total_length, *cfg.target_bits};
  SegmentCoster::Costs all = coster.costs();
  CodecId best = all.entry[0].realized;
  double best_term = obj.term(all.entry[0].bits);
  for (int i = 1; i < all.n; ++i) {
    double t = obj.term(all.entry[i].bits);
    if (t < best_term ||
        (t == best_term && all.entry[i].realized < best)) {
      best = all.entry[i].realized;
      best_term = t;
    }
  }
  return best;
}

PartitionPlan plan_from_path(std::span<const std::uint8_t> bytes,
                             const OptimizerConfig& cfg, const DpPath& path,
                             bool constrained) {
  std::vector<std::uint64_t> lengths;
  std::vector<CodecId> choices;
  for (std::size_t i = 0; i + 1 < path.boundaries.size(); ++i) {
    std::uint64_t begin = path.boundaries[i];
    std::uint64_t end = path.boundaries[i + 1];
    lengths.push_back(end - begin);
    choices.push_back(choose_codec(bytes.subspan(begin, end - begin), cfg,
                                   constrained,
                                   static_cast<double>(bytes.size())));
  }
  PartitionPlan plan;
  plan.partition = Partition(std::move(lengths));
  plan.mode = cfg.mode;
  plan.report = evaluate_plan(bytes, plan.partition, choices, cfg.mode,
                              constrained ? cfg.target_bits : std::nullopt);
  plan.codec_choices = std::move(choices);
  return plan;
}

}  // namespace

Partition uniform_partition(std::uint64_t total_length, std::uint64_t block) {
  if (block == 0) throw std::invalid_argument("uniform_partition: zero block");
  if (total_length == 0) {
    throw std::invalid_argument("uniform_partition: empty sequence");
  }
  std::vector<std::uint64_t> lengths(total_length / block, block);
  if (total_length % block != 0) lengths.push_back(total_length % block);
  return Partition(std::move(lengths));
}

Partition entropic_partition(std::span<const std::uint8_t> bytes,
                             std::uint64_t window, double low_threshold,
                             double high_threshold) {
  if (low_threshold < 0.0 || low_threshold > high_threshold) {
    throw std::invalid_argument(
        "entropic_partition: thresholds must satisfy 0 <= low <= high");
  }
  EntropyProfile profile = entropy_profile(bytes, window, window);

  enum class Class { Low, Mid, High };
  auto classify = [&](double h) {
    if (h <= low_threshold) return Class::Low;
    if (h >= high_threshold) return Class::High;
    return Class::Mid;
  };

  std::vector<std::uint64_t> lengths;
  std::size_t i = 0;
  while (i < profile.values.size()) {
    Class cls = classify(profile.values[i].entropy);
    std::size_t run = 1;
    while (i + run < profile.values.size() &&
           classify(profile.values[i + run].entropy) == cls) {
      ++run;
    }
    if (cls == Class::High) {
      // High-entropy data gains nothing from long segments; keep them at
      // window granularity.
      lengths.insert(lengths.end(), run, window);
    } else if (cls == Class::Low) {
      std::size_t remaining = run;
      while (remaining > kLowClassCapWindows) {
        lengths.push_back(kLowClassCapWindows * window);
        remaining -= kLowClassCapWindows;
      }
      if (remaining > 0) lengths.push_back(remaining * window);
    } else {
      lengths.push_back(run * window);
    }
    i += run;
  }
  // Symbols past the last full window join the final segment.
  std::uint64_t covered = profile.values.size() * window;
  lengths.back() += bytes.size() - covered;
  return Partition(std::move(lengths));
}

std::vector<std::uint64_t> profile_guided_candidates(
    std::span<const std::uint8_t> bytes, const OptimizerConfig& cfg) {
  const std::uint64_t l = bytes.size();
  std::uint64_t window = std::max<std::uint64_t>(1, cfg.profile_window);
  window = std::min(window, l);
  // Class changes land on window boundaries, so the window grid plus both
  // endpoints covers every boundary the profile can motivate.
  std::vector<std::uint64_t> cands;
  for (std::uint64_t pos = 0; pos < l; pos += window) cands.push_back(pos);
  cands.push_back(l);
  return cands;
}

PartitionPlan optimize_dp(std::span<const std::uint8_t> bytes,
                          const OptimizerConfig& cfg) {
  validate_config(bytes, cfg);
  if (cfg.target_bits) {
    throw std::invalid_argument(
        "optimize_dp: target_bits set; use optimize_constrained");
  }
  auto cands = candidate_positions(bytes, cfg);
  DpPath path = run_dp(bytes, cfg, cands, BitsObjective{});
  return plan_from_path(bytes, cfg, path, /*constrained=*/false);
}

PartitionPlan optimize_constrained(std::span<const std::uint8_t> bytes,
                                   const OptimizerConfig& cfg) {
  validate_config(bytes, cfg);
  if (!cfg.target_bits || *cfg.target_bits <= 0.0) {
    throw std::invalid_argument(
        "optimize_constrained: requires target_bits > 0");
  }
  auto cands = candidate_positions(bytes, cfg);
  ConstrainedObjective obj{static_cast<double>(bytes.size()),
                           *cfg.target_bits};
  DpPath path = run_dp(bytes, cfg, cands, obj);
  return plan_from_path(bytes, cfg, path, /*constrained=*/true);
}

PartitionPlan brute_force_oracle(std::span<const std::uint8_t> bytes,
                                 const OptimizerConfig& cfg) {
  validate_config(bytes, cfg);
  if (bytes.size() > kOracleMaxLength) {
    throw std::invalid_argument("brute_force_oracle: sequence longer than " +
                                std::to_string(kOracleMaxLength));
  }
  const bool constrained = cfg.target_bits.has_value();
  if (constrained && *cfg.target_bits <= 0.0) {
    throw std::invalid_argument("brute_force_oracle: target_bits must be > 0");
  }
  const std::uint64_t l = bytes.size();

  // Independent route from the DP: costs come from the real encoders.
  std::array<std::optional<std::uint64_t>,
             (kOracleMaxLength + 1) * (kOracleMaxLength + 1) * kCodecCount>
      memo;
  auto segment_bits = [&](std::uint64_t b, std::uint64_t e,
                          CodecId id) -> std::uint64_t {
    auto& slot = memo[(b * (kOracleMaxLength + 1) + e) * kCodecCount +
                      static_cast<std::size_t>(id)];
    if (!slot) {
      EncodedSegment enc = encode_segment(bytes.subspan(b, e - b), id);
      slot = cfg.mode == RateMode::Ideal ? enc.ideal_bits()
                                         : enc.accounted_bits();
    }
    return *slot;
  };
  auto segment_cost = [&](std::uint64_t b, std::uint64_t e) -> double {
    double best = std::numeric_limits<double>::infinity();
    for (CodecId id : {CodecId::RawFixed, CodecId::Huffman, CodecId::Lzw}) {
      if (!cfg.allowed_codecs.contains(id)) continue;
      std::uint64_t bits = segment_bits(b, e, id);
      double cost;
      if (constrained) {
        double weighted = static_cast<double>(bits) / static_cast<double>(l);
        double miss = *cfg.target_bits - static_cast<double>(bits);
        cost = weighted * weighted + miss * miss;
      } else {
        cost = static_cast<double>(bits);
      }
      best = std::min(best, cost);
    }
    return best;
  };

  // Plans are ordered by (cost, segment count, boundaries compared from the
  // last one backwards) to mirror the DP's tie-breaking.
  std::vector<std::uint64_t> best_bounds;
  double best_cost = 0.0;
  bool have = false;
  auto better = [&](double cost, const std::vector<std::uint64_t>& bounds) {
    if (!have) return true;
    if (cost != best_cost) return cost < best_cost;
    if (bounds.size() != best_bounds.size()) {
      return bounds.size() < best_bounds.size();
    }
    for (std::size_t i = bounds.size(); i-- > 1;) {
      if (bounds[i - 1] != best_bounds[i - 1]) {
        return bounds[i - 1] < best_bounds[i - 1];
      }
    }
    return false;
  };

  std::vector<std::uint64_t> bounds;
  const std::uint64_t masks = l >= 1 ? (1ull << (l - 1)) : 1;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    bounds.clear();
    bounds.push_back(0);
    for (std::uint64_t b = 0; b + 1 < l; ++b) {
      if ((mask >> b) & 1ull) bounds.push_back(b + 1);
    }
    bounds.push_back(l);

    std::size_t k = bounds.size() - 1;
    if (cfg.max_segments && k > *cfg.max_segments) continue;
    bool ok = true;
    double cost = 0.0;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
      if (bounds[i + 1] - bounds[i] < cfg.min_segment_length) {
        ok = false;
        break;
      }
      cost += segment_cost(bounds[i], bounds[i + 1]);
    }
    if (!ok) continue;
    if (better(cost, bounds)) {
      have = true;
      best_cost = cost;
      best_bounds = bounds;
    }
  }
  if (!have) {
    throw std::invalid_argument(
        "brute_force_oracle: no partition satisfies the constraints");
  }

  DpPath path;
  path.boundaries = std::move(best_bounds);
  return plan_from_path(bytes, cfg, path, constrained);
}

RateReport evaluate_plan(std::span<const std::uint8_t> bytes,
                         const Partition& partition,
                         std::span<const CodecId> codec_choices, RateMode mode,
                         std::optional<double> target_bits) {
  if (partition.total_length() != bytes.size()) {
    throw std::invalid_argument("evaluate_plan: partition covers " +
                                std::to_string(partition.total_length()) +
                                " of " + std::to_string(bytes.size()) +
                                " symbols");
  }
  if (codec_choices.size() != partition.segment_count()) {
    throw std::invalid_argument(
        "evaluate_plan: codec choices misaligned with partition");
  }

  RateReport report;
  report.target_bits = target_bits;

  const auto& lengths = partition.segment_lengths();
  std::vector<double> rates(lengths.size());
  std::vector<double> entropies(lengths.size());
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    auto segment = bytes.subspan(offset, lengths[i]);
    EncodedSegment enc = encode_segment(segment, codec_choices[i]);
    SegmentRate sr;
    sr.length = lengths[i];
    sr.codec = enc.codec;
    sr.ideal_rate = static_cast<double>(enc.ideal_bits()) /
                    static_cast<double>(lengths[i]);
    sr.accounted_rate = static_cast<double>(enc.accounted_bits()) /
                        static_cast<double>(lengths[i]);
    sr.empirical_entropy = empirical_entropy(segment);
    report.per_segment.push_back(sr);
    rates[i] = mode == RateMode::Ideal ? sr.ideal_rate : sr.accounted_rate;
    entropies[i] = sr.empirical_entropy;
    offset += lengths[i];
  }

  report.overall_rate = overall_rate(lengths, rates, bytes.size());
  report.total_bits = total_bits(lengths, rates);
  report.lower_bound = rate_lower_bound(partition, entropies);
  report.objective_square = report.overall_rate * report.overall_rate;
  if (target_bits) {
    report.objective_constrained =
        objective_constrained(lengths, rates, bytes.size(), *target_bits);
  }
  return report;
}

}  // namespace parc
