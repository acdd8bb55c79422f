#include "parc/rate.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "parc/kernels.hpp"

namespace parc {

Partition::Partition(std::vector<std::uint64_t> segment_lengths)
    : lengths_(std::move(segment_lengths)) {
  for (std::uint64_t a : lengths_) {
    if (a == 0) throw std::invalid_argument("partition: zero-length segment");
    total_ += a;
  }
}

Partition Partition::unsplit(std::uint64_t total_length) {
  if (total_length == 0) {
    throw std::invalid_argument("partition: empty sequence has no unsplit form");
  }
  return Partition({total_length});
}

std::vector<std::uint64_t> Partition::offsets() const {
  std::vector<std::uint64_t> out;
  out.reserve(lengths_.size() + 1);
  std::uint64_t pos = 0;
  out.push_back(0);
  for (std::uint64_t a : lengths_) out.push_back(pos += a);
  return out;
}

double size_weight(std::uint64_t segment_length, std::uint64_t total_length) {
  if (segment_length == 0) {
    throw std::invalid_argument("size_weight: zero segment length");
  }
  if (segment_length > total_length) {
    throw std::invalid_argument("size_weight: segment exceeds total length");
  }
  return static_cast<double>(segment_length) /
         static_cast<double>(total_length);
}

namespace {

void check_aligned(std::span<const std::uint64_t> lengths,
                   std::span<const double> rates) {
  if (lengths.size() != rates.size()) {
    throw std::invalid_argument("rate lists misaligned: " +
                                std::to_string(lengths.size()) + " lengths vs " +
                                std::to_string(rates.size()) + " rates");
  }
}

std::uint64_t checked_total(std::span<const std::uint64_t> lengths,
                            std::uint64_t total_length) {
  std::uint64_t sum = 0;
  for (std::uint64_t a : lengths) sum += a;
  if (sum != total_length) {
    throw std::invalid_argument("segment lengths sum to " +
                                std::to_string(sum) + ", expected " +
                                std::to_string(total_length));
  }
  if (total_length == 0) {
    throw std::invalid_argument("total length must be positive");
  }
  return sum;
}

}  // namespace

double total_bits(std::span<const std::uint64_t> segment_lengths,
                  std::span<const double> rates) {
  check_aligned(segment_lengths, rates);
  double bits = 0.0;
  for (std::size_t i = 0; i < segment_lengths.size(); ++i) {
    if (segment_lengths[i] == 0) {
      throw std::invalid_argument("total_bits: zero segment length");
    }
    bits += static_cast<double>(segment_lengths[i]) * rates[i];
  }
  return bits;
}

double overall_rate(std::span<const std::uint64_t> segment_lengths,
                    std::span<const double> rates,
                    std::uint64_t total_length) {
  check_aligned(segment_lengths, rates);
  checked_total(segment_lengths, total_length);
  double rate = 0.0;
  for (std::size_t i = 0; i < segment_lengths.size(); ++i) {
    rate += size_weight(segment_lengths[i], total_length) * rates[i];
  }
  return rate;
}

double objective_square(std::span<const std::uint64_t> segment_lengths,
                        std::span<const double> rates,
                        std::uint64_t total_length) {
  double rate = overall_rate(segment_lengths, rates, total_length);
  return rate * rate;
}

double objective_constrained(std::span<const std::uint64_t> segment_lengths,
                             std::span<const double> rates,
                             std::uint64_t total_length, double target_bits) {
  check_aligned(segment_lengths, rates);
  checked_total(segment_lengths, total_length);
  if (target_bits < 0.0) {
    throw std::invalid_argument("objective_constrained: negative target");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < segment_lengths.size(); ++i) {
    double weighted = size_weight(segment_lengths[i], total_length) * rates[i];
    double seg_bits = static_cast<double>(segment_lengths[i]) * rates[i];
    double miss = target_bits - seg_bits;
    sum += weighted * weighted + miss * miss;
  }
  return sum;
}

}  // namespace parc
