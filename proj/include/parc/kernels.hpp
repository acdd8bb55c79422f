#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Byte-statistics inner loops used throughout the toolkit: histogramming,
// alphabet counting, entropy accumulation and weighted rate sums. Each kernel
// has a scalar reference implementation and, on x86-64, an AVX2 variant. The
// active implementation is picked once at startup (widest supported ISA) and
// can be overridden with the PARC_KERNELS environment variable or select().
//
// Equivalence contract, enforced by tests/test_kernels.cpp:
//   - integer kernels (histogram, nonzero count) match the scalar reference
//     exactly,
//   - floating-point kernels match within 1e-12 relative error.

namespace parc::kernels {

using Histogram = std::array<std::uint32_t, 256>;

struct Impl {
  const char* name;
  // counts[b] += number of occurrences of b in bytes.
  void (*accumulate_histogram)(std::span<const std::uint8_t> bytes,
                               Histogram& counts);
  // Number of nonzero bins.
  int (*count_nonzero)(const Histogram& counts);
  // Sum over nonzero bins of counts[b] * log2(total / counts[b]); this is the
  // ideal total codelength in bits. Returns 0 when total == 0. `total` must
  // equal the sum of all bins.
  double (*entropy_bits)(const Histogram& counts, std::uint64_t total);
  // Inner product of two equal-length vectors.
  double (*dot)(std::span<const double> a, std::span<const double> b);
};

const Impl& scalar();
// All implementations usable on this machine, scalar first.
std::span<const Impl* const> available();
const Impl& active();
// Select by name ("scalar", "avx2"). Returns false if unknown or unsupported
// on this CPU.
bool select(std::string_view name);

// Convenience wrappers through the active implementation.
Histogram histogram(std::span<const std::uint8_t> bytes);
int alphabet_size(const Histogram& counts);
double entropy_bits(const Histogram& counts, std::uint64_t total);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace parc::kernels
