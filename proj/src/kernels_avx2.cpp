// AVX2 variants of the byte-statistics kernels. This translation unit is
// compiled with -mavx2 -mfma; detail::avx2() gates on a runtime CPUID check
// so the binary stays usable on older machines.

#include <immintrin.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "parc/kernels.hpp"

namespace parc::kernels::detail {

namespace {

// Histogramming is scatter-bound, not lane-parallel; four split tables break
// the store-forwarding dependency on runs of equal bytes and wide loads keep
// the front end fed.
void avx2_accumulate_histogram(std::span<const std::uint8_t> bytes,
                               Histogram& counts) {
  std::array<std::uint32_t, 256> t1{}, t2{}, t3{};
  const std::uint8_t* p = bytes.data();
  std::size_t n = bytes.size();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    std::uint64_t lo, hi;
    std::memcpy(&lo, p + i, 8);
    std::memcpy(&hi, p + i + 8, 8);
    ++counts[lo & 0xff];
    ++t1[(lo >> 8) & 0xff];
    ++t2[(lo >> 16) & 0xff];
    ++t3[(lo >> 24) & 0xff];
    ++counts[(lo >> 32) & 0xff];
    ++t1[(lo >> 40) & 0xff];
    ++t2[(lo >> 48) & 0xff];
    ++t3[lo >> 56];
    ++counts[hi & 0xff];
    ++t1[(hi >> 8) & 0xff];
    ++t2[(hi >> 16) & 0xff];
    ++t3[(hi >> 24) & 0xff];
    ++counts[(hi >> 32) & 0xff];
    ++t1[(hi >> 40) & 0xff];
    ++t2[(hi >> 48) & 0xff];
    ++t3[hi >> 56];
  }
  for (; i < n; ++i) ++counts[p[i]];
  for (int s = 0; s < 256; s += 8) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(&counts[s]));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(&t1[s]));
    __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(&t2[s]));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(&t3[s]));
    a = _mm256_add_epi32(_mm256_add_epi32(a, b), _mm256_add_epi32(c, d));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(&counts[s]), a);
  }
}

int avx2_count_nonzero(const Histogram& counts) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i zeros_acc = _mm256_setzero_si256();
  for (int s = 0; s < 256; s += 8) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(&counts[s]));
    // cmpeq lanes are all-ones (-1); subtracting counts one per zero bin.
    zeros_acc = _mm256_sub_epi32(zeros_acc, _mm256_cmpeq_epi32(v, zero));
  }
  alignas(32) std::int32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), zeros_acc);
  int zeros = 0;
  for (int lane : lanes) zeros += lane;
  return 256 - zeros;
}

// log2 of four positive doubles. Range-reduces the mantissa to
// [sqrt(1/2), sqrt(2)) and evaluates the odd atanh series
// log2(m) = (2/ln 2) * (s + s^3/3 + s^5/5 + ...), s = (m-1)/(m+1),
// which converges to double precision within nine terms on that interval.
__m256d vlog2_pd(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256i exp_mask = _mm256_set1_epi64x(0x7ffull << 52);
  const __m256i mant_one = _mm256_set1_epi64x(0x3ffull << 52);

  __m256i bits = _mm256_castpd_si256(x);
  __m256i exp_bits = _mm256_and_si256(bits, exp_mask);
  __m256i exp_shifted = _mm256_srli_epi64(exp_bits, 52);  // biased exponent
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_andnot_si256(exp_mask, bits), mant_one));

  // Exponent as double: build from the 32-bit lanes of exp_shifted.
  alignas(32) std::int64_t e_lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(e_lanes), exp_shifted);
  __m256d e = _mm256_set_pd(static_cast<double>(e_lanes[3] - 1023),
                            static_cast<double>(e_lanes[2] - 1023),
                            static_cast<double>(e_lanes[1] - 1023),
                            static_cast<double>(e_lanes[0] - 1023));

  // If m >= sqrt(2), halve it and bump the exponent.
  const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
  __m256d big = _mm256_cmp_pd(m, sqrt2, _CMP_GE_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, one));

  __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  __m256d u = _mm256_mul_pd(s, s);
  __m256d poly = _mm256_set1_pd(1.0 / 17.0);
  poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 15.0));
  poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 13.0));
  poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 11.0));
  poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 9.0));
  poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 7.0));
  poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 5.0));
  poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 3.0));
  poly = _mm256_fmadd_pd(poly, u, one);
  const __m256d two_over_ln2 = _mm256_set1_pd(2.8853900817779268);
  return _mm256_fmadd_pd(_mm256_mul_pd(s, poly), two_over_ln2, e);
}

double avx2_entropy_bits(const Histogram& counts, std::uint64_t total) {
  if (total == 0) return 0.0;
  if (total > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
    return scalar().entropy_bits(counts, total);
  }
  const __m256d one = _mm256_set1_pd(1.0);
  // log2(total) through the same vector path so a lone symbol cancels to 0.
  const __m256d log2_total =
      vlog2_pd(_mm256_set1_pd(static_cast<double>(total)));
  __m256d acc = _mm256_setzero_pd();
  for (int s = 0; s < 256; s += 4) {
    __m128i raw = _mm_loadu_si128(reinterpret_cast<const __m128i*>(&counts[s]));
    __m256d c = _mm256_cvtepi32_pd(raw);
    // Zero bins: log2(max(c,1)) = 0, and the c* factor zeroes the term.
    __m256d safe = _mm256_max_pd(c, one);
    __m256d term = _mm256_mul_pd(c, _mm256_sub_pd(log2_total, vlog2_pd(safe)));
    acc = _mm256_add_pd(acc, term);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

double avx2_dot(std::span<const double> a, std::span<const double> b) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= a.size(); i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i + 4]),
                           _mm256_loadu_pd(&b[i + 4]), acc1);
  }
  for (; i + 4 <= a.size(); i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc0);
  double sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

constexpr Impl kAvx2{
    "avx2",
    avx2_accumulate_histogram,
    avx2_count_nonzero,
    avx2_entropy_bits,
    avx2_dot,
};

}  // namespace

const Impl* avx2() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return &kAvx2;
  }
  return nullptr;
}

}  // namespace parc::kernels::detail
