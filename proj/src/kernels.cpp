#include "parc/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace parc::kernels {

namespace {

void scalar_accumulate_histogram(std::span<const std::uint8_t> bytes,
                                 Histogram& counts) {
  for (std::uint8_t b : bytes) ++counts[b];
}

int scalar_count_nonzero(const Histogram& counts) {
  int n = 0;
  for (std::uint32_t c : counts) n += (c != 0);
  return n;
}

double scalar_entropy_bits(const Histogram& counts, std::uint64_t total) {
  if (total == 0) return 0.0;
  const double t = static_cast<double>(total);
  double bits = 0.0;
  for (std::uint32_t c : counts) {
    if (c != 0) bits += static_cast<double>(c) * std::log2(t / c);
  }
  return bits;
}

double scalar_dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

constexpr Impl kScalar{
    "scalar",
    scalar_accumulate_histogram,
    scalar_count_nonzero,
    scalar_entropy_bits,
    scalar_dot,
};

}  // namespace

#ifdef PARC_HAVE_AVX2
namespace detail {
const Impl* avx2();  // defined in kernels_avx2.cpp; nullptr if unsupported
}
#endif

namespace {

const std::vector<const Impl*>& impl_list() {
  static const std::vector<const Impl*> impls = [] {
    std::vector<const Impl*> v{&kScalar};
#ifdef PARC_HAVE_AVX2
    if (const Impl* a = detail::avx2()) v.push_back(a);
#endif
    return v;
  }();
  return impls;
}

const Impl*& active_slot() {
  static const Impl* slot = [] {
    const Impl* chosen = impl_list().back();  // widest supported
    if (const char* env = std::getenv("PARC_KERNELS")) {
      for (const Impl* impl : impl_list()) {
        if (std::string_view(impl->name) == env) chosen = impl;
      }
    }
    return chosen;
  }();
  return slot;
}

}  // namespace

const Impl& scalar() { return kScalar; }

std::span<const Impl* const> available() { return impl_list(); }

const Impl& active() { return *active_slot(); }

bool select(std::string_view name) {
  for (const Impl* impl : impl_list()) {
    if (impl->name == name) {
      active_slot() = impl;
      return true;
    }
  }
  return false;
}

Histogram histogram(std::span<const std::uint8_t> bytes) {
  Histogram counts{};
  active().accumulate_histogram(bytes, counts);
  return counts;
}

int alphabet_size(const Histogram& counts) {
  return active().count_nonzero(counts);
}

double entropy_bits(const Histogram& counts, std::uint64_t total) {
  return active().entropy_bits(counts, total);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a, b);
}

}  // namespace parc::kernels
