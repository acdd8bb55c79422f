#include "parc/sequence.hpp"

namespace parc {

Sequence::Sequence(std::vector<std::uint8_t> data) : data_(std::move(data)) {
  kernels::active().accumulate_histogram(data_, counts_);
  alphabet_size_ = kernels::alphabet_size(counts_);
}

Sequence Sequence::from_string(std::string_view text) {
  return Sequence(std::vector<std::uint8_t>(text.begin(), text.end()));
}

std::vector<std::uint8_t> Sequence::alphabet() const {
  std::vector<std::uint8_t> symbols;
  symbols.reserve(alphabet_size_);
  for (int s = 0; s < 256; ++s) {
    if (counts_[s] != 0) symbols.push_back(static_cast<std::uint8_t>(s));
  }
  return symbols;
}

}  // namespace parc
