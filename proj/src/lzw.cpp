#include "parc/lzw.hpp"

#include <string>
#include <utility>

#include "parc/bitio.hpp"
#include "parc/errors.hpp"

namespace parc::lzw {

namespace {

constexpr std::uint64_t kEmptyKey = 1ull << 40;  // above any (prefix, byte)
constexpr std::size_t kInitialTable = 1024;

std::size_t hash_key(std::uint64_t key) {
  key *= 0x9E3779B97F4A7C15ull;
  return static_cast<std::size_t>(key >> 32);
}

}  // namespace

PrefixEncoder::PrefixEncoder()
    : dict_keys_(kInitialTable, kEmptyKey), dict_vals_(kInitialTable) {}

void PrefixEncoder::grow_table() {
  std::vector<std::uint64_t> old_keys = std::move(dict_keys_);
  std::vector<std::uint32_t> old_vals = std::move(dict_vals_);
  std::size_t capacity = old_keys.size() * 2;
  dict_keys_.assign(capacity, kEmptyKey);
  dict_vals_.assign(capacity, 0);
  for (std::size_t i = 0; i < old_keys.size(); ++i) {
    if (old_keys[i] == kEmptyKey) continue;
    std::size_t idx = hash_key(old_keys[i]) & (capacity - 1);
    while (dict_keys_[idx] != kEmptyKey) idx = (idx + 1) & (capacity - 1);
    dict_keys_[idx] = old_keys[i];
    dict_vals_[idx] = old_vals[i];
  }
}

void PrefixEncoder::emit(std::uint32_t code) {
  for (int i = width_ - 1; i >= 0; --i) {
    if ((bit_length_ & 7) == 0) bytes_.push_back(0);
    std::uint8_t bit = (code >> i) & 1u;
    bytes_.back() |= static_cast<std::uint8_t>(bit << (7 - (bit_length_ & 7)));
    ++bit_length_;
  }
}

void PrefixEncoder::push(std::uint8_t byte) {
  if (!pending_) {
    current_ = byte;
    pending_ = true;
    return;
  }
  std::uint64_t key = (static_cast<std::uint64_t>(current_) << 8) | byte;
  std::size_t mask = dict_keys_.size() - 1;
  std::size_t idx = hash_key(key) & mask;
  while (dict_keys_[idx] != kEmptyKey && dict_keys_[idx] != key) {
    idx = (idx + 1) & mask;
  }
  if (dict_keys_[idx] == key) {
    current_ = dict_vals_[idx];
    return;
  }
  emit(current_);
  dict_keys_[idx] = key;
  dict_vals_[idx] = next_code_++;
  if (next_code_ == (1u << width_)) ++width_;
  if (++dict_used_ * 2 >= dict_keys_.size()) grow_table();
  current_ = byte;
}

std::uint64_t PrefixEncoder::bits_if_ended() const noexcept {
  return bit_length_ + (pending_ ? static_cast<std::uint64_t>(width_) : 0);
}

Encoded PrefixEncoder::finish() {
  if (pending_) {
    emit(current_);
    pending_ = false;
  }
  Encoded out;
  out.bit_length = bit_length_;
  out.payload = std::move(bytes_);
  return out;
}

Encoded encode(std::span<const std::uint8_t> bytes) {
  PrefixEncoder enc;
  for (std::uint8_t b : bytes) enc.push(b);
  return enc.finish();
}

std::vector<std::uint8_t> decode(std::span<const std::uint8_t> payload,
                                 std::uint64_t payload_bits,
                                 std::uint64_t original_length) {
  std::vector<std::uint8_t> out;
  if (original_length == 0) {
    if (payload_bits != 0) {
      throw CorruptionError(Corruption::PayloadOverrun,
                            "payload bits for an empty segment");
    }
    return out;
  }
  out.reserve(original_length);
  BitReader reader(payload, payload_bits);

  // entries[code - 256] = (prefix code, appended byte); first_byte resolves
  // the KwKwK case without walking the chain.
  std::vector<std::pair<std::uint32_t, std::uint8_t>> entries;
  std::vector<std::uint8_t> first_byte(256);
  for (int i = 0; i < 256; ++i) first_byte[i] = static_cast<std::uint8_t>(i);

  auto append_string = [&](std::uint32_t code) {
    // Phrases unwind back-to-front; reverse the tail we just wrote.
    std::size_t start = out.size();
    while (code >= 256) {
      out.push_back(entries[code - 256].second);
      code = entries[code - 256].first;
    }
    out.push_back(static_cast<std::uint8_t>(code));
    for (std::size_t i = start, j = out.size() - 1; i < j; ++i, --j) {
      std::swap(out[i], out[j]);
    }
  };

  int width = kInitialWidth;
  std::uint32_t size = 256;
  std::uint64_t first = reader.read(width);
  if (first >= 256) {
    throw CorruptionError(Corruption::BadLzwCode,
                          "first code is not a literal");
  }
  out.push_back(static_cast<std::uint8_t>(first));
  std::uint32_t prev = static_cast<std::uint32_t>(first);

  while (out.size() < original_length) {
    if (size + 1 == (1u << width)) ++width;
    std::uint32_t code = static_cast<std::uint32_t>(reader.read(width));
    if (code > size) {
      throw CorruptionError(Corruption::BadLzwCode,
                            "code " + std::to_string(code) +
                                " beyond dictionary size " +
                                std::to_string(size));
    }
    std::uint8_t fb;
    if (code == size) {
      // KwKwK: the phrase being defined by this very code.
      fb = first_byte[prev];
      append_string(prev);
      out.push_back(fb);
    } else {
      fb = first_byte[code];
      append_string(code);
    }
    entries.emplace_back(prev, fb);
    first_byte.push_back(fb);
    ++size;
    prev = code;
    if (out.size() > original_length) {
      throw CorruptionError(Corruption::LengthMismatch,
                            "decoded past declared segment length");
    }
  }
  if (reader.consumed() != payload_bits) {
    throw CorruptionError(Corruption::PayloadOverrun,
                          "unconsumed payload bits");
  }
  return out;
}

}  // namespace parc::lzw
