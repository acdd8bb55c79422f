#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

namespace parc {

// Codec identifiers are part of the archive format: stable across versions,
// new codecs append, never renumber.
enum class CodecId : std::uint8_t {
  RawFixed = 0,
  Huffman = 1,
  Lzw = 2,
};

inline constexpr int kCodecCount = 3;

const char* to_string(CodecId id);
std::optional<CodecId> parse_codec(std::string_view name);

// Whether a segment's rate counts payload bits only (Ideal) or also the
// per-segment container header and codec model bytes (Accounted).
enum class RateMode : std::uint8_t { Ideal, Accounted };

const char* to_string(RateMode mode);

// Small fixed-universe set of codecs.
class CodecSet {
public:
  constexpr CodecSet() = default;
  constexpr CodecSet(std::initializer_list<CodecId> ids) {
    for (CodecId id : ids) insert(id);
  }

  static constexpr CodecSet all() {
    return CodecSet{CodecId::RawFixed, CodecId::Huffman, CodecId::Lzw};
  }

  constexpr void insert(CodecId id) {
    mask_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(id));
  }
  constexpr bool contains(CodecId id) const {
    return (mask_ >> static_cast<unsigned>(id)) & 1u;
  }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const {
    int n = 0;
    for (unsigned i = 0; i < kCodecCount; ++i) n += (mask_ >> i) & 1u;
    return n;
  }
  constexpr bool operator==(const CodecSet&) const = default;

private:
  std::uint8_t mask_ = 0;
};

// Comma-separated codec names ("raw,huffman,lzw"); nullopt on a bad name.
std::optional<CodecSet> parse_codec_set(std::string_view names);
std::string to_string(CodecSet set);

}  // namespace parc
