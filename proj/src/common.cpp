#include "parc/common.hpp"

#include "parc/errors.hpp"

namespace parc {

const char* to_string(Corruption kind) {
  switch (kind) {
    case Corruption::BadMagic: return "bad magic";
    case Corruption::BadVersion: return "unsupported version";
    case Corruption::BadFlags: return "nonzero reserved flags";
    case Corruption::Truncated: return "truncated archive";
    case Corruption::SegmentSumMismatch: return "segment lengths do not sum to original length";
    case Corruption::BadCodecId: return "unknown codec id";
    case Corruption::BadModel: return "malformed codec model";
    case Corruption::KraftViolation: return "code lengths violate Kraft equality";
    case Corruption::PayloadUnderrun: return "payload underrun";
    case Corruption::PayloadOverrun: return "payload overrun";
    case Corruption::BadLzwCode: return "LZW code outside dictionary";
    case Corruption::BadSymbolIndex: return "symbol index outside alphabet";
    case Corruption::LengthMismatch: return "decoded length mismatch";
  }
  return "corruption";
}

const char* to_string(CodecId id) {
  switch (id) {
    case CodecId::RawFixed: return "raw";
    case CodecId::Huffman: return "huffman";
    case CodecId::Lzw: return "lzw";
  }
  return "?";
}

std::optional<CodecId> parse_codec(std::string_view name) {
  if (name == "raw") return CodecId::RawFixed;
  if (name == "huffman") return CodecId::Huffman;
  if (name == "lzw") return CodecId::Lzw;
  return std::nullopt;
}

const char* to_string(RateMode mode) {
  return mode == RateMode::Ideal ? "ideal" : "accounted";
}

std::optional<CodecSet> parse_codec_set(std::string_view names) {
  CodecSet set;
  while (!names.empty()) {
    std::size_t comma = names.find(',');
    std::string_view name = names.substr(0, comma);
    auto codec = parse_codec(name);
    if (!codec) return std::nullopt;
    set.insert(*codec);
    if (comma == std::string_view::npos) break;
    names.remove_prefix(comma + 1);
  }
  if (set.empty()) return std::nullopt;
  return set;
}

std::string to_string(CodecSet set) {
  std::string out;
  for (CodecId id : {CodecId::RawFixed, CodecId::Huffman, CodecId::Lzw}) {
    if (!set.contains(id)) continue;
    if (!out.empty()) out += ',';
    out += to_string(id);
  }
  return out;
}

}  // namespace parc
