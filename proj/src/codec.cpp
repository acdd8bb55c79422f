#include "parc/codec.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "parc/bitio.hpp"
#include "parc/huffman.hpp"
#include "parc/lzw.hpp"

namespace parc {

namespace {

constexpr std::uint8_t kHuffmanModelDense = 0x00;
constexpr std::uint8_t kHuffmanModelSparse = 0x01;
constexpr int kHuffmanSparseMaxAlphabet = 32;

int bits_per_symbol_raw(int alphabet_size) {
  return std::bit_width(static_cast<unsigned>(alphabet_size - 1));
}

EncodedSegment encode_raw(std::span<const std::uint8_t> segment,
                          const kernels::Histogram& counts) {
  EncodedSegment enc;
  enc.codec = CodecId::RawFixed;
  enc.original_length = segment.size();

  std::array<std::uint8_t, 256> index{};
  int m = 0;
  for (int s = 0; s < 256; ++s) {
    if (counts[s] != 0) {
      index[s] = static_cast<std::uint8_t>(m++);
      enc.model.push_back(static_cast<std::uint8_t>(s));
    }
  }
  int bpp = bits_per_symbol_raw(m);
  if (bpp == 0) return enc;  // single-symbol alphabet, zero payload

  BitWriter writer;
  for (std::uint8_t b : segment) writer.put(index[b], bpp);
  enc.payload_bit_length = writer.bit_length();
  enc.payload = writer.take();
  return enc;
}

EncodedSegment encode_huffman(std::span<const std::uint8_t> segment,
                              const kernels::Histogram& counts) {
  huffman::Build code = huffman::build(counts);
  if (!code.fits) return encode_raw(segment, counts);  // depth-cap fallback

  EncodedSegment enc;
  enc.codec = CodecId::Huffman;
  enc.original_length = segment.size();

  if (code.alphabet_size <= kHuffmanSparseMaxAlphabet) {
    enc.model.push_back(kHuffmanModelSparse);
    for (int s = 0; s < 256; ++s) {
      if (counts[s] != 0) {
        enc.model.push_back(static_cast<std::uint8_t>(s));
        enc.model.push_back(code.lengths[s]);
      }
    }
  } else {
    enc.model.push_back(kHuffmanModelDense);
    for (int s = 0; s < 256; s += 2) {
      enc.model.push_back(static_cast<std::uint8_t>(
          (code.lengths[s] << 4) | code.lengths[s + 1]));
    }
  }

  if (code.alphabet_size <= 1) return enc;  // zero-length code

  auto codes = huffman::canonical_codes(code.lengths);
  BitWriter writer;
  for (std::uint8_t b : segment) writer.put(codes[b], code.lengths[b]);
  enc.payload_bit_length = writer.bit_length();
  enc.payload = writer.take();
  return enc;
}

EncodedSegment encode_lzw(std::span<const std::uint8_t> segment) {
  lzw::Encoded coded = lzw::encode(segment);
  EncodedSegment enc;
  enc.codec = CodecId::Lzw;
  enc.original_length = segment.size();
  enc.payload_bit_length = coded.bit_length;
  enc.payload = std::move(coded.payload);
  return enc;
}

std::vector<std::uint8_t> decode_raw(const EncodedSegment& enc) {
  const auto& model = enc.model;
  if (model.empty()) {
    throw CorruptionError(Corruption::BadModel, "raw model has no alphabet");
  }
  for (std::size_t i = 1; i < model.size(); ++i) {
    if (model[i] <= model[i - 1]) {
      throw CorruptionError(Corruption::BadModel,
                            "raw alphabet not strictly increasing");
    }
  }
  int m = static_cast<int>(model.size());
  int bpp = bits_per_symbol_raw(m);

  std::vector<std::uint8_t> out;
  out.reserve(enc.original_length);
  if (bpp == 0) {
    if (enc.payload_bit_length != 0) {
      throw CorruptionError(Corruption::PayloadOverrun,
                            "payload bits for a single-symbol alphabet");
    }
    out.assign(enc.original_length, model[0]);
    return out;
  }

  BitReader reader(enc.payload, enc.payload_bit_length);
  for (std::uint64_t i = 0; i < enc.original_length; ++i) {
    std::uint64_t idx = reader.read(bpp);
    if (idx >= static_cast<std::uint64_t>(m)) {
      throw CorruptionError(Corruption::BadSymbolIndex,
                            "index " + std::to_string(idx) + " in alphabet of " +
                                std::to_string(m));
    }
    out.push_back(model[idx]);
  }
  if (reader.consumed() != enc.payload_bit_length) {
    throw CorruptionError(Corruption::PayloadOverrun,
                          "unconsumed payload bits");
  }
  return out;
}

std::vector<std::pair<std::uint8_t, std::uint8_t>> parse_huffman_model(
    std::span<const std::uint8_t> model) {
  if (model.empty()) {
    throw CorruptionError(Corruption::BadModel, "empty huffman model");
  }
  std::vector<std::pair<std::uint8_t, std::uint8_t>> entries;
  if (model[0] == kHuffmanModelDense) {
    if (model.size() != 129) {
      throw CorruptionError(Corruption::BadModel,
                            "dense huffman model must be 129 bytes");
    }
    for (int s = 0; s < 256; ++s) {
      std::uint8_t nibble = (s % 2 == 0) ? (model[1 + s / 2] >> 4)
                                         : (model[1 + s / 2] & 0x0f);
      if (nibble != 0) {
        entries.emplace_back(static_cast<std::uint8_t>(s), nibble);
      }
    }
  } else if (model[0] == kHuffmanModelSparse) {
    if (model.size() < 3 || model.size() % 2 == 0) {
      throw CorruptionError(Corruption::BadModel,
                            "sparse huffman model size invalid");
    }
    for (std::size_t i = 1; i < model.size(); i += 2) {
      std::uint8_t symbol = model[i];
      std::uint8_t len = model[i + 1];
      if (!entries.empty() && symbol <= entries.back().first) {
        throw CorruptionError(Corruption::BadModel,
                              "sparse huffman symbols not increasing");
      }
      if (len > huffman::kMaxCodeLength) {
        throw CorruptionError(Corruption::BadModel, "code length over cap");
      }
      entries.emplace_back(symbol, len);
    }
  } else {
    throw CorruptionError(Corruption::BadModel, "unknown huffman model form");
  }
  return entries;
}

std::vector<std::uint8_t> decode_huffman(const EncodedSegment& enc) {
  auto entries = parse_huffman_model(enc.model);
  huffman::Decoder decoder(entries);

  if (decoder.single_symbol() && enc.payload_bit_length != 0) {
    throw CorruptionError(Corruption::PayloadOverrun,
                          "payload bits for a single-symbol code");
  }
  BitReader reader(enc.payload, enc.payload_bit_length);
  std::vector<std::uint8_t> out;
  out.reserve(enc.original_length);
  for (std::uint64_t i = 0; i < enc.original_length; ++i) {
    out.push_back(decoder.decode_one(reader));
  }
  if (reader.consumed() != enc.payload_bit_length) {
    throw CorruptionError(Corruption::PayloadOverrun,
                          "unconsumed payload bits");
  }
  return out;
}

}  // namespace

EncodedSegment encode_segment(std::span<const std::uint8_t> segment,
                              CodecId codec) {
  if (segment.empty()) {
    throw std::invalid_argument("encode_segment: empty segment");
  }
  switch (codec) {
    case CodecId::RawFixed:
      return encode_raw(segment, kernels::histogram(segment));
    case CodecId::Huffman:
      return encode_huffman(segment, kernels::histogram(segment));
    case CodecId::Lzw:
      return encode_lzw(segment);
  }
  throw std::invalid_argument("encode_segment: unknown codec");
}

std::vector<std::uint8_t> decode_segment(const EncodedSegment& enc) {
  std::uint64_t expected_bytes = (enc.payload_bit_length + 7) / 8;
  if (enc.payload.size() < expected_bytes) {
    throw CorruptionError(Corruption::PayloadUnderrun,
                          "payload shorter than its declared bit length");
  }
  if (enc.payload.size() > expected_bytes) {
    throw CorruptionError(Corruption::PayloadOverrun,
                          "payload longer than its declared bit length");
  }
  switch (enc.codec) {
    case CodecId::RawFixed:
      return decode_raw(enc);
    case CodecId::Huffman:
      return decode_huffman(enc);
    case CodecId::Lzw:
      if (!enc.model.empty()) {
        throw CorruptionError(Corruption::BadModel,
                              "LZW segments carry no model");
      }
      return lzw::decode(enc.payload, enc.payload_bit_length,
                         enc.original_length);
  }
  throw CorruptionError(Corruption::BadCodecId,
                        std::to_string(static_cast<unsigned>(enc.codec)));
}

double segment_rate(std::span<const std::uint8_t> segment, CodecId codec,
                    RateMode mode) {
  EncodedSegment enc = encode_segment(segment, codec);
  std::uint64_t bits =
      mode == RateMode::Ideal ? enc.ideal_bits() : enc.accounted_bits();
  return static_cast<double>(bits) / static_cast<double>(segment.size());
}

std::pair<CodecId, double> best_codec(std::span<const std::uint8_t> segment,
                                      CodecSet allowed, RateMode mode) {
  if (allowed.empty()) {
    throw std::invalid_argument("best_codec: empty codec set");
  }
  bool have = false;
  CodecId best = CodecId::RawFixed;
  double best_rate = 0.0;
  for (CodecId id : {CodecId::RawFixed, CodecId::Huffman, CodecId::Lzw}) {
    if (!allowed.contains(id)) continue;
    double rate = segment_rate(segment, id, mode);
    if (!have || rate < best_rate) {
      have = true;
      best = id;
      best_rate = rate;
    }
  }
  return {best, best_rate};
}

CodecCost raw_fixed_cost(int alphabet_size, std::uint64_t length) {
  CodecCost cost;
  cost.payload_bits =
      length * static_cast<std::uint64_t>(bits_per_symbol_raw(alphabet_size));
  cost.model_bytes = static_cast<std::uint64_t>(alphabet_size);
  cost.realized = CodecId::RawFixed;
  return cost;
}

CodecCost huffman_cost(std::span<const std::uint32_t> counts_desc,
                       int alphabet_size, std::uint64_t length) {
  huffman::Cost code = huffman::cost_from_counts(counts_desc);
  if (!code.fits) return raw_fixed_cost(alphabet_size, length);
  CodecCost cost;
  cost.payload_bits = code.payload_bits;
  cost.model_bytes = alphabet_size <= kHuffmanSparseMaxAlphabet
                         ? 1 + 2 * static_cast<std::uint64_t>(alphabet_size)
                         : 129;
  cost.realized = CodecId::Huffman;
  return cost;
}

}  // namespace parc
