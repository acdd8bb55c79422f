#include "parc/synth.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace parc::synth {

namespace {

void validate_distribution(const SourceSpec& spec) {
  if (spec.alphabet.empty()) {
    throw std::invalid_argument("source: empty alphabet");
  }
  std::vector<std::uint8_t> sorted(spec.alphabet);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("source: duplicate alphabet symbol");
  }
  if (spec.kind == SourceSpec::Kind::Categorical) {
    if (spec.weights.size() != spec.alphabet.size()) {
      throw std::invalid_argument("source: weights misaligned with alphabet");
    }
    double sum = 0.0;
    for (double w : spec.weights) {
      if (w < 0.0) throw std::invalid_argument("source: negative weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("source: weights sum to " +
                                  std::to_string(sum));
    }
  }
}

void draw(const SourceSpec& spec, Rng& rng, std::uint64_t count,
          std::vector<std::uint8_t>& out) {
  validate_distribution(spec);
  std::vector<double> cumulative(spec.alphabet.size());
  double running = 0.0;
  const double uniform_weight = 1.0 / static_cast<double>(spec.alphabet.size());
  for (std::size_t i = 0; i < spec.alphabet.size(); ++i) {
    running += spec.kind == SourceSpec::Kind::Categorical ? spec.weights[i]
                                                          : uniform_weight;
    cumulative[i] = running;
  }
  for (std::uint64_t n = 0; n < count; ++n) {
    double u = rng.next_unit();
    std::size_t pick = spec.alphabet.size() - 1;
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
      if (u < cumulative[i]) {
        pick = i;
        break;
      }
    }
    out.push_back(spec.alphabet[pick]);
  }
}

}  // namespace

std::vector<std::uint8_t> generate(const SourceSpec& spec,
                                   std::uint64_t length) {
  std::vector<std::uint8_t> out;
  out.reserve(length);
  Rng rng(spec.seed);

  if (spec.kind == SourceSpec::Kind::Piecewise) {
    if (spec.pieces.empty()) {
      throw std::invalid_argument("source: piecewise without pieces");
    }
    std::uint64_t total = 0;
    for (const auto& piece : spec.pieces) {
      if (piece.spec.kind == SourceSpec::Kind::Piecewise) {
        throw std::invalid_argument("source: nested piecewise");
      }
      total += piece.length;
    }
    if (total != length) {
      throw std::invalid_argument("source: piece lengths sum to " +
                                  std::to_string(total) + ", expected " +
                                  std::to_string(length));
    }
    // One generator runs through all pieces; piece seeds are ignored.
    for (const auto& piece : spec.pieces) {
      draw(piece.spec, rng, piece.length, out);
    }
    return out;
  }

  draw(spec, rng, length, out);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits on `sep` at bracket depth zero.
std::vector<std::string_view> split_top(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '[') ++depth;
    if (text[i] == ']') --depth;
    if (text[i] == sep && depth == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(text.substr(start));
  return parts;
}

std::uint64_t parse_u64(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("source: bad ") + what + " '" +
                                std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("source: bad ") + what + " '" +
                                std::string(s) + "'");
  }
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::uint8_t> parse_alphabet(std::string_view text) {
  std::vector<std::uint8_t> symbols;
  std::size_t dash = text.find('-');
  if (dash != std::string_view::npos && dash > 0 && dash + 1 < text.size()) {
    std::string_view lo = text.substr(0, dash);
    std::string_view hi = text.substr(dash + 1);
    if (all_digits(lo) && all_digits(hi)) {
      std::uint64_t a = parse_u64(lo, "alphabet bound");
      std::uint64_t b = parse_u64(hi, "alphabet bound");
      if (a > b || b > 255) {
        throw std::invalid_argument("source: bad byte range in alphabet");
      }
      for (std::uint64_t s = a; s <= b; ++s) {
        symbols.push_back(static_cast<std::uint8_t>(s));
      }
      return symbols;
    }
    if (lo.size() == 1 && hi.size() == 1 &&
        static_cast<unsigned char>(lo[0]) <= static_cast<unsigned char>(hi[0])) {
      for (int s = static_cast<unsigned char>(lo[0]);
           s <= static_cast<unsigned char>(hi[0]); ++s) {
        symbols.push_back(static_cast<std::uint8_t>(s));
      }
      return symbols;
    }
  }
  for (char c : text) symbols.push_back(static_cast<std::uint8_t>(c));
  if (symbols.empty()) {
    throw std::invalid_argument("source: empty alphabet");
  }
  return symbols;
}

ParsedSource parse_spec_fields(std::string_view text, bool allow_pieces);

SourceSpec::Kind parse_kind(std::string_view v) {
  if (v == "uniform") return SourceSpec::Kind::Uniform;
  if (v == "categorical" || v == "cat") return SourceSpec::Kind::Categorical;
  if (v == "piecewise") return SourceSpec::Kind::Piecewise;
  throw std::invalid_argument("source: unknown kind '" + std::string(v) + "'");
}

ParsedSource parse_spec_fields(std::string_view text, bool allow_pieces) {
  ParsedSource out;
  bool have_len = false;
  for (std::string_view part : split_top(text, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    std::size_t eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("source: expected key=value, got '" +
                                  std::string(part) + "'");
    }
    std::string_view key = trim(part.substr(0, eq));
    std::string_view value = trim(part.substr(eq + 1));
    if (key == "kind") {
      out.spec.kind = parse_kind(value);
    } else if (key == "alphabet") {
      out.spec.alphabet = parse_alphabet(value);
    } else if (key == "weights") {
      for (std::string_view w : split_top(value, ':')) {
        out.spec.weights.push_back(parse_double(trim(w), "weight"));
      }
    } else if (key == "len" || key == "length") {
      out.length = parse_u64(value, "length");
      have_len = true;
    } else if (key == "seed") {
      out.spec.seed = parse_u64(value, "seed");
    } else if (key == "pieces") {
      if (!allow_pieces) {
        throw std::invalid_argument("source: nested pieces");
      }
      if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
        throw std::invalid_argument("source: pieces must be [ ... | ... ]");
      }
      for (std::string_view piece_text :
           split_top(value.substr(1, value.size() - 2), '|')) {
        ParsedSource piece = parse_spec_fields(trim(piece_text), false);
        SourceSpec::Piece p;
        p.length = piece.length;
        p.spec = std::move(piece.spec);
        out.spec.pieces.push_back(std::move(p));
      }
    } else {
      throw std::invalid_argument("source: unknown key '" + std::string(key) +
                                  "'");
    }
  }

  if (out.spec.kind == SourceSpec::Kind::Piecewise) {
    std::uint64_t total = 0;
    for (const auto& piece : out.spec.pieces) total += piece.length;
    if (!have_len) {
      out.length = total;
    } else if (out.length != total) {
      throw std::invalid_argument("source: len disagrees with piece lengths");
    }
  } else if (!have_len) {
    throw std::invalid_argument("source: missing len");
  }
  return out;
}

}  // namespace

ParsedSource parse_source_spec(std::string_view text) {
  return parse_spec_fields(trim(text), true);
}

}  // namespace parc::synth
