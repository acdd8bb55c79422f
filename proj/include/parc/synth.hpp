#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Seeded synthetic sources for benchmarks and tests: zero-order uniform and
// categorical sources, plus piecewise concatenations of them. Generation is
// fully specified (splitmix64 with the constants below) so identical specs
// produce identical sequences on every platform.

namespace parc::synth {

// splitmix64: state advances by 0x9E3779B97F4A7C15; output mixing multiplies
// by 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB with xor-shifts 30/27/31.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

struct SourceSpec {
  enum class Kind { Uniform, Categorical, Piecewise };
  Kind kind = Kind::Uniform;

  std::vector<std::uint8_t> alphabet;  // uniform/categorical
  std::vector<double> weights;         // categorical; must sum to 1 (1e-9)

  struct Piece;
  std::vector<Piece> pieces;  // piecewise only; depth 1, no nesting

  std::uint64_t seed = 0;
};

struct SourceSpec::Piece {
  std::uint64_t length = 0;
  SourceSpec spec;  // seed ignored: the parent's generator runs throughout
};

// Symbols drawn independently per position. Piecewise specs require the
// piece lengths to sum to `length`. Rejects inconsistent or invalid specs.
std::vector<std::uint8_t> generate(const SourceSpec& spec,
                                   std::uint64_t length);

// CLI text form, e.g.
//   kind=uniform,alphabet=a-d,len=10000,seed=7
//   kind=categorical,alphabet=ab,weights=0.9:0.1,len=4096
//   kind=piecewise,seed=1,pieces=[kind=uniform,alphabet=ab,len=10000 |
//                                 kind=uniform,alphabet=cd,len=10000]
// Alphabets: two single characters joined by '-' form an inclusive range,
// integer pairs like 0-255 form a byte-value range, anything else is the
// literal set of characters.
struct ParsedSource {
  SourceSpec spec;
  std::uint64_t length = 0;
};
ParsedSource parse_source_spec(std::string_view text);

}  // namespace parc::synth
