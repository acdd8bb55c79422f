#pragma once

#include <stdexcept>
#include <string>

namespace parc {

// Reasons an archive or encoded segment can fail to decode. Each maps to a
// distinct diagnosable failure; the CLI turns them into exit status 3.
enum class Corruption {
  BadMagic,
  BadVersion,
  BadFlags,
  Truncated,
  SegmentSumMismatch,
  BadCodecId,
  BadModel,
  KraftViolation,
  PayloadUnderrun,
  PayloadOverrun,
  BadLzwCode,
  BadSymbolIndex,
  LengthMismatch,
};

const char* to_string(Corruption kind);

class CorruptionError : public std::runtime_error {
public:
  CorruptionError(Corruption kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  Corruption kind() const noexcept { return kind_; }

private:
  Corruption kind_;
};

}  // namespace parc
