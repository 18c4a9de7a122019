#pragma once

#include <stdexcept>
#include <string>

namespace qsl {

enum class Errc {
  NoBracket,
  NonFinite,
  BadInterval,
  DegenerateFit,
  NotHermitian,
  NotPSD,
  InvalidState,
  BadProbabilities,
  SpectrumMismatch,
  Degenerate,
  Unreachable,
  OutOfRange,
  Incompatible,
  Undefined,
  NotSeparable,
  GridBoundary,
  TooLarge,
  Parse,
};

const char* to_string(Errc code) noexcept;

/// Single exception type for the library; `code()` tells the failure apart.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qsl
