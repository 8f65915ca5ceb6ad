#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kpoly {

enum class Errc {
  kInvalidTriangle,
  kDegenerateInput,
  kParameterOutOfRange,
  kOpenEdge,
  kLengthMismatch,
  kNonManifoldLink,
  kUnknownVertex,
  kAnchorInvalid,
  kSphericalSizeOverflow,
  kShapeMismatch,
  kInvalidMetric,
  kSizeLimitExceeded,
  kDomain,
  kNoRoot,
  kPhaseExceedsTau,
  kZeroInput,
  kKnotEvaluation,
  kInsufficientSamples,
  kParse,
};

std::string_view errc_name(Errc code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace kpoly
