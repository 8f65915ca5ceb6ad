#include "kpoly/errors.hpp"

namespace kpoly {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kInvalidTriangle: return "invalid-triangle";
    case Errc::kDegenerateInput: return "degenerate-input";
    case Errc::kParameterOutOfRange: return "parameter-out-of-range";
    case Errc::kOpenEdge: return "open-edge";
    case Errc::kLengthMismatch: return "length-mismatch";
    case Errc::kNonManifoldLink: return "non-manifold-link";
    case Errc::kUnknownVertex: return "unknown-vertex";
    case Errc::kAnchorInvalid: return "anchor-invalid";
    case Errc::kSphericalSizeOverflow: return "spherical-size-overflow";
    case Errc::kShapeMismatch: return "shape-mismatch";
    case Errc::kInvalidMetric: return "invalid-metric";
    case Errc::kSizeLimitExceeded: return "size-limit-exceeded";
    case Errc::kDomain: return "domain";
    case Errc::kNoRoot: return "no-root";
    case Errc::kPhaseExceedsTau: return "phase-exceeds-tau";
    case Errc::kZeroInput: return "zero-input";
    case Errc::kKnotEvaluation: return "knot-evaluation";
    case Errc::kInsufficientSamples: return "insufficient-samples";
    case Errc::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace kpoly
