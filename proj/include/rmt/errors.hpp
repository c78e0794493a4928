#pragma once

#include <stdexcept>
#include <string>

namespace rmt {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Nearest-point projection onto the manifold is undefined (or numerically
// meaningless) when the input loses rank. Carries the offending sigma_min.
struct ProjectionNotUnique : std::runtime_error {
  double sigma_min;
  ProjectionNotUnique(double smin, const std::string& what)
      : std::runtime_error(what), sigma_min(smin) {}
};

struct SpectralGapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphGenerationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateSpectrum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rmt
