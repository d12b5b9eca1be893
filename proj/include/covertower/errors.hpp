#pragma once

#include <stdexcept>
#include <string>

#include "covertower/bigint.hpp"

namespace covertower {

// Thrown when an operation would materialize or expand past the explicit limit.
struct ExplicitLimitExceeded : std::runtime_error {
  explicit ExplicitLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a requested horizon exceeds what the anchor's depth supports.
// Carries the largest usable step count so callers can retry or re-anchor deeper.
struct HorizonExhausted : std::runtime_error {
  HorizonExhausted(const std::string& what, BigInt usable)
      : std::runtime_error(what), max_usable(std::move(usable)) {}
  BigInt max_usable;
};

// Thrown by the equicontinuity witness when the constructed pair does not
// separate at the requested resolution within the common horizon; the caller
// should rebuild the witness from a deeper anchor.
struct NoDivergenceWithinHorizon : std::runtime_error {
  explicit NoDivergenceWithinHorizon(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace covertower
