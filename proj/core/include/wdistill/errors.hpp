#pragma once

#include <stdexcept>
#include <string>

namespace wdistill {

// Invalid arguments: bad indices, out-of-range parameters, shape mismatches.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A subprotocol whose coincident-outcome branch has (numerically) zero weight.
class DegenerateOutcomeError : public std::runtime_error {
 public:
  explicit DegenerateOutcomeError(const std::string& what) : std::runtime_error(what) {}
};

// The requested fidelity window cannot be populated by the sampler.
class SamplingError : public std::runtime_error {
 public:
  explicit SamplingError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wdistill
