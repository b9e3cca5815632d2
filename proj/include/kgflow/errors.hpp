#pragma once

#include <stdexcept>
#include <string>

namespace kgflow {

// Raised when a scenario file cannot be parsed or validated. CLI maps it to exit 2.
class ScenarioError : public std::runtime_error {
public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a solver stability precondition is violated. CLI maps it to exit 3.
class StabilityError : public std::runtime_error {
public:
  explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an evolution produces non-finite values. CLI maps it to exit 4.
class DivergenceError : public std::runtime_error {
public:
  DivergenceError(const std::string& what, int step) : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

private:
  int step_;
};

} // namespace kgflow
