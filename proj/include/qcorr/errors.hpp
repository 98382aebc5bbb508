#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

// Bad dimensions, out-of-range parameters, malformed input documents.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative solver hit its cap without meeting tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A discord-vs-entanglement inequality failed beyond slack. `detail` carries
// the serialized (state, witness, discord) triple for post-mortem.
class BoundViolation : public std::runtime_error {
 public:
  BoundViolation(const std::string& what, std::string detail)
      : std::runtime_error(what), detail_(std::move(detail)) {}
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
};

}  // namespace qcorr
