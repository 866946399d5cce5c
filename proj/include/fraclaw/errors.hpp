#ifndef FRACLAW_ERRORS_HPP_
#define FRACLAW_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fraclaw {

/// Parameter outside the admissible range of an operator, solver or config.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two objects that must share a discretization do not.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quantity cannot be represented on the grid in use (kernel too narrow,
/// rescaled data too steep, fit window wrapping around the box).
class Unresolved : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values appeared during time stepping.
class BlowUp : public std::runtime_error {
 public:
  BlowUp(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// A diagnostic was asked for something its inputs cannot support
/// (too few snapshots, test-function support leaving the data window).
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A test function's support leaves the window covered by the data.
class SupportEscapes : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fraclaw

#endif  // FRACLAW_ERRORS_HPP_
