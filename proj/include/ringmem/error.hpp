#pragma once

#include <stdexcept>
#include <string>

namespace ringmem {

enum class ErrorKind {
  InvalidArgument,
  UnknownMode,
  NotHermitian,
  NotPositive,
  Propagation,
  Config,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the integrator; carries the schedule segment that failed.
class PropagationError : public Error {
 public:
  PropagationError(std::size_t segment, double time, const std::string& what)
      : Error(ErrorKind::Propagation, what), segment_(segment), time_(time) {}

  std::size_t segment() const noexcept { return segment_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t segment_;
  double time_;
};

}  // namespace ringmem
