#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpipe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: index out of range, overlapping qubits, shape mismatch.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the domain a mapping can represent without aliasing.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested register exceeds the configured qubit cap.
class ResourceLimitError : public Error {
 public:
  ResourceLimitError(int requested, int cap);
  int requested() const noexcept { return requested_; }
  int cap() const noexcept { return cap_; }

 private:
  int requested_;
  int cap_;
};

/// Malformed input file or command-line value.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Every estimation bin of a pixel fell below the readout threshold.
class SignalAnnihilated : public Error {
 public:
  SignalAnnihilated(std::size_t pixel, double threshold);
  std::size_t pixel() const noexcept { return pixel_; }

 private:
  std::size_t pixel_;
};

}  // namespace qpipe
