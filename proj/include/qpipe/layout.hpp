#pragma once

#include <cstdint>

namespace qpipe {

/// Joint estimation (E, q qubits) and position (P, n qubits) register.
///
/// Amplitude index = k * 2^n + x: the estimation value k occupies the high
/// bits and the position x the low bits. Within each register qubit 0 is the
/// least-significant bit, so position qubit i is global qubit i and
/// estimation qubit j is global qubit n + j.
struct RegisterLayout {
  int q = 1;
  int n = 1;

  int total_qubits() const noexcept { return q + n; }
  int position_qubit(int i) const noexcept { return i; }
  int estimation_qubit(int j) const noexcept { return n + j; }
  std::uint64_t positions() const noexcept { return std::uint64_t{1} << n; }
  std::uint64_t estimation_bins() const noexcept { return std::uint64_t{1} << q; }

  /// Throws ArgumentError unless q >= 1 and n >= 1.
  void validate() const;

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

}  // namespace qpipe
