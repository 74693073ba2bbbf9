#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qpipe/gate.hpp"
#include "qpipe/layout.hpp"
#include "qpipe/tolerances.hpp"

namespace qpipe {

using Complex = std::complex<double>;

/// Qubit cap in effect: QPIPE_QUBIT_CAP from the environment when set to a
/// positive integer, otherwise kDefaultQubitCap.
int default_qubit_cap();

/// Dense statevector of 2^num_qubits double-precision amplitudes.
///
/// Gates are applied in place through the runtime-selected kernel table. A
/// StateVector is exclusively owned while being mutated.
class StateVector {
 public:
  /// |0...0> on `num_qubits` qubits; throws ResourceLimitError above `qubit_cap`.
  explicit StateVector(int num_qubits, int qubit_cap = default_qubit_cap());

  /// |0>_E^q (x) |0>_P^n.
  static StateVector zero(const RegisterLayout& layout, int qubit_cap = default_qubit_cap());

  /// Wraps explicit amplitudes; size must be a power of two. No normalisation is applied.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return amps_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::span<Complex> amplitudes() noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  void apply_hadamard(int target);
  void apply_pauli_x(int target);
  void apply_controlled_phase(std::span<const int> controls, int target, double angle);
  void apply_swap(int a, int b);
  void apply(const GateOp& op);

  /// Euclidean norm of the amplitude vector.
  double norm() const;

 private:
  void check_qubit(int qubit) const;

  int num_qubits_;
  std::vector<Complex> amps_;
};

/// Inverse QFT on the estimation register of `layout`, one primitive gate at a time.
void apply_inverse_qft(StateVector& state, const RegisterLayout& layout);

/// Joint probabilities P(k, x) = |amplitude(k, x)|^2 over the full register.
class JointDistribution {
 public:
  JointDistribution(RegisterLayout layout, std::vector<double> probabilities);

  const RegisterLayout& layout() const noexcept { return layout_; }
  double operator()(std::uint64_t k, std::uint64_t x) const {
    return probs_[(k << layout_.n) | x];
  }
  std::span<const double> raw() const noexcept { return probs_; }

  /// P(k, x) for k = 0..2^q-1 at a fixed position x.
  std::vector<double> column(std::uint64_t x) const;
  double total() const;

 private:
  RegisterLayout layout_;
  std::vector<double> probs_;
};

JointDistribution marginal_distribution(const StateVector& state, const RegisterLayout& layout);

}  // namespace qpipe
