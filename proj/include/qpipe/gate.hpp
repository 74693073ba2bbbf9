#pragma once

#include <vector>

#include "qpipe/layout.hpp"

namespace qpipe {

enum class GateKind { Hadamard, PauliX, ControlledPhase, Swap };

/// Which part of the encoding pipeline emitted a gate; used for resource tallies.
enum class Stage { Superposition, Oracle, InverseQft };

/// One gate of the circuit IR.
///
/// ControlledPhase multiplies every amplitude whose index has a 1 at `target`
/// and at every control by e^{i angle}; an empty control set is a plain phase
/// gate. Swap exchanges `target` and `partner` and only appears in the
/// inverse QFT's bit-reversal.
struct GateOp {
  GateKind kind = GateKind::Hadamard;
  int target = 0;
  std::vector<int> controls;
  double angle = 0.0;
  int partner = -1;
  Stage stage = Stage::Oracle;

  static GateOp hadamard(int target, Stage stage);
  static GateOp pauli_x(int target, Stage stage);
  static GateOp controlled_phase(std::vector<int> controls, int target, double angle, Stage stage);
  static GateOp swap(int a, int b, Stage stage);

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

/// Inverse QFT on the estimation register as a gate sequence: bit-reversal
/// swaps, then for each qubit the controlled phases from the lower qubits
/// followed by its Hadamard. Hadamards + controlled phases + swaps total
/// q + q(q-1)/2 + floor(q/2) = floor(q(q+2)/2) gates.
std::vector<GateOp> inverse_qft_gates(const RegisterLayout& layout);

}  // namespace qpipe
