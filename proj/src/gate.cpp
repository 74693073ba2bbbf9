#include "qpipe/gate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "qpipe/errors.hpp"

namespace qpipe {

void RegisterLayout::validate() const {
  if (q < 1 || n < 1) {
    std::ostringstream os;
    os << "register layout needs q >= 1 and n >= 1 (got q=" << q << ", n=" << n << ")";
    throw ArgumentError(os.str());
  }
}

GateOp GateOp::hadamard(int target, Stage stage) {
  GateOp op;
  op.kind = GateKind::Hadamard;
  op.target = target;
  op.stage = stage;
  return op;
}

GateOp GateOp::pauli_x(int target, Stage stage) {
  GateOp op;
  op.kind = GateKind::PauliX;
  op.target = target;
  op.stage = stage;
  return op;
}

GateOp GateOp::controlled_phase(std::vector<int> controls, int target, double angle, Stage stage) {
  GateOp op;
  op.kind = GateKind::ControlledPhase;
  op.target = target;
  op.controls = std::move(controls);
  op.angle = angle;
  op.stage = stage;
  return op;
}

GateOp GateOp::swap(int a, int b, Stage stage) {
  GateOp op;
  op.kind = GateKind::Swap;
  op.target = a;
  op.partner = b;
  op.stage = stage;
  return op;
}

std::vector<GateOp> inverse_qft_gates(const RegisterLayout& layout) {
  layout.validate();
  const int q = layout.q;
  std::vector<GateOp> ops;
  ops.reserve(static_cast<std::size_t>(q * (q + 2) / 2));

  for (int i = 0; i < q / 2; ++i) {
    ops.push_back(GateOp::swap(layout.estimation_qubit(i), layout.estimation_qubit(q - 1 - i),
                               Stage::InverseQft));
  }
  for (int j = 0; j < q; ++j) {
    for (int m = 0; m < j; ++m) {
      const double angle = -2.0 * std::numbers::pi / std::ldexp(1.0, j - m + 1);
      ops.push_back(GateOp::controlled_phase({layout.estimation_qubit(m)},
                                             layout.estimation_qubit(j), angle,
                                             Stage::InverseQft));
    }
    ops.push_back(GateOp::hadamard(layout.estimation_qubit(j), Stage::InverseQft));
  }
  return ops;
}

}  // namespace qpipe
