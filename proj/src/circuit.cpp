#include "qpipe/circuit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "qpipe/errors.hpp"

namespace qpipe {

namespace {

void check_oracle_inputs(const RegisterLayout& layout, const PhaseImage& phases, int k) {
  layout.validate();
  if (k < 0 || k >= layout.q) {
    std::ostringstream os;
    os << "estimation qubit " << k << " out of range for q=" << layout.q;
    throw ArgumentError(os.str());
  }
  if (phases.n != layout.n || phases.theta.size() != layout.positions()) {
    std::ostringstream os;
    os << "phase image has " << phases.theta.size() << " positions but the layout expects "
       << layout.positions();
    throw ArgumentError(os.str());
  }
  for (std::size_t x = 0; x < phases.theta.size(); ++x) {
    if (!std::isfinite(phases.theta[x])) {
      std::ostringstream os;
      os << "phase at position " << x << " is not finite";
      throw ArgumentError(os.str());
    }
  }
}

// 2*pi*2^k*theta reduced modulo one turn before scaling to radians. The
// power-of-two product and fmod are exact, so nothing is lost to a large
// angle argument at high k.
double oracle_angle(double theta, int k) {
  return 2.0 * std::numbers::pi * std::fmod(std::ldexp(theta, k), 1.0);
}

GateOp marking_phase(const RegisterLayout& layout, int k, double theta) {
  std::vector<int> controls;
  controls.reserve(static_cast<std::size_t>(layout.n));
  controls.push_back(layout.estimation_qubit(k));
  for (int i = 1; i < layout.n; ++i) controls.push_back(layout.position_qubit(i));
  return GateOp::controlled_phase(std::move(controls), layout.position_qubit(0),
                                  oracle_angle(theta, k), Stage::Oracle);
}

}  // namespace

void Circuit::append(const Circuit& other) {
  if (!(other.layout == layout)) throw ArgumentError("cannot append circuits with different layouts");
  ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

std::vector<GrayStep> gray_sequence(int n) {
  if (n < 1 || n > 40) {
    std::ostringstream os;
    os << "gray_sequence supports 1 <= n <= 40 (got " << n << ")";
    throw ArgumentError(os.str());
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<GrayStep> steps(count);
  for (std::uint64_t s = 0; s < count; ++s) {
    steps[s].step = s;
    steps[s].code = s ^ (s >> 1);
    if (s + 1 < count) {
      const std::uint64_t next = (s + 1) ^ ((s + 1) >> 1);
      steps[s].transition_bit = std::countr_zero(steps[s].code ^ next);
    }
  }
  return steps;
}

Circuit build_naive_oracle(const RegisterLayout& layout, const PhaseImage& phases, int k) {
  check_oracle_inputs(layout, phases, k);
  Circuit c{layout, {}};
  for (std::uint64_t j = 0; j < layout.positions(); ++j) {
    const double theta = phases.theta[j];
    if (theta == 0.0) continue;
    std::vector<int> zero_bits;
    for (int b = 0; b < layout.n; ++b) {
      if (((j >> b) & 1u) == 0) zero_bits.push_back(layout.position_qubit(b));
    }
    for (int b : zero_bits) c.ops.push_back(GateOp::pauli_x(b, Stage::Oracle));
    c.ops.push_back(marking_phase(layout, k, theta));
    for (int b : zero_bits) c.ops.push_back(GateOp::pauli_x(b, Stage::Oracle));
  }
  return c;
}

Circuit build_gray_oracle(const RegisterLayout& layout, const PhaseImage& phases, int k) {
  check_oracle_inputs(layout, phases, k);
  Circuit c{layout, {}};
  // Map |0...0> to |1...1> so g_0 = 0 is the marked position.
  for (int b = 0; b < layout.n; ++b) {
    c.ops.push_back(GateOp::pauli_x(layout.position_qubit(b), Stage::Oracle));
  }
  for (const GrayStep& s : gray_sequence(layout.n)) {
    const double theta = phases.theta[s.code];
    if (theta != 0.0) c.ops.push_back(marking_phase(layout, k, theta));
    if (s.transition_bit) {
      c.ops.push_back(GateOp::pauli_x(layout.position_qubit(*s.transition_bit), Stage::Oracle));
    }
  }
  // The walk ends on g = 2^(n-1); its n-1 zero bits are still flipped.
  for (int b = 0; b + 1 < layout.n; ++b) {
    c.ops.push_back(GateOp::pauli_x(layout.position_qubit(b), Stage::Oracle));
  }
  return c;
}

Circuit build_qpipe(const RegisterLayout& layout, std::span<const PhaseImage> images,
                    const QpipeOptions& options) {
  layout.validate();
  if (images.empty()) throw ArgumentError("build_qpipe needs at least one phase image");
  for (const PhaseImage& img : images) {
    if (img.n != images.front().n || img.theta.size() != images.front().theta.size()) {
      throw ArgumentError("build_qpipe: phase images differ in dimensions");
    }
  }

  Circuit c{layout, {}};
  for (int i = 0; i < layout.total_qubits(); ++i) {
    c.ops.push_back(GateOp::hadamard(i, Stage::Superposition));
  }

  auto oracle = [&](const PhaseImage& phases, int k) {
    return options.oracle == OracleKind::Gray ? build_gray_oracle(layout, phases, k)
                                              : build_naive_oracle(layout, phases, k);
  };

  if (options.fusion == FusionPolicy::Fused) {
    const PhaseImage total = accumulate_phases(images);
    for (int k = 0; k < layout.q; ++k) c.append(oracle(total, k));
  } else {
    for (const PhaseImage& img : images) {
      for (int k = 0; k < layout.q; ++k) c.append(oracle(img, k));
    }
  }

  for (GateOp& op : inverse_qft_gates(layout)) c.ops.push_back(std::move(op));
  return c;
}

GateTally count_gates(const Circuit& circuit) {
  GateTally t;
  for (const GateOp& op : circuit.ops) {
    ++t.total;
    if (op.stage == Stage::InverseQft) {
      ++t.qft;
      continue;
    }
    switch (op.kind) {
      case GateKind::Hadamard:
        if (op.stage == Stage::Superposition) ++t.hadamard;
        break;
      case GateKind::PauliX:
        ++t.x;
        break;
      case GateKind::ControlledPhase:
        if (op.stage == Stage::Oracle) {
          ++t.cp;
          ++t.cp_control_arity[op.controls.size()];
        }
        break;
      case GateKind::Swap:
        break;
    }
  }
  return t;
}

void execute(const Circuit& circuit, StateVector& state) {
  if (state.num_qubits() != circuit.layout.total_qubits()) {
    throw ArgumentError("circuit layout does not match the statevector");
  }
  for (const GateOp& op : circuit.ops) state.apply(op);
}

StateVector simulate(const Circuit& circuit, int qubit_cap) {
  StateVector state = StateVector::zero(circuit.layout, qubit_cap);
  execute(circuit, state);
  return state;
}

std::string serialize(const Circuit& circuit) {
  std::string out;
  char buf[64];
  for (const GateOp& op : circuit.ops) {
    switch (op.kind) {
      case GateKind::Hadamard:
        out += "H " + std::to_string(op.target);
        break;
      case GateKind::PauliX:
        out += "X " + std::to_string(op.target);
        break;
      case GateKind::ControlledPhase:
        std::snprintf(buf, sizeof buf, "%.17g", op.angle);
        out += "CP ";
        out += buf;
        out += ' ' + std::to_string(op.target);
        for (int c : op.controls) out += ' ' + std::to_string(c);
        break;
      case GateKind::Swap:
        out += "SWAP " + std::to_string(op.target) + ' ' + std::to_string(op.partner);
        break;
    }
    out += '\n';
  }
  return out;
}

namespace {

int parse_int(std::string_view tok, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("circuit line " + std::to_string(line) + ": bad integer '" +
                     std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Circuit parse_circuit(std::string_view text, const RegisterLayout& layout) {
  layout.validate();
  Circuit c{layout, {}};
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const auto fail = [&](const char* why) {
      throw ParseError("circuit line " + std::to_string(lineno) + ": " + why);
    };
    if (tok[0] == "H" || tok[0] == "X") {
      if (tok.size() != 2) fail("expected one qubit index");
      const int q = parse_int(tok[1], lineno);
      c.ops.push_back(tok[0] == "H" ? GateOp::hadamard(q, Stage::Oracle)
                                    : GateOp::pauli_x(q, Stage::Oracle));
    } else if (tok[0] == "CP") {
      if (tok.size() < 3) fail("CP needs an angle and a target");
      double angle = 0.0;
      try {
        std::size_t used = 0;
        angle = std::stod(tok[1], &used);
        if (used != tok[1].size()) fail("bad angle");
      } catch (const std::logic_error&) {
        fail("bad angle");
      }
      std::vector<int> controls;
      for (std::size_t i = 3; i < tok.size(); ++i) controls.push_back(parse_int(tok[i], lineno));
      c.ops.push_back(GateOp::controlled_phase(std::move(controls), parse_int(tok[2], lineno), angle,
                                               Stage::Oracle));
    } else if (tok[0] == "SWAP") {
      if (tok.size() != 3) fail("SWAP needs two qubit indices");
      c.ops.push_back(
          GateOp::swap(parse_int(tok[1], lineno), parse_int(tok[2], lineno), Stage::Oracle));
    } else {
      fail("unknown gate");
    }
    const GateOp& op = c.ops.back();
    const auto in_range = [&](int q) { return q >= 0 && q < layout.total_qubits(); };
    bool ok = in_range(op.target) && (op.kind != GateKind::Swap || in_range(op.partner));
    for (int ctrl : op.controls) ok = ok && in_range(ctrl);
    if (!ok) fail("qubit index outside the register");
  }
  return c;
}

}  // namespace qpipe
