#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpipe/gate.hpp"
#include "qpipe/layout.hpp"
#include "qpipe/phasemap.hpp"
#include "qpipe/statevector.hpp"

namespace qpipe {

/// Ordered gate list over a register layout. Immutable once built.
struct Circuit {
  RegisterLayout layout;
  std::vector<GateOp> ops;

  void append(const Circuit& other);
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// One step of the reflected-binary traversal of the position register.
struct GrayStep {
  std::uint64_t step = 0;
  std::uint64_t code = 0;             // step ^ (step >> 1)
  std::optional<int> transition_bit;  // bit flipped on the way to the next step
};

std::vector<GrayStep> gray_sequence(int n);

/// Marks each nonzero pixel by X-ing its zero bits, applies one C^nP, and
/// uncomputes. CP controls: e_k plus position qubits 1..n-1; target: p_0.
Circuit build_naive_oracle(const RegisterLayout& layout, const PhaseImage& phases, int k);

/// Same diagonal action as build_naive_oracle, but walks the pixels in Gray
/// order so each step costs a single transition X.
Circuit build_gray_oracle(const RegisterLayout& layout, const PhaseImage& phases, int k);

enum class OracleKind { Gray, Naive };

/// Fused: one traversal per estimation qubit with per-pixel phases summed
/// across images. Sequential: one traversal per image per estimation qubit.
enum class FusionPolicy { Fused, Sequential };

struct QpipeOptions {
  OracleKind oracle = OracleKind::Gray;
  FusionPolicy fusion = FusionPolicy::Fused;
};

/// Hadamards on every qubit, controlled oracle powers for each estimation
/// qubit, then the inverse QFT on the estimation register.
Circuit build_qpipe(const RegisterLayout& layout, std::span<const PhaseImage> images,
                    const QpipeOptions& options = {});

/// Raw tally over the IR, split by gate kind and pipeline stage.
struct GateTally {
  std::uint64_t hadamard = 0;  // superposition stage only
  std::uint64_t x = 0;
  std::uint64_t cp = 0;        // oracle stage only
  std::uint64_t qft = 0;       // every gate of the inverse QFT stage
  std::uint64_t total = 0;
  std::map<std::size_t, std::uint64_t> cp_control_arity;  // oracle CPs by control count

  friend bool operator==(const GateTally&, const GateTally&) = default;
};

GateTally count_gates(const Circuit& circuit);

/// Applies every op to `state`.
void execute(const Circuit& circuit, StateVector& state);

/// Runs the circuit on |0...0>.
StateVector simulate(const Circuit& circuit, int qubit_cap = default_qubit_cap());

/// One op per line: `H <q>`, `X <q>`, `CP <angle> <target> <ctrl>...`, `SWAP <a> <b>`.
/// Angles are printed with 17 significant digits.
std::string serialize(const Circuit& circuit);

/// Inverse of serialize. Stage tags are not part of the text format and come back as Oracle.
Circuit parse_circuit(std::string_view text, const RegisterLayout& layout);

}  // namespace qpipe
