#include "qpipe/statevector.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string_view>

#include "qpipe/errors.hpp"
#include "qpipe/kernels.hpp"

namespace qpipe {

namespace {

// Calls fn(base, len) for every maximal run of consecutive amplitude indices
// whose bits under `fixed_mask` equal `fixed_value`. Bits below the lowest
// fixed bit are free, so each run has length 2^lowest_fixed_bit.
template <class Fn>
void for_each_run(int num_qubits, std::uint64_t fixed_mask, std::uint64_t fixed_value, Fn&& fn) {
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  if (fixed_mask == 0) {
    fn(std::uint64_t{0}, dim);
    return;
  }
  const int low = std::countr_zero(fixed_mask);
  const std::uint64_t run = std::uint64_t{1} << low;
  const int free_high = num_qubits - low - std::popcount(fixed_mask);
  const std::uint64_t outer_count = std::uint64_t{1} << free_high;

  int positions[64];
  int npos = 0;
  for (std::uint64_t m = fixed_mask; m != 0; m &= m - 1) positions[npos++] = std::countr_zero(m);

  for (std::uint64_t outer = 0; outer < outer_count; ++outer) {
    std::uint64_t v = outer << low;
    for (int i = 0; i < npos; ++i) {
      const int p = positions[i];
      const std::uint64_t below = v & ((std::uint64_t{1} << p) - 1);
      v = ((v >> p) << (p + 1)) | below;
    }
    fn(v | fixed_value, run);
  }
}

}  // namespace

int default_qubit_cap() {
  if (const char* env = std::getenv("QPIPE_QUBIT_CAP")) {
    const std::string_view s(env);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size() && value > 0) return value;
  }
  return kDefaultQubitCap;
}

StateVector::StateVector(int num_qubits, int qubit_cap) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw ArgumentError("a statevector needs at least one qubit");
  if (num_qubits > qubit_cap || num_qubits > 40) throw ResourceLimitError(num_qubits, qubit_cap);
  amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  amps_[0] = Complex{1.0, 0.0};
}

StateVector StateVector::zero(const RegisterLayout& layout, int qubit_cap) {
  layout.validate();
  return StateVector(layout.total_qubits(), qubit_cap);
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || !std::has_single_bit(size)) {
    throw ArgumentError("amplitude count must be a power of two >= 2");
  }
  StateVector s(std::countr_zero(size), 64);
  s.amps_ = std::move(amplitudes);
  return s;
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    std::ostringstream os;
    os << "qubit index " << qubit << " out of range for " << num_qubits_ << " qubits";
    throw ArgumentError(os.str());
  }
}

void StateVector::apply_hadamard(int target) {
  check_qubit(target);
  const auto& k = kernels::active_kernels();
  if (target == 0) {
    k.butterfly_adjacent(amps_.data(), amps_.size() / 2);
    return;
  }
  const std::uint64_t stride = std::uint64_t{1} << target;
  for_each_run(num_qubits_, stride, 0, [&](std::uint64_t base, std::uint64_t len) {
    k.butterfly(amps_.data() + base, amps_.data() + base + stride, len);
  });
}

void StateVector::apply_pauli_x(int target) {
  check_qubit(target);
  const auto& k = kernels::active_kernels();
  if (target == 0) {
    k.swap_adjacent(amps_.data(), amps_.size() / 2);
    return;
  }
  const std::uint64_t stride = std::uint64_t{1} << target;
  for_each_run(num_qubits_, stride, 0, [&](std::uint64_t base, std::uint64_t len) {
    k.swap(amps_.data() + base, amps_.data() + base + stride, len);
  });
}

void StateVector::apply_controlled_phase(std::span<const int> controls, int target, double angle) {
  check_qubit(target);
  if (!std::isfinite(angle)) throw ArgumentError("controlled-phase angle must be finite");
  std::uint64_t mask = std::uint64_t{1} << target;
  for (int c : controls) {
    check_qubit(c);
    const std::uint64_t bit = std::uint64_t{1} << c;
    if (mask & bit) {
      std::ostringstream os;
      os << "controlled-phase qubit " << c << " repeats the target or another control";
      throw ArgumentError(os.str());
    }
    mask |= bit;
  }
  if (angle == 0.0) return;
  const Complex phase = std::polar(1.0, angle);
  const auto& k = kernels::active_kernels();
  for_each_run(num_qubits_, mask, mask, [&](std::uint64_t base, std::uint64_t len) {
    k.rotate(amps_.data() + base, len, phase);
  });
}

void StateVector::apply_swap(int a, int b) {
  check_qubit(a);
  check_qubit(b);
  if (a == b) throw ArgumentError("swap needs two distinct qubits");
  const std::uint64_t bit_a = std::uint64_t{1} << a;
  const std::uint64_t bit_b = std::uint64_t{1} << b;
  const auto& k = kernels::active_kernels();
  // Runs with bit a set and bit b clear; the partner run has them exchanged.
  for_each_run(num_qubits_, bit_a | bit_b, bit_a, [&](std::uint64_t base, std::uint64_t len) {
    k.swap(amps_.data() + base, amps_.data() + (base ^ (bit_a | bit_b)), len);
  });
}

void StateVector::apply(const GateOp& op) {
  switch (op.kind) {
    case GateKind::Hadamard:
      apply_hadamard(op.target);
      break;
    case GateKind::PauliX:
      apply_pauli_x(op.target);
      break;
    case GateKind::ControlledPhase:
      apply_controlled_phase(op.controls, op.target, op.angle);
      break;
    case GateKind::Swap:
      apply_swap(op.target, op.partner);
      break;
  }
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const Complex& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void apply_inverse_qft(StateVector& state, const RegisterLayout& layout) {
  layout.validate();
  if (layout.total_qubits() != state.num_qubits()) {
    throw ArgumentError("inverse QFT register does not match the statevector layout");
  }
  for (const GateOp& op : inverse_qft_gates(layout)) state.apply(op);
}

JointDistribution::JointDistribution(RegisterLayout layout, std::vector<double> probabilities)
    : layout_(layout), probs_(std::move(probabilities)) {
  layout_.validate();
  if (probs_.size() != (std::size_t{1} << layout_.total_qubits())) {
    throw ArgumentError("joint distribution size does not match the layout");
  }
}

std::vector<double> JointDistribution::column(std::uint64_t x) const {
  if (x >= layout_.positions()) throw ArgumentError("position index out of range");
  std::vector<double> out(layout_.estimation_bins());
  for (std::uint64_t k = 0; k < out.size(); ++k) out[k] = (*this)(k, x);
  return out;
}

double JointDistribution::total() const {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

JointDistribution marginal_distribution(const StateVector& state, const RegisterLayout& layout) {
  layout.validate();
  if (layout.total_qubits() != state.num_qubits()) {
    throw ArgumentError("layout does not match the statevector qubit count");
  }
  std::vector<double> probs(state.size());
  kernels::active_kernels().abs2(state.amplitudes().data(), probs.data(), probs.size());
  return JointDistribution(layout, std::move(probs));
}

}  // namespace qpipe
