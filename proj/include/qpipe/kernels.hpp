#pragma once

// Inner loops of the statevector simulator.
//
// Every kernel exists as a scalar reference implementation and, where the
// build and the CPU allow it, an AVX2 variant. The active table is chosen once
// at first use; QPIPE_SIMD=scalar|avx2|auto in the environment overrides the
// choice. Both tables are reachable directly so tests can compare them.

#include <complex>
#include <cstddef>
#include <string_view>

namespace qpipe::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  /// lo[i], hi[i] <- (lo[i] + hi[i]) / sqrt2, (lo[i] - hi[i]) / sqrt2
  void (*butterfly)(cplx* lo, cplx* hi, std::size_t len);
  /// Same butterfly on interleaved pairs (data[2i], data[2i+1]); bit-0 Hadamard.
  void (*butterfly_adjacent)(cplx* data, std::size_t pairs);
  /// Exchange lo[i] and hi[i].
  void (*swap)(cplx* lo, cplx* hi, std::size_t len);
  /// Exchange data[2i] and data[2i+1]; bit-0 Pauli-X.
  void (*swap_adjacent)(cplx* data, std::size_t pairs);
  /// data[i] *= phase
  void (*rotate)(cplx* data, std::size_t len, cplx phase);
  /// out[i] = |data[i]|^2
  void (*abs2)(const cplx* data, double* out, std::size_t len);
};

const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when it was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// Table used by the simulator.
const KernelTable& active_kernels();

bool cpu_has_avx2();

}  // namespace qpipe::kernels
