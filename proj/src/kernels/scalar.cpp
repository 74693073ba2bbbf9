#include <cmath>

#include "qpipe/kernels.hpp"

namespace qpipe::kernels {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void butterfly(cplx* lo, cplx* hi, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    const cplx a = lo[i];
    const cplx b = hi[i];
    lo[i] = (a + b) * kInvSqrt2;
    hi[i] = (a - b) * kInvSqrt2;
  }
}

void butterfly_adjacent(cplx* data, std::size_t pairs) {
  for (std::size_t i = 0; i < pairs; ++i) {
    const cplx a = data[2 * i];
    const cplx b = data[2 * i + 1];
    data[2 * i] = (a + b) * kInvSqrt2;
    data[2 * i + 1] = (a - b) * kInvSqrt2;
  }
}

void swap(cplx* lo, cplx* hi, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) std::swap(lo[i], hi[i]);
}

void swap_adjacent(cplx* data, std::size_t pairs) {
  for (std::size_t i = 0; i < pairs; ++i) std::swap(data[2 * i], data[2 * i + 1]);
}

// Written out rather than using operator* so the arithmetic matches the AVX2
// lane order exactly.
void rotate(cplx* data, std::size_t len, cplx phase) {
  const double pr = phase.real();
  const double pi = phase.imag();
  for (std::size_t i = 0; i < len; ++i) {
    const double re = data[i].real();
    const double im = data[i].imag();
    data[i] = cplx(re * pr - im * pi, im * pr + re * pi);
  }
}

void abs2(const cplx* data, double* out, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    const double re = data[i].real();
    const double im = data[i].imag();
    out[i] = re * re + im * im;
  }
}

constexpr KernelTable kScalar{
    "scalar", &butterfly, &butterfly_adjacent, &swap, &swap_adjacent, &rotate, &abs2,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace qpipe::kernels
