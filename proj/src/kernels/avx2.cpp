// AVX2 statevector kernels. One __m256d holds two complex doubles laid out as
// [re0, im0, re1, im1]. FMA is deliberately not enabled for this file so the
// results stay bit-identical to the scalar reference.

#include <immintrin.h>

#include <utility>

#include "tables.hpp"

namespace qpipe::kernels::detail {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }
inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }

void butterfly(cplx* lo, cplx* hi, std::size_t len) {
  const __m256d s = _mm256_set1_pd(kInvSqrt2);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d a = _mm256_loadu_pd(dp(lo + i));
    const __m256d b = _mm256_loadu_pd(dp(hi + i));
    _mm256_storeu_pd(dp(lo + i), _mm256_mul_pd(_mm256_add_pd(a, b), s));
    _mm256_storeu_pd(dp(hi + i), _mm256_mul_pd(_mm256_sub_pd(a, b), s));
  }
  for (; i < len; ++i) {
    const cplx a = lo[i];
    const cplx b = hi[i];
    lo[i] = (a + b) * kInvSqrt2;
    hi[i] = (a - b) * kInvSqrt2;
  }
}

void butterfly_adjacent(cplx* data, std::size_t pairs) {
  const __m256d s = _mm256_set1_pd(kInvSqrt2);
  for (std::size_t i = 0; i < pairs; ++i) {
    double* p = dp(data + 2 * i);
    const __m256d v = _mm256_loadu_pd(p);             // [a, b]
    const __m256d w = _mm256_permute2f128_pd(v, v, 1);  // [b, a]
    const __m256d sum = _mm256_add_pd(v, w);            // [a+b, a+b]
    const __m256d diff = _mm256_sub_pd(v, w);           // [a-b, b-a]
    const __m256d r = _mm256_permute2f128_pd(sum, diff, 0x20);
    _mm256_storeu_pd(p, _mm256_mul_pd(r, s));
  }
}

void swap(cplx* lo, cplx* hi, std::size_t len) {
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d a = _mm256_loadu_pd(dp(lo + i));
    const __m256d b = _mm256_loadu_pd(dp(hi + i));
    _mm256_storeu_pd(dp(lo + i), b);
    _mm256_storeu_pd(dp(hi + i), a);
  }
  for (; i < len; ++i) std::swap(lo[i], hi[i]);
}

void swap_adjacent(cplx* data, std::size_t pairs) {
  for (std::size_t i = 0; i < pairs; ++i) {
    double* p = dp(data + 2 * i);
    const __m256d v = _mm256_loadu_pd(p);
    _mm256_storeu_pd(p, _mm256_permute2f128_pd(v, v, 1));
  }
}

void rotate(cplx* data, std::size_t len, cplx phase) {
  const double pr = phase.real();
  const double pi = phase.imag();
  const __m256d vr = _mm256_set1_pd(pr);
  const __m256d vi = _mm256_set1_pd(pi);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    double* p = dp(data + i);
    const __m256d x = _mm256_loadu_pd(p);          // [re, im, ...]
    const __m256d xs = _mm256_permute_pd(x, 0x5);  // [im, re, ...]
    const __m256d t1 = _mm256_mul_pd(x, vr);       // [re*pr, im*pr]
    const __m256d t2 = _mm256_mul_pd(xs, vi);      // [im*pi, re*pi]
    _mm256_storeu_pd(p, _mm256_addsub_pd(t1, t2));  // [re*pr - im*pi, im*pr + re*pi]
  }
  for (; i < len; ++i) {
    const double re = data[i].real();
    const double im = data[i].imag();
    data[i] = cplx(re * pr - im * pi, im * pr + re * pi);
  }
}

void abs2(const cplx* data, double* out, std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d a = _mm256_loadu_pd(dp(data + i));
    const __m256d b = _mm256_loadu_pd(dp(data + i + 2));
    // hadd yields [|c0|, |c2|, |c1|, |c3|]; reorder lanes 0,2,1,3.
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; i < len; ++i) {
    const double re = data[i].real();
    const double im = data[i].imag();
    out[i] = re * re + im * im;
  }
}

constexpr KernelTable kAvx2{
    "avx2", &butterfly, &butterfly_adjacent, &swap, &swap_adjacent, &rotate, &abs2,
};

}  // namespace

const KernelTable& avx2_table() { return kAvx2; }

}  // namespace qpipe::kernels::detail
