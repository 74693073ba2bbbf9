#pragma once

#include "qpipe/kernels.hpp"

namespace qpipe::kernels::detail {

#if defined(QPIPE_HAVE_AVX2)
// Defined in avx2.cpp, which is the only translation unit built with -mavx2.
const KernelTable& avx2_table();
#endif

}  // namespace qpipe::kernels::detail
