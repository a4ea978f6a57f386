#pragma once

#include "sicnet/kernels.hpp"

namespace sicnet::kernels {

#if defined(SICNET_BUILD_AVX2)
const KernelTable& avx2_table_impl();
#endif

}  // namespace sicnet::kernels
