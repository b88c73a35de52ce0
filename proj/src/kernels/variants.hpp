#pragma once

#include "shiftkms/kernels.hpp"

namespace shiftkms::kernels::detail {

const KernelTable& scalar_variant() noexcept;
#if defined(SHIFTKMS_HAVE_AVX2)
const KernelTable& avx2_variant() noexcept;
#endif
#if defined(SHIFTKMS_HAVE_NEON)
const KernelTable& neon_variant() noexcept;
#endif

}  // namespace shiftkms::kernels::detail
