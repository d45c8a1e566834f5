#pragma once

#include <cstddef>
#include <cstdint>

namespace memorec::simd {

namespace scalar {
double gatherDot(const std::uint32_t* index, const double* values, std::size_t n,
                 const double* dense);
double gatherScaledSquareSum(const std::uint32_t* index, const double* values, std::size_t n,
                             const double* scale);
}  // namespace scalar

#if defined(MEMOREC_HAVE_AVX2)
namespace avx2 {
double gatherDot(const std::uint32_t* index, const double* values, std::size_t n,
                 const double* dense);
double gatherScaledSquareSum(const std::uint32_t* index, const double* values, std::size_t n,
                             const double* scale);
}  // namespace avx2
#endif

}  // namespace memorec::simd
