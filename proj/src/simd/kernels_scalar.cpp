#include "kernels_impl.hpp"

namespace memorec::simd::scalar {

double gatherDot(const std::uint32_t* index, const double* values, std::size_t n,
                 const double* dense) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += values[i] * dense[index[i]];
    return sum;
}

double gatherScaledSquareSum(const std::uint32_t* index, const double* values, std::size_t n,
                             const double* scale) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = values[i] * scale[index[i]];
        sum += v * v;
    }
    return sum;
}

}  // namespace memorec::simd::scalar
