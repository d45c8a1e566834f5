// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace memorec::simd::avx2 {

namespace {

inline double horizontalSum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Item indices are below 2^31 (the graph universe is bounded by that), so the
// signed 32-bit gather is safe.
inline __m256d gather4(const double* base, const std::uint32_t* index) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(index));
    return _mm256_i32gather_pd(base, idx, 8);
}

}  // namespace

double gatherDot(const std::uint32_t* index, const double* values, std::size_t n,
                 const double* dense) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(values + i), gather4(dense, index + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(values + i + 4), gather4(dense, index + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(values + i), gather4(dense, index + i), acc0);
        i += 4;
    }
    double sum = horizontalSum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) sum += values[i] * dense[index[i]];
    return sum;
}

double gatherScaledSquareSum(const std::uint32_t* index, const double* values, std::size_t n,
                             const double* scale) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(values + i), gather4(scale, index + i));
        const __m256d b =
            _mm256_mul_pd(_mm256_loadu_pd(values + i + 4), gather4(scale, index + i + 4));
        acc0 = _mm256_fmadd_pd(a, a, acc0);
        acc1 = _mm256_fmadd_pd(b, b, acc1);
    }
    if (i + 4 <= n) {
        const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(values + i), gather4(scale, index + i));
        acc0 = _mm256_fmadd_pd(a, a, acc0);
        i += 4;
    }
    double sum = horizontalSum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double v = values[i] * scale[index[i]];
        sum += v * v;
    }
    return sum;
}

}  // namespace memorec::simd::avx2
