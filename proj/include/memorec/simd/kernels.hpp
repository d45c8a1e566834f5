#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Gather-style reductions over sparse rows (item index + weight) against a dense
// per-item array. These are the inner loops of the corpus-wide cosine sweep.
//
// Every variant computes the same sum; only the association order differs, so
// results agree to rounding (checked by the equivalence tests).

namespace memorec::simd {

enum class Level { Scalar, Avx2 };

std::string_view toString(Level level) noexcept;

struct Kernels {
    // sum_i values[i] * dense[index[i]]
    double (*gatherDot)(const std::uint32_t* index, const double* values, std::size_t n,
                        const double* dense);
    // sum_i (values[i] * scale[index[i]])^2
    double (*gatherScaledSquareSum)(const std::uint32_t* index, const double* values,
                                    std::size_t n, const double* scale);
};

bool isSupported(Level level) noexcept;

/// Best level this CPU supports.
Level detectLevel() noexcept;

/// Level used by `kernels()`: `detectLevel()`, unless the MEMOREC_SIMD
/// environment variable ("scalar" or "avx2") selects a supported one.
Level activeLevel() noexcept;

/// Kernel table for a specific level; falls back to scalar when unsupported.
const Kernels& kernelsFor(Level level) noexcept;

const Kernels& kernels() noexcept;

inline double gatherDot(std::span<const std::uint32_t> index, std::span<const double> values,
                        std::span<const double> dense) {
    return kernels().gatherDot(index.data(), values.data(), index.size(), dense.data());
}

inline double gatherScaledSquareSum(std::span<const std::uint32_t> index,
                                    std::span<const double> values, std::span<const double> scale) {
    return kernels().gatherScaledSquareSum(index.data(), values.data(), index.size(), scale.data());
}

}  // namespace memorec::simd
