#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"
#include "memorec/simd/kernels.hpp"

namespace memorec::simd {

namespace {

constexpr Kernels kScalar{&scalar::gatherDot, &scalar::gatherScaledSquareSum};
#if defined(MEMOREC_HAVE_AVX2)
constexpr Kernels kAvx2{&avx2::gatherDot, &avx2::gatherScaledSquareSum};
#endif

Level chooseLevel() noexcept {
    if (const char* forced = std::getenv("MEMOREC_SIMD")) {
        const std::string_view name{forced};
        if (name == "scalar") return Level::Scalar;
        if (name == "avx2" && isSupported(Level::Avx2)) return Level::Avx2;
    }
    return detectLevel();
}

}  // namespace

std::string_view toString(Level level) noexcept {
    switch (level) {
        case Level::Scalar: return "scalar";
        case Level::Avx2: return "avx2";
    }
    return "?";
}

bool isSupported(Level level) noexcept {
    switch (level) {
        case Level::Scalar: return true;
        case Level::Avx2:
#if defined(MEMOREC_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

Level detectLevel() noexcept {
    return isSupported(Level::Avx2) ? Level::Avx2 : Level::Scalar;
}

Level activeLevel() noexcept {
    static const Level level = chooseLevel();
    return level;
}

const Kernels& kernelsFor(Level level) noexcept {
#if defined(MEMOREC_HAVE_AVX2)
    if (level == Level::Avx2 && isSupported(Level::Avx2)) return kAvx2;
#endif
    (void)level;
    return kScalar;
}

const Kernels& kernels() noexcept {
    static const Kernels& table = kernelsFor(activeLevel());
    return table;
}

}  // namespace memorec::simd
