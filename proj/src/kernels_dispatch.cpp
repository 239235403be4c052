#include "vs360/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "vs360/image.hpp"

namespace vs360::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable& pick() {
    const char* env = std::getenv("VS360_KERNELS");
    const std::string req = env ? env : "";
    if (req == "scalar") return scalar();
    if (req == "avx2") {
        const KernelTable* t = avx2();
        if (!t || !cpu_has_avx2())
            throw std::runtime_error("VS360_KERNELS=avx2 requested but AVX2 is unavailable");
        return *t;
    }
    if (!req.empty() && req != "auto")
        throw std::runtime_error("VS360_KERNELS: unknown backend '" + req + "'");
    const KernelTable* t = avx2();
    return (t && cpu_has_avx2()) ? *t : scalar();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& chosen = pick();
    return chosen;
}

}  // namespace vs360::kernels

namespace vs360 {

Image8 to_gray(const Image8& img) {
    if (img.channels == 1) return img;
    Image8 out(img.width, img.height, 1);
    kernels::active().rgb_to_gray_u8(img.data.data(), img.pixel_count(), out.data.data());
    return out;
}

bool is_constant(const Image8& img) {
    if (img.data.empty()) return true;
    std::uint8_t lo, hi;
    kernels::active().minmax_u8(img.data.data(), img.data.size(), &lo, &hi);
    return lo == hi;
}

}  // namespace vs360
