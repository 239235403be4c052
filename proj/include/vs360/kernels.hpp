#pragma once

#include <cstddef>
#include <cstdint>

namespace vs360::kernels {

// Data-parallel inner loops used across the pipeline. Every entry has a
// scalar reference implementation; vector backends must agree with it
// exactly for the integer and elementwise kernels and to floating-point
// reduction tolerance for the reductions (tests/test_kernels.cpp pins this).
struct KernelTable {
    const char* name;

    // sum of n bytes
    std::uint64_t (*sum_u8)(const std::uint8_t* p, std::size_t n);
    // min/max of n bytes (n >= 1)
    void (*minmax_u8)(const std::uint8_t* p, std::size_t n, std::uint8_t* lo, std::uint8_t* hi);
    // number of bytes strictly greater than t
    std::size_t (*count_gt_u8)(const std::uint8_t* p, std::size_t n, std::uint8_t t);
    // interleaved RGB -> gray, fixed point (77*r + 150*g + 29*b + 128) >> 8
    void (*rgb_to_gray_u8)(const std::uint8_t* rgb, std::size_t n_px, std::uint8_t* gray);
    // widen bytes to doubles
    void (*u8_to_f64)(const std::uint8_t* p, std::size_t n, double* out);
    // sum of n doubles
    double (*sum_f64)(const double* p, std::size_t n);
    // out[i] = (a[i] - shift) * w[i]
    void (*sub_scale_f64)(const double* a, double shift, const double* w, double* out,
                          std::size_t n);
    // sum_i min(p[i]*ps, q[i]*qs)
    double (*min_sum_scaled_f64)(const double* p, const double* q, std::size_t n, double ps,
                                 double qs);
    // centered second moments: sxy/sxx/syy = sum (x-mx)(y-my), (x-mx)^2, (y-my)^2
    void (*centered_moments_f64)(const double* x, const double* y, std::size_t n, double mx,
                                 double my, double* sxy, double* sxx, double* syy);
    // out[i] = clamp(floor((p[i] - lo) * scale + 0.5), 0, 255)
    void (*normalize_f64_to_u8)(const double* p, std::size_t n, double lo, double scale,
                                std::uint8_t* out);
    // index of first occurrence of the maximum (n >= 1)
    std::size_t (*argmax_f64)(const double* p, std::size_t n);
};

// Scalar reference table; always available.
const KernelTable& scalar();

// AVX2 table, or nullptr when not compiled in or not supported by the CPU.
const KernelTable* avx2();

// Backend chosen at first use: best supported one, unless the environment
// variable VS360_KERNELS ("scalar" or "avx2") overrides the pick.
const KernelTable& active();

}  // namespace vs360::kernels
