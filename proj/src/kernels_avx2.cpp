// AVX2 backend. Built only on x86-64 with -mavx2 on this translation unit;
// selection happens at runtime in kernels_dispatch.cpp. Tails fall through
// to the scalar reference so a vector bug cannot hide in remainder handling.

#include "vs360/kernels.hpp"

#ifdef VS360_HAVE_AVX2

#include <immintrin.h>

#include <cmath>

namespace vs360::kernels {
namespace {

std::uint64_t sum_u8_avx2(const std::uint8_t* p, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = zero;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(v, zero));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    return s + scalar().sum_u8(p + i, n - i);
}

void minmax_u8_avx2(const std::uint8_t* p, std::size_t n, std::uint8_t* lo, std::uint8_t* hi) {
    std::uint8_t mn = p[0], mx = p[0];
    std::size_t i = 0;
    if (n >= 32) {
        __m256i vmn = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
        __m256i vmx = vmn;
        for (i = 32; i + 32 <= n; i += 32) {
            const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
            vmn = _mm256_min_epu8(vmn, v);
            vmx = _mm256_max_epu8(vmx, v);
        }
        alignas(32) std::uint8_t bn[32], bx[32];
        _mm256_store_si256(reinterpret_cast<__m256i*>(bn), vmn);
        _mm256_store_si256(reinterpret_cast<__m256i*>(bx), vmx);
        for (int k = 0; k < 32; ++k) {
            if (bn[k] < mn) mn = bn[k];
            if (bx[k] > mx) mx = bx[k];
        }
    }
    for (; i < n; ++i) {
        if (p[i] < mn) mn = p[i];
        if (p[i] > mx) mx = p[i];
    }
    *lo = mn;
    *hi = mx;
}

std::size_t count_gt_u8_avx2(const std::uint8_t* p, std::size_t n, std::uint8_t t) {
    if (t == 255) return 0;
    // unsigned v > t  <=>  max(v, t+1) == v
    const __m256i vt1 = _mm256_set1_epi8(static_cast<char>(t + 1));
    std::size_t c = 0, i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        const __m256i ge = _mm256_cmpeq_epi8(_mm256_max_epu8(v, vt1), v);
        c += static_cast<std::size_t>(
            __builtin_popcount(static_cast<unsigned>(_mm256_movemask_epi8(ge))));
    }
    return c + scalar().count_gt_u8(p + i, n - i, t);
}

void rgb_to_gray_u8_avx2(const std::uint8_t* rgb, std::size_t n_px, std::uint8_t* gray) {
    const __m128i deint = _mm_setr_epi8(0, 3, 6, 9, 1, 4, 7, 10, 2, 5, 8, 11, -1, -1, -1, -1);
    const __m256i wr = _mm256_set1_epi32(77), wg = _mm256_set1_epi32(150),
                  wb = _mm256_set1_epi32(29), half = _mm256_set1_epi32(128);
    std::size_t i = 0;
    // each iteration reads 16 bytes at offsets 3i and 3i+12; keep both in bounds
    while (i + 8 <= n_px && 3 * i + 28 <= 3 * n_px) {
        const __m128i a = _mm_loadu_si128(reinterpret_cast<const __m128i*>(rgb + 3 * i));
        const __m128i b = _mm_loadu_si128(reinterpret_cast<const __m128i*>(rgb + 3 * i + 12));
        const __m128i sa = _mm_shuffle_epi8(a, deint);  // r0..3 g0..3 b0..3 0000
        const __m128i sb = _mm_shuffle_epi8(b, deint);  // r4..7 g4..7 b4..7 0000
        const __m128i rg = _mm_unpacklo_epi32(sa, sb);  // r0..7 g0..7
        const __m128i bb = _mm_unpackhi_epi32(sa, sb);  // b0..7 ----
        const __m256i r32 = _mm256_cvtepu8_epi32(rg);
        const __m256i g32 = _mm256_cvtepu8_epi32(_mm_srli_si128(rg, 8));
        const __m256i b32 = _mm256_cvtepu8_epi32(bb);
        __m256i y = _mm256_mullo_epi32(r32, wr);
        y = _mm256_add_epi32(y, _mm256_mullo_epi32(g32, wg));
        y = _mm256_add_epi32(y, _mm256_mullo_epi32(b32, wb));
        y = _mm256_srli_epi32(_mm256_add_epi32(y, half), 8);
        const __m256i y16 = _mm256_packus_epi32(y, y);
        const __m128i u16 = _mm_unpacklo_epi64(_mm256_castsi256_si128(y16),
                                               _mm256_extracti128_si256(y16, 1));
        const __m128i u8 = _mm_packus_epi16(u16, u16);
        _mm_storel_epi64(reinterpret_cast<__m128i*>(gray + i), u8);
        i += 8;
    }
    scalar().rgb_to_gray_u8(rgb + 3 * i, n_px - i, gray + i);
}

void u8_to_f64_avx2(const std::uint8_t* p, std::size_t n, double* out) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(p + i));
        const __m256i w = _mm256_cvtepu8_epi32(bytes);
        _mm256_storeu_pd(out + i, _mm256_cvtepi32_pd(_mm256_castsi256_si128(w)));
        _mm256_storeu_pd(out + i + 4, _mm256_cvtepi32_pd(_mm256_extracti128_si256(w, 1)));
    }
    scalar().u8_to_f64(p + i, n - i, out + i);
}

double reduce_pd(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

double sum_f64_avx2(const double* p, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + i));
    double s = reduce_pd(acc);
    for (; i < n; ++i) s += p[i];
    return s;
}

void sub_scale_f64_avx2(const double* a, double shift, const double* w, double* out,
                        std::size_t n) {
    const __m256d vs = _mm256_set1_pd(shift);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(a + i), vs);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(v, _mm256_loadu_pd(w + i)));
    }
    for (; i < n; ++i) out[i] = (a[i] - shift) * w[i];
}

double min_sum_scaled_f64_avx2(const double* p, const double* q, std::size_t n, double ps,
                               double qs) {
    const __m256d vps = _mm256_set1_pd(ps), vqs = _mm256_set1_pd(qs);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(p + i), vps);
        const __m256d b = _mm256_mul_pd(_mm256_loadu_pd(q + i), vqs);
        acc = _mm256_add_pd(acc, _mm256_min_pd(a, b));
    }
    double s = reduce_pd(acc);
    for (; i < n; ++i) {
        const double a = p[i] * ps, b = q[i] * qs;
        s += a < b ? a : b;
    }
    return s;
}

void centered_moments_f64_avx2(const double* x, const double* y, std::size_t n, double mx,
                               double my, double* sxy, double* sxx, double* syy) {
    const __m256d vmx = _mm256_set1_pd(mx), vmy = _mm256_set1_pd(my);
    __m256d axy = _mm256_setzero_pd(), axx = _mm256_setzero_pd(), ayy = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vmx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vmy);
        axy = _mm256_add_pd(axy, _mm256_mul_pd(dx, dy));
        axx = _mm256_add_pd(axx, _mm256_mul_pd(dx, dx));
        ayy = _mm256_add_pd(ayy, _mm256_mul_pd(dy, dy));
    }
    double rxy = reduce_pd(axy), rxx = reduce_pd(axx), ryy = reduce_pd(ayy);
    for (; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        rxy += dx * dy;
        rxx += dx * dx;
        ryy += dy * dy;
    }
    *sxy = rxy;
    *sxx = rxx;
    *syy = ryy;
}

void normalize_f64_to_u8_avx2(const double* p, std::size_t n, double lo, double scale,
                              std::uint8_t* out) {
    const __m256d vlo = _mm256_set1_pd(lo), vsc = _mm256_set1_pd(scale),
                  vhalf = _mm256_set1_pd(0.5), vmin = _mm256_setzero_pd(),
                  vmax = _mm256_set1_pd(255.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(p + i), vlo), vsc);
        v = _mm256_floor_pd(_mm256_add_pd(v, vhalf));
        v = _mm256_min_pd(_mm256_max_pd(v, vmin), vmax);
        const __m128i i32 = _mm256_cvttpd_epi32(v);
        const __m128i u8 = _mm_packus_epi16(_mm_packus_epi32(i32, i32), i32);
        const int packed = _mm_cvtsi128_si32(u8);
        out[i + 0] = static_cast<std::uint8_t>(packed);
        out[i + 1] = static_cast<std::uint8_t>(packed >> 8);
        out[i + 2] = static_cast<std::uint8_t>(packed >> 16);
        out[i + 3] = static_cast<std::uint8_t>(packed >> 24);
    }
    scalar().normalize_f64_to_u8(p + i, n - i, lo, scale, out + i);
}

std::size_t argmax_f64_avx2(const double* p, std::size_t n) {
    if (n < 8) return scalar().argmax_f64(p, n);
    __m256d bestv = _mm256_loadu_pd(p);
    __m256i besti = _mm256_setr_epi64x(0, 1, 2, 3);
    __m256i idx = besti;
    const __m256i step = _mm256_set1_epi64x(4);
    std::size_t i = 4;
    for (; i + 4 <= n; i += 4) {
        idx = _mm256_add_epi64(idx, step);
        const __m256d v = _mm256_loadu_pd(p + i);
        const __m256d gt = _mm256_cmp_pd(v, bestv, _CMP_GT_OQ);
        bestv = _mm256_blendv_pd(bestv, v, gt);
        besti = _mm256_blendv_epi8(besti, idx, _mm256_castpd_si256(gt));
    }
    alignas(32) double vals[4];
    alignas(32) std::int64_t idxs[4];
    _mm256_store_pd(vals, bestv);
    _mm256_store_si256(reinterpret_cast<__m256i*>(idxs), besti);
    double bv = vals[0];
    std::size_t bi = static_cast<std::size_t>(idxs[0]);
    for (int k = 1; k < 4; ++k) {
        if (vals[k] > bv || (vals[k] == bv && static_cast<std::size_t>(idxs[k]) < bi)) {
            bv = vals[k];
            bi = static_cast<std::size_t>(idxs[k]);
        }
    }
    for (; i < n; ++i) {
        if (p[i] > bv) {
            bv = p[i];
            bi = i;
        }
    }
    return bi;
}

}  // namespace

const KernelTable* avx2() {
    static const KernelTable table = {
        "avx2",
        sum_u8_avx2,
        minmax_u8_avx2,
        count_gt_u8_avx2,
        rgb_to_gray_u8_avx2,
        u8_to_f64_avx2,
        sum_f64_avx2,
        sub_scale_f64_avx2,
        min_sum_scaled_f64_avx2,
        centered_moments_f64_avx2,
        normalize_f64_to_u8_avx2,
        argmax_f64_avx2,
    };
    return &table;
}

}  // namespace vs360::kernels

#else

namespace vs360::kernels {
const KernelTable* avx2() { return nullptr; }
}  // namespace vs360::kernels

#endif  // VS360_HAVE_AVX2
