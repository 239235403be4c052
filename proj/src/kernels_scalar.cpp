#include "vs360/kernels.hpp"

#include <cmath>

namespace vs360::kernels {
namespace {

std::uint64_t sum_u8_scalar(const std::uint8_t* p, std::size_t n) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return s;
}

void minmax_u8_scalar(const std::uint8_t* p, std::size_t n, std::uint8_t* lo, std::uint8_t* hi) {
    std::uint8_t mn = p[0], mx = p[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (p[i] < mn) mn = p[i];
        if (p[i] > mx) mx = p[i];
    }
    *lo = mn;
    *hi = mx;
}

std::size_t count_gt_u8_scalar(const std::uint8_t* p, std::size_t n, std::uint8_t t) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (p[i] > t) ? 1 : 0;
    return c;
}

void rgb_to_gray_u8_scalar(const std::uint8_t* rgb, std::size_t n_px, std::uint8_t* gray) {
    for (std::size_t i = 0; i < n_px; ++i) {
        const std::uint32_t r = rgb[3 * i + 0], g = rgb[3 * i + 1], b = rgb[3 * i + 2];
        gray[i] = static_cast<std::uint8_t>((77u * r + 150u * g + 29u * b + 128u) >> 8);
    }
}

void u8_to_f64_scalar(const std::uint8_t* p, std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(p[i]);
}

double sum_f64_scalar(const double* p, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return s;
}

void sub_scale_f64_scalar(const double* a, double shift, const double* w, double* out,
                          std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (a[i] - shift) * w[i];
}

double min_sum_scaled_f64_scalar(const double* p, const double* q, std::size_t n, double ps,
                                 double qs) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = p[i] * ps, b = q[i] * qs;
        s += a < b ? a : b;
    }
    return s;
}

void centered_moments_f64_scalar(const double* x, const double* y, std::size_t n, double mx,
                                 double my, double* sxy, double* sxx, double* syy) {
    double axy = 0.0, axx = 0.0, ayy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        axy += dx * dy;
        axx += dx * dx;
        ayy += dy * dy;
    }
    *sxy = axy;
    *sxx = axx;
    *syy = ayy;
}

void normalize_f64_to_u8_scalar(const double* p, std::size_t n, double lo, double scale,
                                std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::floor((p[i] - lo) * scale + 0.5);
        if (v < 0.0) v = 0.0;
        if (v > 255.0) v = 255.0;
        out[i] = static_cast<std::uint8_t>(v);
    }
}

std::size_t argmax_f64_scalar(const double* p, std::size_t n) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (p[i] > p[best]) best = i;
    return best;
}

}  // namespace

const KernelTable& scalar() {
    static const KernelTable table = {
        "scalar",
        sum_u8_scalar,
        minmax_u8_scalar,
        count_gt_u8_scalar,
        rgb_to_gray_u8_scalar,
        u8_to_f64_scalar,
        sum_f64_scalar,
        sub_scale_f64_scalar,
        min_sum_scaled_f64_scalar,
        centered_moments_f64_scalar,
        normalize_f64_to_u8_scalar,
        argmax_f64_scalar,
    };
    return table;
}

}  // namespace vs360::kernels
