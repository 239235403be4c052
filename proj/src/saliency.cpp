#include "vs360/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "vs360/fft.hpp"
#include "vs360/image_io.hpp"
#include "vs360/kernels.hpp"

namespace vs360 {
namespace {

std::string index_filename(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%06zu.png", index);
    return buf;
}

}  // namespace

SaliencyMap SaliencyMap::from_gray(const Image8& img) {
    const Image8 gray = to_gray(img);
    SaliencyMap m(gray.width, gray.height);
    m.data = gray.data;
    return m;
}

SaliencySequence load_saliency_sequence(const std::filesystem::path& directory,
                                        std::size_t expected_count, int expected_w,
                                        int expected_h) {
    if (!std::filesystem::is_directory(directory))
        throw std::runtime_error("saliency directory not found: " + directory.string());
    SaliencySequence seq;
    seq.source = SaliencySource::External;
    seq.maps.reserve(expected_count);
    for (std::size_t i = 0; i < expected_count; ++i) {
        const auto path = directory / index_filename(i);
        if (!std::filesystem::exists(path))
            throw std::runtime_error("saliency sequence has a gap at index " +
                                     std::to_string(i) + " (missing " + path.string() + ")");
        const Image8 img = load_image(path);
        if (img.width != expected_w || img.height != expected_h)
            throw std::runtime_error("saliency map dimension mismatch in " + path.string() +
                                     ": got " + std::to_string(img.width) + "x" +
                                     std::to_string(img.height) + ", expected " +
                                     std::to_string(expected_w) + "x" +
                                     std::to_string(expected_h));
        seq.maps.push_back(SaliencyMap::from_gray(img));
    }
    return seq;
}

void save_saliency_sequence(const std::filesystem::path& directory,
                            const SaliencySequence& seq) {
    std::filesystem::create_directories(directory);
    for (std::size_t i = 0; i < seq.maps.size(); ++i) {
        const auto& m = seq.maps[i];
        Image8 img(m.width, m.height, 1);
        img.data = m.data;
        save_png(directory / index_filename(i), img);
    }
}

namespace {

// bilinear resample of a double grid
std::vector<double> resize_field(const std::vector<double>& src, int sw, int sh, int dw, int dh) {
    std::vector<double> dst(static_cast<std::size_t>(dw) * dh);
    for (int y = 0; y < dh; ++y) {
        const double fy = std::clamp((y + 0.5) * sh / static_cast<double>(dh) - 0.5, 0.0,
                                     sh - 1.0);
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, sh - 1);
        const double wy = fy - y0;
        for (int x = 0; x < dw; ++x) {
            const double fx = std::clamp((x + 0.5) * sw / static_cast<double>(dw) - 0.5, 0.0,
                                         sw - 1.0);
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, sw - 1);
            const double wx = fx - x0;
            const double v00 = src[static_cast<std::size_t>(y0) * sw + x0];
            const double v10 = src[static_cast<std::size_t>(y0) * sw + x1];
            const double v01 = src[static_cast<std::size_t>(y1) * sw + x0];
            const double v11 = src[static_cast<std::size_t>(y1) * sw + x1];
            dst[static_cast<std::size_t>(y) * dw + x] =
                (1 - wy) * ((1 - wx) * v00 + wx * v10) + wy * ((1 - wx) * v01 + wx * v11);
        }
    }
    return dst;
}

// separable Gaussian blur, reflecting borders
void gaussian_blur(std::vector<double>& field, int w, int h, double sigma) {
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double ksum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
        ksum += kernel[i + radius];
    }
    for (auto& k : kernel) k /= ksum;

    const auto reflect = [](int i, int n) {
        while (i < 0 || i >= n) {
            if (i < 0) i = -i - 1;
            if (i >= n) i = 2 * n - 1 - i;
        }
        return i;
    };

    std::vector<double> tmp(field.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] *
                       field[static_cast<std::size_t>(y) * w + reflect(x + i, w)];
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < h; ++y) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] *
                       tmp[static_cast<std::size_t>(reflect(y + i, h)) * w + x];
            field[static_cast<std::size_t>(y) * w + x] = acc;
        }
}

}  // namespace

SaliencyMap spectral_residual_saliency(const Image8& frame) {
    if (frame.width < 16 || frame.height < 16)
        throw std::invalid_argument("spectral_residual_saliency: frame must be at least 16x16");

    const Image8 gray = to_gray(frame);
    if (is_constant(gray)) return SaliencyMap(frame.width, frame.height, 0);

    // analyze at reduced scale (longest side 64), classical for this method
    const int longest = std::max(gray.width, gray.height);
    const double scale = std::min(1.0, 64.0 / longest);
    const int aw = std::max(16, static_cast<int>(std::lround(gray.width * scale)));
    const int ah = std::max(16, static_cast<int>(std::lround(gray.height * scale)));
    const std::size_t an = static_cast<std::size_t>(aw) * ah;

    std::vector<double> full(gray.pixel_count());
    kernels::active().u8_to_f64(gray.data.data(), gray.pixel_count(), full.data());
    std::vector<double> small = resize_field(full, gray.width, gray.height, aw, ah);
    const double mean = kernels::active().sum_f64(small.data(), an) / static_cast<double>(an);
    for (auto& v : small) v -= mean;

    std::vector<std::complex<double>> spectrum(an);
    {
        std::vector<std::complex<double>> staging(an);
        for (std::size_t i = 0; i < an; ++i) staging[i] = small[i];
        fft::forward_2d(aw, ah, staging.data(), spectrum.data());
    }

    // log-amplitude residual against its local (3x3) average
    std::vector<double> log_amp(an), phase(an);
    for (std::size_t i = 0; i < an; ++i) {
        log_amp[i] = std::log(std::abs(spectrum[i]) + 1e-9);
        phase[i] = std::arg(spectrum[i]);
    }
    std::vector<double> residual(an);
    for (int y = 0; y < ah; ++y)
        for (int x = 0; x < aw; ++x) {
            double acc = 0.0;
            int cnt = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if (nx < 0 || nx >= aw || ny < 0 || ny >= ah) continue;
                    acc += log_amp[static_cast<std::size_t>(ny) * aw + nx];
                    ++cnt;
                }
            const std::size_t i = static_cast<std::size_t>(y) * aw + x;
            residual[i] = log_amp[i] - acc / cnt;
        }

    std::vector<std::complex<double>> shaped(an), back(an);
    for (std::size_t i = 0; i < an; ++i)
        shaped[i] = std::polar(std::exp(residual[i]), phase[i]);
    shaped[0] = 0.0;  // DC carries no structure after mean removal
    fft::inverse_2d(aw, ah, shaped.data(), back.data());

    std::vector<double> energy(an);
    for (std::size_t i = 0; i < an; ++i) {
        const double m = std::abs(back[i]) / static_cast<double>(an);
        energy[i] = m * m;
    }
    gaussian_blur(energy, aw, ah, 2.5);

    std::vector<double> up = resize_field(energy, aw, ah, frame.width, frame.height);
    double lo = up[0], hi = up[0];
    for (double v : up) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    SaliencyMap out(frame.width, frame.height, 0);
    if (hi > lo)
        kernels::active().normalize_f64_to_u8(up.data(), up.size(), lo, 255.0 / (hi - lo),
                                              out.data.data());
    return out;
}

namespace {

void require_same_dims(const SaliencyMap& a, const SaliencyMap& b, const char* op) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument(std::string(op) + ": dimension mismatch " +
                                    std::to_string(a.width) + "x" + std::to_string(a.height) +
                                    " vs " + std::to_string(b.width) + "x" +
                                    std::to_string(b.height));
}

bool map_constant(const SaliencyMap& m) {
    std::uint8_t lo, hi;
    kernels::active().minmax_u8(m.data.data(), m.data.size(), &lo, &hi);
    return lo == hi;
}

}  // namespace

double pearson_cc(const SaliencyMap& pred, const SaliencyMap& gt) {
    require_same_dims(pred, gt, "pearson_cc");
    if (pred.data.empty()) throw std::invalid_argument("pearson_cc: empty maps");
    const bool pc = map_constant(pred), gc = map_constant(gt);
    if (pc && gc)
        throw std::invalid_argument("pearson_cc: correlation undefined for two constant maps");
    if (pc || gc) return 0.0;  // zero covariance against a constant

    const auto& k = kernels::active();
    const std::size_t n = pred.data.size();
    std::vector<double> x(n), y(n);
    k.u8_to_f64(pred.data.data(), n, x.data());
    k.u8_to_f64(gt.data.data(), n, y.data());
    const double mx = k.sum_f64(x.data(), n) / static_cast<double>(n);
    const double my = k.sum_f64(y.data(), n) / static_cast<double>(n);
    double sxy, sxx, syy;
    k.centered_moments_f64(x.data(), y.data(), n, mx, my, &sxy, &sxx, &syy);
    return sxy / std::sqrt(sxx * syy);
}

double sim_metric(const SaliencyMap& pred, const SaliencyMap& gt) {
    require_same_dims(pred, gt, "sim_metric");
    if (pred.data.empty()) throw std::invalid_argument("sim_metric: empty maps");
    const auto& k = kernels::active();
    const std::size_t n = pred.data.size();
    const std::uint64_t sp = k.sum_u8(pred.data.data(), n);
    const std::uint64_t sq = k.sum_u8(gt.data.data(), n);
    if (sp == 0 || sq == 0)
        throw std::invalid_argument("sim_metric: zero-sum map has no distribution");
    std::vector<double> x(n), y(n);
    k.u8_to_f64(pred.data.data(), n, x.data());
    k.u8_to_f64(gt.data.data(), n, y.data());
    return k.min_sum_scaled_f64(x.data(), y.data(), n, 1.0 / static_cast<double>(sp),
                                1.0 / static_cast<double>(sq));
}

}  // namespace vs360
