#include "vs360/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace vs360::fft {
namespace {

// FFTW planning is not thread safe; execution through the new-array
// interface is. Plans are created once per shape with FFTW_UNALIGNED so
// they can run on arbitrary caller buffers.
struct PlanCache {
    std::mutex mutex;
    std::map<std::tuple<int, int, int>, fftw_plan> plans;

    fftw_plan get(int width, int height, int sign) {
        std::lock_guard<std::mutex> lock(mutex);
        const auto key = std::make_tuple(width, height, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        std::vector<fftw_complex> scratch_in(static_cast<std::size_t>(width) * height);
        std::vector<fftw_complex> scratch_out(scratch_in.size());
        fftw_plan plan = fftw_plan_dft_2d(height, width, scratch_in.data(), scratch_out.data(),
                                          sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw_plan_dft_2d failed");
        plans.emplace(key, plan);
        return plan;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(int width, int height, int sign, const std::complex<double>* in,
         std::complex<double>* out) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("fft: empty transform");
    fftw_plan plan = cache().get(width, height, sign);
    // Plans are created out of place, so aliased buffers need a staging copy.
    std::vector<std::complex<double>> staged;
    if (in == out) {
        staged.assign(in, in + static_cast<std::size_t>(width) * height);
        in = staged.data();
    }
    // fftw_execute_dft does not modify the input array for out-of-place
    // c2c plans, but takes a non-const pointer.
    auto* in_raw = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in));
    auto* out_raw = reinterpret_cast<fftw_complex*>(out);
    fftw_execute_dft(plan, in_raw, out_raw);
}

}  // namespace

void forward_2d(int width, int height, const std::complex<double>* in,
                std::complex<double>* out) {
    run(width, height, FFTW_FORWARD, in, out);
}

void inverse_2d(int width, int height, const std::complex<double>* in,
                std::complex<double>* out) {
    run(width, height, FFTW_BACKWARD, in, out);
}

}  // namespace vs360::fft
