#include "fft_power.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include <fftw3.h>

namespace chirplike::detail {

namespace {

// The FFTW planner is not reentrant; plan execution is.
std::mutex planner_mutex;

struct FftwDeleter {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

} // namespace

std::vector<double> sparse_power_spectrum(std::span<const SparseSample> samples, std::size_t length) {
    const std::size_t bins = length / 2 + 1;
    std::unique_ptr<double, FftwDeleter> in(fftw_alloc_real(length));
    std::unique_ptr<fftw_complex, FftwDeleter> out(fftw_alloc_complex(bins));

    fftw_plan plan;
    {
        std::scoped_lock lock(planner_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(length), in.get(), out.get(), FFTW_ESTIMATE);
    }
    std::fill(in.get(), in.get() + length, 0.0);
    for (const auto& s : samples) in.get()[s.index] += s.value;
    fftw_execute(plan);
    {
        std::scoped_lock lock(planner_mutex);
        fftw_destroy_plan(plan);
    }

    std::vector<double> power(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const double re = out.get()[k][0];
        const double im = out.get()[k][1];
        power[k] = re * re + im * im;
    }
    return power;
}

} // namespace chirplike::detail
