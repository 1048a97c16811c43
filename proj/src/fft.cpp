#include "selfsim/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace selfsim {

namespace {

// FFTW planning is not thread safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
        if (data == nullptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    fftw_complex* data;
};

} // namespace

std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& input) {
    const std::size_t n = input.size();
    if (n == 0) throw std::invalid_argument("fft_forward: empty input");

    FftwBuffer in(n);
    FftwBuffer out(n);
    static_assert(sizeof(fftw_complex) == sizeof(std::complex<double>));
    std::memcpy(in.data, input.data(), n * sizeof(fftw_complex));

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        // FFTW_ESTIMATE: plan choice depends only on size and alignment,
        // so repeated runs produce bit-identical output.
        plan = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("fft_forward: planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    std::vector<std::complex<double>> result(n);
    std::memcpy(result.data(), out.data, n * sizeof(fftw_complex));
    return result;
}

} // namespace selfsim
