#include "bchardy/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace bchardy {

namespace {

std::mutex planner_mutex;

void run_fftw(std::vector<std::complex<double>>& data, int sign) {
    if (data.empty()) throw std::invalid_argument("fft: empty input");
    const int n = static_cast<int>(data.size());
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        // The FFTW planner is not re-entrant. FFTW_ESTIMATE keeps the input
        // untouched during planning and the plan deterministic.
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_1d(n, ptr, ptr, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& data) { run_fftw(data, FFTW_FORWARD); }

void fft_inverse(std::vector<std::complex<double>>& data) { run_fftw(data, FFTW_BACKWARD); }

std::vector<std::complex<double>> fourier_coefficients(const std::vector<std::complex<double>>& samples) {
    std::vector<std::complex<double>> c = samples;
    fft_forward(c);
    const double inv_n = 1.0 / static_cast<double>(c.size());
    for (auto& v : c) v *= inv_n;
    return c;
}

std::vector<std::complex<double>> fourier_synthesis(const std::vector<std::complex<double>>& coeffs) {
    std::vector<std::complex<double>> s = coeffs;
    fft_inverse(s);
    return s;
}

}  // namespace bchardy
