#include "hpsusp/signal.hpp"

#include "hpsusp/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

namespace hpsusp {

namespace {

// FFTW's planner is not thread-safe; execution on a private plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

} // namespace

std::vector<double> differentiate(std::span<const double> series, double dt, int sign) {
    if (series.size() < 2) throw Error(Errc::invalid_argument, "differentiate needs at least 2 samples");
    if (!(dt > 0.0)) throw Error(Errc::invalid_argument, "dt must be > 0");
    const double s = sign >= 0 ? 1.0 : -1.0;
    std::vector<double> out(series.size());
    for (std::size_t i = 1; i < series.size(); ++i) out[i] = s * (series[i] - series[i - 1]) / dt;
    out[0] = out[1];
    return out;
}

double dominant_frequency(std::span<const double> series, double dt) {
    const std::size_t n = series.size();
    if (n < 4) throw Error(Errc::invalid_argument, "spectrum needs at least 4 samples");
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);

    std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
    std::unique_ptr<fftw_complex, FftwFree> out(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))));
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
    }
    double peak_level = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        in.get()[i] = series[i] - mean;
        peak_level = std::max(peak_level, std::abs(series[i]));
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double re = out.get()[k][0];
        const double im = out.get()[k][1];
        const double mag = re * re + im * im;
        if (mag > best_mag) {
            best_mag = mag;
            best = k;
        }
    }
    // Rounding residue of a constant signal sits many orders below any real tone.
    const double floor_mag = 1e-9 * static_cast<double>(n) * std::max(peak_level, 1e-300);
    if (best == 0 || std::sqrt(best_mag) <= floor_mag)
        throw Error(Errc::no_dominant_frequency, "signal has no non-DC spectral content");
    return static_cast<double>(best) / (static_cast<double>(n) * dt);
}

double autocorrelation_frequency(std::span<const double> window, double dt) {
    const std::size_t n = window.size();
    if (n < 8) return 0.0;
    const double mean = std::accumulate(window.begin(), window.end(), 0.0) / static_cast<double>(n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = window[i] - mean;

    const std::size_t max_lag = n / 2;
    std::vector<double> r(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t i = k; i < n; ++i) acc += x[i] * x[i - k];
        r[k] = acc / static_cast<double>(n - k);
    }
    if (!(r[0] > 0.0)) return 0.0;

    std::size_t k = 1;
    while (k <= max_lag && r[k] > 0.0) ++k;
    if (k > max_lag) return 0.0;
    double top = 0.0;
    for (std::size_t j = k; j <= max_lag; ++j) top = std::max(top, r[j]);
    if (top <= 0.0) return 0.0;
    // Multiples of the period score about as high as the period itself; take
    // the first local maximum that comes close to the best one.
    std::size_t best = 0;
    for (std::size_t j = k; j <= max_lag && best == 0; ++j) {
        const bool local_max = r[j] >= r[j - 1] && (j == max_lag || r[j] >= r[j + 1]);
        if (local_max && r[j] >= 0.9 * top) best = j;
    }

    double lag = static_cast<double>(best);
    if (best > 0 && best < max_lag) {
        const double a = r[best - 1], b = r[best], c = r[best + 1];
        const double denom = a - 2.0 * b + c;
        if (denom < 0.0) lag += 0.5 * (a - c) / denom;
    }
    return 1.0 / (lag * dt);
}

std::vector<double> butterworth_lowpass(std::span<const double> series, double dt, double cutoff_hz) {
    if (!(dt > 0.0) || !(cutoff_hz > 0.0) || cutoff_hz >= 0.5 / dt)
        throw Error(Errc::invalid_argument, "cutoff must lie in (0, Nyquist)");
    const double k = std::tan(std::numbers::pi * cutoff_hz * dt);
    const double q = std::numbers::sqrt2;
    const double norm = 1.0 / (1.0 + q * k + k * k);
    const double b0 = k * k * norm, b1 = 2.0 * b0, b2 = b0;
    const double a1 = 2.0 * (k * k - 1.0) * norm;
    const double a2 = (1.0 - q * k + k * k) * norm;

    auto pass = [&](std::vector<double>& x) {
        if (x.empty()) return;
        // Start from steady state at the first sample to avoid a step transient.
        double x1 = x[0], x2 = x[0], y1 = x[0], y2 = x[0];
        for (double& v : x) {
            const double y = b0 * v + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
            x2 = x1;
            x1 = v;
            y2 = y1;
            y1 = y;
            v = y;
        }
    };
    std::vector<double> out(series.begin(), series.end());
    pass(out);
    std::reverse(out.begin(), out.end());
    pass(out);
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace hpsusp
