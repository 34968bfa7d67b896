#pragma once

#include <span>
#include <vector>

namespace hpsusp {

// Backward difference sign*(x[i]-x[i-1])/dt; element 0 copies element 1.
std::vector<double> differentiate(std::span<const double> series, double dt, int sign = +1);

// Frequency (Hz) of the largest non-DC bin of the DFT of the mean-removed signal.
double dominant_frequency(std::span<const double> series, double dt);

// Fundamental frequency (Hz) from the autocorrelation of a mean-removed window:
// first maximum after the first zero crossing, refined by a parabola through the
// peak and its neighbours. Returns 0 when the window holds no periodicity.
double autocorrelation_frequency(std::span<const double> window, double dt);

// Second-order Butterworth low-pass (bilinear transform), run forward then
// backward so the output has no phase lag.
std::vector<double> butterworth_lowpass(std::span<const double> series, double dt, double cutoff_hz);

} // namespace hpsusp
