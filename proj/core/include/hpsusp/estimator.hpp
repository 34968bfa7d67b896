#pragma once

#include "hpsusp/config.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hpsusp {

struct PressureTrace {
    double dt = 0.002778;
    std::vector<double> samples;   // main-chamber gas pressure p1, Pa
    double t0_temperature = 30.0;  // degC

    // Throws Errc::invalid_argument.
    void validate() const;
};

struct ForceBreakdown {
    std::vector<double> f_gas, f_damp, f_fric, f_out;
    std::vector<double> p2, v, h_total, a;
    double n_eff = 0.0;
    double f_peak = 0.0;
    std::vector<std::size_t> cavitation_samples;

    std::size_t size() const { return f_out.size(); }
    void resize(std::size_t n);
};

struct EstimatorOptions {
    std::optional<double> frequency_hz;  // skips spectral identification when set
    bool lowpass = false;
    double lowpass_cutoff_hz = 50.0;
};

double estimate_peak_frequency(const PressureTrace& trace);

// Full per-sample reconstruction. The trace's temperature overrides cfg.charge.t0
// for the polytropic index; viscosity stays as configured.
ForceBreakdown run(const PressureTrace& trace, const SuspensionConfig& cfg, const EstimatorOptions& opts = {});

} // namespace hpsusp
