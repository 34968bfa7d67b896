#include "hpsusp/estimator.hpp"

#include "hpsusp/error.hpp"
#include "hpsusp/signal.hpp"
#include "hpsusp/suspension.hpp"

#include <cmath>
#include <numbers>

namespace hpsusp {

void PressureTrace::validate() const {
    if (!(dt > 0.0)) throw Error(Errc::invalid_argument, "trace dt must be > 0");
    if (samples.size() < 16) throw Error(Errc::invalid_argument, "trace needs at least 16 samples");
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (!(samples[i] > 0.0) || !std::isfinite(samples[i]))
            throw Error(Errc::invalid_argument, "trace sample " + std::to_string(i) + " is not a positive pressure");
}

void ForceBreakdown::resize(std::size_t n) {
    for (auto* v : {&f_gas, &f_damp, &f_fric, &f_out, &p2, &this->v, &h_total, &a}) v->assign(n, 0.0);
}

double estimate_peak_frequency(const PressureTrace& trace) {
    trace.validate();
    return dominant_frequency(trace.samples, trace.dt);
}

ForceBreakdown run(const PressureTrace& trace, const SuspensionConfig& cfg_in, const EstimatorOptions& opts) {
    trace.validate();
    SuspensionConfig cfg = cfg_in;
    cfg.charge.t0 = trace.t0_temperature;
    cfg.validate();

    std::vector<double> p1 = trace.samples;
    if (opts.lowpass) p1 = butterworth_lowpass(p1, trace.dt, opts.lowpass_cutoff_hz);

    ForceBreakdown out;
    out.f_peak = opts.frequency_hz ? *opts.frequency_hz : dominant_frequency(p1, trace.dt);
    out.n_eff = effective_polytropic_index(2.0 * std::numbers::pi * out.f_peak, cfg.charge, cfg.fluid);

    const std::size_t n = p1.size();
    std::vector<double> v_gas(n), h_gas(n);
    for (std::size_t i = 0; i < n; ++i) {
        v_gas[i] = gas_volume(p1[i], cfg.charge, cfg.geom, out.n_eff);
        h_gas[i] = gas_displacement(v_gas[i], cfg.geom);
    }
    // h_gas already grows with pressure, so +1 yields compression-positive velocity.
    std::vector<double> v = differentiate(h_gas, trace.dt, +1);
    std::vector<double> a = differentiate(v, trace.dt, +1);

    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ForceSample s = output_force(p1[i], FlowState::from_piston(v[i], a[i], cfg.geom), cfg);
        out.p2[i] = s.p2;
        out.f_gas[i] = s.f_gas;
        out.f_damp[i] = s.f_damp;
        out.f_fric[i] = s.f_fric;
        out.f_out[i] = s.f_out;
        out.v[i] = v[i];
        out.a[i] = a[i];
        out.h_total[i] = total_travel(h_gas[i], v_gas[i], oil_compression(s.dp.total, cfg.geom, cfg.fluid), cfg.geom);
        if (s.cavitation) out.cavitation_samples.push_back(i);
    }
    return out;
}

} // namespace hpsusp
