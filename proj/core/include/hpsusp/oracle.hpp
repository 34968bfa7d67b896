#pragma once

#include "hpsusp/config.hpp"
#include "hpsusp/estimator.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hpsusp {

enum class ExcitationKind { sinusoid, sum_of_sines, linear_sweep };

struct Kinematics {
    double x = 0.0;
    double dx = 0.0;
    double ddx = 0.0;
};

// Prescribed displacement (compression positive for strut excitation, upward
// for road input). A linear sweep uses frequencies_hz = {f_start, f_end} and
// amplitudes[0]. An optional raised-cosine fade-in spans the first `ramp` seconds.
struct Excitation {
    ExcitationKind kind = ExcitationKind::sinusoid;
    std::vector<double> amplitudes;
    std::vector<double> frequencies_hz;
    std::vector<double> phases;
    double duration = 0.0;
    double ramp = 0.0;

    static Excitation sinusoid(double amplitude, double f_hz, double duration, double phase = 0.0);
    static Excitation sum_of_sines(std::vector<double> amplitudes, std::vector<double> f_hz, double duration,
                                   std::vector<double> phases = {});
    static Excitation sweep(double amplitude, double f_start_hz, double f_end_hz, double duration);

    Kinematics at(double t) const;
    double lowest_frequency() const;
    // Frequency used for the polytropic index: the largest-amplitude component,
    // or the mid-band frequency of a sweep.
    double nominal_frequency() const;
    double peak_amplitude() const;
    // Throws Errc::invalid_argument or Errc::stroke_violation.
    void validate(double stroke_limit) const;
};

struct OracleTrace {
    double dt = 0.0;
    double n_eff = 0.0;
    std::vector<double> t, h, p1, p2, f_out, v, a;
    std::vector<double> f_gas, f_damp, f_fric;
    // quarter-car runs only
    std::vector<double> z_s, z_t, zd_s, zd_t, z_g, f_tire_truth;

    std::size_t size() const { return t.size(); }
    PressureTrace pressure_trace(double t0_temperature) const;
};

OracleTrace simulate_suspension(const Excitation& excitation, const SuspensionConfig& cfg, double dt);

struct QuarterCarParams {
    double m_s = 7500.0;
    double k_t = 2.0e6;
    double c_t = 4.0e3;
    WheelLinkage link;  // carries m_u (whole unsprung mass, tire included) and m_t
    SuspensionConfig cfg;

    static QuarterCarParams from(const RunConfig& rc);
    void validate() const;
};

struct FrequencySeparation {
    double k_t = 0.0;
    double k_sus_wheel = 0.0;   // gas-spring rate referred to the wheel at static equilibrium
    double stiffness_ratio = 0.0;
    bool stiffness_ok = false;  // k_t / k_sus > 5
    double tire_hz = 0.0;       // sqrt(k_t / m_u) / 2 pi
    double excitation_hz = 0.0;
    bool separation_ok = false; // excitation at most half the tire frequency
};

// Stroke at which the linkage-projected static gas force carries m_s * g.
double static_equilibrium_stroke(const QuarterCarParams& params, double n_eff);

FrequencySeparation frequency_separation(const QuarterCarParams& params, double excitation_hz);

struct QuarterCarRun {
    OracleTrace trace;
    FrequencySeparation separation;
    double h_static = 0.0;
    double static_residual = 0.0;  // relative force-balance error of the initial state
};

// Two-mass model: sprung mass on the linkage-projected strut force, unsprung
// mass on the tire spring-damper. RK4 at dt/4, emitted every dt.
QuarterCarRun simulate_quarter_car(const Excitation& road, const QuarterCarParams& params, double dt,
                                   double duration);

} // namespace hpsusp
