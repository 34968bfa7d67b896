#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hpsusp {

struct FluidProperties {
    double rho = 850.0;       // kg/m^3
    double mu = 0.065;        // Pa s at the operating temperature
    double k_bulk = 1.7e9;    // Pa
    double gamma = 1.4;
    double p_atm = 1.013e5;   // Pa

    void validate() const;
};

// Areas a_ch and a_check are per valve; n_valve identical valve sets act in parallel.
struct SuspensionGeometry {
    double a1 = 4.418e-3;
    double a2 = 1.885e-3;
    double a3 = 2.533e-3;
    double a_ch = 2.8274333882308138e-5;
    double a_check = 7.0685834705770345e-6;
    int n_valve = 1;
    double h_gap = 0.5e-3;
    double d_piston = 0.049;
    double l_piston = 0.05;
    double l_ch = 0.01;
    double k_orif = 1.5;
    double v0_gas = 1.0e-3;
    double v0_oil = 5.0e-4;
    double stroke_limit = 0.025;

    double channel_diameter() const;
    void validate() const;
};

struct GasChargeState {
    double p0 = 0.8e6;        // Pa
    double t0 = 30.0;         // degC
    double t_ref = 25.0;      // degC
    double alpha_t = 0.002;   // 1/degC
    double omega_c = 12.6;    // rad/s

    void validate(const FluidProperties& fluid) const;
};

enum class FrictionLaw {
    stribeck_viscous,   // exp(-|v|/vs) decay plus viscous term
    stribeck_gaussian,  // exp(-(v/vs)^2) decay, no viscous term
};

struct FrictionParams {
    double f_coulomb = 200.0;
    double f_static = 300.0;
    double v_stribeck = 0.05;
    double beta_fric = 100.0;
    double k_v = 500.0;
    FrictionLaw law = FrictionLaw::stribeck_viscous;

    void validate() const;
};

struct SuspensionConfig {
    FluidProperties fluid;
    SuspensionGeometry geom;
    GasChargeState charge;
    FrictionParams friction;

    void validate() const;
};

struct WheelLinkage {
    double l_lower = 0.65;
    double l_upper = 0.58;
    double l_eff = 0.48;
    double alpha0 = 0.13962634015954636;   // 8 deg
    double beta0 = 0.3490658503988659;     // 20 deg
    double k_beta = 0.12;
    double z_li = 0.0;
    double m_u = 800.0;
    double m_t = 500.0;
    double g = 9.81;

    void validate() const;
};

struct VehicleParams {
    double m_s = 7500.0;   // sprung mass per wheel, kg
    double k_t = 2.0e6;    // N/m
    double c_t = 4.0e3;    // N s/m

    void validate() const;
};

// Sinusoid amplitude for table generation at frequency f:
// min(max_amplitude, amp_freq_product / f), i.e. a displacement cap at low
// frequency and a velocity cap at high frequency.
struct AmplitudeSchedule {
    double max_amplitude = 7.5e-3;
    double amp_freq_product = 0.0375;

    double at(double f_hz) const;
};

struct TableSettings {
    std::vector<double> frequencies_hz{3.0, 5.0, 7.0, 8.0};
    double dt = 0.002778;
    AmplitudeSchedule amplitude;
    int amplitude_levels = 48;
    int cycles = 20;

    void validate() const;
};

struct RunConfig {
    std::string name = "bench-prototype";
    SuspensionConfig suspension;
    WheelLinkage linkage;
    VehicleParams vehicle;
    TableSettings table;

    void validate() const;
};

double deg_to_rad(double deg);
double circle_area(double diameter);

// Oil viscosity at temperature, log-linear through the two tabulated points
// (30 degC, 0.065 Pa s) and (50 degC, 0.032 Pa s).
double oil_viscosity_at(double t0_c);

RunConfig bench_prototype(double t0_c = 30.0);
RunConfig mining_truck();
RunConfig mining_truck_compact_linkage();
RunConfig preset(std::string_view name);
std::vector<std::string> preset_names();

// Flat key=value text. '#' starts a comment. Unknown keys are rejected.
// A "preset = <name>" line, if present, must come first and seeds all values.
RunConfig parse_config(std::istream& in, const RunConfig& base = bench_prototype());
RunConfig load_config(const std::string& path, const RunConfig& base = bench_prototype());
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
std::string to_text(const RunConfig& cfg);
std::vector<std::string> config_keys();

// FNV-1a over the canonical text of the suspension parameters.
std::uint64_t config_digest(const SuspensionConfig& cfg);

} // namespace hpsusp
