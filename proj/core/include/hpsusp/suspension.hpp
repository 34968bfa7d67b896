#pragma once

#include "hpsusp/config.hpp"

// Closed-form physics of one hydro-pneumatic strut. Sign convention throughout:
// compression positive for piston travel h, velocity v and oil flow q.

namespace hpsusp {

struct FlowState {
    double q = 0.0;      // m^3/s, flow out of the annular chamber through the valves
    double dq_dt = 0.0;  // m^3/s^2
    double v = 0.0;      // m/s

    static FlowState from_piston(double v, double a, const SuspensionGeometry& geom) {
        return {geom.a3 * v, geom.a3 * a, v};
    }
};

struct PressureDrops {
    double total = 0.0;
    double visc = 0.0;
    double inert = 0.0;
    double orif = 0.0;
    double gap = 0.0;
};

struct AnnularPressure {
    double p2 = 0.0;
    bool cavitation = false;
};

struct ForceSample {
    PressureDrops dp;
    double p2 = 0.0;
    double f_gas = 0.0;
    double f_damp = 0.0;
    double f_fric = 0.0;
    double f_out = 0.0;
    bool cavitation = false;
};

double effective_polytropic_index(double omega, const GasChargeState& charge, const FluidProperties& fluid);

double gas_volume(double p1, const GasChargeState& charge, const SuspensionGeometry& geom, double n_eff);
// Inverse of gas_volume: pressure of the charge compressed to v_gas.
double gas_pressure(double v_gas, const GasChargeState& charge, const SuspensionGeometry& geom, double n_eff);
double gas_displacement(double v_gas, const SuspensionGeometry& geom);
double gas_force(double p1, double p2, const SuspensionGeometry& geom, const FluidProperties& fluid);

double effective_flow_area(double q, const SuspensionGeometry& geom);
PressureDrops damping_pressure_drop(const FlowState& flow, const SuspensionGeometry& geom, const FluidProperties& fluid);
AnnularPressure annular_pressure(double p1, double dp_total);
double damping_force(double dp_total, const SuspensionGeometry& geom);
double friction_force(double v, const FrictionParams& fp);

double oil_compression(double dp_total, const SuspensionGeometry& geom, const FluidProperties& fluid);
double total_travel(double h_gas, double v_gas, double dv_oil, const SuspensionGeometry& geom);

// Annular pressure and force components for a known main-chamber pressure and flow.
// f_out is formed as f_gas + f_damp + f_fric.
ForceSample output_force(double p1, const FlowState& flow, const SuspensionConfig& cfg);

// Linearised axial stiffness of the gas spring at pressure p1, N/m.
double gas_spring_rate(double p1, const SuspensionConfig& cfg, double n_eff);

} // namespace hpsusp
