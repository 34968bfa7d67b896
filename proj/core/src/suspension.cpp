#include "hpsusp/suspension.hpp"

#include "hpsusp/error.hpp"

#include <cmath>
#include <numbers>

namespace hpsusp {

double effective_polytropic_index(double omega, const GasChargeState& charge, const FluidProperties& fluid) {
    if (!(omega >= 0.0)) throw Error(Errc::domain, "angular frequency must be >= 0");
    const double base = 1.0 + (fluid.gamma - 1.0) * (1.0 - std::exp(-omega / charge.omega_c));
    return base * (1.0 + charge.alpha_t * (charge.t0 - charge.t_ref));
}

double gas_volume(double p1, const GasChargeState& charge, const SuspensionGeometry& geom, double n_eff) {
    if (!(p1 > 0.0)) throw Error(Errc::domain, "gas pressure must be > 0");
    if (p1 == charge.p0) return geom.v0_gas;
    return geom.v0_gas * std::pow(charge.p0 / p1, 1.0 / n_eff);
}

double gas_pressure(double v_gas, const GasChargeState& charge, const SuspensionGeometry& geom, double n_eff) {
    if (!(v_gas > 0.0)) throw Error(Errc::domain, "gas volume must be > 0");
    if (v_gas == geom.v0_gas) return charge.p0;
    return charge.p0 * std::pow(geom.v0_gas / v_gas, n_eff);
}

double gas_displacement(double v_gas, const SuspensionGeometry& geom) {
    return (geom.v0_gas - v_gas) / geom.a1;
}

double gas_force(double p1, double p2, const SuspensionGeometry& geom, const FluidProperties& fluid) {
    return (p1 - fluid.p_atm) * geom.a1 - (p2 - fluid.p_atm) * geom.a2;
}

double effective_flow_area(double q, const SuspensionGeometry& geom) {
    const double per_valve = q > 0.0 ? geom.a_ch + geom.a_check : geom.a_ch;
    return geom.n_valve * per_valve;
}

PressureDrops damping_pressure_drop(const FlowState& flow, const SuspensionGeometry& geom, const FluidProperties& fluid) {
    using std::numbers::pi;
    const double n = geom.n_valve;
    const double d_ch = geom.channel_diameter();
    const double q_ch = flow.q / n;

    PressureDrops dp;
    dp.visc = 128.0 * fluid.mu * geom.l_ch * q_ch / (pi * d_ch * d_ch * d_ch * d_ch);
    dp.inert = fluid.rho * geom.l_ch * (flow.dq_dt / n) / geom.a_ch;
    const double a_eff = effective_flow_area(flow.q, geom);
    const double sgn = flow.q > 0.0 ? 1.0 : (flow.q < 0.0 ? -1.0 : 0.0);
    dp.orif = geom.k_orif * fluid.rho * flow.q * flow.q * sgn / (2.0 * a_eff * a_eff);
    dp.gap = 12.0 * fluid.mu * geom.l_piston * flow.q / (geom.h_gap * geom.h_gap * geom.h_gap * pi * geom.d_piston);
    dp.total = dp.visc + dp.inert + dp.orif + dp.gap;
    return dp;
}

AnnularPressure annular_pressure(double p1, double dp_total) {
    if (!(p1 > 0.0)) throw Error(Errc::domain, "gas pressure must be > 0");
    const double p2 = p1 - dp_total;
    return {p2, p2 <= 0.0};
}

double damping_force(double dp_total, const SuspensionGeometry& geom) { return dp_total * geom.a3; }

double friction_force(double v, const FrictionParams& fp) {
    const double sharp = std::tanh(fp.beta_fric * v);
    if (fp.law == FrictionLaw::stribeck_gaussian) {
        const double r = v / fp.v_stribeck;
        return (fp.f_coulomb + (fp.f_static - fp.f_coulomb) * std::exp(-r * r)) * sharp;
    }
    return (fp.f_coulomb + (fp.f_static - fp.f_coulomb) * std::exp(-std::abs(v) / fp.v_stribeck)) * sharp + fp.k_v * v;
}

double oil_compression(double dp_total, const SuspensionGeometry& geom, const FluidProperties& fluid) {
    return geom.v0_oil / fluid.k_bulk * dp_total;
}

double total_travel(double h_gas, double v_gas, double dv_oil, const SuspensionGeometry& geom) {
    return h_gas + ((geom.v0_gas - v_gas) + dv_oil) / geom.a3;
}

ForceSample output_force(double p1, const FlowState& flow, const SuspensionConfig& cfg) {
    ForceSample s;
    s.dp = damping_pressure_drop(flow, cfg.geom, cfg.fluid);
    const AnnularPressure ap = annular_pressure(p1, s.dp.total);
    s.p2 = ap.p2;
    s.cavitation = ap.cavitation;
    s.f_gas = gas_force(p1, s.p2, cfg.geom, cfg.fluid);
    s.f_damp = damping_force(s.dp.total, cfg.geom);
    s.f_fric = friction_force(flow.v, cfg.friction);
    s.f_out = s.f_gas + s.f_damp + s.f_fric;
    return s;
}

double gas_spring_rate(double p1, const SuspensionConfig& cfg, double n_eff) {
    const double v_gas = gas_volume(p1, cfg.charge, cfg.geom, n_eff);
    return cfg.geom.a3 * n_eff * p1 * cfg.geom.a1 / v_gas;
}

} // namespace hpsusp
