#include "hpsusp/oracle.hpp"

#include "hpsusp/error.hpp"
#include "hpsusp/suspension.hpp"
#include "hpsusp/wheel_load.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hpsusp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t sample_count(double duration, double dt) {
    return static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
}

Kinematics sine(double amp, double omega, double phase, double t) {
    const double s = std::sin(omega * t + phase);
    const double c = std::cos(omega * t + phase);
    return {amp * s, amp * omega * c, -amp * omega * omega * s};
}

} // namespace

Excitation Excitation::sinusoid(double amplitude, double f_hz, double duration, double phase) {
    return {ExcitationKind::sinusoid, {amplitude}, {f_hz}, {phase}, duration, 0.0};
}

Excitation Excitation::sum_of_sines(std::vector<double> amplitudes, std::vector<double> f_hz, double duration,
                                    std::vector<double> phases) {
    if (phases.empty()) phases.assign(amplitudes.size(), 0.0);
    return {ExcitationKind::sum_of_sines, std::move(amplitudes), std::move(f_hz), std::move(phases), duration, 0.0};
}

Excitation Excitation::sweep(double amplitude, double f_start_hz, double f_end_hz, double duration) {
    return {ExcitationKind::linear_sweep, {amplitude}, {f_start_hz, f_end_hz}, {0.0}, duration, 0.0};
}

Kinematics Excitation::at(double t) const {
    Kinematics b;
    switch (kind) {
    case ExcitationKind::sinusoid:
    case ExcitationKind::sum_of_sines:
        for (std::size_t k = 0; k < amplitudes.size(); ++k) {
            const double ph = k < phases.size() ? phases[k] : 0.0;
            const Kinematics s = sine(amplitudes[k], kTwoPi * frequencies_hz[k], ph, t);
            b.x += s.x;
            b.dx += s.dx;
            b.ddx += s.ddx;
        }
        break;
    case ExcitationKind::linear_sweep: {
        const double f0 = frequencies_hz[0];
        const double rate = (frequencies_hz[1] - f0) / duration;
        const double phi = kTwoPi * (f0 * t + 0.5 * rate * t * t);
        const double dphi = kTwoPi * (f0 + rate * t);
        const double ddphi = kTwoPi * rate;
        const double a = amplitudes[0];
        b = {a * std::sin(phi), a * std::cos(phi) * dphi,
             -a * std::sin(phi) * dphi * dphi + a * std::cos(phi) * ddphi};
        break;
    }
    }
    if (ramp <= 0.0 || t >= ramp) return b;
    const double k = std::numbers::pi / ramp;
    const double r = 0.5 * (1.0 - std::cos(k * t));
    const double dr = 0.5 * k * std::sin(k * t);
    const double ddr = 0.5 * k * k * std::cos(k * t);
    return {r * b.x, dr * b.x + r * b.dx, ddr * b.x + 2.0 * dr * b.dx + r * b.ddx};
}

double Excitation::lowest_frequency() const {
    return *std::min_element(frequencies_hz.begin(), frequencies_hz.end());
}

double Excitation::nominal_frequency() const {
    if (kind == ExcitationKind::linear_sweep) return 0.5 * (frequencies_hz[0] + frequencies_hz[1]);
    std::size_t best = 0;
    for (std::size_t k = 1; k < amplitudes.size(); ++k)
        if (std::abs(amplitudes[k]) > std::abs(amplitudes[best])) best = k;
    return frequencies_hz[best];
}

double Excitation::peak_amplitude() const {
    double s = 0.0;
    for (double a : amplitudes) s += std::abs(a);
    return s;
}

void Excitation::validate(double stroke_limit) const {
    const std::size_t want_f = kind == ExcitationKind::linear_sweep ? 2 : amplitudes.size();
    if (amplitudes.empty() || frequencies_hz.size() != want_f)
        throw Error(Errc::invalid_argument, "excitation amplitudes/frequencies are inconsistent");
    if (kind == ExcitationKind::sinusoid && amplitudes.size() != 1)
        throw Error(Errc::invalid_argument, "a sinusoid has exactly one component");
    for (double f : frequencies_hz)
        if (!(f > 0.0)) throw Error(Errc::invalid_argument, "excitation frequencies must be > 0");
    if (!(duration > 0.0)) throw Error(Errc::invalid_argument, "excitation duration must be > 0");
    if (duration * lowest_frequency() < 20.0 - 1e-9)
        throw Error(Errc::invalid_argument, "excitation must span at least 20 cycles of its lowest frequency");
    if (ramp < 0.0 || ramp > duration) throw Error(Errc::invalid_argument, "ramp must lie within the duration");
    if (peak_amplitude() > stroke_limit)
        throw Error(Errc::stroke_violation, "excitation amplitude exceeds the stroke limit");
}

PressureTrace OracleTrace::pressure_trace(double t0_temperature) const {
    return {dt, p1, t0_temperature};
}

OracleTrace simulate_suspension(const Excitation& excitation, const SuspensionConfig& cfg, double dt) {
    cfg.validate();
    excitation.validate(cfg.geom.stroke_limit);
    if (!(dt > 0.0)) throw Error(Errc::invalid_argument, "dt must be > 0");

    OracleTrace tr;
    tr.dt = dt;
    tr.n_eff = effective_polytropic_index(kTwoPi * excitation.nominal_frequency(), cfg.charge, cfg.fluid);
    const std::size_t n = sample_count(excitation.duration, dt);
    for (auto* v : {&tr.t, &tr.h, &tr.p1, &tr.p2, &tr.f_out, &tr.v, &tr.a, &tr.f_gas, &tr.f_damp, &tr.f_fric})
        v->resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        const Kinematics k = excitation.at(t);
        if (std::abs(k.x) > cfg.geom.stroke_limit)
            throw Error(Errc::stroke_violation, "stroke exceeded at sample " + std::to_string(i));
        const double v_gas = cfg.geom.v0_gas - cfg.geom.a1 * k.x;
        if (!(v_gas > 0.0)) throw Error(Errc::stroke_violation, "gas volume collapsed at sample " + std::to_string(i));
        const double p1 = gas_pressure(v_gas, cfg.charge, cfg.geom, tr.n_eff);
        const ForceSample s = output_force(p1, FlowState::from_piston(k.dx, k.ddx, cfg.geom), cfg);
        tr.t[i] = t;
        tr.h[i] = k.x;
        tr.v[i] = k.dx;
        tr.a[i] = k.ddx;
        tr.p1[i] = p1;
        tr.p2[i] = s.p2;
        tr.f_gas[i] = s.f_gas;
        tr.f_damp[i] = s.f_damp;
        tr.f_fric[i] = s.f_fric;
        tr.f_out[i] = s.f_out;
    }
    return tr;
}

QuarterCarParams QuarterCarParams::from(const RunConfig& rc) {
    QuarterCarParams q;
    q.m_s = rc.vehicle.m_s;
    q.k_t = rc.vehicle.k_t;
    q.c_t = rc.vehicle.c_t;
    q.link = rc.linkage;
    q.cfg = rc.suspension;
    return q;
}

void QuarterCarParams::validate() const {
    VehicleParams{m_s, k_t, c_t}.validate();
    link.validate();
    cfg.validate();
}

double static_equilibrium_stroke(const QuarterCarParams& params, double n_eff) {
    const auto& geom = params.cfg.geom;
    const double weight = params.m_s * params.link.g;
    auto residual = [&](double h) {
        const double p1 = gas_pressure(geom.v0_gas - geom.a1 * h, params.cfg.charge, geom, n_eff);
        const double f = output_force(p1, FlowState{}, params.cfg).f_out;
        return suspension_ratio_at(h, params.link) * f - weight;
    };
    double lo = -0.95 * geom.stroke_limit, hi = 0.95 * geom.stroke_limit;
    double r_lo = residual(lo), r_hi = residual(hi);
    if (r_lo > 0.0 || r_hi < 0.0)
        throw Error(Errc::config, "charge pressure cannot carry the sprung mass within the stroke");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

FrequencySeparation frequency_separation(const QuarterCarParams& params, double excitation_hz) {
    const double n_eff = effective_polytropic_index(kTwoPi * excitation_hz, params.cfg.charge, params.cfg.fluid);
    const double h = static_equilibrium_stroke(params, n_eff);
    const auto& geom = params.cfg.geom;
    const double p1 = gas_pressure(geom.v0_gas - geom.a1 * h, params.cfg.charge, geom, n_eff);
    const double ratio = suspension_ratio_at(h, params.link);

    FrequencySeparation r;
    r.k_t = params.k_t;
    r.k_sus_wheel = gas_spring_rate(p1, params.cfg, n_eff) * ratio * ratio;
    r.stiffness_ratio = r.k_t / r.k_sus_wheel;
    r.stiffness_ok = r.stiffness_ratio > 5.0;
    r.tire_hz = std::sqrt(params.k_t / params.link.m_u) / kTwoPi;
    r.excitation_hz = excitation_hz;
    r.separation_ok = excitation_hz <= 0.5 * r.tire_hz;
    return r;
}

QuarterCarRun simulate_quarter_car(const Excitation& road, const QuarterCarParams& params, double dt,
                                   double duration) {
    params.validate();
    if (!(dt > 0.0) || !(duration > 0.0)) throw Error(Errc::invalid_argument, "dt and duration must be > 0");
    road.validate(std::numeric_limits<double>::infinity());

    const auto& cfg = params.cfg;
    const auto& geom = cfg.geom;
    const auto& link = params.link;
    const double g = link.g;
    const double m_s = params.m_s;
    const double m_u = link.m_u;

    QuarterCarRun run;
    const double n_eff = effective_polytropic_index(kTwoPi * road.nominal_frequency(), cfg.charge, cfg.fluid);
    run.separation = frequency_separation(params, road.nominal_frequency());
    run.h_static = static_equilibrium_stroke(params, n_eff);

    // Strut-axis mass equivalent of the oil column accelerating through the valves.
    const double m_fluid = damping_pressure_drop(FlowState{0.0, geom.a3, 0.0}, geom, cfg.fluid).inert * geom.a1;

    const double z_u0 = wheel_travel(run.h_static, link);
    const double tire_static = (m_s + m_u) * g / params.k_t;
    const double z_g0 = z_u0 + tire_static;

    struct Derived {
        double p1, ratio, z_u, zd_u, f_tire, hdd, a_s;
        ForceSample force;
    };
    using State = std::array<double, 4>;  // z_s, zd_s, h, hd

    auto evaluate = [&](double t, const State& y) {
        Derived d{};
        const double h = y[2], hd = y[3];
        if (!(std::abs(h) < geom.stroke_limit)) throw Error(Errc::stroke_violation, "quarter-car stroke exceeded");
        d.p1 = gas_pressure(geom.v0_gas - geom.a1 * h, cfg.charge, geom, n_eff);
        d.ratio = suspension_ratio_at(h, link);
        constexpr double eps = 1e-6;
        const double ratio_slope = (suspension_ratio_at(h + eps, link) - suspension_ratio_at(h - eps, link)) / (2 * eps);
        const double f_static = output_force(d.p1, FlowState::from_piston(hd, 0.0, geom), cfg).f_out;

        d.z_u = y[0] + wheel_travel(h, link);
        d.zd_u = y[1] + hd / d.ratio;
        const Kinematics r = road.at(t);
        d.f_tire = params.k_t * (z_g0 + r.x - d.z_u) + params.c_t * (r.dx - d.zd_u);

        // [m_s, -i m_f; m_u, m_u/i + i m_f] [a_s; hdd] = rhs
        const double i = d.ratio;
        const double a11 = m_s, a12 = -i * m_fluid;
        const double a21 = m_u, a22 = m_u / i + i * m_fluid;
        const double b1 = i * f_static - m_s * g;
        const double b2 = d.f_tire - i * f_static - m_u * g + m_u * ratio_slope * hd * hd / (i * i);
        const double det = a11 * a22 - a12 * a21;
        d.a_s = (b1 * a22 - a12 * b2) / det;
        d.hdd = (a11 * b2 - a21 * b1) / det;
        d.force = output_force(d.p1, FlowState::from_piston(hd, d.hdd, geom), cfg);
        return d;
    };
    auto rhs = [&](double t, const State& y) {
        const Derived d = evaluate(t, y);
        return State{y[1], d.a_s, y[3], d.hdd};
    };

    State y{0.0, 0.0, run.h_static, 0.0};
    {
        const Derived d0 = evaluate(0.0, y);
        const double f_rest = output_force(d0.p1, FlowState{}, cfg).f_out;
        run.static_residual = std::abs(d0.ratio * f_rest - m_s * g) / (m_s * g);
        if (run.static_residual > 1e-6)
            throw Error(Errc::instability, "static equilibrium not reached before excitation");
    }

    const std::size_t n = sample_count(duration, dt);
    auto& tr = run.trace;
    tr.dt = dt;
    tr.n_eff = n_eff;
    for (auto* v : {&tr.t, &tr.h, &tr.p1, &tr.p2, &tr.f_out, &tr.v, &tr.a, &tr.f_gas, &tr.f_damp, &tr.f_fric, &tr.z_s,
                    &tr.z_t, &tr.zd_s, &tr.zd_t, &tr.z_g, &tr.f_tire_truth})
        v->resize(n);

    constexpr int substeps = 4;
    const double hstep = dt / substeps;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        const Derived d = evaluate(t, y);
        tr.t[k] = t;
        tr.h[k] = y[2];
        tr.v[k] = y[3];
        tr.a[k] = d.hdd;
        tr.p1[k] = d.p1;
        tr.p2[k] = d.force.p2;
        tr.f_gas[k] = d.force.f_gas;
        tr.f_damp[k] = d.force.f_damp;
        tr.f_fric[k] = d.force.f_fric;
        tr.f_out[k] = d.force.f_out;
        tr.z_s[k] = y[0];
        tr.zd_s[k] = y[1];
        tr.z_t[k] = d.z_u;
        tr.zd_t[k] = d.zd_u;
        tr.z_g[k] = road.at(t).x;
        tr.f_tire_truth[k] = d.f_tire;
        if (k + 1 == n) break;

        for (int s = 0; s < substeps; ++s) {
            const double ts = t + s * hstep;
            auto axpy = [](const State& a, double c, const State& b) {
                return State{a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2], a[3] + c * b[3]};
            };
            const State k1 = rhs(ts, y);
            const State k2 = rhs(ts + 0.5 * hstep, axpy(y, 0.5 * hstep, k1));
            const State k3 = rhs(ts + 0.5 * hstep, axpy(y, 0.5 * hstep, k2));
            const State k4 = rhs(ts + hstep, axpy(y, hstep, k3));
            for (int j = 0; j < 4; ++j) y[j] += hstep / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);

            const double deflection = z_g0 + road.at(ts + hstep).x - (y[0] + wheel_travel(y[2], link));
            const bool finite = std::all_of(y.begin(), y.end(), [](double x) { return std::isfinite(x); });
            if (!finite || std::abs(deflection - tire_static) > 10.0 * tire_static)
                throw Error(Errc::instability,
                            "state diverged at integration step " + std::to_string(k * substeps + s + 1));
        }
    }
    return run;
}

} // namespace hpsusp
