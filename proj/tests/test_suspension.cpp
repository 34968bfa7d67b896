#include "hpsusp/config.hpp"
#include "hpsusp/error.hpp"
#include "hpsusp/suspension.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace hpsusp;
using doctest::Approx;

namespace {

SuspensionConfig bench() { return bench_prototype(30.0).suspension; }

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an hpsusp::Error");
    return Errc::invalid_argument;
}

} // namespace

TEST_CASE("polytropic index: isothermal, mid-band and adiabatic values") {
    SuspensionConfig c = bench();
    c.charge.alpha_t = 0.0;
    CHECK(effective_polytropic_index(0.0, c.charge, c.fluid) == 1.0);

    c.charge.alpha_t = 0.002;
    c.charge.t0 = 25.0;
    c.charge.t_ref = 25.0;
    CHECK(effective_polytropic_index(12.6, c.charge, c.fluid) == Approx(1.25285).epsilon(1e-5));

    c.charge.alpha_t = 0.0;
    CHECK(std::abs(effective_polytropic_index(1260.0, c.charge, c.fluid) - 1.4) < 1e-6);

    CHECK(code_of([&] { effective_polytropic_index(-1.0, c.charge, c.fluid); }) == Errc::domain);
}

TEST_CASE("polytropic index: temperature factor scales linearly") {
    SuspensionConfig c = bench();
    GasChargeState hot = c.charge;
    hot.t0 = 55.0;
    const double base = effective_polytropic_index(31.4, GasChargeState{c.charge.p0, c.charge.t_ref, c.charge.t_ref,
                                                                        c.charge.alpha_t, c.charge.omega_c},
                                                   c.fluid);
    CHECK(effective_polytropic_index(31.4, hot, c.fluid) == Approx(base * (1.0 + 0.002 * 30.0)).epsilon(1e-14));
}

TEST_CASE("gas volume") {
    SuspensionConfig c = bench();
    CHECK(gas_volume(c.charge.p0, c.charge, c.geom, 1.3) == c.geom.v0_gas);
    CHECK(gas_volume(1.6e6, c.charge, c.geom, 1.4) == Approx(6.0957e-4).epsilon(1e-4));

    const double eps = 1e-6, n = 1.25;
    const double dv = gas_volume(c.charge.p0 * (1.0 + eps), c.charge, c.geom, n) - c.geom.v0_gas;
    CHECK(dv == Approx(-c.geom.v0_gas * eps / n).epsilon(1e-5));

    CHECK(code_of([&] { gas_volume(0.0, c.charge, c.geom, 1.2); }) == Errc::domain);
    CHECK(code_of([&] { gas_volume(-5.0, c.charge, c.geom, 1.2); }) == Errc::domain);
}

TEST_CASE("polytropic round trip over half to five times the charge pressure") {
    SuspensionConfig c = bench();
    for (double n : {1.0, 1.17, 1.4}) {
        for (int k = 0; k <= 200; ++k) {
            const double p = c.charge.p0 * (0.5 + 4.5 * k / 200.0);
            const double back = gas_pressure(gas_volume(p, c.charge, c.geom, n), c.charge, c.geom, n);
            CHECK(std::abs(back - p) / p < 1e-9);
        }
    }
}

TEST_CASE("gas displacement") {
    SuspensionConfig c = bench();
    CHECK(gas_displacement(c.geom.v0_gas, c.geom) == 0.0);
    CHECK(gas_displacement(6.0957e-4, c.geom) == Approx(0.08837).epsilon(1e-4));
    CHECK(gas_displacement(1.1e-3, c.geom) < 0.0);
}

TEST_CASE("gas force") {
    SuspensionConfig c = bench();
    CHECK(gas_force(c.fluid.p_atm, c.fluid.p_atm, c.geom, c.fluid) == 0.0);
    CHECK(gas_force(2.0e6, 1.9e6, c.geom, c.fluid) == Approx(4997.9).epsilon(2e-5));
}

TEST_CASE("effective flow area follows the flow direction") {
    SuspensionConfig c = bench();
    CHECK(effective_flow_area(0.0, c.geom) == c.geom.a_ch);
    CHECK(effective_flow_area(1e-5, c.geom) == Approx(3.534e-5).epsilon(1e-3));
    CHECK(effective_flow_area(-1e-5, c.geom) == Approx(2.827e-5).epsilon(1e-3));

    c.geom.n_valve = 2;
    CHECK(effective_flow_area(1e-5, c.geom) == Approx(2.0 * (c.geom.a_ch + c.geom.a_check)));
}

TEST_CASE("damping pressure drop components") {
    SuspensionConfig c = bench();
    const PressureDrops zero = damping_pressure_drop(FlowState{}, c.geom, c.fluid);
    CHECK(zero.total == 0.0);
    CHECK(zero.visc == 0.0);
    CHECK(zero.inert == 0.0);
    CHECK(zero.orif == 0.0);
    CHECK(zero.gap == 0.0);

    const PressureDrops d = damping_pressure_drop(FlowState{1e-4, 0.0, 0.0}, c.geom, c.fluid);
    CHECK(d.visc == Approx(2043.0).epsilon(1e-3));
    CHECK(d.inert == 0.0);
    CHECK(d.total == d.visc + d.inert + d.orif + d.gap);
}

TEST_CASE("extension orifice drop is at least the compression drop at equal flow") {
    SuspensionConfig c = bench();
    for (double q : {1e-6, 1e-5, 1e-4, 5e-4}) {
        const double comp = damping_pressure_drop(FlowState{q, 0.0, 0.0}, c.geom, c.fluid).orif;
        const double ext = damping_pressure_drop(FlowState{-q, 0.0, 0.0}, c.geom, c.fluid).orif;
        CHECK(std::abs(ext) >= std::abs(comp));
        CHECK(comp > 0.0);
        CHECK(ext < 0.0);
    }
}

TEST_CASE("annular pressure") {
    const AnnularPressure same = annular_pressure(1.0e6, 0.0);
    CHECK(same.p2 == 1.0e6);
    CHECK_FALSE(same.cavitation);
    CHECK(annular_pressure(1.0e6, 5e3).p2 == Approx(0.995e6));
    const AnnularPressure cav = annular_pressure(0.81e6, 0.9e6);
    CHECK(cav.p2 == Approx(-0.09e6));
    CHECK(cav.cavitation);
}

TEST_CASE("damping force") {
    SuspensionConfig c = bench();
    CHECK(damping_force(0.0, c.geom) == 0.0);
    CHECK(damping_force(1e5, c.geom) == Approx(253.3).epsilon(1e-4));
}

TEST_CASE("friction: reference value, odd symmetry and bound") {
    FrictionParams fp;
    CHECK(friction_force(0.0, fp) == 0.0);
    CHECK(friction_force(0.05, fp) == Approx(261.8).epsilon(2e-4));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> v(-2.0, 2.0);
    for (int k = 0; k < 2000; ++k) {
        const double x = v(rng);
        CHECK(friction_force(-x, fp) == -friction_force(x, fp));
        CHECK(std::abs(friction_force(x, fp)) <= fp.f_static + fp.k_v * std::abs(x));
    }
    // continuity through zero
    double prev = friction_force(-1e-3, fp);
    for (int k = -999; k <= 1000; ++k) {
        const double f = friction_force(k * 1e-6, fp);
        CHECK(std::abs(f - prev) < 1.0);
        prev = f;
    }
}

TEST_CASE("friction: squared-exponent law without viscous term") {
    FrictionParams fp;
    fp.law = FrictionLaw::stribeck_gaussian;
    const double expect = (200.0 + 100.0 * std::exp(-1.0)) * std::tanh(5.0);
    CHECK(friction_force(0.05, fp) == Approx(expect).epsilon(1e-12));
    CHECK(friction_force(-0.05, fp) == -friction_force(0.05, fp));
    CHECK(std::abs(friction_force(3.0, fp)) <= fp.f_static);
}

TEST_CASE("oil compression and total travel") {
    SuspensionConfig c = bench();
    CHECK(oil_compression(0.0, c.geom, c.fluid) == 0.0);
    CHECK(oil_compression(1e6, c.geom, c.fluid) == Approx(2.941e-7).epsilon(1e-3));

    CHECK(total_travel(0.0, c.geom.v0_gas, 0.0, c.geom) == 0.0);
    CHECK(total_travel(0.01, c.geom.v0_gas - 4.418e-5, 0.0, c.geom) == Approx(0.027442).epsilon(1e-4));
}

TEST_CASE("output force is the exact sum of its components") {
    SuspensionConfig c = bench();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> p(0.5e6, 3e6), v(-0.5, 0.5), a(-30.0, 30.0);
    for (int k = 0; k < 1000; ++k) {
        const ForceSample s = output_force(p(rng), FlowState::from_piston(v(rng), a(rng), c.geom), c);
        CHECK(s.f_out == s.f_gas + s.f_damp + s.f_fric);
    }
}

TEST_CASE("gas spring stores and returns energy over a closed pressure cycle") {
    SuspensionConfig c = bench();
    const double n = 1.3;
    const int steps = 20000;
    double work = 0.0, peak = 0.0;
    double h_prev = gas_displacement(gas_volume(c.charge.p0, c.charge, c.geom, n), c.geom);
    double f_prev = (c.charge.p0 - c.fluid.p_atm) * c.geom.a1;
    for (int k = 1; k <= steps; ++k) {
        const double phase = 2.0 * std::numbers::pi * k / steps;
        const double p = c.charge.p0 * (1.0 + 0.6 * std::sin(phase) + 0.2 * std::sin(2.0 * phase));
        const double h = gas_displacement(gas_volume(p, c.charge, c.geom, n), c.geom);
        const double f = (p - c.fluid.p_atm) * c.geom.a1;
        work += 0.5 * (f + f_prev) * (h - h_prev);
        peak = std::max(peak, std::abs(0.5 * (f + f_prev) * h));
        h_prev = h;
        f_prev = f;
    }
    CHECK(std::abs(work) < 1e-6 * peak);
}

TEST_CASE("damping dissipates energy over any periodic motion") {
    SuspensionConfig c = bench();
    for (double f_hz : {1.0, 3.0, 5.0, 8.0, 15.0}) {
        for (double amp : {1e-4, 2e-3, 7.5e-3}) {
            const double w = 2.0 * std::numbers::pi * f_hz;
            const int steps = 4000;
            const double dt = 1.0 / (f_hz * steps);
            double work = 0.0;
            for (int k = 0; k < steps; ++k) {
                const double t = k * dt;
                const double v = amp * w * std::cos(w * t), a = -amp * w * w * std::sin(w * t);
                const PressureDrops d = damping_pressure_drop(FlowState::from_piston(v, a, c.geom), c.geom, c.fluid);
                work += damping_force(d.total, c.geom) * v * dt;
            }
            CHECK(work > 0.0);
        }
    }
}
