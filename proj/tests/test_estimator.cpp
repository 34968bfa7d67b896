#include "hpsusp/error.hpp"
#include "hpsusp/estimator.hpp"
#include "hpsusp/metrics.hpp"
#include "hpsusp/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace hpsusp;
using doctest::Approx;

namespace {

OracleTrace sine_trace(const RunConfig& rc, double amp, double f_hz, double duration = 20.0) {
    return simulate_suspension(Excitation::sinusoid(amp, f_hz, duration), rc.suspension, rc.table.dt);
}

} // namespace

TEST_CASE("trace validation") {
    PressureTrace ok{0.002778, std::vector<double>(16, 8e5), 30.0};
    CHECK_NOTHROW(ok.validate());
    PressureTrace short_trace{0.002778, std::vector<double>(15, 8e5), 30.0};
    CHECK_THROWS_AS(short_trace.validate(), Error);
    PressureTrace bad_dt{0.0, std::vector<double>(16, 8e5), 30.0};
    CHECK_THROWS_AS(bad_dt.validate(), Error);
    PressureTrace negative = ok;
    negative.samples[3] = -1.0;
    CHECK_THROWS_AS(negative.validate(), Error);
}

TEST_CASE("constant charge pressure: static gas force only") {
    const RunConfig rc = bench_prototype(30.0);
    const auto& c = rc.suspension;
    PressureTrace tr{rc.table.dt, std::vector<double>(400, c.charge.p0), 30.0};
    try {
        run(tr, c);
        FAIL("expected no_dominant_frequency");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_dominant_frequency);
    }

    EstimatorOptions o;
    o.frequency_hz = 5.0;
    const ForceBreakdown b = run(tr, c, o);
    const double f_static = (c.charge.p0 - c.fluid.p_atm) * (c.geom.a1 - c.geom.a2);
    for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(b.v[i] == 0.0);
        CHECK(b.f_damp[i] == 0.0);
        CHECK(b.f_fric[i] == 0.0);
        CHECK(b.f_gas[i] == Approx(f_static).epsilon(1e-12));
    }
}

TEST_CASE("5 Hz / 7.5 mm round trip against the forward model") {
    const RunConfig rc = bench_prototype(30.0);
    const OracleTrace tr = sine_trace(rc, 7.5e-3, 5.0);
    REQUIRE(tr.size() == 7200);
    const ForceBreakdown b = run(tr.pressure_trace(30.0), rc.suspension);
    CHECK(b.f_peak == Approx(5.0).epsilon(0.01));
    CHECK(relative_rmse(b.f_out, tr.f_out) < 0.02);
    CHECK(r_squared(b.f_out, tr.f_out) > 0.99);
}

TEST_CASE("every sample is the exact sum of its force components") {
    const RunConfig rc = bench_prototype(30.0);
    const ForceBreakdown b = run(sine_trace(rc, 5e-3, 7.0).pressure_trace(30.0), rc.suspension);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.f_out[i] == b.f_gas[i] + b.f_damp[i] + b.f_fric[i]);
}

TEST_CASE("identical input gives bit-identical output") {
    const RunConfig rc = bench_prototype(30.0);
    const PressureTrace pt = sine_trace(rc, 7.5e-3, 3.0).pressure_trace(30.0);
    const ForceBreakdown a = run(pt, rc.suspension), b = run(pt, rc.suspension);
    CHECK(a.f_out == b.f_out);
    CHECK(a.v == b.v);
    CHECK(a.h_total == b.h_total);
    CHECK(a.p2 == b.p2);
}

TEST_CASE("supplying the true frequency barely changes the force") {
    const RunConfig rc = bench_prototype(30.0);
    for (double f : {3.0, 5.0, 8.0}) {
        const PressureTrace pt = sine_trace(rc, rc.table.amplitude.at(f), f).pressure_trace(30.0);
        const ForceBreakdown est = run(pt, rc.suspension);
        EstimatorOptions o;
        o.frequency_hz = f;
        const ForceBreakdown given = run(pt, rc.suspension, o);
        std::vector<double> diff(est.size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = est.f_out[i] - given.f_out[i];
        CHECK(rms(diff) / rms(given.f_out) < 1e-3);
    }
}

TEST_CASE("flat stretches of pressure give near-zero velocity") {
    const RunConfig rc = bench_prototype(30.0);
    std::vector<double> p = sine_trace(rc, 7.5e-3, 5.0).p1;
    for (std::size_t i = 3000; i < 3100; ++i) p[i] = p[3000];
    EstimatorOptions o;
    o.frequency_hz = 5.0;
    const ForceBreakdown b = run(PressureTrace{rc.table.dt, p, 30.0}, rc.suspension, o);
    for (std::size_t i = 3001; i < 3100; ++i) CHECK(b.v[i] == 0.0);
}

TEST_CASE("hotter oil shrinks the force-pressure hysteresis loop") {
    double area[2];
    int k = 0;
    for (double t : {30.0, 50.0}) {
        const RunConfig rc = bench_prototype(t);
        CHECK(rc.suspension.fluid.mu == Approx(t == 30.0 ? 0.065 : 0.032));
        const OracleTrace tr = sine_trace(rc, 7.5e-3, 5.0);
        const ForceBreakdown b = run(tr.pressure_trace(t), rc.suspension);
        area[k++] = std::abs(loop_area(tr.p1, b.f_out));
    }
    CHECK(area[1] < area[0]);
}

TEST_CASE("trace temperature overrides the configured one") {
    const RunConfig rc = bench_prototype(30.0);
    const OracleTrace tr = sine_trace(rc, 7.5e-3, 5.0);
    const ForceBreakdown cold = run(tr.pressure_trace(30.0), rc.suspension);
    const ForceBreakdown warm = run(tr.pressure_trace(60.0), rc.suspension);
    CHECK(warm.n_eff == Approx(cold.n_eff * (1.0 + 0.002 * 35.0) / (1.0 + 0.002 * 5.0)));
}

TEST_CASE("optional low-pass path runs and stays close on clean data") {
    const RunConfig rc = bench_prototype(30.0);
    const OracleTrace tr = sine_trace(rc, 7.5e-3, 5.0);
    EstimatorOptions o;
    o.lowpass = true;
    const ForceBreakdown b = run(tr.pressure_trace(30.0), rc.suspension, o);
    CHECK(relative_rmse(b.f_out, tr.f_out) < 0.03);
}
