// Properties stated for the method that the implementation does not meet as
// written. They are checked literally and expected to fail; see the README.

#include "hpsusp/estimator.hpp"
#include "hpsusp/metrics.hpp"
#include "hpsusp/oracle.hpp"
#include "hpsusp/wheel_load.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>

using namespace hpsusp;

TEST_CASE("iterative round trip within 2% across 3-8 Hz") {
    const RunConfig rc = bench_prototype(30.0);
    for (double f : {3.0, 4.0, 5.0, 6.0, 7.0, 8.0}) {
        const OracleTrace tr = simulate_suspension(Excitation::sinusoid(rc.table.amplitude.at(f), f, 20.0),
                                                   rc.suspension, rc.table.dt);
        const ForceBreakdown b = run(tr.pressure_trace(30.0), rc.suspension);
        const double rel = relative_rmse(b.f_out, tr.f_out);
        INFO("f = " << f << " Hz, relative RMSE " << rel);
        CHECK(rel < 0.02);
    }
}

TEST_CASE("virtual work: i_sus dz = cos(beta) dh from arm-tip finite differences") {
    const WheelLinkage link = mining_truck().linkage;
    for (double h : {-0.03, 0.0, 0.02, 0.04}) {
        const double dh = 1e-6;
        const double dz = arm_tip_height(h + dh, link) - arm_tip_height(h - dh, link);
        const LinkageAngles ang = lower_arm_angles(h, link);
        const double lhs = suspension_ratio(ang.theta, ang.beta, link) * dz;
        const double rhs = std::cos(ang.beta) * 2.0 * dh;
        INFO("h = " << h << ", ratio " << lhs / rhs);
        CHECK(std::abs(lhs / rhs - 1.0) < 0.01);
    }
}

TEST_CASE("energy audit: input work equals damping plus friction within 2%") {
    const RunConfig rc = bench_prototype(30.0);
    for (double f : {3.0, 5.0, 8.0}) {
        const OracleTrace tr = simulate_suspension(Excitation::sinusoid(rc.table.amplitude.at(f), f, 20.0),
                                                   rc.suspension, rc.table.dt);
        const auto per = static_cast<std::size_t>(std::lround(1.0 / (f * tr.dt)));
        double w_in = 0.0, w_diss = 0.0;
        for (std::size_t i = tr.size() - 5 * per; i < tr.size(); ++i) {
            const double dh = tr.h[i] - tr.h[i - 1];
            w_in += 0.5 * (tr.f_out[i] + tr.f_out[i - 1]) * dh;
            w_diss += 0.5 * (tr.f_damp[i] + tr.f_damp[i - 1] + tr.f_fric[i] + tr.f_fric[i - 1]) * dh;
        }
        const double rel = std::abs(w_in - w_diss) / w_in;
        INFO("f = " << f << " Hz, mismatch " << rel);
        CHECK(rel < 0.02);
    }
}
