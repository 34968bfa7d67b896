#include "hpsusp/config.hpp"
#include "hpsusp/csv.hpp"
#include "hpsusp/error.hpp"
#include "hpsusp/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

using namespace hpsusp;
using doctest::Approx;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string config_error(const std::string& text) {
    try {
        parse(text);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::config);
        return e.what();
    }
    FAIL("expected a config error");
    return {};
}

} // namespace

TEST_CASE("bench defaults") {
    const RunConfig rc = bench_prototype();
    const auto& g = rc.suspension.geom;
    CHECK(std::abs(g.a3 - (g.a1 - g.a2)) <= 1e-9);
    CHECK(rc.suspension.charge.p0 == 0.8e6);
    CHECK(rc.suspension.fluid.mu == 0.065);
    CHECK(rc.table.dt == 0.002778);
    CHECK(rc.table.frequencies_hz == std::vector<double>{3.0, 5.0, 7.0, 8.0});
    CHECK_NOTHROW(rc.validate());
    CHECK(oil_viscosity_at(50.0) == Approx(0.032));
    CHECK(oil_viscosity_at(40.0) == Approx(std::sqrt(0.065 * 0.032)));
}

TEST_CASE("every preset is valid") {
    for (const auto& name : preset_names()) {
        const RunConfig rc = preset(name);
        CHECK(rc.name == name);
        CHECK_NOTHROW(rc.validate());
    }
    CHECK_THROWS_AS(preset("nope"), Error);
    const RunConfig truck = mining_truck();
    CHECK(truck.suspension.geom.a1 == Approx(std::numbers::pi * 0.125 * 0.125));
    CHECK(truck.suspension.charge.p0 == 7.4e6);
}

TEST_CASE("text round trip") {
    for (const auto& name : preset_names()) {
        const RunConfig rc = preset(name);
        const RunConfig back = parse(to_text(rc));
        CHECK(to_text(back) == to_text(rc));
        CHECK(config_digest(back.suspension) == config_digest(rc.suspension));
        CHECK(back.linkage.alpha0 == Approx(rc.linkage.alpha0).epsilon(1e-15));
    }
}

TEST_CASE("settings, comments and presets") {
    const RunConfig rc = parse("preset = mining-truck\n# comment\np0_pa = 7.0e6  # inline\nbeta0_deg = 18\n");
    CHECK(rc.suspension.charge.p0 == 7.0e6);
    CHECK(rc.linkage.beta0 == Approx(18.0 * std::numbers::pi / 180.0));
    CHECK(rc.suspension.geom.stroke_limit == 0.05);
    CHECK(parse("table_freqs_hz = 2, 4, 6\n").table.frequencies_hz == std::vector<double>{2.0, 4.0, 6.0});
    CHECK(parse("friction_law = stribeck-gaussian\n").suspension.friction.law == FrictionLaw::stribeck_gaussian);
}

TEST_CASE("rejections name the problem") {
    CHECK(config_error("p0_pa = 8e5\nwibble = 3\n").find("wibble") != std::string::npos);
    CHECK(config_error("p0_pa = 8e5\npreset = mining-truck\n").find("preset must come first") != std::string::npos);
    CHECK(config_error("p0_pa = lots\n").find("p0_pa") != std::string::npos);
    CHECK(config_error("just words\n").find("line 1") != std::string::npos);
    CHECK(config_error("valve_count = 1.5\n").find("valve_count") != std::string::npos);
    config_error("p0_pa = 5e4\n");  // below atmospheric
    config_error("a3_m2 = 2.0e-3\n");
    config_error("table_freqs_hz = 5, 3\n");
    try {
        load_config("/nonexistent/hpsusp.cfg");
        FAIL("expected io error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::io);
    }
}

TEST_CASE("digest tracks suspension parameters only") {
    const RunConfig base = bench_prototype();
    const auto d0 = config_digest(base.suspension);
    RunConfig a = base;
    a.suspension.charge.p0 += 1.0;
    CHECK(config_digest(a.suspension) != d0);
    RunConfig b = base;
    b.suspension.fluid.mu = 0.032;
    CHECK(config_digest(b.suspension) != d0);
    RunConfig c = base;
    c.linkage.l_eff = 0.3;
    c.vehicle.m_s = 1.0;
    CHECK(config_digest(c.suspension) == d0);
}

TEST_CASE("csv round trip is exact") {
    const RunConfig rc = bench_prototype();
    const OracleTrace tr = simulate_suspension(Excitation::sinusoid(5e-3, 5.0, 4.0), rc.suspension, rc.table.dt);
    std::stringstream io;
    write_csv(io, trace_csv(tr));
    const CsvTable back = read_csv(io);
    CHECK(back.header == std::vector<std::string>{"t_s", "p1_pa", "f_out_truth_n", "v_truth_mps", "h_truth_m"});
    REQUIRE(back.rows() == tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) {
        CHECK(back.column("p1_pa")[i] == tr.p1[i]);
        CHECK(back.column("f_out_truth_n")[i] == tr.f_out[i]);
    }
    const PressureTrace pt = trace_from_csv(back, 30.0);
    CHECK(pt.dt == Approx(rc.table.dt).epsilon(1e-12));
    CHECK(pt.samples == tr.p1);
}

TEST_CASE("malformed csv") {
    auto fails = [](const std::string& text) {
        std::istringstream in(text);
        try {
            read_csv(in);
        } catch (const Error& e) {
            return e.code() == Errc::format;
        }
        return false;
    };
    CHECK(fails(""));
    CHECK(fails("t_s,p1_pa\n0,1,2\n"));
    CHECK(fails("t_s,p1_pa\n0\n"));
    CHECK(fails("t_s,p1_pa\n0,abc\n"));

    std::istringstream no_p("t_s,x\n0,1\n1,2\n");
    const CsvTable t = read_csv(no_p);
    CHECK_THROWS_AS(trace_from_csv(t, 30.0), Error);
}
