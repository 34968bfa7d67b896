#include "hpsusp/validation.hpp"

#include "hpsusp/error.hpp"
#include "hpsusp/estimator.hpp"
#include "hpsusp/lookup_table.hpp"
#include "hpsusp/metrics.hpp"
#include "hpsusp/oracle.hpp"
#include "hpsusp/suspension.hpp"
#include "hpsusp/wheel_load.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <span>

namespace hpsusp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Acceptance limits.
constexpr double kRoundTripRmse = 0.02;
constexpr double kRoundTripR2 = 0.99;
constexpr double kRoundTripSeconds = 5.0;
constexpr double kHoldOutHz = 7.5;
constexpr double kHoldOutRmse = 0.045;
constexpr double kHoldOutR2 = 0.94;
constexpr double kAgreementRmse = 0.02;
constexpr double kSpeedupFloor = 20.0;
constexpr double kLookupCeilingNs = 10000.0;
constexpr int kPropertySamples = 10000;
constexpr double kAdiabaticTol = 1e-3;
constexpr double kTemperatureTol = 1e-12;
constexpr double kCenterTol = 1e-9;     // relative to the largest cell magnitude
constexpr double kEdgeTol = 2.4e-7;     // two float ulps, same scale
constexpr double kWheelLoadRmse = 0.05;
constexpr double kInertiaFraction = 0.03;
constexpr double kBetaRateRms = 0.01;
constexpr std::size_t kPayloadBytes = 4 * kPressureNodes * kDeltaNodes * 3 * 4;

// Closed-loop wheel-load run on the truck.
constexpr double kRoadAmplitude = 2.0e-3;
constexpr double kRoadHz = 8.0;
constexpr double kRoadDuration = 12.0;
constexpr double kRoadRamp = 0.25;
constexpr double kSettleS = 4.0;

constexpr double kRunSeconds = 20.0;

struct Context {
    const CampaignOptions& opts;
    std::optional<LookupTable> bench_table, hot_table, truck_table;

    static LookupTable build(const RunConfig& rc) {
        return build_table(rc.suspension, rc.table.frequencies_hz, rc.table.dt, BuildOptions::from(rc.table));
    }
    const LookupTable& bench() {
        if (!bench_table) bench_table = build(opts.bench);
        return *bench_table;
    }
    const LookupTable& hot() {
        if (!hot_table) hot_table = build(opts.bench_hot);
        return *hot_table;
    }
    const LookupTable& truck() {
        if (!truck_table) truck_table = build(opts.truck);
        return *truck_table;
    }
};

OracleTrace sine_run(const RunConfig& rc, double f_hz, double duration = kRunSeconds) {
    return simulate_suspension(Excitation::sinusoid(rc.table.amplitude.at(f_hz), f_hz, duration), rc.suspension,
                               rc.table.dt);
}

std::string fmt(const char* pattern, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

std::string tag(double f_hz) { return fmt("%g", f_hz) + "hz"; }

// Index where the last whole number of cycles (as many as fit) starts.
std::size_t whole_cycles_start(std::size_t n, double f_hz, double dt, int skip_cycles) {
    const double per = 1.0 / (f_hz * dt);
    const auto total = static_cast<int>(std::floor(static_cast<double>(n - 1) / per));
    const int keep = std::max(1, total - skip_cycles);
    const auto span = static_cast<std::size_t>(std::lround(keep * per));
    return n - 1 - std::min(span, n - 1);
}

double damping_loop(const ForceBreakdown& b, std::size_t start) {
    std::span<const double> f(b.f_damp), h(b.h_total);
    return loop_area(f.subspan(start), h.subspan(start));
}

CriterionResult round_trip(Context& ctx) {
    CriterionResult c{1, "round-trip force recovery (iterative, 5 Hz / 7.5 mm)", {}, {}};
    const RunConfig& rc = ctx.opts.bench;
    const OracleTrace tr = simulate_suspension(Excitation::sinusoid(7.5e-3, 5.0, kRunSeconds), rc.suspension,
                                               rc.table.dt);
    const PressureTrace pt = tr.pressure_trace(rc.suspension.charge.t0);
    const auto t0 = std::chrono::steady_clock::now();
    const ForceBreakdown b = run(pt, rc.suspension);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.measurements.push_back({"samples", static_cast<double>(pt.samples.size()), 0.0, Bound::info});
    c.measurements.push_back({"rel_rmse", relative_rmse(b.f_out, tr.f_out), kRoundTripRmse, Bound::less});
    c.measurements.push_back({"r2", r_squared(b.f_out, tr.f_out), kRoundTripR2, Bound::greater});
    c.measurements.push_back({"runtime_s", secs, kRoundTripSeconds, Bound::less});
    c.measurements.push_back({"f_peak_hz", b.f_peak, 0.0, Bound::info});
    return c;
}

CriterionResult hold_out(Context& ctx) {
    CriterionResult c{2, "hold-out frequency 7.5 Hz (lookup, auto tracking) at 30 and 50 degC", {}, {}};
    const std::pair<const RunConfig*, const LookupTable*> runs[] = {{&ctx.opts.bench, &ctx.bench()},
                                                                     {&ctx.opts.bench_hot, &ctx.hot()}};
    for (const auto& [rc, table] : runs) {
        const OracleTrace tr = sine_run(*rc, kHoldOutHz);
        const PressureTrace pt = tr.pressure_trace(rc->suspension.charge.t0);
        const ForceBreakdown b = estimate_series(*table, pt, FrequencyMode::tracking());
        const std::string t = fmt("%gc", rc->suspension.charge.t0);
        c.measurements.push_back({"rel_rmse_" + t, relative_rmse(b.f_out, tr.f_out), kHoldOutRmse, Bound::less});
        c.measurements.push_back({"r2_" + t, r_squared(b.f_out, tr.f_out), kHoldOutR2, Bound::greater});
        const ForceBreakdown fixed = estimate_series(*table, pt, FrequencyMode::fixed(kTwoPi * kHoldOutHz));
        c.measurements.push_back({"rel_rmse_fixed_" + t, relative_rmse(fixed.f_out, tr.f_out), 0.0, Bound::info});
    }
    return c;
}

CriterionResult agreement(Context& ctx) {
    CriterionResult c{3, "lookup vs iterative at the build frequencies", {}, {}};
    const RunConfig& rc = ctx.opts.bench;
    for (double f : rc.table.frequencies_hz) {
        const OracleTrace tr = sine_run(rc, f);
        const PressureTrace pt = tr.pressure_trace(rc.suspension.charge.t0);
        const ForceBreakdown it = run(pt, rc.suspension);
        const ForceBreakdown lk = estimate_series(ctx.bench(), pt, FrequencyMode::fixed(kTwoPi * f));
        c.measurements.push_back({"rel_rmse_" + tag(f), relative_rmse(lk.f_out, it.f_out), kAgreementRmse,
                                  Bound::less});
        c.measurements.push_back({"iter_vs_truth_" + tag(f), relative_rmse(it.f_out, tr.f_out), 0.0, Bound::info});
        c.measurements.push_back({"lookup_vs_truth_" + tag(f), relative_rmse(lk.f_out, tr.f_out), 0.0, Bound::info});
    }
    return c;
}

CriterionResult efficiency(Context& ctx) {
    CriterionResult c{4, "lookup per-sample cost vs iterative", {}, {}};
    const RunConfig& rc = ctx.opts.bench;
    const OracleTrace tr = simulate_suspension(Excitation::sinusoid(7.5e-3, 5.0, ctx.opts.bench_duration_s),
                                               rc.suspension, rc.table.dt);
    const BenchmarkReport r = benchmark(ctx.bench(), tr.pressure_trace(rc.suspension.charge.t0), rc.suspension,
                                        ctx.opts.bench_repetitions);
    c.measurements.push_back({"samples", static_cast<double>(r.samples), 0.0, Bound::info});
    c.measurements.push_back({"repetitions", static_cast<double>(r.repetitions), 0.0, Bound::info});
    c.measurements.push_back({"iterative_ns", r.iterative_ns_per_sample, 0.0, Bound::info});
    c.measurements.push_back({"lookup_ns", r.lookup_ns_per_sample, kLookupCeilingNs, Bound::less});
    c.measurements.push_back({"ratio", r.ratio, kSpeedupFloor, Bound::at_least});
    c.measurements.push_back({"lookup_vs_iterative_rmse", r.lookup_vs_iterative_rmse, kHoldOutRmse, Bound::less});
    return c;
}

CriterionResult mapping_properties(Context& ctx) {
    CriterionResult c{5, "pressure-to-velocity map: injectivity, monotonicity, zero and sign", {}, {}};
    const SuspensionConfig& cfg = ctx.opts.bench.suspension;
    const double dt = ctx.opts.bench.table.dt;
    const double n = effective_polytropic_index(kTwoPi * 5.0, cfg.charge, cfg.fluid);
    const double p0 = cfg.charge.p0;
    std::mt19937_64 rng(ctx.opts.seed);
    std::uniform_real_distribution<double> pd(0.5 * p0, 5.0 * p0), dpd(-0.2 * p0, 0.2 * p0);
    auto v = [&](double p, double dp) { return pressure_to_velocity(p, dp, dt, cfg.charge, cfg.geom, n); };
    auto nonzero = [&] {
        double d = 0.0;
        while (d == 0.0) d = dpd(rng);
        return d;
    };

    std::size_t same_dp = 0, same_p = 0, mono_dp = 0, mono_p = 0, zero = 0, sign = 0;
    for (int k = 0; k < kPropertySamples; ++k) {
        const double p1 = pd(rng), p2 = pd(rng), dp = nonzero(), dq = nonzero();
        // the two cases of the uniqueness argument
        if (p1 != p2 && v(p1, dp) == v(p2, dp)) ++same_dp;
        if (dp != dq && v(p1, dp) == v(p1, dq)) ++same_p;
        const double lo = std::min(dp, dq), hi = std::max(dp, dq);
        if (lo != hi && !(v(p1, lo) < v(p1, hi))) ++mono_dp;
        const double pl = std::min(p1, p2), ph = std::max(p1, p2), up = std::abs(dp);
        if (pl != ph && !(std::abs(v(pl, up)) > std::abs(v(ph, up)))) ++mono_p;
        if (v(p1, 0.0) != 0.0) ++zero;
        if (!(v(p1, up) > 0.0) || !(v(p1, -up) < 0.0)) ++sign;
    }
    c.measurements.push_back({"pairs", kPropertySamples, 0.0, Bound::info});
    c.measurements.push_back({"collisions_equal_dp", static_cast<double>(same_dp), 0.0, Bound::equal});
    c.measurements.push_back({"collisions_equal_p", static_cast<double>(same_p), 0.0, Bound::equal});
    c.measurements.push_back({"non_monotone_in_dp", static_cast<double>(mono_dp), 0.0, Bound::equal});
    c.measurements.push_back({"non_decreasing_in_p", static_cast<double>(mono_p), 0.0, Bound::equal});
    c.measurements.push_back({"nonzero_at_dp0", static_cast<double>(zero), 0.0, Bound::equal});
    c.measurements.push_back({"sign_violations", static_cast<double>(sign), 0.0, Bound::equal});
    return c;
}

CriterionResult polytropic_limits(Context& ctx) {
    CriterionResult c{6, "polytropic index limits and temperature factor", {}, {}};
    const FluidProperties& fluid = ctx.opts.bench.suspension.fluid;
    GasChargeState at_ref = ctx.opts.bench.suspension.charge;
    at_ref.t0 = at_ref.t_ref;
    c.measurements.push_back({"n_eff_static", effective_polytropic_index(0.0, at_ref, fluid), 1.0, Bound::equal});
    const double fast = effective_polytropic_index(100.0 * at_ref.omega_c, at_ref, fluid);
    c.measurements.push_back({"adiabatic_gap", std::abs(fast - fluid.gamma), kAdiabaticTol, Bound::less});

    double worst = 0.0;
    for (double t : {-20.0, 0.0, 25.0, 30.0, 50.0, 80.0}) {
        GasChargeState hot = at_ref;
        hot.t0 = t;
        for (double omega : {0.0, 3.0, at_ref.omega_c, 31.4, 50.3, 500.0}) {
            const double expect = (1.0 + (fluid.gamma - 1.0) * (1.0 - std::exp(-omega / at_ref.omega_c))) *
                                  (1.0 + at_ref.alpha_t * (t - at_ref.t_ref));
            const double got = effective_polytropic_index(omega, hot, fluid);
            worst = std::max(worst, std::abs(got - expect) / expect);
            const double ratio = got / effective_polytropic_index(omega, at_ref, fluid);
            worst = std::max(worst, std::abs(ratio - (1.0 + at_ref.alpha_t * (t - at_ref.t_ref))));
        }
    }
    c.measurements.push_back({"temperature_factor_error", worst, kTemperatureTol, Bound::less});
    return c;
}

CriterionResult interpolation_exactness(Context& ctx) {
    CriterionResult c{7, "interpolation exactness and table round trip", {}, {}};
    const LookupTable& table = ctx.bench();
    std::mt19937_64 rng(ctx.opts.seed + 7);

    std::size_t node_miss = 0, nodes = 0;
    double center_err = 0.0, edge_err = 0.0;
    for (const LookupGrid& g : table.grids) {
        double scale_f = 0.0, scale_v = 0.0, scale_h = 0.0;
        for (const Cell& cell : g.cells) {
            scale_f = std::max(scale_f, std::abs(double{cell.f_out}));
            scale_v = std::max(scale_v, std::abs(double{cell.v}));
            scale_h = std::max(scale_h, std::abs(double{cell.h}));
        }
        auto rel = [&](const QueryResult& a, const QueryResult& b) {
            return std::max({std::abs(a.f_out - b.f_out) / scale_f, std::abs(a.v - b.v) / scale_v,
                             std::abs(a.h - b.h) / scale_h});
        };

        for (std::size_t i = 0; i < g.p_axis.nodes; ++i) {
            for (std::size_t j = 0; j < g.dp_axis.nodes; ++j) {
                const QueryResult q = query(table, g.p_axis.at(i), g.dp_axis.at(j), g.omega);
                const Cell& s = g.cell(i, j);
                ++nodes;
                if (q.f_out != double{s.f_out} || q.v != double{s.v} || q.h != double{s.h}) ++node_miss;
            }
        }

        std::uniform_int_distribution<std::size_t> ip(0, g.p_axis.nodes - 2), idp(0, g.dp_axis.nodes - 2);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int k = 0; k < 2000; ++k) {
            const std::size_t i = ip(rng), j = idp(rng);
            const Cell* corners[] = {&g.cell(i, j), &g.cell(i + 1, j), &g.cell(i, j + 1), &g.cell(i + 1, j + 1)};
            QueryResult mean4;
            for (const Cell* cc : corners) {
                mean4.f_out += 0.25 * cc->f_out;
                mean4.v += 0.25 * cc->v;
                mean4.h += 0.25 * cc->h;
            }
            const double pc = 0.5 * (g.p_axis.at(i) + g.p_axis.at(i + 1));
            const double dpc = 0.5 * (g.dp_axis.at(j) + g.dp_axis.at(j + 1));
            center_err = std::max(center_err, rel(query(table, pc, dpc, g.omega), mean4));

            // approach an interior edge from both sides
            const double w = unit(rng);
            const std::size_t ie = std::max<std::size_t>(i, 1);
            const double eps_p = 1e-9 * g.p_axis.step();
            const double pe = g.p_axis.at(ie), de = g.dp_axis.at(j) + w * g.dp_axis.step();
            edge_err = std::max(edge_err, rel(query(table, pe - eps_p, de, g.omega), query(table, pe + eps_p, de, g.omega)));
            const std::size_t je = std::max<std::size_t>(j, 1);
            const double eps_d = 1e-9 * g.dp_axis.step();
            const double pf = g.p_axis.at(i) + w * g.p_axis.step(), df = g.dp_axis.at(je);
            edge_err = std::max(edge_err, rel(query(table, pf, df - eps_d, g.omega), query(table, pf, df + eps_d, g.omega)));
        }
    }
    c.measurements.push_back({"nodes_checked", static_cast<double>(nodes), 0.0, Bound::info});
    c.measurements.push_back({"node_mismatches", static_cast<double>(node_miss), 0.0, Bound::equal});
    c.measurements.push_back({"center_error", center_err, kCenterTol, Bound::less});
    c.measurements.push_back({"edge_jump", edge_err, kEdgeTol, Bound::less});

    const auto bytes = serialize(table);
    try {
        const LookupTable back = deserialize(bytes, table.config_digest);
        bool same = serialize(back) == bytes && back.dt == table.dt && back.grids.size() == table.grids.size();
        for (std::size_t k = 0; same && k < back.grids.size(); ++k) {
            const LookupGrid &a = table.grids[k], &b = back.grids[k];
            same = a.omega == b.omega && a.filled_mask == b.filled_mask && a.p_axis.min == b.p_axis.min &&
                   a.p_axis.max == b.p_axis.max && a.dp_axis.min == b.dp_axis.min && a.dp_axis.max == b.dp_axis.max;
            for (std::size_t m = 0; same && m < a.cells.size(); ++m)
                same = std::memcmp(&a.cells[m], &b.cells[m], sizeof(Cell)) == 0;
        }
        if (!same) c.failures.push_back("deserialized table differs from the original");
    } catch (const Error& e) {
        c.failures.push_back(std::string("round trip threw: ") + e.what());
    }
    c.measurements.push_back({"serialized_bytes", static_cast<double>(bytes.size()), 0.0, Bound::info});
    return c;
}

struct WheelRun {
    QuarterCarRun oracle;
    WheelLoadSeries series;
    std::size_t settle = 0;
};

WheelRun wheel_run(Context& ctx) {
    const RunConfig& rc = ctx.opts.truck;
    Excitation road = Excitation::sinusoid(kRoadAmplitude, kRoadHz, kRoadDuration);
    road.ramp = kRoadRamp;
    WheelRun w;
    w.oracle = simulate_quarter_car(road, QuarterCarParams::from(rc), rc.table.dt, kRoadDuration);
    w.series = estimate_wheel_load_series(w.oracle.trace.pressure_trace(rc.suspension.charge.t0), ctx.truck(),
                                          rc.linkage);
    w.settle = static_cast<std::size_t>(std::lround(kSettleS / rc.table.dt));
    return w;
}

CriterionResult wheel_load_loop(const WheelRun& w) {
    CriterionResult c{8, "wheel load vs quarter-car truth (mining truck, 8 Hz road)", {}, {}};
    const std::span<const double> est = std::span<const double>(w.series.f_tire).subspan(w.settle);
    const std::span<const double> tru = std::span<const double>(w.oracle.trace.f_tire_truth).subspan(w.settle);
    c.measurements.push_back({"rel_rmse", relative_rmse(est, tru), kWheelLoadRmse, Bound::less});
    c.measurements.push_back({"rms_rel_rmse", rms_relative_rmse(est, tru), 0.0, Bound::info});
    c.measurements.push_back({"r2", r_squared(est, tru), 0.0, Bound::info});
    const std::span<const double> fo = std::span<const double>(w.series.f_out).subspan(w.settle);
    const std::span<const double> fo_t = std::span<const double>(w.oracle.trace.f_out).subspan(w.settle);
    c.measurements.push_back({"f_out_rel_rmse", relative_rmse(fo, fo_t), 0.0, Bound::info});
    const FrequencySeparation& s = w.oracle.separation;
    c.measurements.push_back({"stiffness_ratio", s.stiffness_ratio, 0.0, Bound::info});
    c.measurements.push_back({"tire_hz", s.tire_hz, 0.0, Bound::info});
    c.measurements.push_back({"separation_ok", s.separation_ok ? 1.0 : 0.0, 0.0, Bound::info});
    c.measurements.push_back({"static_residual", w.oracle.static_residual, 1e-6, Bound::less});
    c.measurements.push_back({"extrapolated_queries", static_cast<double>(w.series.stats.extrapolated), 0.0,
                              Bound::info});
    return c;
}

CriterionResult inertia_fraction(const WheelRun& w, const WheelLinkage& link) {
    CriterionResult c{9, "tire-inertia share of the wheel load", {}, {}};
    double peak = 0.0;
    for (std::size_t i = w.settle; i < w.series.size(); ++i) peak = std::max(peak, std::abs(link.m_t * w.series.ztt[i]));
    const double load = mean(std::span<const double>(w.series.f_tire).subspan(w.settle));
    c.measurements.push_back({"max_inertia_n", peak, 0.0, Bound::info});
    c.measurements.push_back({"mean_load_n", load, 0.0, Bound::info});
    c.measurements.push_back({"fraction", peak / load, kInertiaFraction, Bound::less});
    return c;
}

CriterionResult hysteresis(Context& ctx) {
    CriterionResult c{10, "damping loop area: positive, smaller when hot", {}, {}};
    const RunConfig* cfgs[] = {&ctx.opts.bench, &ctx.opts.bench_hot};
    double area5[2] = {0.0, 0.0};
    for (int k = 0; k < 2; ++k) {
        const RunConfig& rc = *cfgs[k];
        const std::string t = fmt("%gc", rc.suspension.charge.t0);
        for (double f : {3.0, 5.0, 7.0, 7.5, 8.0}) {
            const OracleTrace tr = sine_run(rc, f);
            const ForceBreakdown b = run(tr.pressure_trace(rc.suspension.charge.t0), rc.suspension);
            const double a = damping_loop(b, whole_cycles_start(b.size(), f, rc.table.dt, 1));
            c.measurements.push_back({"area_" + tag(f) + "_" + t, a, 0.0, Bound::greater});
            if (f == 5.0) area5[k] = a;
        }
    }
    c.measurements.push_back({"hot_over_cold_5hz", area5[1] / area5[0], 1.0, Bound::less});
    return c;
}

CriterionResult storage(Context& ctx) {
    CriterionResult c{11, "serialized cell payload for four frequencies", {}, {}};
    const LookupTable& t = ctx.bench();
    c.measurements.push_back({"grids", static_cast<double>(t.grids.size()), 4.0, Bound::equal});
    c.measurements.push_back({"cell_payload_bytes", static_cast<double>(t.cell_payload_bytes()),
                              static_cast<double>(kPayloadBytes), Bound::equal});
    return c;
}

CriterionResult beta_rate(Context& ctx) {
    CriterionResult c{12, "inclination-rate term in the tire acceleration", {}, {}};
    const RunConfig& rc = ctx.opts.truck;
    for (double f : {3.0, 5.0, 7.0, 8.0}) {
        const OracleTrace tr = sine_run(rc, f);
        const PressureTrace pt = tr.pressure_trace(rc.suspension.charge.t0);
        WheelLoadOptions o;
        o.frequency = FrequencyMode::fixed(kTwoPi * f);
        const WheelLoadSeries base = estimate_wheel_load_series(pt, ctx.truck(), rc.linkage, o);
        o.include_beta_rate = true;
        const WheelLoadSeries full = estimate_wheel_load_series(pt, ctx.truck(), rc.linkage, o);
        std::vector<double> diff;
        for (std::size_t i = base.first_valid; i < base.size(); ++i) diff.push_back(full.ztt[i] - base.ztt[i]);
        const double ref = rms(std::span<const double>(base.ztt).subspan(base.first_valid));
        c.measurements.push_back({"rms_change_" + tag(f), rms(diff) / ref, kBetaRateRms, Bound::less});
    }
    return c;
}

const char* bound_text(Bound b) {
    switch (b) {
    case Bound::less: return "<";
    case Bound::greater: return ">";
    case Bound::at_least: return ">=";
    case Bound::equal: return "==";
    case Bound::info: return "";
    }
    return "";
}

} // namespace

bool Measurement::ok() const {
    switch (bound) {
    case Bound::less: return value < limit;
    case Bound::greater: return value > limit;
    case Bound::at_least: return value >= limit;
    case Bound::equal: return value == limit;
    case Bound::info: return true;
    }
    return false;
}

bool CriterionResult::passed() const {
    return failures.empty() && std::all_of(measurements.begin(), measurements.end(), [](const auto& m) { return m.ok(); });
}

bool CampaignReport::passed() const { return failed_count() == 0; }

std::size_t CampaignReport::failed_count() const {
    return static_cast<std::size_t>(
        std::count_if(criteria.begin(), criteria.end(), [](const auto& c) { return !c.passed(); }));
}

CampaignReport run_acceptance(const CampaignOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    Context ctx{opts, {}, {}, {}};
    CampaignReport rep;
    auto wanted = [&](int id) { return opts.only.empty() || std::find(opts.only.begin(), opts.only.end(), id) != opts.only.end(); };
    auto guarded = [&](int id, const char* title, auto&& fn) {
        if (!wanted(id)) return;
        try {
            rep.criteria.push_back(fn());
        } catch (const std::exception& e) {
            rep.criteria.push_back({id, title, {}, {std::string("threw: ") + e.what()}});
        }
    };
    guarded(1, "round-trip force recovery", [&] { return round_trip(ctx); });
    guarded(2, "hold-out frequency", [&] { return hold_out(ctx); });
    guarded(3, "lookup vs iterative", [&] { return agreement(ctx); });
    guarded(5, "pressure-to-velocity map", [&] { return mapping_properties(ctx); });
    guarded(6, "polytropic index limits", [&] { return polytropic_limits(ctx); });
    guarded(7, "interpolation exactness", [&] { return interpolation_exactness(ctx); });
    if (wanted(8) || wanted(9)) {
        std::optional<WheelRun> wheel;
        try {
            wheel = wheel_run(ctx);
        } catch (const std::exception& e) {
            if (wanted(8)) rep.criteria.push_back({8, "wheel load vs quarter-car truth", {}, {std::string("threw: ") + e.what()}});
            if (wanted(9)) rep.criteria.push_back({9, "tire-inertia share", {}, {"no wheel-load run"}});
        }
        if (wheel && wanted(8)) rep.criteria.push_back(wheel_load_loop(*wheel));
        if (wheel && wanted(9)) rep.criteria.push_back(inertia_fraction(*wheel, opts.truck.linkage));
    }
    guarded(10, "damping loop area", [&] { return hysteresis(ctx); });
    guarded(11, "cell payload", [&] { return storage(ctx); });
    guarded(12, "inclination-rate term", [&] { return beta_rate(ctx); });
    // timing last, with nothing else running
    guarded(4, "lookup cost", [&] { return efficiency(ctx); });
    std::sort(rep.criteria.begin(), rep.criteria.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

void print_report(std::ostream& out, const CampaignReport& report) {
    char buf[256];
    for (const CriterionResult& c : report.criteria) {
        out << 'C' << c.id << (c.id < 10 ? "  " : " ") << (c.passed() ? "PASS" : "FAIL") << "  " << c.title << '\n';
        for (const Measurement& m : c.measurements) {
            if (m.bound == Bound::info)
                std::snprintf(buf, sizeof buf, "      %-28s %.6g\n", m.name.c_str(), m.value);
            else
                std::snprintf(buf, sizeof buf, "      %-28s %.6g  (%s %g)%s\n", m.name.c_str(), m.value,
                              bound_text(m.bound), m.limit, m.ok() ? "" : "  <-- fails");
            out << buf;
        }
        for (const std::string& f : c.failures) out << "      ! " << f << '\n';
    }
    std::snprintf(buf, sizeof buf, "%zu/%zu criteria passed in %.1f s\n", report.criteria.size() - report.failed_count(),
                  report.criteria.size(), report.seconds);
    out << buf;
}

} // namespace hpsusp
