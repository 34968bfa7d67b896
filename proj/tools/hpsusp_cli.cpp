#include "hpsusp/config.hpp"
#include "hpsusp/csv.hpp"
#include "hpsusp/error.hpp"
#include "hpsusp/estimator.hpp"
#include "hpsusp/lookup_table.hpp"
#include "hpsusp/metrics.hpp"
#include "hpsusp/oracle.hpp"
#include "hpsusp/validation.hpp"
#include "hpsusp/wheel_load.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

using namespace hpsusp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitValidation = 5;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code(Errc c) {
    switch (c) {
    case Errc::invalid_argument:
    case Errc::config:
        return kExitUsage;
    case Errc::io:
    case Errc::format:
    case Errc::dt_mismatch:
    case Errc::bad_magic:
    case Errc::unsupported_version:
    case Errc::bad_dimensions:
    case Errc::truncated_payload:
    case Errc::digest_mismatch:
    case Errc::trailing_data:
        return kExitInput;
    default:
        return kExitNumerical;
    }
}

struct ConfigSource {
    std::string preset_name = "bench-prototype";
    std::string path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset_name, "Named parameter set")->capture_default_str();
        cmd->add_option("--config", path, "key = value config file (applied on top of --preset)");
    }
    RunConfig load() const {
        const RunConfig base = preset(preset_name);
        return path.empty() ? base : load_config(path, base);
    }
};

void write_table_csv(const std::string& path, const CsvTable& t) {
    if (path == "-") {
        write_csv(std::cout, t);
    } else {
        write_csv_file(path, t);
    }
}

CsvTable read_table_csv(const std::string& path) { return path == "-" ? read_csv(std::cin) : read_csv_file(path); }

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out || !(out << text)) throw Error(Errc::io, "cannot write '" + path + "'");
}

LookupTable load_matching_table(const std::string& path, const RunConfig& rc) {
    LookupTable t = load_table(path);
    if (t.config_digest != config_digest(rc.suspension))
        throw Error(Errc::digest_mismatch, "table '" + path + "' was built from a different suspension configuration");
    return t;
}

void report_against_truth(const char* label, std::span<const double> est, std::span<const double> truth) {
    std::fprintf(stderr, "%s vs truth: rel_rmse=%.6g rms_rel_rmse=%.6g r2=%.6g\n", label, relative_rmse(est, truth),
                 rms_relative_rmse(est, truth), r_squared(est, truth));
}

// ---- simulate ----

struct SimulateArgs {
    ConfigSource cfg;
    std::vector<double> freqs;
    std::vector<double> amps;
    double duration = 20.0;
    double ramp = 0.0;
    bool sweep = false;
    bool quarter_car = false;
    bool no_truth = false;
    std::string out = "-";
};

int cmd_simulate(const SimulateArgs& a) {
    const RunConfig rc = a.cfg.load();
    std::vector<double> amps = a.amps;
    if (amps.empty()) {
        for (double f : a.freqs) amps.push_back(rc.table.amplitude.at(f));
        if (a.sweep) amps.resize(1);
    }
    Excitation ex;
    if (a.sweep) {
        if (a.freqs.size() != 2 || amps.size() != 1) throw UsageError("--sweep needs two --freq values and one --amp");
        ex = Excitation::sweep(amps[0], a.freqs[0], a.freqs[1], a.duration);
    } else if (a.freqs.size() == 1) {
        if (amps.size() != 1) throw UsageError("one --amp per --freq");
        ex = Excitation::sinusoid(amps[0], a.freqs[0], a.duration);
    } else {
        if (amps.size() != a.freqs.size()) throw UsageError("one --amp per --freq");
        ex = Excitation::sum_of_sines(amps, a.freqs, a.duration);
    }
    ex.ramp = a.ramp;

    OracleTrace tr;
    if (a.quarter_car) {
        const QuarterCarRun run = simulate_quarter_car(ex, QuarterCarParams::from(rc), rc.table.dt, a.duration);
        const FrequencySeparation& s = run.separation;
        std::fprintf(stderr,
                     "static stroke %.6g m (residual %.3g); stiffness ratio %.4g (%s); tire %.4g Hz vs excitation "
                     "%.4g Hz (%s)\n",
                     run.h_static, run.static_residual, s.stiffness_ratio, s.stiffness_ok ? "ok" : "LOW", s.tire_hz,
                     s.excitation_hz, s.separation_ok ? "separated" : "NOT separated");
        tr = run.trace;
    } else {
        tr = simulate_suspension(ex, rc.suspension, rc.table.dt);
    }
    write_table_csv(a.out, trace_csv(tr, !a.no_truth));
    std::fprintf(stderr, "%zu samples at dt=%g s\n", tr.size(), tr.dt);
    return kExitOk;
}

// ---- estimate ----

struct EstimateArgs {
    ConfigSource cfg;
    std::string trace;
    std::string mode = "iterative";
    std::string table;
    std::optional<double> freq;
    std::optional<double> lowpass;
    std::string out = "-";
};

int cmd_estimate(const EstimateArgs& a) {
    if (a.mode == "lookup" && a.table.empty()) throw UsageError("lookup mode needs --table");
    const RunConfig rc = a.cfg.load();
    const CsvTable csv = read_table_csv(a.trace);
    const PressureTrace pt = trace_from_csv(csv, rc.suspension.charge.t0);

    ForceBreakdown b;
    if (a.mode == "iterative") {
        EstimatorOptions o;
        o.frequency_hz = a.freq;
        if (a.lowpass) {
            o.lowpass = true;
            o.lowpass_cutoff_hz = *a.lowpass;
        }
        b = run(pt, rc.suspension, o);
        std::fprintf(stderr, "f_peak=%.6g Hz n_eff=%.6g cavitation_samples=%zu\n", b.f_peak, b.n_eff,
                     b.cavitation_samples.size());
    } else {
        const LookupTable table = load_matching_table(a.table, rc);
        const FrequencyMode mode = a.freq ? FrequencyMode::fixed(kTwoPi * *a.freq) : FrequencyMode::tracking();
        QueryStats stats;
        b = estimate_series(table, pt, mode, &stats);
        std::fprintf(stderr, "queries=%zu clamped_p=%zu clamped_dp=%zu extrapolated=%zu\n", stats.queries,
                     stats.clamped_p, stats.clamped_dp, stats.extrapolated);
    }
    write_table_csv(a.out, breakdown_csv(pt, b));
    if (csv.has("f_out_truth_n")) report_against_truth("f_out", b.f_out, csv.column("f_out_truth_n"));
    return kExitOk;
}

// ---- build-table ----

struct BuildArgs {
    ConfigSource cfg;
    std::vector<double> freqs;
    std::string out;
};

int cmd_build_table(const BuildArgs& a) {
    RunConfig rc = a.cfg.load();
    if (!a.freqs.empty()) rc.table.frequencies_hz = a.freqs;
    rc.table.validate();
    const LookupTable t = build_table(rc.suspension, rc.table.frequencies_hz, rc.table.dt, BuildOptions::from(rc.table));
    save_table(t, a.out);
    for (const LookupGrid& g : t.grids)
        std::fprintf(stderr, "grid %.4g Hz: coverage %.1f%%\n", g.omega / kTwoPi, 100.0 * g.coverage());
    std::fprintf(stderr, "p axis [%.6g, %.6g] Pa, dp axis [%.6g, %.6g] Pa, cell payload %zu bytes -> %s\n",
                 t.grids[0].p_axis.min, t.grids[0].p_axis.max, t.grids[0].dp_axis.min, t.grids[0].dp_axis.max,
                 t.cell_payload_bytes(), a.out.c_str());
    return kExitOk;
}

// ---- wheel-load ----

struct WheelArgs {
    ConfigSource cfg;
    std::string trace;
    std::string table;
    std::optional<double> freq;
    bool beta_rate = false;
    std::string out = "-";
};

int cmd_wheel_load(const WheelArgs& a) {
    const RunConfig rc = a.cfg.load();
    const CsvTable csv = read_table_csv(a.trace);
    const PressureTrace pt = trace_from_csv(csv, rc.suspension.charge.t0);
    const LookupTable table = load_matching_table(a.table, rc);
    WheelLoadOptions o;
    if (a.freq) o.frequency = FrequencyMode::fixed(kTwoPi * *a.freq);
    o.include_beta_rate = a.beta_rate;
    const WheelLoadSeries s = estimate_wheel_load_series(pt, table, rc.linkage, o);
    write_table_csv(a.out, wheel_load_csv(s));

    if (s.liftoff_count > 0) {
        std::size_t first = 0;
        while (!s.liftoff[first]) ++first;
        std::fprintf(stderr, "warning: wheel liftoff on %zu samples, first at t=%.6g s\n", s.liftoff_count, s.t[first]);
    } else {
        std::fprintf(stderr, "no liftoff\n");
    }
    if (csv.has("f_tire_truth_n")) {
        const std::span<const double> truth(csv.column("f_tire_truth_n"));
        report_against_truth("f_tire", std::span<const double>(s.f_tire).subspan(s.first_valid),
                             truth.subspan(s.first_valid));
    }
    return kExitOk;
}

// ---- bench ----

struct BenchArgs {
    ConfigSource cfg;
    std::string table;
    std::string trace;
    int reps = 11;
    std::string json;
};

int cmd_bench(const BenchArgs& a) {
    const RunConfig rc = a.cfg.load();
    const LookupTable table =
        a.table.empty()
            ? build_table(rc.suspension, rc.table.frequencies_hz, rc.table.dt, BuildOptions::from(rc.table))
            : load_matching_table(a.table, rc);
    PressureTrace pt;
    if (a.trace.empty()) {
        const double f = 5.0;
        pt = simulate_suspension(Excitation::sinusoid(rc.table.amplitude.at(f), f, 60.0), rc.suspension, rc.table.dt)
                 .pressure_trace(rc.suspension.charge.t0);
    } else {
        pt = trace_from_csv(read_table_csv(a.trace), rc.suspension.charge.t0);
    }
    const BenchmarkReport r = benchmark(table, pt, rc.suspension, a.reps);
    std::printf("samples            %zu\n", r.samples);
    std::printf("repetitions        %d\n", r.repetitions);
    std::printf("iterative ns/sample %.2f\n", r.iterative_ns_per_sample);
    std::printf("lookup ns/sample    %.2f\n", r.lookup_ns_per_sample);
    std::printf("ratio              %.2f\n", r.ratio);
    std::printf("lookup vs iterative rel_rmse %.6g\n", r.lookup_vs_iterative_rmse);
    if (!a.json.empty()) {
        const nlohmann::json j = {{"samples", r.samples},
                                  {"repetitions", r.repetitions},
                                  {"iterative_ns_per_sample", r.iterative_ns_per_sample},
                                  {"lookup_ns_per_sample", r.lookup_ns_per_sample},
                                  {"ratio", r.ratio},
                                  {"lookup_vs_iterative_rel_rmse", r.lookup_vs_iterative_rmse}};
        write_text(a.json, j.dump(2) + "\n");
    }
    return kExitOk;
}

// ---- validate ----

struct ValidateArgs {
    std::string bench_config;
    std::string truck_config;
    int reps = 11;
    std::string json;
};

int cmd_validate(const ValidateArgs& a) {
    CampaignOptions o;
    if (!a.bench_config.empty()) {
        o.bench = load_config(a.bench_config, bench_prototype());
        o.bench_hot = o.bench;
        o.bench_hot.suspension.charge.t0 = 50.0;
        o.bench_hot.suspension.fluid.mu = oil_viscosity_at(50.0);
    }
    if (!a.truck_config.empty()) o.truck = load_config(a.truck_config, mining_truck());
    o.bench_repetitions = a.reps;
    const CampaignReport rep = run_acceptance(o);
    print_report(std::cout, rep);
    if (!a.json.empty()) {
        nlohmann::json crit = nlohmann::json::array();
        for (const CriterionResult& c : rep.criteria) {
            nlohmann::json ms = nlohmann::json::array();
            for (const Measurement& m : c.measurements)
                ms.push_back({{"name", m.name}, {"value", m.value}, {"limit", m.limit}, {"ok", m.ok()},
                              {"gated", m.bound != Bound::info}});
            crit.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.passed()}, {"measurements", ms},
                            {"failures", c.failures}});
        }
        write_text(a.json, nlohmann::json{{"passed", rep.passed()}, {"seconds", rep.seconds}, {"criteria", crit}}.dump(2) +
                               "\n");
    }
    return rep.passed() ? kExitOk : kExitValidation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hydro-pneumatic suspension force and wheel-load estimation"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Forward-simulate a strut (or quarter car) and write a trace CSV");
    sim.cfg.attach(c_sim);
    c_sim->add_option("--freq", sim.freqs, "Excitation frequency in Hz (repeat for sum-of-sines)")->required();
    c_sim->add_option("--amp", sim.amps, "Amplitude in m per frequency (default: table amplitude schedule)");
    c_sim->add_option("--duration", sim.duration, "Seconds")->capture_default_str();
    c_sim->add_option("--ramp", sim.ramp, "Fade-in seconds")->capture_default_str();
    c_sim->add_flag("--sweep", sim.sweep, "Linear sweep between two --freq values");
    c_sim->add_flag("--quarter-car", sim.quarter_car, "Apply the excitation as road input to the quarter-car model");
    c_sim->add_flag("--no-truth", sim.no_truth, "Write only t_s,p1_pa");
    c_sim->add_option("--out", sim.out, "Output CSV ('-' for stdout)")->capture_default_str();

    EstimateArgs est;
    auto* c_est = app.add_subcommand("estimate", "Reconstruct output force from a pressure trace");
    est.cfg.attach(c_est);
    c_est->add_option("--trace", est.trace, "Trace CSV ('-' for stdin)")->required();
    c_est->add_option("--mode", est.mode)->check(CLI::IsMember({"iterative", "lookup"}))->capture_default_str();
    c_est->add_option("--table", est.table, "Table file (lookup mode)");
    c_est->add_option("--freq", est.freq, "Excitation frequency in Hz instead of identifying it");
    c_est->add_option("--lowpass", est.lowpass, "Zero-phase low-pass cutoff in Hz (iterative mode)");
    c_est->add_option("--out", est.out, "Output CSV ('-' for stdout)")->capture_default_str();

    BuildArgs bld;
    auto* c_bld = app.add_subcommand("build-table", "Build and save the pressure lookup table");
    bld.cfg.attach(c_bld);
    c_bld->add_option("--freqs", bld.freqs, "Build frequencies in Hz (default from config)")->delimiter(',');
    c_bld->add_option("--out", bld.out, "Table file")->required();

    WheelArgs whl;
    auto* c_whl = app.add_subcommand("wheel-load", "Estimate the vertical wheel load from a pressure trace");
    whl.cfg.attach(c_whl);
    c_whl->add_option("--trace", whl.trace, "Trace CSV ('-' for stdin)")->required();
    c_whl->add_option("--table", whl.table, "Table file")->required();
    c_whl->add_option("--freq", whl.freq, "Fixed excitation frequency in Hz (default: tracking)");
    c_whl->add_flag("--beta-rate", whl.beta_rate, "Include the inclination-rate term in the tire acceleration");
    c_whl->add_option("--out", whl.out, "Output CSV ('-' for stdout)")->capture_default_str();

    BenchArgs bch;
    auto* c_bch = app.add_subcommand("bench", "Time lookup against iterative estimation");
    bch.cfg.attach(c_bch);
    c_bch->add_option("--table", bch.table, "Table file (default: build one)");
    c_bch->add_option("--trace", bch.trace, "Trace CSV with >= 10000 samples (default: 60 s at 5 Hz)");
    c_bch->add_option("--reps", bch.reps, "Repetitions (at least 10)")->capture_default_str();
    c_bch->add_option("--json", bch.json, "Also write a JSON report ('-' for stdout)");

    ValidateArgs val;
    auto* c_val = app.add_subcommand("validate", "Run the acceptance campaign");
    c_val->add_option("--bench-config", val.bench_config, "Config for the bench strut (50 degC variant derived)");
    c_val->add_option("--truck-config", val.truck_config, "Config for the truck wheel-load runs");
    c_val->add_option("--reps", val.reps, "Benchmark repetitions")->capture_default_str();
    c_val->add_option("--json", val.json, "Also write a JSON report ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_sim->parsed()) return cmd_simulate(sim);
        if (c_est->parsed()) return cmd_estimate(est);
        if (c_bld->parsed()) return cmd_build_table(bld);
        if (c_whl->parsed()) return cmd_wheel_load(whl);
        if (c_bch->parsed()) return cmd_bench(bch);
        if (c_val->parsed()) return cmd_validate(val);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitUsage;
}
