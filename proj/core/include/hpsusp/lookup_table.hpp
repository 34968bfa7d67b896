#pragma once

#include "hpsusp/config.hpp"
#include "hpsusp/estimator.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hpsusp {

inline constexpr std::size_t kPressureNodes = 100;
inline constexpr std::size_t kDeltaNodes = 200;
inline constexpr std::uint32_t kTableVersion = 1;

struct Cell {
    float f_out = 0.0f;
    float v = 0.0f;
    float h = 0.0f;
};

struct Axis {
    double min = 0.0;
    double max = 1.0;
    std::size_t nodes = 2;

    double step() const { return (max - min) / static_cast<double>(nodes - 1); }
    double at(std::size_t i) const;
};

struct LookupGrid {
    double omega = 0.0;  // rad/s
    Axis p_axis{0.0, 1.0, kPressureNodes};
    Axis dp_axis{-1.0, 1.0, kDeltaNodes};
    std::vector<Cell> cells;                  // p-major: cells[ip * dp_nodes + idp]
    std::vector<unsigned char> filled_mask;   // 1 = populated from simulation samples

    const Cell& cell(std::size_t ip, std::size_t idp) const { return cells[ip * dp_axis.nodes + idp]; }
    Cell& cell(std::size_t ip, std::size_t idp) { return cells[ip * dp_axis.nodes + idp]; }
    double coverage() const;
};

struct LookupTable {
    std::vector<LookupGrid> grids;
    double dt = 0.0;
    std::uint64_t config_digest = 0;

    // Throws Errc::bad_dimensions.
    void validate() const;
    std::size_t cell_payload_bytes() const;
};

struct WorkingRange {
    double p_min = 0.0;
    double p_max = std::numeric_limits<double>::infinity();
};

// Explicit pressure-to-velocity map for a fixed sampling period: the gas volume
// change implied by the pressure step, over one sample, per unit piston area.
// Oriented so that a rising pressure gives a positive (compression) velocity.
double pressure_to_velocity(double p, double dp, double dt, const GasChargeState& charge,
                            const SuspensionGeometry& geom, double n_eff, WorkingRange range = {});

struct BuildOptions {
    AmplitudeSchedule amplitude;
    int amplitude_levels = 48;
    int cycles = 20;
    double min_coverage = 0.30;
    double idw_radius = 1.5;  // in grid-cell units
    bool parallel = true;

    static BuildOptions from(const TableSettings& s);
};

LookupTable build_table(const SuspensionConfig& cfg, std::span<const double> frequencies_hz, double dt,
                        const BuildOptions& opts = {});

struct QueryStats {
    std::size_t queries = 0;
    std::size_t clamped_p = 0;
    std::size_t clamped_dp = 0;
    std::size_t extrapolated = 0;  // any bracketing corner came from nearest-neighbour fill

    void merge(const QueryStats& o);
};

struct QueryResult {
    double f_out = 0.0;
    double v = 0.0;
    double h = 0.0;
};

QueryResult query(const LookupTable& table, double p, double dp, double omega, QueryStats* stats = nullptr);

// Bilinear interpolation inside cell (ip, idp) at local coordinates u, w in [0, 1].
QueryResult interpolate_cell(const LookupGrid& grid, std::size_t ip, std::size_t idp, double u, double w);

struct FrequencyMode {
    bool automatic = true;
    double omega = 0.0;

    static FrequencyMode fixed(double omega_rad_s) { return {false, omega_rad_s}; }
    static FrequencyMode tracking() { return {true, 0.0}; }
};

inline constexpr double kTrackingWindowS = 1.0;
inline constexpr double kTrackingHopS = 0.5;

// Angular frequency used for each sample under FrequencyMode::tracking():
// autocorrelation over the 1 s window ending at the start of each 0.5 s hop
// (the first hop looks ahead over the first window).
std::vector<double> track_frequency(std::span<const double> p1, double dt);

// Fills v, h_total and f_out; force components, p2 and a stay zero. Sample 0
// has no predecessor and is queried with dp = 0.
ForceBreakdown estimate_series(const LookupTable& table, const PressureTrace& trace, FrequencyMode mode,
                               QueryStats* stats = nullptr);

std::vector<unsigned char> serialize(const LookupTable& table);
LookupTable deserialize(std::span<const unsigned char> bytes);
// Additionally rejects a table built from a different suspension configuration.
LookupTable deserialize(std::span<const unsigned char> bytes, std::uint64_t expected_digest);

void save_table(const LookupTable& table, const std::string& path);
LookupTable load_table(const std::string& path);

struct BenchmarkReport {
    std::size_t samples = 0;
    int repetitions = 0;
    double iterative_ns_per_sample = 0.0;  // median over repetitions
    double lookup_ns_per_sample = 0.0;
    double ratio = 0.0;
    double lookup_vs_iterative_rmse = 0.0;  // relative, on f_out
};

BenchmarkReport benchmark(const LookupTable& table, const PressureTrace& trace, const SuspensionConfig& cfg,
                          int repetitions = 11);

} // namespace hpsusp
