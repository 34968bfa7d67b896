#include "hpsusp/lookup_table.hpp"

#include "hpsusp/error.hpp"
#include "hpsusp/metrics.hpp"
#include "hpsusp/oracle.hpp"
#include "hpsusp/signal.hpp"
#include "hpsusp/suspension.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <string>

namespace hpsusp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Sample {
    double p, dp, f_out, v, h;
};

std::vector<Sample> simulate_ladder(const SuspensionConfig& cfg, double f_hz, double dt, const BuildOptions& opts) {
    const double top = opts.amplitude.at(f_hz);
    const double duration = opts.cycles / f_hz;
    std::vector<Sample> out;
    for (int j = 1; j <= opts.amplitude_levels; ++j) {
        const double amp = top * j / opts.amplitude_levels;
        // When a cycle spans a near-integer number of samples every cycle hits the
        // same phases; stepping the start phase by the golden ratio interleaves levels.
        const double phase = kTwoPi * std::fmod(j * 0.6180339887498949, 1.0);
        const OracleTrace tr = simulate_suspension(Excitation::sinusoid(amp, f_hz, duration, phase), cfg, dt);
        out.reserve(out.size() + tr.size());
        for (std::size_t i = 1; i < tr.size(); ++i)
            out.push_back({tr.p1[i], tr.p1[i] - tr.p1[i - 1], tr.f_out[i], tr.v[i], tr.h[i]});
    }
    return out;
}

double grid_coord(const Axis& axis, double x) {
    return (x - axis.min) / (axis.max - axis.min) * static_cast<double>(axis.nodes - 1);
}

void fill_from_samples(LookupGrid& grid, const std::vector<Sample>& samples, double radius) {
    const std::size_t np = grid.p_axis.nodes, nd = grid.dp_axis.nodes;
    struct Acc {
        double w = 0.0, f = 0.0, v = 0.0, h = 0.0;
        double ef = 0.0, ev = 0.0, eh = 0.0;
        int exact = 0;
    };
    std::vector<Acc> acc(np * nd);
    const int r = static_cast<int>(std::floor(radius));
    const double r2 = radius * radius;
    for (const Sample& s : samples) {
        const double x = grid_coord(grid.p_axis, s.p);
        const double y = grid_coord(grid.dp_axis, s.dp);
        const int ix = static_cast<int>(std::lround(x));
        const int iy = static_cast<int>(std::lround(y));
        for (int i = ix - r - 1; i <= ix + r + 1; ++i) {
            if (i < 0 || i >= static_cast<int>(np)) continue;
            for (int j = iy - r - 1; j <= iy + r + 1; ++j) {
                if (j < 0 || j >= static_cast<int>(nd)) continue;
                const double d2 = (x - i) * (x - i) + (y - j) * (y - j);
                if (d2 > r2) continue;
                Acc& a = acc[static_cast<std::size_t>(i) * nd + static_cast<std::size_t>(j)];
                if (d2 < 1e-20) {
                    a.ef += s.f_out;
                    a.ev += s.v;
                    a.eh += s.h;
                    ++a.exact;
                    continue;
                }
                const double w = 1.0 / d2;
                a.w += w;
                a.f += w * s.f_out;
                a.v += w * s.v;
                a.h += w * s.h;
            }
        }
    }
    grid.cells.assign(np * nd, Cell{});
    grid.filled_mask.assign(np * nd, 0);
    for (std::size_t k = 0; k < acc.size(); ++k) {
        const Acc& a = acc[k];
        if (a.exact > 0) {
            grid.cells[k] = {static_cast<float>(a.ef / a.exact), static_cast<float>(a.ev / a.exact),
                             static_cast<float>(a.eh / a.exact)};
            grid.filled_mask[k] = 1;
        } else if (a.w > 0.0) {
            grid.cells[k] = {static_cast<float>(a.f / a.w), static_cast<float>(a.v / a.w),
                             static_cast<float>(a.h / a.w)};
            grid.filled_mask[k] = 1;
        }
    }
}

// Unfilled nodes copy the Euclidean-nearest filled node (index space),
// found by growing square rings until no closer node can exist.
void fill_nearest(LookupGrid& grid) {
    const long np = static_cast<long>(grid.p_axis.nodes), nd = static_cast<long>(grid.dp_axis.nodes);
    const std::vector<unsigned char>& mask = grid.filled_mask;
    std::vector<Cell> out = grid.cells;
    for (long i = 0; i < np; ++i) {
        for (long j = 0; j < nd; ++j) {
            if (mask[i * nd + j]) continue;
            long best = -1, best_d2 = 0;
            for (long r = 1; r < np + nd; ++r) {
                if (best >= 0 && r * r > best_d2) break;
                auto consider = [&](long a, long b) {
                    if (a < 0 || a >= np || b < 0 || b >= nd || !mask[a * nd + b]) return;
                    const long d2 = (a - i) * (a - i) + (b - j) * (b - j);
                    if (best < 0 || d2 < best_d2) {
                        best = a * nd + b;
                        best_d2 = d2;
                    }
                };
                for (long b = j - r; b <= j + r; ++b) {
                    consider(i - r, b);
                    consider(i + r, b);
                }
                for (long a = i - r + 1; a <= i + r - 1; ++a) {
                    consider(a, j - r);
                    consider(a, j + r);
                }
            }
            if (best >= 0) out[i * nd + j] = grid.cells[best];
        }
    }
    grid.cells = std::move(out);
}

struct Located {
    std::size_t index;
    double frac;
};

Located locate(const Axis& axis, double x, bool& clamped) {
    if (!(x >= axis.min)) {
        x = axis.min;
        clamped = true;
    } else if (x > axis.max) {
        x = axis.max;
        clamped = true;
    }
    const double s = grid_coord(axis, x);
    std::size_t i = static_cast<std::size_t>(s);
    double frac = s - static_cast<double>(i);
    // Snap coordinates within rounding noise of a node onto the node.
    if (frac > 1.0 - 1e-9) {
        ++i;
        frac = 0.0;
    } else if (frac < 1e-9) {
        frac = 0.0;
    }
    if (i >= axis.nodes - 1) {
        i = axis.nodes - 2;
        frac = 1.0;
    }
    return {i, frac};
}

bool corners_filled(const LookupGrid& g, std::size_t ip, std::size_t idp) {
    const std::size_t nd = g.dp_axis.nodes;
    const std::size_t k = ip * nd + idp;
    return g.filled_mask[k] && g.filled_mask[k + 1] && g.filled_mask[k + nd] && g.filled_mask[k + nd + 1];
}

} // namespace

double Axis::at(std::size_t i) const {
    if (i + 1 == nodes) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(nodes - 1);
}

double LookupGrid::coverage() const {
    if (filled_mask.empty()) return 0.0;
    const auto filled = std::count(filled_mask.begin(), filled_mask.end(), 1);
    return static_cast<double>(filled) / static_cast<double>(filled_mask.size());
}

void QueryStats::merge(const QueryStats& o) {
    queries += o.queries;
    clamped_p += o.clamped_p;
    clamped_dp += o.clamped_dp;
    extrapolated += o.extrapolated;
}

BuildOptions BuildOptions::from(const TableSettings& s) {
    BuildOptions o;
    o.amplitude = s.amplitude;
    o.amplitude_levels = s.amplitude_levels;
    o.cycles = s.cycles;
    return o;
}

double pressure_to_velocity(double p, double dp, double dt, const GasChargeState& charge,
                            const SuspensionGeometry& geom, double n_eff, WorkingRange range) {
    if (!(p > range.p_min && p < range.p_max) || !(p > 0.0))
        throw Error(Errc::range, "pressure outside the working range");
    if (!(dt > 0.0)) throw Error(Errc::invalid_argument, "dt must be > 0");
    const double v_gas = geom.v0_gas * std::pow(charge.p0 / p, 1.0 / n_eff);
    return v_gas / (n_eff * p * geom.a1 * dt) * dp;
}

LookupTable build_table(const SuspensionConfig& cfg, std::span<const double> frequencies_hz, double dt,
                        const BuildOptions& opts) {
    cfg.validate();
    if (frequencies_hz.size() < 2) throw Error(Errc::invalid_argument, "a table needs at least two frequencies");
    for (std::size_t k = 0; k < frequencies_hz.size(); ++k) {
        if (!(frequencies_hz[k] > 0.0)) throw Error(Errc::invalid_argument, "frequencies must be > 0");
        if (k > 0 && !(frequencies_hz[k] > frequencies_hz[k - 1]))
            throw Error(Errc::invalid_argument, "frequencies must be strictly increasing");
    }
    if (!(dt > 0.0)) throw Error(Errc::invalid_argument, "dt must be > 0");
    if (opts.amplitude_levels < 1 || opts.cycles < 20)
        throw Error(Errc::invalid_argument, "need >= 1 amplitude level and >= 20 cycles");

    std::vector<std::vector<Sample>> sets(frequencies_hz.size());
    if (opts.parallel) {
        std::vector<std::future<std::vector<Sample>>> jobs;
        for (double f : frequencies_hz)
            jobs.push_back(std::async(std::launch::async, simulate_ladder, std::cref(cfg), f, dt, std::cref(opts)));
        for (std::size_t k = 0; k < jobs.size(); ++k) sets[k] = jobs[k].get();
    } else {
        for (std::size_t k = 0; k < frequencies_hz.size(); ++k)
            sets[k] = simulate_ladder(cfg, frequencies_hz[k], dt, opts);
    }

    double p_lo = INFINITY, p_hi = -INFINITY, dp_abs = 0.0;
    for (const auto& set : sets) {
        for (const Sample& s : set) {
            p_lo = std::min(p_lo, s.p);
            p_hi = std::max(p_hi, s.p);
            dp_abs = std::max(dp_abs, std::abs(s.dp));
        }
    }
    if (!(p_hi > p_lo) || !(dp_abs > 0.0))
        throw Error(Errc::coverage, "excitation produced no pressure variation");
    const double pad = 0.05 * (p_hi - p_lo);
    const Axis p_axis{std::max(p_lo - pad, 0.5 * p_lo), p_hi + pad, kPressureNodes};
    const Axis dp_axis{-1.05 * dp_abs, 1.05 * dp_abs, kDeltaNodes};

    LookupTable table;
    table.dt = dt;
    table.config_digest = config_digest(cfg);
    for (std::size_t k = 0; k < sets.size(); ++k) {
        LookupGrid grid;
        grid.omega = kTwoPi * frequencies_hz[k];
        grid.p_axis = p_axis;
        grid.dp_axis = dp_axis;
        fill_from_samples(grid, sets[k], opts.idw_radius);
        const double cov = grid.coverage();
        if (cov < opts.min_coverage)
            throw Error(Errc::coverage, "frequency " + std::to_string(frequencies_hz[k]) + " Hz covers only " +
                                            std::to_string(100.0 * cov) + "% of the grid");
        fill_nearest(grid);
        table.grids.push_back(std::move(grid));
    }
    return table;
}

QueryResult interpolate_cell(const LookupGrid& grid, std::size_t ip, std::size_t idp, double u, double w) {
    const Cell& c00 = grid.cell(ip, idp);
    const Cell& c10 = grid.cell(ip + 1, idp);
    const Cell& c01 = grid.cell(ip, idp + 1);
    const Cell& c11 = grid.cell(ip + 1, idp + 1);
    const double w00 = (1.0 - u) * (1.0 - w), w10 = u * (1.0 - w), w01 = (1.0 - u) * w, w11 = u * w;
    return {w00 * c00.f_out + w10 * c10.f_out + w01 * c01.f_out + w11 * c11.f_out,
            w00 * c00.v + w10 * c10.v + w01 * c01.v + w11 * c11.v,
            w00 * c00.h + w10 * c10.h + w01 * c01.h + w11 * c11.h};
}

QueryResult query(const LookupTable& table, double p, double dp, double omega, QueryStats* stats) {
    const auto& grids = table.grids;
    const LookupGrid& first = grids.front();
    bool clamped_p = false, clamped_dp = false;
    const Located lp = locate(first.p_axis, p, clamped_p);
    const Located ld = locate(first.dp_axis, dp, clamped_dp);

    std::size_t k = 0;
    double alpha = 1.0;
    if (omega >= grids.back().omega) {
        k = grids.size() - 1;
    } else if (omega > first.omega) {
        while (grids[k + 1].omega <= omega) ++k;
        if (omega != grids[k].omega) alpha = (grids[k + 1].omega - omega) / (grids[k + 1].omega - grids[k].omega);
    }

    QueryResult r = interpolate_cell(grids[k], lp.index, ld.index, lp.frac, ld.frac);
    bool extrapolated = !corners_filled(grids[k], lp.index, ld.index);
    if (alpha != 1.0) {
        const QueryResult upper = interpolate_cell(grids[k + 1], lp.index, ld.index, lp.frac, ld.frac);
        r.f_out = alpha * r.f_out + (1.0 - alpha) * upper.f_out;
        r.v = alpha * r.v + (1.0 - alpha) * upper.v;
        r.h = alpha * r.h + (1.0 - alpha) * upper.h;
        extrapolated = extrapolated || !corners_filled(grids[k + 1], lp.index, ld.index);
    }
    if (stats) {
        ++stats->queries;
        stats->clamped_p += clamped_p;
        stats->clamped_dp += clamped_dp;
        stats->extrapolated += extrapolated;
    }
    return r;
}

std::vector<double> track_frequency(std::span<const double> p1, double dt) {
    const std::size_t n = p1.size();
    const std::size_t window = std::max<std::size_t>(8, static_cast<std::size_t>(std::lround(kTrackingWindowS / dt)));
    const std::size_t hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(kTrackingHopS / dt)));
    std::vector<double> omega(n, 0.0);
    double current = 0.0;
    for (std::size_t start = 0; start < n; start += hop) {
        std::size_t lo = 0, hi = std::min(n, window);
        if (start >= window) {
            lo = start - window;
            hi = start;
        }
        const double f = autocorrelation_frequency(p1.subspan(lo, hi - lo), dt);
        if (f > 0.0) current = kTwoPi * f;
        std::fill(omega.begin() + static_cast<long>(start), omega.begin() + static_cast<long>(std::min(n, start + hop)),
                  current);
    }
    return omega;
}

ForceBreakdown estimate_series(const LookupTable& table, const PressureTrace& trace, FrequencyMode mode,
                               QueryStats* stats) {
    trace.validate();
    table.validate();
    if (std::abs(trace.dt - table.dt) > 1e-9)
        throw Error(Errc::dt_mismatch, "trace dt differs from the table's sampling period");

    const auto& p = trace.samples;
    const std::size_t n = p.size();
    ForceBreakdown out;
    out.resize(n);
    std::vector<double> omega;
    if (mode.automatic) omega = track_frequency(p, trace.dt);

    QueryStats local;
    for (std::size_t i = 0; i < n; ++i) {
        const double dp = i == 0 ? 0.0 : p[i] - p[i - 1];
        const QueryResult q = query(table, p[i], dp, mode.automatic ? omega[i] : mode.omega, &local);
        out.f_out[i] = q.f_out;
        out.v[i] = q.v;
        out.h_total[i] = q.h;
    }
    out.f_peak = (mode.automatic ? omega.back() : mode.omega) / kTwoPi;
    if (stats) stats->merge(local);
    return out;
}

BenchmarkReport benchmark(const LookupTable& table, const PressureTrace& trace, const SuspensionConfig& cfg,
                          int repetitions) {
    using clock = std::chrono::steady_clock;
    if (trace.samples.size() < 10000) throw Error(Errc::invalid_argument, "benchmark needs at least 1e4 samples");
    repetitions = std::max(repetitions, 10);

    const double f_peak = estimate_peak_frequency(trace);
    EstimatorOptions opts;
    opts.frequency_hz = f_peak;
    const FrequencyMode mode = FrequencyMode::fixed(kTwoPi * f_peak);

    ForceBreakdown iter = run(trace, cfg, opts);
    ForceBreakdown look = estimate_series(table, trace, mode);

    const double n = static_cast<double>(trace.samples.size());
    std::vector<double> t_iter, t_look;
    volatile double sink = 0.0;  // keeps both results observable
    for (int r = 0; r < repetitions; ++r) {
        auto t0 = clock::now();
        iter = run(trace, cfg, opts);
        auto t1 = clock::now();
        look = estimate_series(table, trace, mode);
        auto t2 = clock::now();
        sink = sink + iter.f_out.back() + look.f_out.back();
        t_iter.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() / n);
        t_look.push_back(std::chrono::duration<double, std::nano>(t2 - t1).count() / n);
    }
    auto median = [](std::vector<double> v) {
        std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
        return v[v.size() / 2];
    };
    BenchmarkReport rep;
    rep.samples = trace.samples.size();
    rep.repetitions = repetitions;
    rep.iterative_ns_per_sample = median(t_iter);
    rep.lookup_ns_per_sample = median(t_look);
    rep.ratio = rep.iterative_ns_per_sample / rep.lookup_ns_per_sample;
    rep.lookup_vs_iterative_rmse = relative_rmse(look.f_out, iter.f_out);
    return rep;
}

} // namespace hpsusp
