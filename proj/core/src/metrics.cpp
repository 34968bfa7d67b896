#include "hpsusp/metrics.hpp"

#include "hpsusp/error.hpp"

#include <algorithm>
#include <cmath>

namespace hpsusp {

namespace {

void check_pair(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty())
        throw Error(Errc::invalid_argument, "metric inputs must be non-empty and equally long");
}

} // namespace

double mean(std::span<const double> x) {
    if (x.empty()) throw Error(Errc::invalid_argument, "mean of empty series");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double rms(std::span<const double> x) {
    if (x.empty()) throw Error(Errc::invalid_argument, "rms of empty series");
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s / static_cast<double>(x.size()));
}

double rmse(std::span<const double> estimate, std::span<const double> truth) {
    check_pair(estimate, truth);
    double s = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double e = estimate[i] - truth[i];
        s += e * e;
    }
    return std::sqrt(s / static_cast<double>(truth.size()));
}

double relative_rmse(std::span<const double> estimate, std::span<const double> truth) {
    const auto [lo, hi] = std::minmax_element(truth.begin(), truth.end());
    const double span = *hi - *lo;
    const double e = rmse(estimate, truth);
    if (span == 0.0) return e == 0.0 ? 0.0 : INFINITY;
    return e / span;
}

double rms_relative_rmse(std::span<const double> estimate, std::span<const double> truth) {
    const double e = rmse(estimate, truth);
    const double r = rms(truth);
    if (r == 0.0) return e == 0.0 ? 0.0 : INFINITY;
    return e / r;
}

double r_squared(std::span<const double> estimate, std::span<const double> truth) {
    check_pair(estimate, truth);
    const double m = mean(truth);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ss_res += (truth[i] - estimate[i]) * (truth[i] - estimate[i]);
        ss_tot += (truth[i] - m) * (truth[i] - m);
    }
    if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : -INFINITY;
    return 1.0 - ss_res / ss_tot;
}

double loop_area(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const std::size_t n = x.size();
    double a = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        a += x[i] * y[j] - x[j] * y[i];
    }
    return 0.5 * a;
}

} // namespace hpsusp
