#include "hpsusp/error.hpp"
#include "hpsusp/estimator.hpp"
#include "hpsusp/metrics.hpp"
#include "hpsusp/signal.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace hpsusp;
using doctest::Approx;

namespace {

constexpr double kDt = 0.002778;

std::vector<double> sine(double f_hz, std::size_t n, double amp = 1.0, double offset = 0.0, double dt = kDt) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = offset + amp * std::sin(2.0 * std::numbers::pi * f_hz * i * dt);
    return x;
}

} // namespace

TEST_CASE("backward difference") {
    const std::vector<double> flat(50, 3.25);
    for (double d : differentiate(flat, kDt)) CHECK(d == 0.0);

    std::vector<double> ramp(40);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 0.7 * static_cast<double>(i) * kDt;
    for (double d : differentiate(ramp, kDt)) CHECK(d == Approx(0.7).epsilon(1e-9));
    for (double d : differentiate(ramp, kDt, -1)) CHECK(d == Approx(-0.7).epsilon(1e-9));

    const double w = 2.0 * std::numbers::pi * 5.0, amp = 0.01;
    const auto x = sine(5.0, 720, amp);
    const auto dx = differentiate(x, kDt);
    const double bound = (w * kDt / 2.0) * amp * w;
    for (std::size_t i = 1; i < x.size(); ++i) CHECK(std::abs(dx[i] - amp * w * std::cos(w * i * kDt)) < bound);

    CHECK_THROWS_AS(differentiate(std::vector<double>{1.0}, kDt), Error);
}

TEST_CASE("spectral peak of clean tones within one bin") {
    for (double f : {5.0, 7.5}) {
        PressureTrace tr{kDt, sine(f, 7200, 5e4, 8e5), 30.0};
        CHECK(estimate_peak_frequency(tr) == Approx(f).epsilon(0.05 / f));
    }
}

TEST_CASE("constant pressure has no dominant frequency") {
    PressureTrace tr{kDt, std::vector<double>(7200, 8e5), 30.0};
    try {
        estimate_peak_frequency(tr);
        FAIL("expected no_dominant_frequency");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_dominant_frequency);
    }
}

TEST_CASE("autocorrelation frequency on one-second windows") {
    for (double f : {3.0, 5.0, 7.0, 7.5, 8.0}) {
        const auto x = sine(f, 360, 1.0, 2.0);
        CHECK(autocorrelation_frequency(x, kDt) == Approx(f).epsilon(0.02));
    }
    CHECK(autocorrelation_frequency(std::vector<double>(360, 1.0), kDt) == 0.0);
}

TEST_CASE("zero-phase low-pass keeps DC and does not delay a passband tone") {
    const auto flat = butterworth_lowpass(std::vector<double>(500, 4.0), kDt, 50.0);
    for (double y : flat) CHECK(y == Approx(4.0).epsilon(1e-9));

    const auto x = sine(5.0, 3600);
    const auto y = butterworth_lowpass(x, kDt, 50.0);
    // compare the interior, away from the edge transients
    std::vector<double> xi(x.begin() + 720, x.end() - 720), yi(y.begin() + 720, y.end() - 720);
    CHECK(relative_rmse(yi, xi) < 1e-3);

    const auto hf = butterworth_lowpass(sine(150.0, 3600), kDt, 50.0);
    std::vector<double> hi(hf.begin() + 720, hf.end() - 720);
    CHECK(rms(hi) < 0.1);
    CHECK_THROWS_AS(butterworth_lowpass(x, kDt, 200.0), Error);
}

TEST_CASE("metrics") {
    const std::vector<double> truth{0.0, 1.0, 2.0, 3.0, 4.0};
    const std::vector<double> est{0.0, 1.0, 2.0, 3.0, 5.0};
    CHECK(rmse(est, truth) == Approx(std::sqrt(1.0 / 5.0)));
    CHECK(relative_rmse(est, truth) == Approx(std::sqrt(1.0 / 5.0) / 4.0));
    CHECK(r_squared(truth, truth) == 1.0);
    CHECK(r_squared(est, truth) == Approx(1.0 - 1.0 / 10.0));

    // unit square, counter-clockwise
    const std::vector<double> x{0, 1, 1, 0}, y{0, 0, 1, 1};
    CHECK(loop_area(x, y) == Approx(1.0));
    const std::vector<double> xr{0, 0, 1, 1}, yr{0, 1, 1, 0};
    CHECK(loop_area(xr, yr) == Approx(-1.0));
}
