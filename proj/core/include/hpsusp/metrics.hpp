#pragma once

#include <span>

namespace hpsusp {

double rmse(std::span<const double> estimate, std::span<const double> truth);

// RMSE divided by the peak-to-peak span of the truth series. This is the
// "relative RMSE" used by every accuracy check in this project.
double relative_rmse(std::span<const double> estimate, std::span<const double> truth);

// RMSE divided by the RMS of the truth series (reported alongside, never gated).
double rms_relative_rmse(std::span<const double> estimate, std::span<const double> truth);

// 1 - SS_res / SS_tot.
double r_squared(std::span<const double> estimate, std::span<const double> truth);

double rms(std::span<const double> x);
double mean(std::span<const double> x);

// Signed area enclosed by the polyline (x[i], y[i]) closed back to its start
// (shoelace formula). Positive for counter-clockwise traversal.
double loop_area(std::span<const double> x, std::span<const double> y);

} // namespace hpsusp
