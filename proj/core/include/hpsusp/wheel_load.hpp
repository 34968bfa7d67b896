#pragma once

#include "hpsusp/config.hpp"
#include "hpsusp/estimator.hpp"
#include "hpsusp/lookup_table.hpp"

#include <cstddef>
#include <vector>

namespace hpsusp {

struct LinkageAngles {
    double theta = 0.0;  // lower-arm rotation, rad
    double beta = 0.0;   // strut inclination, rad
};

double inclination(double theta, const WheelLinkage& link);

// Single correction step theta = h cos(beta) / l_eff for a known inclination.
double lower_arm_angle(double h_sus, double beta, const WheelLinkage& link);

// Two-pass evaluation: preliminary theta = h / l_eff, inclination from it,
// then the cos(beta)-corrected theta with that inclination.
LinkageAngles lower_arm_angles(double h_sus, const WheelLinkage& link);

// Throws Errc::geometry_singularity when cos(alpha0 + theta) <= 0.1.
double suspension_ratio(double theta, double beta, const WheelLinkage& link);

// Convenience: suspension_ratio at the two-pass angles of stroke h_sus.
double suspension_ratio_at(double h_sus, const WheelLinkage& link);

// Vertical wheel-centre acceleration relative to the hinge. The optional third
// term couples the inclination rate k_beta * dtheta/dt.
double tire_acceleration(double theta, double beta, double v, double a_sus, const WheelLinkage& link,
                         bool include_beta_rate = false);

// Height of the lower-arm outer joint: z_li + l_lower * sin(alpha0 + theta).
double arm_tip_height(double h_sus, const WheelLinkage& link);

// Vertical wheel travel relative to the body for stroke h_sus, integrated from
// dz = dh / i_sus so the force ratio and the motion ratio are power-consistent.
double wheel_travel(double h_sus, const WheelLinkage& link);

struct WheelLoad {
    double f_tire = 0.0;
    bool liftoff = false;
};

// f_tire = i_sus * f_out + m_u * g + m_t * ztt. The tire-inertia term carries a
// plus sign so that ztt (upward-positive, from tire_acceleration) adds load when
// the wheel accelerates upward into the road.
WheelLoad wheel_load(double f_out, double i_sus, double ztt, const WheelLinkage& link);

struct WheelLoadOptions {
    FrequencyMode frequency = FrequencyMode::tracking();
    bool include_beta_rate = false;
};

struct WheelLoadSeries {
    double dt = 0.0;
    std::vector<double> t, f_out, h_sus, v, a_sus, theta, beta, i_sus, ztt, f_tire;
    std::vector<unsigned char> liftoff;
    std::size_t first_valid = 2;  // earlier samples have no two-sample velocity history
    std::size_t liftoff_count = 0;
    QueryStats stats;

    std::size_t size() const { return f_tire.size(); }
};

WheelLoadSeries estimate_wheel_load_series(const PressureTrace& trace, const LookupTable& table,
                                           const WheelLinkage& link, const WheelLoadOptions& opts = {});

} // namespace hpsusp
