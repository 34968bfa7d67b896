#include "hpsusp/wheel_load.hpp"

#include "hpsusp/error.hpp"

#include <array>
#include <cmath>

namespace hpsusp {

double inclination(double theta, const WheelLinkage& link) { return link.beta0 + link.k_beta * theta; }

double lower_arm_angle(double h_sus, double beta, const WheelLinkage& link) {
    return h_sus * std::cos(beta) / link.l_eff;
}

LinkageAngles lower_arm_angles(double h_sus, const WheelLinkage& link) {
    const double theta_pre = h_sus / link.l_eff;
    const double beta = inclination(theta_pre, link);
    return {lower_arm_angle(h_sus, beta, link), beta};
}

double suspension_ratio(double theta, double beta, const WheelLinkage& link) {
    const double c = std::cos(link.alpha0 + theta);
    if (c <= 0.1) throw Error(Errc::geometry_singularity, "cos(alpha0 + theta) <= 0.1");
    return link.l_eff * std::cos(beta) / (link.l_lower * c);
}

double suspension_ratio_at(double h_sus, const WheelLinkage& link) {
    const LinkageAngles ang = lower_arm_angles(h_sus, link);
    return suspension_ratio(ang.theta, ang.beta, link);
}

double tire_acceleration(double theta, double beta, double v, double a_sus, const WheelLinkage& link,
                         bool include_beta_rate) {
    const double s = std::sin(link.alpha0 + theta);
    const double c = std::cos(link.alpha0 + theta);
    const double theta_rate = v * std::cos(beta) / link.l_eff;
    double z = -link.l_lower * s * theta_rate * theta_rate + link.l_lower * c * a_sus * std::cos(beta) / link.l_eff;
    if (include_beta_rate) {
        const double beta_rate = link.k_beta * theta_rate;
        z -= link.l_lower * c * v * std::sin(beta) * beta_rate / link.l_eff;
    }
    return z;
}

double arm_tip_height(double h_sus, const WheelLinkage& link) {
    const LinkageAngles ang = lower_arm_angles(h_sus, link);
    return link.z_li + link.l_lower * std::sin(link.alpha0 + ang.theta);
}

double wheel_travel(double h_sus, const WheelLinkage& link) {
    // 8-point Gauss-Legendre on [0, h]; the integrand 1/i_sus is smooth over the stroke.
    static constexpr std::array<double, 8> x{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                             -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                             0.7966664774136267,  0.9602898564975363};
    static constexpr std::array<double, 8> w{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                             0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                             0.2223810344533745, 0.1012285362903763};
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double s = 0.5 * h_sus * (x[k] + 1.0);
        acc += w[k] / suspension_ratio_at(s, link);
    }
    return 0.5 * h_sus * acc;
}

WheelLoad wheel_load(double f_out, double i_sus, double ztt, const WheelLinkage& link) {
    const double f = i_sus * f_out + link.m_u * link.g + link.m_t * ztt;
    return {f, f < 0.0};
}

WheelLoadSeries estimate_wheel_load_series(const PressureTrace& trace, const LookupTable& table,
                                           const WheelLinkage& link, const WheelLoadOptions& opts) {
    trace.validate();
    table.validate();
    link.validate();
    if (std::abs(trace.dt - table.dt) > 1e-9)
        throw Error(Errc::dt_mismatch, "trace dt differs from the table's sampling period");

    const auto& p = trace.samples;
    const std::size_t n = p.size();
    const std::vector<double> omega =
        opts.frequency.automatic ? track_frequency(p, trace.dt) : std::vector<double>(n, opts.frequency.omega);

    WheelLoadSeries s;
    s.dt = trace.dt;
    for (auto* vec : {&s.t, &s.f_out, &s.h_sus, &s.v, &s.a_sus, &s.theta, &s.beta, &s.i_sus, &s.ztt, &s.f_tire})
        vec->assign(n, 0.0);
    s.liftoff.assign(n, 0);

    double v_prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dp = i == 0 ? 0.0 : p[i] - p[i - 1];
        const QueryResult q = query(table, p[i], dp, omega[i], &s.stats);
        // Warm-up: the first two samples have no velocity difference to work from.
        const double a_sus = i < s.first_valid ? 0.0 : (q.v - v_prev) / trace.dt;
        v_prev = q.v;

        const LinkageAngles ang = lower_arm_angles(q.h, link);
        const double ratio = suspension_ratio(ang.theta, ang.beta, link);
        const double ztt = tire_acceleration(ang.theta, ang.beta, q.v, a_sus, link, opts.include_beta_rate);
        const WheelLoad wl = wheel_load(q.f_out, ratio, ztt, link);

        s.t[i] = static_cast<double>(i) * trace.dt;
        s.f_out[i] = q.f_out;
        s.h_sus[i] = q.h;
        s.v[i] = q.v;
        s.a_sus[i] = a_sus;
        s.theta[i] = ang.theta;
        s.beta[i] = ang.beta;
        s.i_sus[i] = ratio;
        s.ztt[i] = ztt;
        s.f_tire[i] = wl.f_tire;
        s.liftoff[i] = wl.liftoff ? 1 : 0;
        if (wl.liftoff) ++s.liftoff_count;
    }
    return s;
}

} // namespace hpsusp
