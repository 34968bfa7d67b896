#include "hpsusp/config.hpp"

#include "hpsusp/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <variant>

namespace hpsusp {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw Error(Errc::config, what);
}

using FieldRef = std::variant<double*, int*, FrictionLaw*, std::vector<double>*>;

struct Field {
    const char* key;
    FieldRef ref;
};

// Keys carry their unit; angles are stored in radians but read/written in degrees.
struct AngleField {
    const char* key;
    double* rad;
};

template <class C>
void visit_fields(C& cfg, const std::function<void(const Field&)>& on_field,
                  const std::function<void(const AngleField&)>& on_angle) {
    auto& f = cfg.suspension.fluid;
    auto& g = cfg.suspension.geom;
    auto& c = cfg.suspension.charge;
    auto& fr = cfg.suspension.friction;
    auto& l = cfg.linkage;
    auto& v = cfg.vehicle;
    auto& t = cfg.table;
    const Field fields[] = {
        {"oil_density_kg_m3", &f.rho},
        {"oil_viscosity_pa_s", &f.mu},
        {"oil_bulk_modulus_pa", &f.k_bulk},
        {"gas_gamma", &f.gamma},
        {"p_atm_pa", &f.p_atm},
        {"a1_m2", &g.a1},
        {"a2_m2", &g.a2},
        {"a3_m2", &g.a3},
        {"channel_area_m2", &g.a_ch},
        {"check_valve_area_m2", &g.a_check},
        {"valve_count", &g.n_valve},
        {"piston_gap_m", &g.h_gap},
        {"piston_diameter_m", &g.d_piston},
        {"piston_length_m", &g.l_piston},
        {"channel_length_m", &g.l_ch},
        {"orifice_coeff", &g.k_orif},
        {"gas_volume0_m3", &g.v0_gas},
        {"oil_volume0_m3", &g.v0_oil},
        {"stroke_limit_m", &g.stroke_limit},
        {"p0_pa", &c.p0},
        {"t0_c", &c.t0},
        {"t_ref_c", &c.t_ref},
        {"thermal_coeff_per_c", &c.alpha_t},
        {"omega_c_rad_s", &c.omega_c},
        {"friction_coulomb_n", &fr.f_coulomb},
        {"friction_static_n", &fr.f_static},
        {"stribeck_velocity_mps", &fr.v_stribeck},
        {"friction_sharpness_s_m", &fr.beta_fric},
        {"friction_viscous_ns_m", &fr.k_v},
        {"friction_law", &fr.law},
        {"l_lower_m", &l.l_lower},
        {"l_upper_m", &l.l_upper},
        {"l_eff_m", &l.l_eff},
        {"k_beta", &l.k_beta},
        {"z_li_m", &l.z_li},
        {"m_u_kg", &l.m_u},
        {"m_t_kg", &l.m_t},
        {"g_mps2", &l.g},
        {"m_s_kg", &v.m_s},
        {"k_t_n_m", &v.k_t},
        {"c_t_ns_m", &v.c_t},
        {"table_freqs_hz", &t.frequencies_hz},
        {"dt_s", &t.dt},
        {"table_amp_max_m", &t.amplitude.max_amplitude},
        {"table_amp_freq_product_m_hz", &t.amplitude.amp_freq_product},
        {"table_amp_levels", &t.amplitude_levels},
        {"table_cycles", &t.cycles},
    };
    for (const auto& fld : fields) on_field(fld);
    const AngleField angles[] = {
        {"alpha0_deg", &l.alpha0},
        {"beta0_deg", &l.beta0},
    };
    for (const auto& a : angles) on_angle(a);
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view text) {
    const std::string s = trim(text);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(out))
        throw Error(Errc::config, "key '" + std::string(key) + "': not a number: '" + s + "'");
    return out;
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

const char* law_name(FrictionLaw law) {
    return law == FrictionLaw::stribeck_viscous ? "stribeck-viscous" : "stribeck-gaussian";
}

// Canonical text of the fields that live inside the suspension block.
std::string suspension_text(const SuspensionConfig& s) {
    RunConfig tmp;
    tmp.suspension = s;
    const auto* lo = reinterpret_cast<const char*>(&tmp.suspension);
    const auto* hi = lo + sizeof(SuspensionConfig);
    std::ostringstream out;
    visit_fields(
        tmp,
        [&](const Field& f) {
            std::visit(
                [&](auto* p) {
                    const auto* at = reinterpret_cast<const char*>(p);
                    if (at < lo || at >= hi) return;
                    using T = std::remove_pointer_t<decltype(p)>;
                    out << f.key << '=';
                    if constexpr (std::is_same_v<T, double>) out << format_double(*p);
                    else if constexpr (std::is_same_v<T, int>) out << *p;
                    else if constexpr (std::is_same_v<T, FrictionLaw>) out << law_name(*p);
                    out << '\n';
                },
                f.ref);
        },
        [](const AngleField&) {});
    return out.str();
}

} // namespace

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
double circle_area(double diameter) { return std::numbers::pi * diameter * diameter / 4.0; }

double oil_viscosity_at(double t0_c) {
    const double slope = std::log(0.032 / 0.065) / 20.0;
    return 0.065 * std::exp(slope * (t0_c - 30.0));
}

void FluidProperties::validate() const {
    require(rho > 0, "oil density must be > 0");
    require(mu > 0, "oil viscosity must be > 0");
    require(k_bulk > 0, "bulk modulus must be > 0");
    require(gamma > 1, "gas gamma must be > 1");
    require(p_atm > 0, "atmospheric pressure must be > 0");
}

double SuspensionGeometry::channel_diameter() const { return std::sqrt(4.0 * a_ch / std::numbers::pi); }

void SuspensionGeometry::validate() const {
    require(a1 > 0 && a2 > 0 && a3 > 0, "piston areas must be > 0");
    require(a1 > a2, "a1 must exceed a2");
    require(std::abs(a3 - (a1 - a2)) <= 1e-9, "a3 must equal a1 - a2 within 1e-9 m^2");
    require(a_ch > 0 && a_check > 0, "valve areas must be > 0");
    require(n_valve >= 1, "valve_count must be >= 1");
    require(h_gap > 0 && d_piston > 0 && h_gap < 0.05 * d_piston, "piston gap must satisfy 0 < h_gap << d_piston");
    require(l_piston > 0 && l_ch > 0, "lengths must be > 0");
    require(k_orif > 0, "orifice coefficient must be > 0");
    require(v0_gas > 0 && v0_oil > 0, "volumes must be > 0");
    require(stroke_limit > 0, "stroke limit must be > 0");
    require(stroke_limit * a1 < v0_gas, "stroke limit would collapse the gas volume");
}

void GasChargeState::validate(const FluidProperties& fluid) const {
    require(p0 > fluid.p_atm, "charge pressure must exceed atmospheric");
    require(omega_c > 0, "corner frequency must be > 0");
    require(std::isfinite(t0) && std::isfinite(t_ref) && std::isfinite(alpha_t), "temperature terms must be finite");
    require(1.0 + alpha_t * (t0 - t_ref) > 0, "temperature factor must stay positive");
}

void FrictionParams::validate() const {
    require(f_static >= f_coulomb && f_coulomb >= 0, "friction requires f_static >= f_coulomb >= 0");
    require(v_stribeck > 0, "Stribeck velocity must be > 0");
    require(beta_fric > 0, "friction sharpness must be > 0");
    require(k_v >= 0, "viscous friction must be >= 0");
}

void SuspensionConfig::validate() const {
    fluid.validate();
    geom.validate();
    charge.validate(fluid);
    friction.validate();
}

void WheelLinkage::validate() const {
    require(l_lower > l_eff && l_eff > 0, "linkage requires l_lower > l_eff > 0");
    require(std::abs(alpha0) < std::numbers::pi / 4, "|alpha0| must be < 45 deg");
    require(m_u > 0 && m_t > 0, "masses must be > 0");
    require(m_t <= m_u, "tire mass must not exceed unsprung mass");
    require(g > 0, "gravity must be > 0");
}

void VehicleParams::validate() const {
    require(m_s > 0, "sprung mass must be > 0");
    require(k_t > 0, "tire stiffness must be > 0");
    require(c_t >= 0, "tire damping must be >= 0");
}

double AmplitudeSchedule::at(double f_hz) const {
    return std::min(max_amplitude, amp_freq_product / f_hz);
}

void TableSettings::validate() const {
    require(frequencies_hz.size() >= 2, "table needs at least two frequencies");
    for (std::size_t i = 0; i < frequencies_hz.size(); ++i) {
        require(frequencies_hz[i] > 0, "table frequencies must be > 0");
        if (i > 0) require(frequencies_hz[i] > frequencies_hz[i - 1], "table frequencies must be strictly increasing");
    }
    require(dt > 0, "dt must be > 0");
    require(amplitude.max_amplitude > 0 && amplitude.amp_freq_product > 0, "table amplitudes must be > 0");
    require(amplitude_levels >= 1, "table_amp_levels must be >= 1");
    require(cycles >= 20, "table_cycles must be >= 20");
}

void RunConfig::validate() const {
    suspension.validate();
    linkage.validate();
    vehicle.validate();
    table.validate();
    require(table.amplitude.max_amplitude <= suspension.geom.stroke_limit, "table amplitude exceeds stroke limit");
}

RunConfig bench_prototype(double t0_c) {
    RunConfig cfg;
    cfg.name = "bench-prototype";
    cfg.suspension.fluid.mu = oil_viscosity_at(t0_c);
    cfg.suspension.charge.t0 = t0_c;
    return cfg;
}

RunConfig mining_truck() {
    RunConfig cfg;
    cfg.name = "mining-truck";
    auto& g = cfg.suspension.geom;
    g.a1 = circle_area(0.250);
    g.a2 = circle_area(0.210);
    g.a3 = g.a1 - g.a2;
    g.a_ch = circle_area(0.008);
    g.a_check = circle_area(0.008);
    g.n_valve = 2;
    g.h_gap = 0.785e-3;
    g.d_piston = 0.2495;
    g.v0_gas = 0.016;
    g.v0_oil = 0.01;
    g.stroke_limit = 0.05;
    cfg.suspension.charge.p0 = 7.4e6;
    // Bench amplitude schedule scaled by the stroke ratio (50 mm / 25 mm).
    cfg.table.amplitude.max_amplitude = 2.0 * 7.5e-3;
    cfg.table.amplitude.amp_freq_product = 2.0 * 0.0375;
    return cfg;
}

RunConfig mining_truck_compact_linkage() {
    RunConfig cfg = mining_truck();
    cfg.name = "mining-truck-compact-linkage";
    cfg.linkage.l_eff = 0.15;
    cfg.linkage.alpha0 = deg_to_rad(5.0);
    cfg.linkage.beta0 = deg_to_rad(8.5);
    cfg.linkage.m_t = 80.0;
    return cfg;
}

std::vector<std::string> preset_names() {
    return {"bench-prototype", "bench-prototype-50c", "mining-truck", "mining-truck-compact-linkage"};
}

RunConfig preset(std::string_view name) {
    if (name == "bench-prototype") return bench_prototype(30.0);
    if (name == "bench-prototype-50c") {
        RunConfig c = bench_prototype(50.0);
        c.name = "bench-prototype-50c";
        return c;
    }
    if (name == "mining-truck") return mining_truck();
    if (name == "mining-truck-compact-linkage") return mining_truck_compact_linkage();
    throw Error(Errc::config, "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    RunConfig cfg;
    visit_fields(cfg, [&](const Field& f) { keys.emplace_back(f.key); },
                 [&](const AngleField& a) { keys.emplace_back(a.key); });
    return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    bool found = false;
    visit_fields(
        cfg,
        [&](const Field& f) {
            if (key != f.key) return;
            found = true;
            std::visit(
                [&](auto* p) {
                    using T = std::remove_pointer_t<decltype(p)>;
                    if constexpr (std::is_same_v<T, double>) {
                        *p = parse_double(key, value);
                    } else if constexpr (std::is_same_v<T, int>) {
                        const double d = parse_double(key, value);
                        if (d != std::floor(d) || std::abs(d) > 1e9)
                            throw Error(Errc::config, "key '" + std::string(key) + "': expected an integer");
                        *p = static_cast<int>(d);
                    } else if constexpr (std::is_same_v<T, FrictionLaw>) {
                        const std::string v = trim(value);
                        if (v == "stribeck-viscous") *p = FrictionLaw::stribeck_viscous;
                        else if (v == "stribeck-gaussian") *p = FrictionLaw::stribeck_gaussian;
                        else throw Error(Errc::config, "key 'friction_law': expected stribeck-viscous or stribeck-gaussian");
                    } else {
                        p->clear();
                        std::string item;
                        std::istringstream list{std::string(value)};
                        while (std::getline(list, item, ','))
                            p->push_back(parse_double(key, item));
                    }
                },
                f.ref);
        },
        [&](const AngleField& a) {
            if (key != a.key) return;
            found = true;
            *a.rad = deg_to_rad(parse_double(key, value));
        });
    if (!found) throw Error(Errc::config, "unknown key '" + std::string(key) + "'");
}

RunConfig parse_config(std::istream& in, const RunConfig& base) {
    RunConfig cfg = base;
    std::string line;
    int lineno = 0;
    bool seen_setting = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::config, "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key == "preset") {
            if (seen_setting) throw Error(Errc::config, "line " + std::to_string(lineno) + ": preset must come first");
            cfg = preset(value);
            continue;
        }
        if (key == "name") {
            cfg.name = value;
            continue;
        }
        try {
            apply_setting(cfg, key, value);
        } catch (const Error& e) {
            throw Error(Errc::config, "line " + std::to_string(lineno) + ": " + e.what());
        }
        seen_setting = true;
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path, const RunConfig& base) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open config '" + path + "'");
    return parse_config(in, base);
}

std::string to_text(const RunConfig& cfg) {
    std::ostringstream out;
    out << "name = " << cfg.name << '\n';
    RunConfig copy = cfg;
    visit_fields(
        copy,
        [&](const Field& f) {
            out << f.key << " = ";
            std::visit(
                [&](auto* p) {
                    using T = std::remove_pointer_t<decltype(p)>;
                    if constexpr (std::is_same_v<T, double>) out << format_double(*p);
                    else if constexpr (std::is_same_v<T, int>) out << *p;
                    else if constexpr (std::is_same_v<T, FrictionLaw>) out << law_name(*p);
                    else {
                        for (std::size_t i = 0; i < p->size(); ++i) out << (i ? "," : "") << format_double((*p)[i]);
                    }
                },
                f.ref);
            out << '\n';
        },
        [&](const AngleField& a) { out << a.key << " = " << format_double(*a.rad * 180.0 / std::numbers::pi) << '\n'; });
    return out.str();
}

std::uint64_t config_digest(const SuspensionConfig& cfg) {
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char c : suspension_text(cfg)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace hpsusp
