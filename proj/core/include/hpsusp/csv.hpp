#pragma once

#include "hpsusp/estimator.hpp"
#include "hpsusp/oracle.hpp"
#include "hpsusp/wheel_load.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hpsusp {

// Column-oriented numeric CSV with one header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    bool has(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;
    void add(std::string name, std::vector<double> values);
};

// Values are written in shortest round-trip form. Throws Errc::format.
void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);
void write_csv_file(const std::string& path, const CsvTable& table);
CsvTable read_csv_file(const std::string& path);

// t_s,p1_pa[,f_out_truth_n,v_truth_mps,h_truth_m,f_tire_truth_n]
CsvTable trace_csv(const OracleTrace& trace, bool with_truth = true);
CsvTable trace_csv(const PressureTrace& trace);
// dt is taken from the first and last time stamps.
PressureTrace trace_from_csv(const CsvTable& csv, double t0_temperature);

// t_s,p1_pa,p2_pa,f_gas_n,f_damp_n,f_fric_n,f_out_n,v_mps,h_m,a_mps2
CsvTable breakdown_csv(const PressureTrace& trace, const ForceBreakdown& b);

// t_s,f_out_n,h_sus_m,v_mps,a_sus_mps2,theta_rad,beta_rad,i_sus,ztt_acc_mps2,f_tire_n,liftoff_flag
CsvTable wheel_load_csv(const WheelLoadSeries& s);

} // namespace hpsusp
