#include "hpsusp/csv.hpp"

#include "hpsusp/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hpsusp {

bool CsvTable::has(const std::string& name) const {
    for (const auto& h : header)
        if (h == name) return true;
    return false;
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return columns[i];
    throw Error(Errc::format, "missing column '" + name + "'");
}

void CsvTable::add(std::string name, std::vector<double> values) {
    if (!columns.empty() && values.size() != rows()) throw Error(Errc::invalid_argument, "column length mismatch");
    header.push_back(std::move(name));
    columns.push_back(std::move(values));
}

void write_csv(std::ostream& out, const CsvTable& table) {
    for (std::size_t c = 0; c < table.header.size(); ++c) out << (c ? "," : "") << table.header[c];
    out << '\n';
    char buf[64];
    std::string line;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        line.clear();
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) line.push_back(',');
            const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, table.columns[c][r]);
            line.append(buf, ptr);
        }
        line.push_back('\n');
        out << line;
    }
}

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::format, "empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::istringstream hs(line);
        std::string name;
        while (std::getline(hs, name, ',')) t.header.push_back(name);
    }
    if (t.header.empty()) throw Error(Errc::format, "CSV header is empty");
    t.columns.resize(t.header.size());
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t col = 0, pos = 0;
        while (pos <= line.size()) {
            const std::size_t end = std::min(line.find(',', pos), line.size());
            if (col >= t.header.size()) throw Error(Errc::format, "line " + std::to_string(lineno) + ": too many fields");
            double v = 0.0;
            const char* b = line.data() + pos;
            const char* e = line.data() + end;
            const auto [ptr, ec] = std::from_chars(b, e, v);
            if (ec != std::errc{} || ptr != e)
                throw Error(Errc::format, "line " + std::to_string(lineno) + ": bad number in column '" +
                                              t.header[col] + "'");
            t.columns[col++].push_back(v);
            pos = end + 1;
        }
        if (col != t.header.size()) throw Error(Errc::format, "line " + std::to_string(lineno) + ": too few fields");
    }
    return t;
}

void write_csv_file(const std::string& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io, "cannot write '" + path + "'");
    write_csv(out, table);
    if (!out) throw Error(Errc::io, "write failed for '" + path + "'");
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
    return read_csv(in);
}

CsvTable trace_csv(const OracleTrace& trace, bool with_truth) {
    CsvTable t;
    t.add("t_s", trace.t);
    t.add("p1_pa", trace.p1);
    if (with_truth) {
        t.add("f_out_truth_n", trace.f_out);
        t.add("v_truth_mps", trace.v);
        t.add("h_truth_m", trace.h);
        if (!trace.f_tire_truth.empty()) t.add("f_tire_truth_n", trace.f_tire_truth);
    }
    return t;
}

CsvTable trace_csv(const PressureTrace& trace) {
    std::vector<double> t(trace.samples.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) * trace.dt;
    CsvTable c;
    c.add("t_s", std::move(t));
    c.add("p1_pa", trace.samples);
    return c;
}

PressureTrace trace_from_csv(const CsvTable& csv, double t0_temperature) {
    const auto& t = csv.column("t_s");
    const auto& p = csv.column("p1_pa");
    if (t.size() < 2) throw Error(Errc::format, "trace needs at least two rows");
    PressureTrace tr{(t.back() - t.front()) / static_cast<double>(t.size() - 1), p, t0_temperature};
    try {
        tr.validate();
    } catch (const Error& e) {
        throw Error(Errc::format, e.what());
    }
    return tr;
}

CsvTable breakdown_csv(const PressureTrace& trace, const ForceBreakdown& b) {
    CsvTable c = trace_csv(trace);
    c.add("p2_pa", b.p2);
    c.add("f_gas_n", b.f_gas);
    c.add("f_damp_n", b.f_damp);
    c.add("f_fric_n", b.f_fric);
    c.add("f_out_n", b.f_out);
    c.add("v_mps", b.v);
    c.add("h_m", b.h_total);
    c.add("a_mps2", b.a);
    return c;
}

CsvTable wheel_load_csv(const WheelLoadSeries& s) {
    CsvTable c;
    c.add("t_s", s.t);
    c.add("f_out_n", s.f_out);
    c.add("h_sus_m", s.h_sus);
    c.add("v_mps", s.v);
    c.add("a_sus_mps2", s.a_sus);
    c.add("theta_rad", s.theta);
    c.add("beta_rad", s.beta);
    c.add("i_sus", s.i_sus);
    c.add("ztt_acc_mps2", s.ztt);
    c.add("f_tire_n", s.f_tire);
    c.add("liftoff_flag", std::vector<double>(s.liftoff.begin(), s.liftoff.end()));
    return c;
}

} // namespace hpsusp
