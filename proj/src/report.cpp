#include "vcfem/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vcfem {

std::vector<double> compute_orders(const std::vector<double>& errors) {
    std::vector<double> orders;
    for (size_t i = 0; i < errors.size(); ++i)
        if (!(errors[i] > 0.0))
            throw ConfigError("convergence orders require positive errors; entry " +
                              std::to_string(i) + " is " + std::to_string(errors[i]));
    for (size_t i = 1; i < errors.size(); ++i)
        orders.push_back(std::log2(errors[i - 1] / errors[i]));
    return orders;
}

namespace {

std::string sci(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

double parse_field(const std::string& s) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::stod(s);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

void write_report_csv(std::ostream& out, const ConvergenceReport& r) {
    out << "# sweep=" << r.sweep << "\n";
    out << "# fixed=" << sci(r.fixed_value) << "\n";
    out << "# ref=" << sci(r.ref_value) << "\n";
    out << "# ref_norm_w_V=" << sci(r.ref_norm_w_V) << "\n";
    out << "# ref_norm_zeta_Z0=" << sci(r.ref_norm_zeta_Z0) << "\n";
    out << "value,rel_err_w_V,order_w,rel_err_zeta_Z0,order_zeta\n";
    for (const auto& row : r.rows)
        out << sci(row.value) << ',' << sci(row.rel_err_w_V) << ',' << sci(row.order_w) << ','
            << sci(row.rel_err_zeta_Z0) << ',' << sci(row.order_zeta) << "\n";
}

void write_report_csv(const std::string& path, const ConvergenceReport& report) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open report file for writing: " + path);
    write_report_csv(out, report);
}

ConvergenceReport read_report_csv(std::istream& in) {
    ConvergenceReport r;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string value = line.substr(eq + 1);
            if (key == "sweep") r.sweep = value.empty() ? 'h' : value[0];
            else if (key == "fixed") r.fixed_value = parse_field(value);
            else if (key == "ref") r.ref_value = parse_field(value);
            else if (key == "ref_norm_w_V") r.ref_norm_w_V = parse_field(value);
            else if (key == "ref_norm_zeta_Z0") r.ref_norm_zeta_Z0 = parse_field(value);
            continue;
        }
        if (!header_seen) {
            header_seen = true;  // column header line
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 5) throw ConfigError("malformed report row: " + line);
        ConvergenceReport::Row row;
        row.value = parse_field(fields[0]);
        row.rel_err_w_V = parse_field(fields[1]);
        row.order_w = parse_field(fields[2]);
        row.rel_err_zeta_Z0 = parse_field(fields[3]);
        row.order_zeta = parse_field(fields[4]);
        r.rows.push_back(row);
    }
    return r;
}

ConvergenceReport read_report_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open report file for reading: " + path);
    return read_report_csv(in);
}

bool operator==(const ConvergenceReport& a, const ConvergenceReport& b) {
    std::ostringstream sa, sb;
    write_report_csv(sa, a);
    write_report_csv(sb, b);
    return sa.str() == sb.str();
}

void write_timeseries_csv(const std::string& path, const std::vector<TimeseriesRow>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open timeseries file for writing: " + path);
    out << "n,t,min_damage,max_damage,w_V_norm\n";
    for (const auto& row : rows)
        out << row.n << ',' << sci(row.t) << ',' << sci(row.min_zeta) << ','
            << sci(row.max_zeta) << ',' << sci(row.w_V) << "\n";
}

}  // namespace vcfem
