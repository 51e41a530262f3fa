#pragma once
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "vcfem/errors.hpp"

namespace vcfem {

// Relative errors against a reference run, with observed convergence orders.
// Orders are defined from the second row on (successive halving).
struct ConvergenceReport {
    char sweep = 'h';          // 'h' or 'k'
    double fixed_value = 0.0;  // the resolution held constant
    double ref_value = 0.0;    // reference resolution for the swept variable
    double ref_norm_w_V = 0.0;
    double ref_norm_zeta_Z0 = 0.0;

    struct Row {
        double value = 0.0;
        double rel_err_w_V = 0.0;
        double order_w = std::numeric_limits<double>::quiet_NaN();
        double rel_err_zeta_Z0 = 0.0;
        double order_zeta = std::numeric_limits<double>::quiet_NaN();
    };
    std::vector<Row> rows;
};

// order_i = log2(e_{i-1} / e_i) for a halving refinement; throws on
// non-positive entries.
std::vector<double> compute_orders(const std::vector<double>& errors);

// Fixed-layout CSV (6 significant digits, scientific notation) so that
// repeated write/read cycles are byte-stable.
void write_report_csv(std::ostream& out, const ConvergenceReport& report);
void write_report_csv(const std::string& path, const ConvergenceReport& report);
ConvergenceReport read_report_csv(std::istream& in);
ConvergenceReport read_report_csv(const std::string& path);

bool operator==(const ConvergenceReport& a, const ConvergenceReport& b);

struct TimeseriesRow {
    int n = 0;
    double t = 0.0;
    double min_zeta = 0.0;
    double max_zeta = 0.0;
    double w_V = 0.0;
};

void write_timeseries_csv(const std::string& path, const std::vector<TimeseriesRow>& rows);

}  // namespace vcfem
