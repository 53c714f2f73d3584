#ifndef SOJOURN_REPORT_HPP
#define SOJOURN_REPORT_HPP

#include <string>

#include "sojourn/analysis.hpp"
#include "sojourn/witness.hpp"

namespace sojourn {

/// Shortest round-trip decimal; exact integers without a decimal point;
/// infinities as "inf". Used for every data file so goldens are stable.
std::string fmt_num(double x);

std::string ratios_csv(const RatioTable& table);
std::string render_report(const std::string& scenario_name, const MultiplicityReport& rep);

std::string witness_csv(const Witness& w);
Witness parse_witness_csv(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace sojourn

#endif
