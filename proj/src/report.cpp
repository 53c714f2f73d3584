#include "sojourn/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

namespace sojourn {

std::string fmt_num(double x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    if (x == std::floor(x) && std::abs(x) < 1e15) return fmt::format("{}", (long long)x);
    return fmt::format("{}", x);
}

std::string ratios_csv(const RatioTable& table) {
    std::string out = "n,m,nu_n,nu_z,ratio\n";
    for (const RatioRow& r : table.rows)
        out += fmt::format("{},{},{},{},{}\n", r.n, r.m, fmt_num(r.nu_n), fmt_num(r.nu_z),
                           fmt_num(r.ratio));
    return out;
}

namespace {
std::string fmt_mult(const Multiplicity& m) { return m.infinite ? "inf" : fmt_num(double(m.value)); }
}  // namespace

std::string render_report(const std::string& scenario_name, const MultiplicityReport& rep) {
    std::string out;
    out += fmt::format("scenario:              {}\n", scenario_name);
    out += fmt::format("n_max, m_max:          {}, {}\n", rep.table.n_max, rep.table.m_max);
    out += fmt::format("tail_start:            {}\n", rep.tail_start);
    out += fmt::format("r_star_lower:          {}\n", fmt_num(rep.r_star_lower));
    out += fmt::format("r_star_upper:          {}\n", fmt_num(rep.r_star_upper));
    out += fmt::format("M_L:                   {}\n", fmt_mult(rep.M_L));
    out += fmt::format("M_U:                   {}\n", fmt_mult(rep.M_U));
    out += fmt::format("quantization_residual: {}\n", fmt_num(rep.quantization_residual));
    out += fmt::format("stabilized:            {}\n", rep.stabilized ? "yes" : "no");
    if (rep.extrapolated)
        out += "note: infinite multiplicity extrapolated from monotone ratio growth\n";
    out += "per-box tails (m, liminf, limsup, stabilized):\n";
    for (std::size_t i = 0; i < rep.per_m.size(); ++i) {
        const TailEstimate& e = rep.per_m[i];
        out += fmt::format("  {}  {}  {}  {}\n", i + 1, fmt_num(e.liminf_est),
                           fmt_num(e.limsup_est), e.stabilized ? "yes" : "no");
    }
    return out;
}

std::string witness_csv(const Witness& w) {
    std::string out = "n,m";
    for (int i = 1; i <= w.k; ++i) out += fmt::format(",t{}", i);
    out += ",separation\n";
    for (const Witness::Entry& e : w.entries) {
        out += fmt::format("{},{}", e.n, e.m);
        for (double t : e.translates) out += fmt::format(",{}", fmt_num(t));
        out += fmt::format(",{}\n", fmt_num(e.separation));
    }
    return out;
}

Witness parse_witness_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("witness csv: empty file");
    int commas = int(std::count(line.begin(), line.end(), ','));
    Witness w;
    w.k = commas - 2;
    if (w.k < 1) throw std::invalid_argument("witness csv: malformed header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (int(cells.size()) != w.k + 3)
            throw std::invalid_argument("witness csv: wrong column count");
        Witness::Entry e;
        e.n = std::stoi(cells[0]);
        e.m = std::stoi(cells[1]);
        for (int i = 0; i < w.k; ++i) e.translates.push_back(std::stod(cells[2 + i]));
        e.separation = std::stod(cells.back());
        w.entries.push_back(std::move(e));
    }
    return w;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(fmt::format("cannot read '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace sojourn
