#ifndef SOJOURN_CONFIG_HPP
#define SOJOURN_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "sojourn/action.hpp"
#include "sojourn/analysis.hpp"

namespace sojourn {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Flat key-value scenario file. Recognized keys: scenario, L, n_max,
/// m_max, tail_start, window. Unknown keys are errors.
struct Config {
    std::string scenario;
    std::string repetition_rule;  // rieffel only: const:<c> | alt:<a>,<b> | grow
    int n_max = 40;
    int m_max = 8;
    int tail_start = 0;  // 0: default to m_max
    std::optional<double> window;
};

Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);

/// Instantiates the named gallery scenario. Names: green, rieffel,
/// splice-x0, splice-z0, kronecker, proper.
Scenario build_scenario(const Config& cfg);

AnalysisParams analysis_params(const Config& cfg);

}  // namespace sojourn

#endif
