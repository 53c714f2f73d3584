#include "sojourn/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

namespace sojourn {

namespace {

std::string trim(std::string s) {
    auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        s = s.substr(1, s.size() - 2);
    return s;
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError(fmt::format("key '{}': expected an integer, got '{}'", key, value));
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError(fmt::format("key '{}': expected a number, got '{}'", key, value));
    }
}

std::function<int(int)> parse_repetition_rule(const std::string& rule) {
    if (rule.rfind("const:", 0) == 0) {
        int c = parse_int("L", rule.substr(6));
        if (c < 0) throw ConfigError("L: repetition integer must be nonnegative");
        return [c](int) { return c; };
    }
    if (rule.rfind("alt:", 0) == 0) {
        std::string rest = rule.substr(4);
        std::size_t comma = rest.find(',');
        if (comma == std::string::npos)
            throw ConfigError("L: alt rule needs two values, e.g. alt:1,2");
        int a = parse_int("L", rest.substr(0, comma));
        int b = parse_int("L", rest.substr(comma + 1));
        if (a < 0 || b < 0) throw ConfigError("L: repetition integers must be nonnegative");
        return [a, b](int n) { return n % 2 == 1 ? a : b; };
    }
    if (rule == "grow") return [](int n) { return n; };
    throw ConfigError(fmt::format("L: unrecognized rule '{}'", rule));
}

}  // namespace

Config parse_config_text(const std::string& text) {
    Config cfg;
    bool has_L = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(fmt::format("line {}: expected 'key = value'", lineno));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "scenario") {
            cfg.scenario = value;
        } else if (key == "L") {
            cfg.repetition_rule = value;
            has_L = true;
        } else if (key == "n_max") {
            cfg.n_max = parse_int(key, value);
        } else if (key == "m_max") {
            cfg.m_max = parse_int(key, value);
        } else if (key == "tail_start") {
            cfg.tail_start = parse_int(key, value);
        } else if (key == "window") {
            cfg.window = parse_double(key, value);
        } else {
            throw ConfigError(fmt::format("line {}: unknown key '{}'", lineno, key));
        }
    }
    if (cfg.scenario.empty()) throw ConfigError("missing required key 'scenario'");
    if (cfg.n_max < 1 || cfg.m_max < 1)
        throw ConfigError("n_max and m_max must be positive");
    if (has_L && cfg.scenario != "rieffel")
        throw ConfigError("key 'L' is only valid for scenario = rieffel");
    if (cfg.scenario == "rieffel" && !has_L)
        throw ConfigError("scenario 'rieffel' requires key 'L'");
    if (has_L) (void)parse_repetition_rule(cfg.repetition_rule);  // syntax check up front
    if (cfg.window && !(*cfg.window > 0.0)) throw ConfigError("window must be positive");
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

Scenario build_scenario(const Config& cfg) {
    try {
        if (cfg.scenario == "green") {
            Scenario sc = make_rieffel([](int) { return 1; });
            sc.name = "green";
            return sc;
        }
        if (cfg.scenario == "proper") {
            Scenario sc = make_rieffel([](int) { return 0; });
            sc.name = "proper";
            return sc;
        }
        if (cfg.scenario == "rieffel")
            return make_rieffel(parse_repetition_rule(cfg.repetition_rule));
        if (cfg.scenario == "splice-x0") return make_splice().first;
        if (cfg.scenario == "splice-z0") return make_splice().second;
        if (cfg.scenario == "kronecker") return make_kronecker(std::sqrt(2.0) - 1.0);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError(fmt::format("unknown scenario '{}'", cfg.scenario));
}

AnalysisParams analysis_params(const Config& cfg) {
    AnalysisParams p;
    p.n_max = cfg.n_max;
    p.m_max = cfg.m_max;
    p.tail_start = cfg.tail_start;
    if (cfg.window) p.window = Interval::closed(-*cfg.window, *cfg.window);
    return p;
}

}  // namespace sojourn
