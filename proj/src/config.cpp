#include "zernike/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "zernike/errors.hpp"

namespace zernike {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

long long to_integer(const std::string& key, const std::string& value) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config key '" + key + "': expected true/false, got '" + value + "'");
}

}  // namespace

void RunConfig::validate() const {
    params();
    if (!(tol_quad > 0.0) || !(tol_eig > 0.0) || !(tol_ode > 0.0))
        throw ConfigError("tolerances must be positive");
    if (max_degree < 0 || max_degree > 40) throw ConfigError("max_degree must lie in [0, 40]");
    if (!(T >= 0.0)) throw ConfigError("T must be non-negative");
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

Vec2 parse_vec2(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ConfigError("expected 'a,b', got '" + text + "'");
    return {to_double("vector", trim(text.substr(0, comma))), to_double("vector", trim(text.substr(comma + 1)))};
}

void apply_config_entries(RunConfig& config, const std::map<std::string, std::string>& entries) {
    for (const auto& [key, value] : entries) {
        if (key == "alpha") {
            config.alpha = to_double(key, value);
            config.params_explicit = true;
        } else if (key == "beta") {
            config.beta = to_double(key, value);
            config.params_explicit = true;
        } else if (key == "hbar") {
            config.hbar = to_double(key, value);
        } else if (key == "max_degree") {
            config.max_degree = static_cast<int>(to_integer(key, value));
        } else if (key == "m_sector") {
            if (value.empty() || value == "none") config.m_sector.reset();
            else config.m_sector = static_cast<int>(to_integer(key, value));
        } else if (key == "tol_quad") {
            config.tol_quad = to_double(key, value);
        } else if (key == "tol_eig") {
            config.tol_eig = to_double(key, value);
        } else if (key == "tol_ode") {
            config.tol_ode = to_double(key, value);
        } else if (key == "output_dir") {
            config.output_dir = value;
        } else if (key == "seed") {
            const long long s = to_integer(key, value);
            if (s < 0) throw ConfigError("seed must be non-negative");
            config.seed = static_cast<std::uint64_t>(s);
        } else if (key == "tag") {
            config.tag = value;
        } else if (key == "normalization") {
            config.normalization = value;
        } else if (key == "variant") {
            config.variant = value;
        } else if (key == "paired") {
            config.paired = to_bool(key, value);
        } else if (key == "T") {
            config.T = to_double(key, value);
        } else if (key == "x0") {
            config.x0 = parse_vec2(value);
        } else if (key == "p0") {
            config.p0 = parse_vec2(value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

}  // namespace zernike
