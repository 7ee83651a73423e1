#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "zernike/params.hpp"

namespace zernike {

/// Everything a CLI run needs. A config file is flat `key = value` text with
/// keys spelled exactly as the fields below; `#` starts a comment.
struct RunConfig {
    double alpha = -1.0;
    double beta = -2.0;
    double hbar = 1.0;
    int max_degree = 10;
    std::optional<int> m_sector;
    double tol_quad = 1e-8;
    double tol_eig = 1e-9;
    double tol_ode = 1e-10;
    std::string output_dir = ".";
    std::uint64_t seed = 20240101;

    std::string tag = "zernike";
    std::string normalization = "monic_top";
    std::string variant = "higgs_real";
    bool paired = false;
    double T = 10.0;
    Vec2 x0{0.3, 0.0};
    Vec2 p0{0.0, 0.5};

    /// True once alpha or beta was set explicitly (file or flag); verify then
    /// runs only that parameter set instead of the shipped defaults.
    bool params_explicit = false;

    Params params() const { return make_params(alpha, beta, hbar); }

    /// ConfigError unless tolerances are positive, 0 <= max_degree <= 40, params valid.
    void validate() const;
};

/// Parse `key = value` lines. ConfigError on malformed lines.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Apply entries onto `config`. ConfigError on unknown keys or unparsable values.
void apply_config_entries(RunConfig& config, const std::map<std::string, std::string>& entries);

/// "a,b" -> {a, b}
Vec2 parse_vec2(const std::string& text);

}  // namespace zernike
