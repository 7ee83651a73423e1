#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zernike/config.hpp"
#include "zernike/params.hpp"

namespace zernike {

enum class CheckStatus { pass, fail, skip };

const char* to_string(CheckStatus status);

struct CheckResult {
    std::string suite;
    std::string name;
    std::string params;
    CheckStatus status = CheckStatus::fail;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Outcome of an open question. Reported, never counted as pass or fail.
struct Finding {
    std::string name;
    std::string params;
    std::string summary;
    nlohmann::json data;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    std::vector<Finding> findings;

    /// No check has status fail.
    bool all_passed() const;
};

/// Parameter sets exercised by verify: the config point when alpha or beta was
/// given explicitly, otherwise (-1, -2), (-0.5, -1) and (-1, -0.7) at the configured hbar.
std::vector<Params> verification_param_sets(const RunConfig& config);

std::string describe(const Params& params);

/// Runs, in order: geometry invariants, poly-engine spectrum oracle, spectral
/// reality sweep, similarity checks, operator-form consistency, weight search,
/// classical equivalence and conservation, closure. Check failures are recorded,
/// not thrown.
VerificationReport run_verification(const RunConfig& config);

nlohmann::json to_json(const VerificationReport& report);
std::string to_text(const VerificationReport& report);

}  // namespace zernike
