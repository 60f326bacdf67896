#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace barg {

/// One named property check: the measured quantity is designed so that the
/// check passes exactly when measured <= tolerance (rates, residuals, and
/// normalized ratios all follow this shape).
struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
};

/// Outcome of one verification suite; checks are sorted by name so reports
/// are canonical regardless of evaluation order.
struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_passed() const;
};

/// Knobs shared by the suites.  The seed fully determines every random
/// family, so identical configurations reproduce identical reports.
struct VerifyConfig {
    std::uint64_t seed = 7;
    double r_max = 8.0;
};

/// Names of the available suites, in canonical order.
std::vector<std::string> suite_names();

/// Runs one suite by name; throws std::invalid_argument for unknown names.
SuiteReport run_suite(const std::string& name, const VerifyConfig& config);

SuiteReport run_isometry(const VerifyConfig& config);
SuiteReport run_hermite_map(const VerifyConfig& config);
SuiteReport run_reproducing(const VerifyConfig& config);
SuiteReport run_windowtransf(const VerifyConfig& config);
SuiteReport run_toeplitz_intertwine(const VerifyConfig& config);
SuiteReport run_norm_equivalence(const VerifyConfig& config);
SuiteReport run_covering(const VerifyConfig& config);
SuiteReport run_narrow(const VerifyConfig& config);
SuiteReport run_embeddings(const VerifyConfig& config);

}  // namespace barg
