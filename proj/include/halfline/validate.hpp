#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "halfline/config.hpp"
#include "halfline/scattering_data.hpp"
#include "halfline/types.hpp"

namespace halfline::validate {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct ValidationReport {
    std::vector<CheckResult> condition_A, condition_B, condition_C;
    bool overall = false;

    void finalize();
    std::string to_json_text() const;
};

/// Optional recompute context: an independent s2+ evaluator on C+ used by
/// the trace-formula cross-check. Without it that check runs in the
/// modulus-only (data-derived) form.
struct ValidationContext {
    std::function<cplx(cplx)> s2_plus;
};

std::vector<CheckResult> check_condition_A(const ScatteringData& data, const ProblemConfig& cfg,
                                           const std::optional<ValidationContext>& ctx = {});
std::vector<CheckResult> check_condition_B(const ScatteringData& data);
std::vector<CheckResult> check_condition_C(const ScatteringData& data, const ProblemConfig& cfg);

ValidationReport run_all(const ScatteringData& data, const ProblemConfig& cfg,
                         const std::optional<ValidationContext>& ctx = {});

/// Trace-formula evaluation of s2+(k), Im k > 0, from |r| samples and the
/// eigenvalue list:
///   s2+(k) = prod((k-k_j)/(k-conj k_j))^{(1-lambda)/2}
///            * exp[(i/2pi) int log(1 - lambda |r(mu)|^2)/(mu - k) dmu].
cplx s2_plus_from_trace(cplx k, const ScatteringData& data);

}  // namespace halfline::validate
