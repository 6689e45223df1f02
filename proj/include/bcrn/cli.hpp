#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bcrn/monte_carlo.hpp"

namespace bcrn::cli {

enum ExitCode : int {
    kOk = 0,
    kUsageError = 1,    // bad flags or unreadable/invalid scenario file
    kDomainError = 2,   // parameters outside the model's domain, failed calibration
    kCheckFailed = 3,   // --check found the closed form and numeric oracle disagreeing
};

/// Runs one command line (without the program name), writing reports to `out`
/// and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g, enough digits to round-trip any double.
std::string format_double(double value);

/// degenerate[:beta] | twopoint:b1,b2,p | beta:a,b. A bare "degenerate" uses
/// default_beta.
mc::IdleDistribution parse_distribution(std::string_view text, double default_beta);

}  // namespace bcrn::cli
