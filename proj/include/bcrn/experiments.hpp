#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "bcrn/optimizer.hpp"

namespace bcrn {

/// Parameter a sweep varies. Values are in SI units: idle ratio as a fraction,
/// PT power in watts, backscatter rate in bit/s, alpha as a fraction.
enum class SweptParam { IdleRatio, PtPower, BackscatterRate, Alpha };

std::string_view to_string(SweptParam param);

struct SweepSpec {
    SweptParam param;
    double from;
    double to;
    std::size_t steps;
    Scenario base;
};

struct SweepRow {
    double swept_value;
    double alpha_star;
    Regime regime;
    double r_max;
    double r_bm;
    double r_hm;
    std::optional<double> alpha_dagger;
};

/// Copy of `base` with `param` set to `value`. Alpha is a policy, not a
/// scenario field, so it leaves the scenario untouched.
Scenario with_param(const Scenario& base, SweptParam param, double value);

/// Uniform grid from..to (both endpoints) with the optimiser solved at every
/// point. For SweptParam::Alpha each row is the fixed policy alpha = swept
/// value: alpha_star and r_max report that policy, regime reports the
/// optimum's regime.
/// Throws DomainError naming the offending grid point.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// (alpha, R(alpha)) on a uniform grid over [0, 1].
std::vector<std::pair<double, double>> alpha_profile(const Scenario& scenario, std::size_t steps);

/// First swept value whose regime differs from the preceding row's.
std::optional<double> first_regime_change(const std::vector<SweepRow>& rows);

/// Smallest swept value from which alpha_star stays at `level` until the end.
std::optional<double> hold_onset(const std::vector<SweepRow>& rows, double level);

/// Largest swept value up to which alpha_star has stayed at `level` since the start.
std::optional<double> hold_until(const std::vector<SweepRow>& rows, double level);

}  // namespace bcrn
