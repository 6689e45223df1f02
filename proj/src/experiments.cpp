#include "bcrn/experiments.hpp"

#include <cstdio>
#include <string>

#include "bcrn/errors.hpp"

namespace bcrn {

namespace {

std::string describe(SweptParam param, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(to_string(param)) + "=" + buf;
}

}  // namespace

std::string_view to_string(SweptParam param) {
    switch (param) {
        case SweptParam::IdleRatio: return "idle_ratio";
        case SweptParam::PtPower: return "pt_power";
        case SweptParam::BackscatterRate: return "backscatter_rate";
        case SweptParam::Alpha: return "alpha";
    }
    return "unknown";
}

Scenario with_param(const Scenario& base, SweptParam param, double value) {
    Scenario s = base;
    switch (param) {
        case SweptParam::IdleRatio: s.channel.idle_ratio = value; break;
        case SweptParam::PtPower: s.link.pt_power = value; break;
        case SweptParam::BackscatterRate: s.device.backscatter_rate = value; break;
        case SweptParam::Alpha: break;
    }
    return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.steps < 2) throw DomainError("run_sweep: steps must be at least 2");
    if (!(spec.from < spec.to)) throw DomainError("run_sweep: from must be below to");

    std::vector<SweepRow> rows;
    rows.reserve(spec.steps);
    const double span = spec.to - spec.from;
    const double last = static_cast<double>(spec.steps - 1);
    for (std::size_t i = 0; i < spec.steps; ++i) {
        const double value = i + 1 == spec.steps ? spec.to : spec.from + span * static_cast<double>(i) / last;
        try {
            const Scenario s = with_param(spec.base, spec.param, value);
            const TradeoffSolution sol = optimal_alpha_closed_form(s);
            SweepRow row{value, sol.alpha_star, sol.regime, sol.r_max,
                         baseline_bm(s.channel, s.device), baseline_hm(s), sol.alpha_dagger};
            if (spec.param == SweptParam::Alpha) {
                row.alpha_star = value;
                row.r_max = overall_rate(value, s);
            }
            rows.push_back(row);
        } catch (const DomainError& e) {
            throw DomainError("run_sweep: grid point " + describe(spec.param, value) + ": " + e.what());
        }
    }
    return rows;
}

std::vector<std::pair<double, double>> alpha_profile(const Scenario& scenario, std::size_t steps) {
    if (steps < 2) throw DomainError("alpha_profile: steps must be at least 2");
    std::vector<std::pair<double, double>> profile;
    profile.reserve(steps);
    const double last = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const double alpha = i + 1 == steps ? 1.0 : static_cast<double>(i) / last;
        profile.emplace_back(alpha, overall_rate(alpha, scenario));
    }
    return profile;
}

std::optional<double> first_regime_change(const std::vector<SweepRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].regime != rows[i - 1].regime) return rows[i].swept_value;
    return std::nullopt;
}

std::optional<double> hold_onset(const std::vector<SweepRow>& rows, double level) {
    std::optional<double> onset;
    for (auto it = rows.rbegin(); it != rows.rend() && it->alpha_star == level; ++it) onset = it->swept_value;
    return onset;
}

std::optional<double> hold_until(const std::vector<SweepRow>& rows, double level) {
    std::optional<double> until;
    for (auto it = rows.begin(); it != rows.end() && it->alpha_star == level; ++it) until = it->swept_value;
    return until;
}

}  // namespace bcrn
