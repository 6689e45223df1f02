#include "bcrn/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bcrn/errors.hpp"

namespace bcrn {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr int kGoldenIterationCap = 200;

bool degenerate_frame(const ChannelParams& channel) {
    return channel.idle_ratio == 0.0 || channel.idle_ratio == 1.0;
}

TradeoffSolution pure_backscatter(const Scenario& scenario) {
    TradeoffSolution sol;
    sol.alpha_star = 0.0;
    sol.regime = Regime::PureBackscatter;
    sol.r_b_part = baseline_bm(scenario.channel, scenario.device);
    sol.r_h_part = 0.0;
    sol.r_max = sol.r_b_part;
    return sol;
}

void fill_rates(TradeoffSolution& sol, const RateCoefficients& coeffs, const Scenario& scenario) {
    sol.r_b_part = rate_backscatter(sol.alpha_star, scenario.channel, scenario.device);
    sol.r_h_part = rate_harvest(sol.alpha_star, coeffs, scenario.channel);
    sol.r_max = sol.r_b_part + sol.r_h_part;
}

// Harvest candidate wins unless pure backscatter is better by more than the tie tolerance.
bool backscatter_wins(double r_bm, double r_candidate) {
    return r_bm - r_candidate > kTieTolerance * std::max(std::abs(r_bm), std::abs(r_candidate));
}

}  // namespace

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::PureBackscatter: return "PureBackscatter";
        case Regime::HarvestBoundaryLow: return "HarvestBoundaryLow";
        case Regime::Interior: return "Interior";
        case Regime::FullHarvest: return "FullHarvest";
    }
    return "Unknown";
}

BackscatterThresholds bb_thresholds(const RateCoefficients& coeffs, const ChannelParams& channel) {
    if (!coeffs.harvest_feasible())
        throw InfeasibleError("bb_thresholds: harvest-then-transmit is infeasible (alpha_dagger > 1)");
    const double beta = channel.idle_ratio;
    const double numer = beta * channel.tx_efficiency * channel.bandwidth * coeffs.m;
    const double denom = (1.0 - beta) * std::numbers::ln2;
    return {numer / ((coeffs.m + coeffs.n) * denom),
            numer / ((coeffs.m * *coeffs.alpha_dagger + coeffs.n) * denom)};
}

double stationary_alpha(const RateCoefficients& coeffs, const Scenario& scenario) {
    const auto& ch = scenario.channel;
    const double beta = ch.idle_ratio;
    const double level = beta * ch.tx_efficiency * ch.bandwidth /
                         ((1.0 - beta) * scenario.device.backscatter_rate * std::numbers::ln2);
    return level - coeffs.n / coeffs.m;
}

TradeoffSolution optimal_alpha_closed_form(const Scenario& scenario) {
    validate(scenario);
    if (degenerate_frame(scenario.channel)) return pure_backscatter(scenario);

    const RateCoefficients coeffs = coefficients_full_idle(scenario);
    TradeoffSolution fallback = pure_backscatter(scenario);
    fallback.alpha_dagger = coeffs.alpha_dagger;
    if (!coeffs.harvest_feasible()) return fallback;

    const double dagger = *coeffs.alpha_dagger;
    const BackscatterThresholds th = bb_thresholds(coeffs, scenario.channel);
    fallback.thresholds = th;

    TradeoffSolution sol = fallback;
    const double bb = scenario.device.backscatter_rate;
    if (bb >= th.high) {
        sol.alpha_star = dagger;
        sol.regime = Regime::HarvestBoundaryLow;
    } else if (bb <= th.low) {
        sol.alpha_star = 1.0;
        sol.regime = Regime::FullHarvest;
    } else {
        sol.alpha_star = std::clamp(stationary_alpha(coeffs, scenario), dagger, 1.0);
        sol.regime = Regime::Interior;
        if (sol.alpha_star == dagger) sol.regime = Regime::HarvestBoundaryLow;
        if (sol.alpha_star == 1.0) sol.regime = Regime::FullHarvest;
    }
    fill_rates(sol, coeffs, scenario);
    sol.candidate_alpha = sol.alpha_star;
    sol.candidate_regime = sol.regime;

    if (backscatter_wins(fallback.r_max, sol.r_max)) {
        fallback.candidate_alpha = sol.candidate_alpha;
        fallback.candidate_regime = sol.candidate_regime;
        return fallback;
    }
    return sol;
}

TradeoffSolution optimal_alpha_numeric(const Scenario& scenario, double tol) {
    if (!(tol > 0.0)) throw DomainError("optimal_alpha_numeric: tol must be positive");
    validate(scenario);
    if (degenerate_frame(scenario.channel)) return pure_backscatter(scenario);

    const RateCoefficients coeffs = coefficients_full_idle(scenario);
    TradeoffSolution fallback = pure_backscatter(scenario);
    fallback.alpha_dagger = coeffs.alpha_dagger;
    if (!coeffs.harvest_feasible()) return fallback;

    const auto rate = [&](double alpha) { return overall_rate(alpha, scenario); };

    // Golden-section maximisation on the concave branch.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = *coeffs.alpha_dagger;
    double hi = 1.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = rate(x1);
    double f2 = rate(x2);
    int iterations = 0;
    while (hi - lo > tol) {
        if (++iterations > kGoldenIterationCap)
            throw NumericError("optimal_alpha_numeric: golden-section search did not converge");
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = rate(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = rate(x1);
        }
    }

    double best_alpha = *coeffs.alpha_dagger;
    double best_rate = rate(best_alpha);
    for (double alpha : {0.5 * (lo + hi), 1.0}) {
        const double r = rate(alpha);
        if (r > best_rate) {
            best_alpha = alpha;
            best_rate = r;
        }
    }
    TradeoffSolution sol = fallback;
    sol.thresholds = bb_thresholds(coeffs, scenario.channel);
    sol.alpha_star = best_alpha;
    if (best_alpha - *coeffs.alpha_dagger <= tol)
        sol.regime = Regime::HarvestBoundaryLow;
    else if (1.0 - best_alpha <= tol)
        sol.regime = Regime::FullHarvest;
    else
        sol.regime = Regime::Interior;
    fill_rates(sol, coeffs, scenario);
    sol.candidate_alpha = sol.alpha_star;
    sol.candidate_regime = sol.regime;

    if (backscatter_wins(fallback.r_max, best_rate)) {
        fallback.thresholds = sol.thresholds;
        fallback.candidate_alpha = sol.candidate_alpha;
        fallback.candidate_regime = sol.candidate_regime;
        return fallback;
    }
    return sol;
}

double calibrate_p0(double target_alpha, const Scenario& scenario) {
    if (!(target_alpha > 0.0 && target_alpha < 1.0))
        throw CalibrationError("calibrate_p0: target alpha must lie strictly inside (0, 1), got " +
                               std::to_string(target_alpha));
    Scenario s = scenario;
    s.channel.noise_over_gain = 1.0;  // placeholder until solved
    validate(s);

    const auto& ch = s.channel;
    const double beta = ch.idle_ratio;
    if (degenerate_frame(ch))
        throw CalibrationError("calibrate_p0: idle ratio 0 or 1 has no interior optimum");
    if (!(s.device.backscatter_rate > 0.0))
        throw CalibrationError("calibrate_p0: backscatter rate 0 always yields full harvest");

    const double p_r = harvested_power(s.link);
    const double e_c = s.device.circuit_energy(ch.frame);
    const auto dagger = alpha_dagger(e_c, beta, p_r, ch.frame);
    if (!dagger || *dagger >= 1.0)
        throw CalibrationError("calibrate_p0: harvest-then-transmit is infeasible for this link");
    if (target_alpha <= *dagger)
        throw CalibrationError("calibrate_p0: target alpha " + std::to_string(target_alpha) +
                               " is at or below alpha_dagger " + std::to_string(*dagger) +
                               " (boundary, not interior)");

    const double level =
        beta * ch.tx_efficiency * ch.bandwidth / ((1.0 - beta) * s.device.backscatter_rate * std::numbers::ln2);
    const double p0 = ((level - target_alpha) * (1.0 - beta) * p_r * ch.frame + e_c) / (beta * ch.frame);
    if (!(p0 > 0.0) || !std::isfinite(p0))
        throw CalibrationError("calibrate_p0: no positive noise level makes alpha " + std::to_string(target_alpha) +
                               " optimal");

    s.channel.noise_over_gain = p0;
    const TradeoffSolution check = optimal_alpha_closed_form(s);
    if (check.regime != Regime::Interior)
        throw CalibrationError("calibrate_p0: calibrated optimum falls in regime " +
                               std::string(to_string(check.regime)) + ", not Interior");
    if (std::abs(check.alpha_star - target_alpha) > 1e-9)
        throw CalibrationError("calibrate_p0: round trip missed the target by " +
                               std::to_string(std::abs(check.alpha_star - target_alpha)));
    return p0;
}

}  // namespace bcrn
