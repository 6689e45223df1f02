#pragma once

#include <optional>
#include <string_view>

#include "bcrn/rate_model.hpp"

namespace bcrn {

/// Where the optimal harvest fraction lands.
enum class Regime {
    PureBackscatter,     // alpha* = 0: harvesting infeasible or not worth it
    HarvestBoundaryLow,  // alpha* = alpha_dagger
    Interior,            // alpha_dagger < alpha* < 1
    FullHarvest,         // alpha* = 1
};

std::string_view to_string(Regime regime);

/// Backscatter rates (bit/s) bounding the interior regime. For B_b at or above
/// high the best harvesting point is alpha_dagger; at or below low it is 1.
struct BackscatterThresholds {
    double low;
    double high;
};

struct TradeoffSolution {
    double alpha_star = 0.0;
    Regime regime = Regime::PureBackscatter;
    double r_max = 0.0;     // bits per frame
    double r_b_part = 0.0;  // backscatter share of r_max
    double r_h_part = 0.0;  // harvest-then-transmit share of r_max
    std::optional<double> alpha_dagger;
    std::optional<BackscatterThresholds> thresholds;  // only when harvesting is feasible

    // Best point of the harvest branch [alpha_dagger, 1] before the final
    // comparison with pure backscatter. Unset when harvesting is infeasible.
    std::optional<double> candidate_alpha;
    std::optional<Regime> candidate_regime;
};

/// Thresholds of the three-regime structure:
///   low  = beta kappa W m / ((m + n)(1 - beta) ln 2)
///   high = beta kappa W m / ((m alpha_dagger + n)(1 - beta) ln 2)
/// Throws InfeasibleError unless coeffs.harvest_feasible().
BackscatterThresholds bb_thresholds(const RateCoefficients& coeffs, const ChannelParams& channel);

/// Root of dR/dalpha on the harvest branch,
///   beta kappa W / ((1 - beta) B_b ln 2) - n / m,
/// without clamping. Infinite when B_b == 0.
double stationary_alpha(const RateCoefficients& coeffs, const Scenario& scenario);

/// Exact maximiser of the overall rate over alpha in [0, 1] from the regime
/// classification and the stationary point, followed by the comparison
/// against pure backscatter. Ties within 1e-12 relative go to the harvest
/// candidate.
TradeoffSolution optimal_alpha_closed_form(const Scenario& scenario);

/// Golden-section search of the concave segment [alpha_dagger, 1], plus the
/// endpoints 0, alpha_dagger and 1. Uses only overall_rate, so it shares no
/// algebra with the closed form. Throws NumericError if the bracket has not
/// shrunk below tol after 200 iterations.
TradeoffSolution optimal_alpha_numeric(const Scenario& scenario, double tol = 1e-10);

/// Solves the interior stationarity condition for the noise-over-gain P0 that
/// makes target_alpha optimal. scenario.channel.noise_over_gain is ignored.
/// Throws CalibrationError when the target cannot be an interior optimum.
double calibrate_p0(double target_alpha, const Scenario& scenario);

}  // namespace bcrn
