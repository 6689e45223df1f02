#include "bcrn/rate_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bcrn/errors.hpp"

namespace bcrn {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

void require_unit_interval(double value, const char* name) {
    require(value >= 0.0 && value <= 1.0, std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
}

double log2_via_ln(double x) { return std::log(x) / std::numbers::ln2; }

}  // namespace

void validate(const ChannelParams& channel) {
    require_unit_interval(channel.idle_ratio, "ChannelParams.idle_ratio");
    require(std::isfinite(channel.bandwidth) && channel.bandwidth > 0.0, "ChannelParams.bandwidth must be positive");
    require(std::isfinite(channel.noise_over_gain) && channel.noise_over_gain > 0.0,
            "ChannelParams.noise_over_gain must be positive");
    require_unit_interval(channel.tx_efficiency, "ChannelParams.tx_efficiency");
    require(std::isfinite(channel.frame) && channel.frame > 0.0, "ChannelParams.frame must be positive");
}

void validate(const DeviceParams& device) {
    require(std::isfinite(device.backscatter_rate) && device.backscatter_rate >= 0.0,
            "DeviceParams.backscatter_rate must be non-negative");
    require(std::isfinite(device.circuit_power) && device.circuit_power >= 0.0,
            "DeviceParams.circuit_power must be non-negative");
}

void validate(const Scenario& scenario) {
    validate(scenario.link);
    validate(scenario.channel);
    validate(scenario.device);
}

double rate_backscatter(double alpha, const ChannelParams& channel, const DeviceParams& device) {
    require_unit_interval(alpha, "alpha");
    return (1.0 - channel.idle_ratio) * (1.0 - alpha) * device.backscatter_rate * channel.frame;
}

std::optional<double> alpha_dagger(double e_c, double beta, double p_r, double frame) {
    require(e_c >= 0.0, "alpha_dagger: e_c must be non-negative");
    require_unit_interval(beta, "beta");
    require(p_r >= 0.0, "alpha_dagger: p_r must be non-negative");
    require(frame > 0.0, "alpha_dagger: frame must be positive");
    const double harvestable = (1.0 - beta) * p_r * frame;
    if (!(harvestable > 0.0)) return std::nullopt;
    return e_c / harvestable;
}

RateCoefficients coefficients(const LinkParams& link, const ChannelParams& channel,
                              const DeviceParams& device, double mu) {
    validate(channel);
    validate(device);
    const double beta = channel.idle_ratio;
    require(mu > 0.0 && mu <= beta * channel.frame,
            "coefficients: mu must lie in (0, beta * frame], got " + std::to_string(mu));

    RateCoefficients c{};
    c.p_r = harvested_power(link);
    c.e_c = device.circuit_energy(channel.frame);
    c.mu = mu;
    c.alpha_dagger = alpha_dagger(c.e_c, beta, c.p_r, channel.frame);
    const double scale = channel.noise_over_gain * mu;
    c.m = (1.0 - beta) * c.p_r * channel.frame / scale;
    c.n = 1.0 - c.e_c / scale;
    return c;
}

RateCoefficients coefficients_full_idle(const Scenario& scenario) {
    return coefficients(scenario.link, scenario.channel, scenario.device,
                        scenario.channel.idle_ratio * scenario.channel.frame);
}

double transmit_power(double e_h, double e_c, double mu) {
    require(mu > 0.0, "transmit_power: mu must be positive");
    return (e_h - e_c) / mu;
}

double rate_harvest_general(double mu, double alpha, const LinkParams& link,
                            const ChannelParams& channel, const DeviceParams& device) {
    validate(channel);
    validate(device);
    require_unit_interval(alpha, "alpha");
    require(mu > 0.0 && mu <= channel.idle_ratio * channel.frame,
            "rate_harvest_general: mu must lie in (0, beta * frame], got " + std::to_string(mu));

    const double p_r = harvested_power(link);
    const double e_c = device.circuit_energy(channel.frame);
    const auto dagger = alpha_dagger(e_c, channel.idle_ratio, p_r, channel.frame);
    if (!dagger || *dagger > 1.0 || alpha <= *dagger) return 0.0;

    const double e_h = harvested_energy(alpha, channel.idle_ratio, p_r, channel.frame);
    const double p_tr = transmit_power(e_h, e_c, mu);
    if (p_tr <= 0.0) return 0.0;
    return mu * channel.tx_efficiency * channel.bandwidth * log2_via_ln(1.0 + p_tr / channel.noise_over_gain);
}

double rate_harvest(double alpha, const RateCoefficients& coeffs, const ChannelParams& channel) {
    require_unit_interval(alpha, "alpha");
    if (!coeffs.harvest_feasible() || alpha <= *coeffs.alpha_dagger) return 0.0;
    const double arg = coeffs.n + coeffs.m * alpha;
    // n + m * alpha_dagger == 1 only up to rounding; never report negative bits.
    if (arg <= 1.0) return 0.0;
    return coeffs.mu * channel.tx_efficiency * channel.bandwidth * log2_via_ln(arg);
}

double overall_rate(double alpha, const Scenario& scenario) {
    validate(scenario);
    require_unit_interval(alpha, "alpha");
    const double backscatter = rate_backscatter(alpha, scenario.channel, scenario.device);
    const double beta = scenario.channel.idle_ratio;
    // beta == 0 leaves no time to transmit; beta == 1 leaves nothing to harvest.
    if (beta == 0.0 || beta == 1.0) return backscatter;
    return backscatter + rate_harvest(alpha, coefficients_full_idle(scenario), scenario.channel);
}

double baseline_bm(const ChannelParams& channel, const DeviceParams& device) {
    validate(channel);
    validate(device);
    return rate_backscatter(0.0, channel, device);
}

double baseline_hm(const Scenario& scenario) { return overall_rate(1.0, scenario); }

}  // namespace bcrn
