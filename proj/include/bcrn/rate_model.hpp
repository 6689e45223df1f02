#pragma once

#include <optional>

#include "bcrn/link_budget.hpp"

namespace bcrn {

/// Secondary channel and frame structure. A frame of `frame` seconds is idle
/// for idle_ratio * frame and busy for the remainder.
struct ChannelParams {
    double idle_ratio;       // beta in [0, 1]
    double bandwidth;        // Hz
    double noise_over_gain;  // W, noise power over channel gain (N0 / h)
    double tx_efficiency;    // kappa in [0, 1]
    double frame = 1.0;      // s
};

struct DeviceParams {
    double backscatter_rate;  // bit/s while backscattering
    double circuit_power;     // W drawn by the transmitter circuit

    /// Circuit energy charged once per frame.
    double circuit_energy(double frame) const { return circuit_power * frame; }
};

/// Complete parameter set for one operating point.
struct Scenario {
    LinkParams link;
    ChannelParams channel;
    DeviceParams device;
};

/// Quantities of the harvest-then-transmit rate for a fixed transmit period mu.
///
/// The rate takes the form mu * kappa * W * log2(n + m * alpha) once alpha
/// reaches alpha_dagger, the smallest harvest fraction that covers the circuit
/// energy. By construction n + m * alpha_dagger == 1.
struct RateCoefficients {
    double p_r;                          // W
    double e_c;                          // J
    std::optional<double> alpha_dagger;  // empty when nothing can be harvested
    double m;
    double n;
    double mu;  // s

    /// True when some alpha in [0, 1] lets harvest-then-transmit carry data.
    bool harvest_feasible() const { return alpha_dagger.has_value() && *alpha_dagger <= 1.0; }
};

void validate(const ChannelParams& channel);
void validate(const DeviceParams& device);
void validate(const Scenario& scenario);

/// Bits sent per frame by backscattering during (1 - alpha) of the busy period.
double rate_backscatter(double alpha, const ChannelParams& channel, const DeviceParams& device);

/// E_c / ((1 - beta) * P_R * frame), left unclamped. Values above one mean the
/// busy period cannot supply the circuit energy. Returns nullopt when nothing
/// is harvestable (beta == 1 or p_r == 0).
std::optional<double> alpha_dagger(double e_c, double beta, double p_r, double frame);

/// Requires 0 < mu <= beta * frame.
RateCoefficients coefficients(const LinkParams& link, const ChannelParams& channel,
                              const DeviceParams& device, double mu);

/// Coefficients at mu = beta * frame, the transmit period that maximises the
/// harvest-mode rate. Requires 0 < beta.
RateCoefficients coefficients_full_idle(const Scenario& scenario);

/// (E_h - E_c) / mu. Negative results are returned as-is and mean the harvested
/// energy does not cover the circuit.
double transmit_power(double e_h, double e_c, double mu);

/// Harvest-then-transmit bits per frame when transmitting for mu seconds,
/// evaluated from the transmit power: mu * kappa * W * log2(1 + P_tr / P0).
double rate_harvest_general(double mu, double alpha, const LinkParams& link,
                            const ChannelParams& channel, const DeviceParams& device);

/// Harvest-then-transmit bits per frame in coefficient form,
/// mu * kappa * W * log2(n + m * alpha), zero below alpha_dagger.
double rate_harvest(double alpha, const RateCoefficients& coeffs, const ChannelParams& channel);

/// Backscatter bits plus harvest-then-transmit bits with mu = beta * frame.
double overall_rate(double alpha, const Scenario& scenario);

/// Pure backscatter (alpha = 0).
double baseline_bm(const ChannelParams& channel, const DeviceParams& device);

/// Pure harvest-then-transmit (alpha = 1).
double baseline_hm(const Scenario& scenario);

}  // namespace bcrn
