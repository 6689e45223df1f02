#pragma once

namespace bcrn {

/// Free-space link from the primary transmitter to the secondary transmitter.
/// All quantities are linear SI values; use bcrn::units to convert from dB.
struct LinkParams {
    double pt_power;            // W, primary transmitter output
    double pt_gain;             // linear
    double st_gain;             // linear
    double frequency;           // Hz
    double distance;            // m
    double harvest_efficiency;  // [0, 1]
};

/// Throws DomainError naming the first violated field.
void validate(const LinkParams& link);

/// RF power delivered to the harvester, Friis free-space model:
///   P_R = delta * P_T * G_T * G_R * lambda^2 / (4 pi d)^2
double harvested_power(const LinkParams& link);

/// Energy collected while harvesting for a fraction alpha of the busy period:
///   E_h = alpha * (1 - beta) * P_R * frame
double harvested_energy(double alpha, double beta, double p_r, double frame);

}  // namespace bcrn
