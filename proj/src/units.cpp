#include "bcrn/units.hpp"

#include <cmath>
#include <string>

#include "bcrn/errors.hpp"

namespace bcrn::units {

double dbm_to_watts(PowerDbm p) { return std::pow(10.0, p.value / 10.0) / 1000.0; }

PowerDbm watts_to_dbm(double watts) {
    if (!(watts > 0.0)) throw DomainError("watts_to_dbm: power must be positive");
    return {10.0 * std::log10(watts * 1000.0)};
}

double dbi_to_linear(GainDbi g) { return std::pow(10.0, g.value / 10.0); }

GainDbi linear_to_dbi(double gain) {
    if (!(gain > 0.0)) throw DomainError("linear_to_dbi: gain must be positive");
    return {10.0 * std::log10(gain)};
}

double wavelength_from_frequency(double frequency_hz) {
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
        throw DomainError("wavelength_from_frequency: frequency must be positive, got " +
                          std::to_string(frequency_hz));
    return kSpeedOfLight / frequency_hz;
}

double miles_to_meters(double miles) {
    if (!(miles >= 0.0) || !std::isfinite(miles))
        throw DomainError("miles_to_meters: distance must be non-negative, got " +
                          std::to_string(miles));
    return miles * kMetersPerMile;
}

}  // namespace bcrn::units
