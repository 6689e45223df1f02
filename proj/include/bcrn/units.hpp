#pragma once

// Physical unit conversions shared by the rest of the library. Every factor is
// an exact SI definition so results are reproducible bit-for-bit.

namespace bcrn::units {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact
inline constexpr double kMetersPerMile = 1609.344;      // international mile

/// Power level in decibel-milliwatts.
struct PowerDbm {
    double value;
};

/// Antenna gain in decibels relative to an isotropic radiator.
struct GainDbi {
    double value;
};

double dbm_to_watts(PowerDbm p);
PowerDbm watts_to_dbm(double watts);

double dbi_to_linear(GainDbi g);
GainDbi linear_to_dbi(double gain);

/// Throws DomainError when frequency_hz is not strictly positive.
double wavelength_from_frequency(double frequency_hz);

/// Throws DomainError for negative distances.
double miles_to_meters(double miles);

}  // namespace bcrn::units
