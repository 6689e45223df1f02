#include "bcrn/link_budget.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bcrn/errors.hpp"
#include "bcrn/units.hpp"

namespace bcrn {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("LinkParams: ") + what);
}

}  // namespace

void validate(const LinkParams& link) {
    require(std::isfinite(link.pt_power) && link.pt_power > 0.0, "pt_power must be positive");
    require(std::isfinite(link.pt_gain) && link.pt_gain > 0.0, "pt_gain must be positive");
    require(std::isfinite(link.st_gain) && link.st_gain > 0.0, "st_gain must be positive");
    require(std::isfinite(link.frequency) && link.frequency > 0.0, "frequency must be positive");
    require(std::isfinite(link.distance) && link.distance > 0.0, "distance must be positive");
    require(link.harvest_efficiency >= 0.0 && link.harvest_efficiency <= 1.0,
            "harvest_efficiency must lie in [0, 1]");
}

double harvested_power(const LinkParams& link) {
    validate(link);
    const double lambda = units::wavelength_from_frequency(link.frequency);
    const double spread = 4.0 * std::numbers::pi * link.distance;
    return link.harvest_efficiency * link.pt_power * link.pt_gain * link.st_gain * lambda * lambda /
           (spread * spread);
}

double harvested_energy(double alpha, double beta, double p_r, double frame) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("harvested_energy: alpha must lie in [0, 1]");
    if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("harvested_energy: beta must lie in [0, 1]");
    if (!(p_r >= 0.0)) throw DomainError("harvested_energy: p_r must be non-negative");
    if (!(frame > 0.0)) throw DomainError("harvested_energy: frame must be positive");
    return alpha * (1.0 - beta) * p_r * frame;
}

}  // namespace bcrn
