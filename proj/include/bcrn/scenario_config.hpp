#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bcrn/rate_model.hpp"

namespace bcrn {

/// Malformed scenario file. line() is 0 when the problem is not tied to a line
/// (for example, missing keys).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::string key)
        : std::runtime_error(message), line_(line), key_(std::move(key)) {}

    std::size_t line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    std::size_t line_;
    std::string key_;
};

/// Scenario file contents, in the units named by each key.
///
///   [link]    pt_power_kw pt_gain_dbi st_gain_dbi frequency_mhz
///             distance_miles | distance_m   harvest_efficiency
///   [channel] idle_ratio bandwidth_khz tx_efficiency [p0_dbm] [frame_s]
///   [device]  backscatter_rate_kbps circuit_power_dbm
///
/// Lines are `key = value`; `#` starts a comment.
struct ScenarioConfig {
    double pt_power_kw = 0.0;
    double pt_gain_dbi = 0.0;
    double st_gain_dbi = 0.0;
    double frequency_mhz = 0.0;
    std::optional<double> distance_miles;
    std::optional<double> distance_m;
    double harvest_efficiency = 0.0;

    double idle_ratio = 0.0;
    double bandwidth_khz = 0.0;
    std::optional<double> p0_dbm;
    double tx_efficiency = 0.0;
    double frame_s = 1.0;

    double backscatter_rate_kbps = 0.0;
    double circuit_power_dbm = 0.0;

    double distance_meters() const;

    /// SI scenario. Uses p0_watts when given, else p0_dbm; throws
    /// std::logic_error if neither is available.
    Scenario to_scenario(std::optional<double> p0_watts = std::nullopt) const;
};

ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace bcrn
