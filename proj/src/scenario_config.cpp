#include "bcrn/scenario_config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "bcrn/units.hpp"

namespace bcrn {

namespace {

enum class Check { Finite, Positive, NonNegative, Probability };

struct KeySpec {
    std::string_view section;
    std::string_view name;
    Check check;
    bool required;
    double ScenarioConfig::*plain;                 // set for required scalar keys
    std::optional<double> ScenarioConfig::*maybe;  // set for optional keys
};

const std::array<KeySpec, 14> kKeys{{
    {"link", "pt_power_kw", Check::Positive, true, &ScenarioConfig::pt_power_kw, nullptr},
    {"link", "pt_gain_dbi", Check::Finite, true, &ScenarioConfig::pt_gain_dbi, nullptr},
    {"link", "st_gain_dbi", Check::Finite, true, &ScenarioConfig::st_gain_dbi, nullptr},
    {"link", "frequency_mhz", Check::Positive, true, &ScenarioConfig::frequency_mhz, nullptr},
    {"link", "distance_miles", Check::Positive, false, nullptr, &ScenarioConfig::distance_miles},
    {"link", "distance_m", Check::Positive, false, nullptr, &ScenarioConfig::distance_m},
    {"link", "harvest_efficiency", Check::Probability, true, &ScenarioConfig::harvest_efficiency, nullptr},
    {"channel", "idle_ratio", Check::Probability, true, &ScenarioConfig::idle_ratio, nullptr},
    {"channel", "bandwidth_khz", Check::Positive, true, &ScenarioConfig::bandwidth_khz, nullptr},
    {"channel", "p0_dbm", Check::Finite, false, nullptr, &ScenarioConfig::p0_dbm},
    {"channel", "tx_efficiency", Check::Probability, true, &ScenarioConfig::tx_efficiency, nullptr},
    {"channel", "frame_s", Check::Positive, false, &ScenarioConfig::frame_s, nullptr},
    {"device", "backscatter_rate_kbps", Check::NonNegative, true, &ScenarioConfig::backscatter_rate_kbps, nullptr},
    {"device", "circuit_power_dbm", Check::Finite, true, &ScenarioConfig::circuit_power_dbm, nullptr},
}};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

const KeySpec* find_key(std::string_view name) {
    for (const auto& k : kKeys)
        if (k.name == name) return &k;
    return nullptr;
}

bool passes(Check check, double v) {
    switch (check) {
        case Check::Finite: return true;
        case Check::Positive: return v > 0.0;
        case Check::NonNegative: return v >= 0.0;
        case Check::Probability: return v >= 0.0 && v <= 1.0;
    }
    return false;
}

std::string_view requirement(Check check) {
    switch (check) {
        case Check::Finite: return "a finite number";
        case Check::Positive: return "positive";
        case Check::NonNegative: return "non-negative";
        case Check::Probability: return "in [0, 1]";
    }
    return "";
}

}  // namespace

double ScenarioConfig::distance_meters() const {
    return distance_m ? *distance_m : units::miles_to_meters(distance_miles.value_or(0.0));
}

Scenario ScenarioConfig::to_scenario(std::optional<double> p0_watts) const {
    if (!p0_watts && p0_dbm) p0_watts = units::dbm_to_watts({*p0_dbm});
    if (!p0_watts) throw std::logic_error("scenario has no p0_dbm; calibrate it first");
    Scenario s{};
    s.link.pt_power = pt_power_kw * 1e3;
    s.link.pt_gain = units::dbi_to_linear({pt_gain_dbi});
    s.link.st_gain = units::dbi_to_linear({st_gain_dbi});
    s.link.frequency = frequency_mhz * 1e6;
    s.link.distance = distance_meters();
    s.link.harvest_efficiency = harvest_efficiency;
    s.channel.idle_ratio = idle_ratio;
    s.channel.bandwidth = bandwidth_khz * 1e3;
    s.channel.noise_over_gain = *p0_watts;
    s.channel.tx_efficiency = tx_efficiency;
    s.channel.frame = frame_s;
    s.device.backscatter_rate = backscatter_rate_kbps * 1e3;
    s.device.circuit_power = units::dbm_to_watts({circuit_power_dbm});
    return s;
}

ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig cfg;
    std::map<std::string_view, std::size_t> seen;  // key -> line
    std::string_view section;
    std::size_t line_no = 0;

    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(at_line(line_no) + "unterminated section header", line_no, "");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "link" && section != "channel" && section != "device")
                throw ParseError(at_line(line_no) + "unknown section [" + std::string(section) + "]", line_no, "");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(at_line(line_no) + "expected key = value", line_no, std::string(line));
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view raw = trim(line.substr(eq + 1));
        const std::string key_str(key);

        const KeySpec* spec = find_key(key);
        if (spec == nullptr) throw ParseError(at_line(line_no) + "unknown key '" + key_str + "'", line_no, key_str);
        if (spec->section != section)
            throw ParseError(at_line(line_no) + "key '" + key_str + "' belongs in [" + std::string(spec->section) + "]",
                             line_no, key_str);
        if (seen.contains(key))
            throw ParseError(at_line(line_no) + "duplicate key '" + key_str + "'", line_no, key_str);

        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
        if (raw.empty() || ec != std::errc{} || ptr != raw.data() + raw.size() || !std::isfinite(value))
            throw ParseError(at_line(line_no) + "key '" + key_str + "' needs a finite number, got '" +
                                 std::string(raw) + "'",
                             line_no, key_str);
        if (!passes(spec->check, value))
            throw ParseError(at_line(line_no) + "key '" + key_str + "' must be " +
                                 std::string(requirement(spec->check)) + ", got " + std::string(raw),
                             line_no, key_str);

        if ((key == "distance_m" && seen.contains("distance_miles")) ||
            (key == "distance_miles" && seen.contains("distance_m")))
            throw ParseError(at_line(line_no) + "duplicate distance: give only one of distance_miles, distance_m",
                             line_no, key_str);

        seen.emplace(spec->name, line_no);
        if (spec->plain != nullptr)
            cfg.*(spec->plain) = value;
        else
            cfg.*(spec->maybe) = value;
    }

    std::string missing;
    for (const auto& k : kKeys) {
        if (!k.required || seen.contains(k.name)) continue;
        missing += missing.empty() ? "" : ", ";
        missing += std::string(k.section) + "." + std::string(k.name);
    }
    if (!seen.contains("distance_miles") && !seen.contains("distance_m")) {
        missing += missing.empty() ? "" : ", ";
        missing += "link.distance_miles (or link.distance_m)";
    }
    if (!missing.empty()) throw ParseError("missing keys: " + missing, 0, missing);
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read scenario file " + path.string(), 0, "");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace bcrn
