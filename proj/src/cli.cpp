#include "bcrn/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "bcrn/errors.hpp"
#include "bcrn/experiments.hpp"
#include "bcrn/optimizer.hpp"
#include "bcrn/scenario_config.hpp"
#include "bcrn/units.hpp"

namespace bcrn::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr double kCheckRateTolerance = 1e-9;
constexpr double kCheckAlphaTolerance = 1e-6;

struct GlobalOptions {
    std::string config;
    std::string format = "text";
    bool check = false;
    std::optional<double> calibrate_alpha;
};

std::string dagger_text(const std::optional<double>& dagger) {
    return dagger ? format_double(*dagger) : "infeasible";
}

// Ordered key/value report printed either as key=value lines or a one-row CSV.
class Report {
public:
    void add(std::string key, std::string value) { fields_.emplace_back(std::move(key), std::move(value)); }
    void add(std::string key, double value) { add(std::move(key), format_double(value)); }

    void print(std::ostream& out, std::string_view format) const {
        if (format == "csv") {
            for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << fields_[i].first;
            out << '\n';
            for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << fields_[i].second;
            out << '\n';
        } else {
            for (const auto& [k, v] : fields_) out << k << '=' << v << '\n';
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

Scenario resolve_scenario(const GlobalOptions& opts, const ScenarioConfig& cfg) {
    if (opts.calibrate_alpha) return cfg.to_scenario(calibrate_p0(*opts.calibrate_alpha, cfg.to_scenario(1.0)));
    if (!cfg.p0_dbm) throw UsageError("scenario has no channel.p0_dbm; add it or pass --calibrate-alpha");
    return cfg.to_scenario();
}

// Compares the closed form with the golden-section oracle; throws CheckFailure.
void cross_check(const Scenario& s, const TradeoffSolution& closed, std::string_view where) {
    const TradeoffSolution numeric = optimal_alpha_numeric(s);
    const double scale = std::max({std::abs(closed.r_max), std::abs(numeric.r_max), 1e-300});
    const double rate_gap = std::abs(closed.r_max - numeric.r_max) / scale;
    // Two distinct maximisers (alpha = 0 tying with a harvest point) leave alpha ambiguous.
    const double bm = baseline_bm(s.channel, s.device);
    const bool unique = std::abs(closed.r_max - bm) > kCheckRateTolerance * scale || closed.alpha_star == 0.0;
    const double alpha_gap = std::abs(closed.alpha_star - numeric.alpha_star);
    if (rate_gap > kCheckRateTolerance || (unique && alpha_gap > kCheckAlphaTolerance)) {
        throw CheckFailure(std::string(where) + ": closed form (alpha=" + format_double(closed.alpha_star) +
                           ", r_max=" + format_double(closed.r_max) + ") disagrees with numeric oracle (alpha=" +
                           format_double(numeric.alpha_star) + ", r_max=" + format_double(numeric.r_max) + ")");
    }
}

std::ostream& open_output(const std::string& path, std::ofstream& file, std::ostream& fallback) {
    if (path.empty()) return fallback;
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot write " + path);
    return file;
}

struct SweepParamInfo {
    SweptParam param;
    double to_si;  // multiply CLI units by this
};

SweepParamInfo sweep_param(const std::string& name) {
    static const std::map<std::string, SweepParamInfo> table{
        {"beta", {SweptParam::IdleRatio, 1.0}},
        {"idle_ratio", {SweptParam::IdleRatio, 1.0}},
        {"pt_power_kw", {SweptParam::PtPower, 1e3}},
        {"backscatter_rate_kbps", {SweptParam::BackscatterRate, 1e3}},
        {"alpha", {SweptParam::Alpha, 1.0}},
    };
    const auto it = table.find(name);
    if (it == table.end())
        throw UsageError("unknown sweep parameter '" + name +
                         "' (expected beta, idle_ratio, pt_power_kw, backscatter_rate_kbps, alpha)");
    return it->second;
}

int cmd_optimize(const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
    const ScenarioConfig cfg = load_config(opts.config);
    const Scenario s = resolve_scenario(opts, cfg);
    const TradeoffSolution sol = optimal_alpha_closed_form(s);
    if (opts.check) cross_check(s, sol, "optimize");

    const double beta = s.channel.idle_ratio;
    if (beta == 0.0 || beta == 1.0)
        err << "notice: degenerate idle ratio " << format_double(beta)
            << "; harvest-then-transmit carries no data\n";

    Report r;
    r.add("alpha_star", sol.alpha_star);
    r.add("regime", std::string(to_string(sol.regime)));
    r.add("r_max", sol.r_max);
    r.add("r_b", sol.r_b_part);
    r.add("r_h", sol.r_h_part);
    r.add("alpha_dagger", dagger_text(sol.alpha_dagger));
    r.add("b_low", sol.thresholds ? format_double(sol.thresholds->low) : "n/a");
    r.add("b_high", sol.thresholds ? format_double(sol.thresholds->high) : "n/a");
    r.add("p0_w", s.channel.noise_over_gain);
    r.print(out, opts.format);
    return kOk;
}

int cmd_profile(const GlobalOptions& opts, std::size_t steps, const std::string& out_path, std::ostream& out) {
    if (steps < 2) throw UsageError("--steps must be at least 2");
    const Scenario s = resolve_scenario(opts, load_config(opts.config));
    const auto profile = alpha_profile(s, steps);
    std::ofstream file;
    std::ostream& dest = open_output(out_path, file, out);
    dest << "alpha,rate\n";
    for (const auto& [alpha, rate] : profile) dest << format_double(alpha) << ',' << format_double(rate) << '\n';
    return kOk;
}

int cmd_sweep(const GlobalOptions& opts, const std::string& param, double from, double to, std::size_t steps,
              const std::string& out_path, std::ostream& out) {
    if (steps < 2) throw UsageError("--steps must be at least 2");
    if (!(from < to)) throw UsageError("--from must be below --to");
    const SweepParamInfo info = sweep_param(param);
    const Scenario base = resolve_scenario(opts, load_config(opts.config));
    const auto rows = run_sweep({info.param, from * info.to_si, to * info.to_si, steps, base});
    if (opts.check && info.param != SweptParam::Alpha)
        for (const auto& row : rows) {
            const Scenario s = with_param(base, info.param, row.swept_value);
            cross_check(s, optimal_alpha_closed_form(s), "sweep at " + format_double(row.swept_value));
        }

    std::ofstream file;
    std::ostream& dest = open_output(out_path, file, out);
    dest << "swept_value,alpha_star,regime,r_max,r_bm,r_hm,alpha_dagger\n";
    // Label rows on the grid as typed, so unit scaling never shows up as 30.999999999999996.
    const double last = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const double label = i + 1 == steps ? to : from + (to - from) * static_cast<double>(i) / last;
        dest << format_double(label) << ',' << format_double(row.alpha_star) << ','
             << to_string(row.regime) << ',' << format_double(row.r_max) << ',' << format_double(row.r_bm) << ','
             << format_double(row.r_hm) << ',' << dagger_text(row.alpha_dagger) << '\n';
    }
    return kOk;
}

int cmd_simulate(const GlobalOptions& opts, std::optional<double> alpha, const std::string& dist_text,
                 std::uint64_t frames, std::uint64_t seed, unsigned threads, std::ostream& out) {
    if (frames == 0) throw UsageError("--frames must be at least 1");
    const Scenario s = resolve_scenario(opts, load_config(opts.config));
    const mc::IdleDistribution dist = parse_distribution(dist_text, s.channel.idle_ratio);
    const double policy = alpha ? *alpha : optimal_alpha_closed_form(s).alpha_star;
    const mc::SimResult res = mc::simulate(policy, s, dist, frames, seed, threads);

    Report r;
    r.add("alpha", policy);
    r.add("distribution", std::string(dist_text));
    r.add("frames", std::to_string(res.frames));
    r.add("seed", std::to_string(res.seed));
    r.add("mean_rate", res.mean_rate);
    r.add("std_error", res.std_error);
    r.add("analytic_at_mean", res.analytic_at_mean);
    r.add("gap", mc::jensen_gap(res));
    r.print(out, opts.format);
    return kOk;
}

int cmd_calibrate(const GlobalOptions& opts, double target, std::ostream& out) {
    const ScenarioConfig cfg = load_config(opts.config);
    const double p0 = calibrate_p0(target, cfg.to_scenario(1.0));
    const Scenario s = cfg.to_scenario(p0);
    const TradeoffSolution sol = optimal_alpha_closed_form(s);
    if (opts.check) cross_check(s, sol, "calibrate");

    Report r;
    r.add("target_alpha", target);
    r.add("p0_w", p0);
    r.add("p0_dbm", units::watts_to_dbm(p0).value);
    r.add("roundtrip_alpha", sol.alpha_star);
    r.add("roundtrip_regime", std::string(to_string(sol.regime)));
    r.add("roundtrip_residual", std::abs(sol.alpha_star - target));
    r.print(out, opts.format);
    return kOk;
}

double parse_number(std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageError("not a number: '" + std::string(text) + "'");
    return v;
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> values;
    while (true) {
        const auto comma = text.find(',');
        values.push_back(parse_number(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return values;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

mc::IdleDistribution parse_distribution(std::string_view text, double default_beta) {
    const auto colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    const std::vector<double> args =
        colon == std::string_view::npos ? std::vector<double>{} : parse_list(text.substr(colon + 1));

    if (kind == "degenerate") {
        if (args.size() > 1) throw UsageError("degenerate takes at most one value");
        return mc::Degenerate{args.empty() ? default_beta : args[0]};
    }
    if (kind == "twopoint") {
        if (args.size() != 3) throw UsageError("twopoint needs b1,b2,p");
        return mc::TwoPoint{args[0], args[1], args[2]};
    }
    if (kind == "beta") {
        if (args.size() != 2) throw UsageError("beta needs a,b");
        return mc::BetaLaw{args[0], args[1]};
    }
    throw UsageError("unknown distribution '" + std::string(text) + "' (degenerate, twopoint, beta)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Backscatter / harvest-then-transmit time allocation for RF-powered cognitive radio"};
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_option("--config", opts.config, "Scenario file")->required();
    app.add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"text", "csv"}));
    app.add_flag("--check", opts.check, "Cross-validate the closed form against the numeric oracle");
    app.add_option("--calibrate-alpha", opts.calibrate_alpha, "Solve P0 so this alpha is optimal");

    auto* optimize = app.add_subcommand("optimize", "Optimal harvest fraction and rate");

    std::size_t profile_steps = 101;
    std::string profile_out;
    auto* profile = app.add_subcommand("profile", "Overall rate over a uniform alpha grid (CSV)");
    profile->add_option("--steps", profile_steps, "Grid points including both ends");
    profile->add_option("--out", profile_out, "Output CSV path (stdout if omitted)");

    std::string sweep_name;
    double sweep_from = 0.0;
    double sweep_to = 0.0;
    std::size_t sweep_steps = 0;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Optimum and baselines over a parameter range (CSV)");
    sweep->add_option("--param", sweep_name, "beta | idle_ratio | pt_power_kw | backscatter_rate_kbps | alpha")
        ->required();
    sweep->add_option("--from", sweep_from, "First grid value, in the parameter's units")->required();
    sweep->add_option("--to", sweep_to, "Last grid value, in the parameter's units")->required();
    sweep->add_option("--steps", sweep_steps, "Grid points including both ends")->required();
    sweep->add_option("--out", sweep_out, "Output CSV path (stdout if omitted)");

    std::optional<double> sim_alpha;
    std::string sim_dist = "degenerate";
    std::uint64_t sim_frames = 100000;
    std::uint64_t sim_seed = 1;
    unsigned sim_threads = 0;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo rate under random idle ratios");
    simulate->add_option("--alpha", sim_alpha, "Fixed harvest fraction (default: the optimum)");
    simulate->add_option("--dist", sim_dist, "degenerate[:beta] | twopoint:b1,b2,p | beta:a,b");
    simulate->add_option("--frames", sim_frames, "Number of frames");
    simulate->add_option("--seed", sim_seed, "Generator seed");
    simulate->add_option("--threads", sim_threads, "Worker threads (0 = all cores); output does not depend on it");

    double target_alpha = 0.0;
    auto* calibrate = app.add_subcommand("calibrate", "Solve P0 so that a given alpha is the interior optimum");
    calibrate->add_option("--target-alpha", target_alpha, "Desired optimal alpha")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*optimize) return cmd_optimize(opts, out, err);
        if (*profile) return cmd_profile(opts, profile_steps, profile_out, out);
        if (*sweep) return cmd_sweep(opts, sweep_name, sweep_from, sweep_to, sweep_steps, sweep_out, out);
        if (*simulate) return cmd_simulate(opts, sim_alpha, sim_dist, sim_frames, sim_seed, sim_threads, out);
        if (*calibrate) return cmd_calibrate(opts, target_alpha, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ParseError& e) {
        err << "config error: " << e.what() << '\n';
        return kUsageError;
    } catch (const CheckFailure& e) {
        err << "check failed: " << e.what() << '\n';
        return kCheckFailed;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kCheckFailed;
    } catch (const CalibrationError& e) {
        err << "calibration error: " << e.what() << '\n';
        return kDomainError;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kDomainError;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kDomainError;
    }
    return kUsageError;
}

}  // namespace bcrn::cli
