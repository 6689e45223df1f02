#include "bcrn/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "bcrn/errors.hpp"

namespace bcrn::mc {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double standard_normal(SplitMix64& rng) {
    const double u1 = rng.uniform_open();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Marsaglia and Tsang (2000); shapes below one use the Gamma(a + 1) * U^(1/a) boost.
double gamma_variate(double shape, SplitMix64& rng) {
    if (shape < 1.0) {
        const double boosted = gamma_variate(shape + 1.0, rng);
        return boosted * std::pow(rng.uniform_open(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

struct Validator {
    void operator()(const Degenerate& d) const {
        if (!is_probability(d.beta)) throw DomainError("Degenerate: beta must lie in [0, 1]");
    }
    void operator()(const TwoPoint& t) const {
        if (!is_probability(t.first) || !is_probability(t.second))
            throw DomainError("TwoPoint: both support points must lie in [0, 1]");
        if (!is_probability(t.p_first)) throw DomainError("TwoPoint: p must lie in [0, 1]");
    }
    void operator()(const BetaLaw& b) const {
        if (!(b.a > 0.0 && std::isfinite(b.a)) || !(b.b > 0.0 && std::isfinite(b.b)))
            throw DomainError("BetaLaw: shapes must be positive and finite");
    }
};

struct Mean {
    double operator()(const Degenerate& d) const { return d.beta; }
    double operator()(const TwoPoint& t) const { return t.p_first * t.first + (1.0 - t.p_first) * t.second; }
    double operator()(const BetaLaw& b) const { return b.a / (b.a + b.b); }
};

struct Drawer {
    SplitMix64& rng;
    double operator()(const Degenerate& d) const { return d.beta; }
    double operator()(const TwoPoint& t) const { return rng.uniform() < t.p_first ? t.first : t.second; }
    double operator()(const BetaLaw& b) const {
        const double x = gamma_variate(b.a, rng);
        const double y = gamma_variate(b.b, rng);
        return x / (x + y);
    }
};

}  // namespace

std::uint64_t SplitMix64::next() {
    state_ += kGoldenGamma;
    return mix64(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t frame_seed(std::uint64_t seed, std::uint64_t frame_index) {
    return mix64(seed + (frame_index + 1) * kGoldenGamma);
}

void validate(const IdleDistribution& dist) { std::visit(Validator{}, dist); }

double mean(const IdleDistribution& dist) {
    validate(dist);
    return std::visit(Mean{}, dist);
}

double draw(const IdleDistribution& dist, SplitMix64& rng) { return std::visit(Drawer{rng}, dist); }

SimResult simulate(double alpha, const Scenario& scenario, const IdleDistribution& dist,
                   std::uint64_t frames, std::uint64_t seed, unsigned threads) {
    if (frames == 0) throw DomainError("simulate: frames must be at least 1");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("simulate: alpha must lie in [0, 1]");
    validate(dist);

    SimResult result;
    result.frames = frames;
    result.seed = seed;
    Scenario at_mean = scenario;
    at_mean.channel.idle_ratio = mean(dist);
    result.analytic_at_mean = overall_rate(alpha, at_mean);

    std::vector<double> rates(frames);
    const auto worker = [&](std::uint64_t begin, std::uint64_t end) {
        Scenario s = scenario;
        for (std::uint64_t i = begin; i < end; ++i) {
            SplitMix64 rng(frame_seed(seed, i));
            s.channel.idle_ratio = draw(dist, rng);
            rates[i] = overall_rate(alpha, s);
        }
    };

    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    const std::uint64_t chunks = std::min<std::uint64_t>(threads, frames);
    if (chunks <= 1) {
        worker(0, frames);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(chunks);
        for (std::uint64_t c = 0; c < chunks; ++c)
            pool.emplace_back(worker, frames * c / chunks, frames * (c + 1) / chunks);
    }

    // Welford in frame order keeps the result independent of the thread split
    // and returns a constant sequence's value exactly.
    double m = 0.0;
    double m2 = 0.0;
    for (std::uint64_t i = 0; i < frames; ++i) {
        const double delta = rates[i] - m;
        m += delta / static_cast<double>(i + 1);
        m2 += delta * (rates[i] - m);
    }
    result.mean_rate = m;
    result.std_error =
        frames > 1 ? std::sqrt(m2 / static_cast<double>(frames - 1) / static_cast<double>(frames)) : 0.0;
    return result;
}

double jensen_gap(const SimResult& result) { return result.analytic_at_mean - result.mean_rate; }

double jensen_gap(double alpha, const Scenario& scenario, const IdleDistribution& dist,
                  std::uint64_t frames, std::uint64_t seed) {
    return jensen_gap(simulate(alpha, scenario, dist, frames, seed));
}

}  // namespace bcrn::mc
