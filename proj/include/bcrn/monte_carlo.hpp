#pragma once

#include <cstdint>
#include <variant>

#include "bcrn/rate_model.hpp"

namespace bcrn::mc {

/// SplitMix64 (Steele, Lea, Flood 2014). State advances by the golden gamma
/// 0x9E3779B97F4A7C15 and each output is
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z = z ^ (z >> 31)
/// The k-th output (k = 1, 2, ...) depends only on seed + k * gamma, which is
/// what makes per-frame substreams cheap.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform();

    /// Uniform double in (0, 1).
    double uniform_open();

private:
    std::uint64_t state_;
};

/// Seed of the generator owned by frame `frame_index`: output number
/// frame_index + 1 of SplitMix64(seed).
std::uint64_t frame_seed(std::uint64_t seed, std::uint64_t frame_index);

struct Degenerate {
    double beta;
};

/// beta = first with probability p_first, otherwise second.
struct TwoPoint {
    double first;
    double second;
    double p_first;
};

/// Beta(a, b) law on (0, 1).
struct BetaLaw {
    double a;
    double b;
};

using IdleDistribution = std::variant<Degenerate, TwoPoint, BetaLaw>;

void validate(const IdleDistribution& dist);
double mean(const IdleDistribution& dist);

/// Draws one idle ratio. Degenerate consumes no randomness; TwoPoint consumes
/// one uniform; BetaLaw draws two gamma variates (Marsaglia-Tsang with
/// Box-Muller normals).
double draw(const IdleDistribution& dist, SplitMix64& rng);

struct SimResult {
    double mean_rate = 0.0;  // bits per frame
    double std_error = 0.0;  // bits per frame
    std::uint64_t frames = 0;
    std::uint64_t seed = 0;
    double analytic_at_mean = 0.0;  // overall rate at the mean idle ratio
};

/// Draws an idle ratio per frame, evaluates the overall rate under the fixed
/// policy alpha, and reports the sample mean with its standard error. The
/// result is identical for any thread count (threads == 0 picks the hardware
/// concurrency).
SimResult simulate(double alpha, const Scenario& scenario, const IdleDistribution& dist,
                   std::uint64_t frames, std::uint64_t seed, unsigned threads = 0);

/// analytic_at_mean - mean_rate.
double jensen_gap(const SimResult& result);

double jensen_gap(double alpha, const Scenario& scenario, const IdleDistribution& dist,
                  std::uint64_t frames, std::uint64_t seed);

}  // namespace bcrn::mc
