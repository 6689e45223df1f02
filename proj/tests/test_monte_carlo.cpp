#include <doctest.h>

#include <cmath>
#include <cstring>

#include "bcrn/errors.hpp"
#include "bcrn/monte_carlo.hpp"
#include "test_support.hpp"

using namespace bcrn;
using namespace bcrn::mc;

namespace {

bool bit_identical(const SimResult& a, const SimResult& b) {
    return std::memcmp(&a.mean_rate, &b.mean_rate, sizeof(double)) == 0 &&
           std::memcmp(&a.std_error, &b.std_error, sizeof(double)) == 0 &&
           std::memcmp(&a.analytic_at_mean, &b.analytic_at_mean, sizeof(double)) == 0 && a.frames == b.frames &&
           a.seed == b.seed;
}

double rate_at(double alpha, Scenario s, double beta) {
    s.channel.idle_ratio = beta;
    return overall_rate(alpha, s);
}

}  // namespace

TEST_CASE("SplitMix64 reference outputs") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);

    SplitMix64 again(0);
    again.next();
    CHECK(frame_seed(0, 0) == 0xE220A8397B1DCDAFULL);
    CHECK(frame_seed(0, 1) == again.next());

    SplitMix64 u(42);
    for (int i = 0; i < 10000; ++i) {
        const double x = u.uniform();
        const double y = u.uniform_open();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        CHECK(y > 0.0);
        CHECK(y < 1.0);
    }
}

TEST_CASE("distribution means and validation") {
    CHECK(mean(Degenerate{0.3}) == 0.3);
    CHECK(mean(TwoPoint{0.2, 0.4, 0.25}) == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(mean(BetaLaw{2.0, 6.0}) == 0.25);
    CHECK_THROWS_AS(validate(Degenerate{1.5}), DomainError);
    CHECK_THROWS_AS(validate(TwoPoint{0.2, 0.4, 1.2}), DomainError);
    CHECK_THROWS_AS(validate(BetaLaw{0.0, 1.0}), DomainError);

    SplitMix64 rng(7);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double b = draw(BetaLaw{0.5, 1.5}, rng);
        REQUIRE(b > 0.0);
        REQUIRE(b < 1.0);
        sum += b;
    }
    // Var = ab / ((a+b)^2 (a+b+1)) = 0.0625; 5 sigma of the mean.
    CHECK(std::abs(sum / n - 0.25) < 5.0 * std::sqrt(0.0625 / n));
}

TEST_CASE("degenerate distribution reproduces the analytic rate exactly") {
    const Scenario s = testing::calibrated_defaults();
    for (std::uint64_t frames : {1ULL, 10ULL, 100000ULL}) {
        const SimResult r = simulate(testing::kReferenceAlphaStar, s, Degenerate{0.3}, frames, 5);
        CHECK(r.mean_rate == r.analytic_at_mean);
        CHECK(r.analytic_at_mean == overall_rate(testing::kReferenceAlphaStar, s));
        CHECK(r.std_error == 0.0);
        CHECK(jensen_gap(r) == 0.0);
    }
    const SimResult collapsed = simulate(0.5, s, TwoPoint{0.3, 0.3, 0.4}, 1000, 9);
    CHECK(bit_identical(collapsed, simulate(0.5, s, Degenerate{0.3}, 1000, 9)));
}

TEST_CASE("two-point mixture matches its closed-form average") {
    const Scenario s = testing::calibrated_defaults();
    const double alpha = testing::kReferenceAlphaStar;
    const SimResult r = simulate(alpha, s, TwoPoint{0.2, 0.4, 0.5}, 1'000'000, 2024);
    const double exact = 0.5 * (rate_at(alpha, s, 0.2) + rate_at(alpha, s, 0.4));
    CHECK(r.std_error > 0.0);
    CHECK(std::abs(r.mean_rate - exact) <= 3.0 * r.std_error);
    CHECK(r.analytic_at_mean == rate_at(alpha, s, 0.3));
    const double exact_gap = r.analytic_at_mean - exact;
    CHECK(std::abs(jensen_gap(r) - exact_gap) <= 3.0 * r.std_error);
}

TEST_CASE("standard error follows 1/sqrt(n)") {
    const Scenario s = testing::calibrated_defaults();
    const IdleDistribution dist = BetaLaw{3.0, 7.0};
    const SimResult small = simulate(0.4, s, dist, 50'000, 3);
    const SimResult large = simulate(0.4, s, dist, 200'000, 3);
    const double ratio = large.std_error / small.std_error;
    CHECK(ratio > 0.5 * 0.8);
    CHECK(ratio < 0.5 * 1.2);
}

TEST_CASE("reproducibility and seed independence") {
    const Scenario s = testing::calibrated_defaults();
    const IdleDistribution dist = BetaLaw{2.0, 4.0};
    const SimResult a = simulate(0.3, s, dist, 100'000, 77, 1);
    const SimResult b = simulate(0.3, s, dist, 100'000, 77, 1);
    const SimResult threaded = simulate(0.3, s, dist, 100'000, 77, 7);
    CHECK(bit_identical(a, b));
    CHECK(bit_identical(a, threaded));

    const SimResult other = simulate(0.3, s, dist, 100'000, 78);
    CHECK_FALSE(bit_identical(a, other));
    const double combined = std::hypot(a.std_error, other.std_error);
    CHECK(std::abs(a.mean_rate - other.mean_rate) <= 6.0 * combined);
}

TEST_CASE("simulate rejects bad input") {
    const Scenario s = testing::calibrated_defaults();
    CHECK_THROWS_AS(simulate(0.3, s, Degenerate{0.3}, 0, 1), DomainError);
    CHECK_THROWS_AS(simulate(1.3, s, Degenerate{0.3}, 10, 1), DomainError);
    CHECK_THROWS_AS(simulate(0.3, s, BetaLaw{-1.0, 2.0}, 10, 1), DomainError);
}
