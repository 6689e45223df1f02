#include <doctest.h>

#include <algorithm>
#include <string>

#include "bcrn/errors.hpp"
#include "bcrn/experiments.hpp"
#include "test_support.hpp"

using namespace bcrn;

namespace {

std::vector<SweepRow> sweep(SweptParam p, double from, double to, std::size_t steps) {
    return run_sweep({p, from, to, steps, testing::calibrated_defaults()});
}

void check_dominance(const std::vector<SweepRow>& rows) {
    for (const auto& row : rows) CHECK(row.r_max >= std::max(row.r_bm, row.r_hm) - 1e-12 * row.r_max);
}

}  // namespace

TEST_CASE("grid layout") {
    const auto rows = sweep(SweptParam::IdleRatio, 0.1, 0.9, 17);
    REQUIRE(rows.size() == 17);
    CHECK(rows.front().swept_value == 0.1);
    CHECK(rows.back().swept_value == 0.9);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].swept_value > rows[i - 1].swept_value);
    CHECK(rows[4].swept_value == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("idle-ratio sweep: alpha* climbs to one and stays") {
    const auto rows = sweep(SweptParam::IdleRatio, 0.1, 0.9, 81);
    check_dominance(rows);
    bool reached_one = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].alpha_star >= rows[i - 1].alpha_star);
        if (reached_one) CHECK(rows[i].alpha_star == 1.0);
        reached_one = reached_one || rows[i].alpha_star == 1.0;
    }
    CHECK(reached_one);
    CHECK(rows.back().alpha_star == 1.0);

    // Somewhere the optimum is pure harvesting and strictly beats pure backscatter.
    CHECK(std::any_of(rows.begin(), rows.end(),
                      [](const SweepRow& r) { return r.r_max == r.r_hm && r.r_max > r.r_bm; }));

    // Pure harvesting rises then falls over the idle ratio.
    const auto peak = std::max_element(rows.begin(), rows.end(),
                                       [](const SweepRow& a, const SweepRow& b) { return a.r_hm < b.r_hm; });
    CHECK(peak != rows.begin());
    CHECK(peak != rows.end() - 1);
}

TEST_CASE("PT power sweep: alpha* is zero below a knee then increases") {
    const auto rows = sweep(SweptParam::PtPower, 5e3, 50e3, 91);
    check_dominance(rows);
    CHECK(rows.front().alpha_star == 0.0);
    CHECK(rows.back().alpha_star > 0.0);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].alpha_star >= rows[i - 1].alpha_star);
    const auto knee = first_regime_change(rows);
    REQUIRE(knee.has_value());
    CHECK(*knee > 5e3);
    CHECK(hold_until(rows, 0.0).value() < *knee);
}

TEST_CASE("backscatter-rate sweep: alpha* falls from one to zero") {
    const auto rows = sweep(SweptParam::BackscatterRate, 10e3, 60e3, 101);
    check_dominance(rows);
    CHECK(rows.front().alpha_star == 1.0);
    CHECK(rows.back().alpha_star == 0.0);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].alpha_star <= rows[i - 1].alpha_star);
    const auto low_knee = hold_until(rows, 1.0);
    const auto high_knee = hold_onset(rows, 0.0);
    REQUIRE(low_knee.has_value());
    REQUIRE(high_knee.has_value());
    CHECK(*low_knee < *high_knee);
}

TEST_CASE("alpha sweep evaluates the fixed policy") {
    const Scenario s = testing::calibrated_defaults();
    const auto rows = run_sweep({SweptParam::Alpha, 0.0, 1.0, 11, s});
    for (const auto& row : rows) {
        CHECK(row.alpha_star == row.swept_value);
        CHECK(row.r_max == overall_rate(row.swept_value, s));
        CHECK(row.regime == Regime::Interior);
    }
}

TEST_CASE("sweep errors") {
    const Scenario s = testing::calibrated_defaults();
    CHECK_THROWS_AS(run_sweep({SweptParam::IdleRatio, 0.1, 0.9, 1, s}), DomainError);
    CHECK_THROWS_AS(run_sweep({SweptParam::IdleRatio, 0.9, 0.1, 5, s}), DomainError);
    try {
        run_sweep({SweptParam::IdleRatio, 0.5, 1.5, 3, s});
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("idle_ratio=1.5") != std::string::npos);
    }
}

TEST_CASE("alpha profile") {
    const Scenario s = testing::calibrated_defaults();
    const TradeoffSolution sol = optimal_alpha_closed_form(s);
    const auto profile = alpha_profile(s, 10001);
    REQUIRE(profile.size() == 10001);
    CHECK(profile.front().first == 0.0);
    CHECK(profile.front().second == baseline_bm(s.channel, s.device));
    CHECK(profile.back().first == 1.0);

    const auto best = std::max_element(profile.begin(), profile.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    CHECK(best->second <= sol.r_max * (1.0 + 1e-12));
    CHECK(std::abs(best->first - sol.alpha_star) <= 1.0 / 10000.0);
    CHECK_THROWS_AS(alpha_profile(s, 1), DomainError);
}

TEST_CASE("knee helpers") {
    std::vector<SweepRow> rows;
    const double alphas[] = {1.0, 1.0, 0.6, 0.2, 0.0, 0.0};
    const Regime regimes[] = {Regime::FullHarvest, Regime::FullHarvest, Regime::Interior,
                              Regime::Interior, Regime::PureBackscatter, Regime::PureBackscatter};
    for (int i = 0; i < 6; ++i) rows.push_back({double(i), alphas[i], regimes[i], 0, 0, 0, std::nullopt});
    CHECK(first_regime_change(rows).value() == 2.0);
    CHECK(hold_until(rows, 1.0).value() == 1.0);
    CHECK(hold_onset(rows, 0.0).value() == 4.0);
    CHECK_FALSE(hold_onset(rows, 1.0).has_value());
}
