#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bwe/equilibrium.hpp"
#include "generators.hpp"

using namespace bwe;

namespace {

InfoEnvironment env_of(double p, double lambda, double eta_h = 1.0) {
    InfoEnvironment e;
    e.p_incident = p;
    e.frac_informed = lambda;
    e.accuracy_high = eta_h;
    return e;
}

double max_diff(const StrategyProfile& a, const StrategyProfile& b) {
    double d = std::max(std::abs(a.rho_Hn - b.rho_Hn), std::abs(a.rho_Ha - b.rho_Ha));
    if (!a.low_empty && !b.low_empty) d = std::max(d, std::abs(a.rho_L - b.rho_L));
    return d;
}

}  // namespace

TEST_CASE("regime boundaries at the reference point") {
    const NetworkParams n;
    const auto b = regime_boundaries(n, env_of(0.2, 0.5));
    CHECK(std::abs(b.lambda1 - 0.282353) < 1e-6);
    CHECK(std::abs(b.lambda2 - 0.762353) < 1e-6);
    CHECK(b.lambda3 == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(regime_boundaries(n, env_of(0.6, 0.5)).lambda3 == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("lambda1 matches its expanded form") {
    testing::Gen g(0x1a3b);
    for (int i = 0; i < 500; ++i) {
        const auto n = g.network();
        const auto e = g.env();
        const auto c = derived_constants(n, e);
        const double p_ha = e.p_incident * e.accuracy_high +
                            (1 - e.p_incident) * (1 - e.accuracy_high);
        const double p_hn = 1 - p_ha;
        const double expanded = c.K1 * (c.a1_hat - c.a1_bar * p_ha) /
                                (n.demand * p_hn * (c.a1_hat + n.slope2 * p_ha));
        CHECK(regime_boundaries(n, e).lambda1 == doctest::Approx(expanded).epsilon(1e-10));
    }
}

TEST_CASE("classification") {
    const NetworkParams n;
    CHECK(classify(n, env_of(0.2, 0.1)) == Regime::R1);
    CHECK(classify(n, env_of(0.2, 0.5)) == Regime::R2);
    CHECK(classify(n, env_of(0.2, 0.78)) == Regime::R3);
    CHECK(classify(n, env_of(0.2, 0.9)) == Regime::R4);
    const auto b = regime_boundaries(n, env_of(0.2, 0.0));
    CHECK(classify(n, env_of(0.2, b.lambda1)) == Regime::R2);
    CHECK(classify(n, env_of(0.2, b.lambda2)) == Regime::R2);
    CHECK(classify(n, env_of(0.2, b.lambda3)) == Regime::R4);
    CHECK(classify(n, env_of(0.2, 1.0)) == Regime::R4);
}

TEST_CASE("closed-form equilibria") {
    const NetworkParams n;
    SUBCASE("R1") {
        const auto s = solve_bwe(n, env_of(0.2, 0.1));
        CHECK(std::abs(s.rho_L - 0.695425) < 1e-6);
        CHECK(s.rho_Hn == 1.0);
        CHECK(s.rho_Ha == 0.0);
    }
    SUBCASE("R4") {
        const auto s = solve_bwe(n, env_of(0.2, 0.9));
        CHECK(s.rho_L == 0.0);
        CHECK(s.rho_Hn == doctest::Approx(4.0 / 4.5));
        CHECK(s.rho_Ha == doctest::Approx(2.4 / 4.5));
    }
    SUBCASE("uninformed limit") {
        CHECK(std::abs(solve_bwe(n, env_of(0.2, 1e-9)).rho_L - 12.0 / 3.4 / 5.0) < 1e-8);
        CHECK(solve_bwe(n, env_of(0.2, 0.0)).rho_L == doctest::Approx(12.0 / 17.0).epsilon(1e-14));
    }
    SUBCASE("everyone informed") {
        const auto s = solve_bwe(n, env_of(0.2, 1.0));
        CHECK(s.low_empty);
        CHECK(s.rho_L == 0.0);
        CHECK(std::abs(s.rho_Hn - 0.8) < 1e-12);
        CHECK(std::abs(s.rho_Ha - 0.48) < 1e-12);
    }
    SUBCASE("R2 Ha split vanishes at lambda1 and meets R3 at lambda2") {
        const auto b = regime_boundaries(n, env_of(0.2, 0.0));
        CHECK(std::abs(solve_bwe(n, env_of(0.2, b.lambda1)).rho_Ha) < 1e-12);
        CHECK(std::abs(solve_bwe(n, env_of(0.2, b.lambda2)).rho_Ha - 2.4 / (b.lambda2 * 5.0)) <
              1e-12);
    }
    SUBCASE("needs uninformative low service") {
        auto e = env_of(0.2, 0.5);
        e.accuracy_low = 0.6;
        CHECK_THROWS_AS(solve_bwe(n, e), Error);
    }
}

TEST_CASE("wardrop residual") {
    const NetworkParams n;
    const auto e = env_of(0.2, 0.5);
    CHECK(wardrop_residual(n, e, solve_bwe(n, e)) <= 1e-9);
    CHECK(wardrop_residual(n, e, {1.0, 1.0, 1.0}) > 0.1);
    CHECK(wardrop_residual(n, e, {0.5, 0.4, 0.6}) > 0.1);
    // The gap of each type is affine in its own split.
    const StrategyProfile a{0.2, 0.7, 0.3}, b{0.6, 0.7, 0.3}, m{0.4, 0.7, 0.3};
    CHECK(expected_cost_gap(n, e, m, PlayerType::L) ==
          doctest::Approx(0.5 * (expected_cost_gap(n, e, a, PlayerType::L) +
                                 expected_cost_gap(n, e, b, PlayerType::L))));
}

TEST_CASE("pattern enumeration reproduces the regime table") {
    const NetworkParams n;
    for (double lambda : {0.1, 0.5, 0.78, 0.9}) {
        const auto e = env_of(0.2, lambda);
        const auto verdicts = enumerate_profiles(n, e);
        CHECK(verdicts.size() == 27);
        int marked = 0;
        for (const auto& v : verdicts) {
            if (!v.equilibrium) continue;
            ++marked;
            CHECK(v.pattern == regime_pattern(classify(n, e)));
            REQUIRE(v.profile.has_value());
            CHECK(max_diff(*v.profile, solve_bwe(n, e)) < 1e-9);
        }
        CHECK(marked == 1);
    }
    const auto at_half = enumerate_profiles(n, env_of(0.2, 0.5));
    const ProfilePattern r2{Play::split, Play::route1, Play::split};
    CHECK(std::count_if(at_half.begin(), at_half.end(), [&](const PatternVerdict& v) {
              return v.equilibrium && v.pattern == r2;
          }) == 1);
    CHECK(r2.label() == regime_pattern(Regime::R2).label());
}

TEST_CASE("property: regime structure on random instances") {
    testing::Gen g(0x7ab1e1);
    for (int i = 0; i < 300; ++i) {
        const auto n = g.network();
        const auto e = g.env();
        const auto b = regime_boundaries(n, e);
        CHECK(0.0 <= b.lambda1);
        CHECK(b.lambda1 <= b.lambda2);
        CHECK(b.lambda2 <= b.lambda3);
        CHECK(b.lambda3 <= 1.0);

        const auto s = solve_bwe(n, e);
        for (PlayerType t : kPlayerTypes) {
            CHECK(s.rho(t) >= 0.0);
            CHECK(s.rho(t) <= 1.0);
        }
        CHECK(s.rho_Ha <= s.rho_Hn);
        CHECK(wardrop_residual(n, e, s) <= 1e-9);

        const auto verdicts = enumerate_profiles(n, e);
        int marked = 0;
        for (const auto& v : verdicts) {
            const bool all_split = v.pattern == ProfilePattern{Play::split, Play::split, Play::split};
            if (all_split) CHECK_FALSE(v.equilibrium);
            if (v.equilibrium) {
                ++marked;
                CHECK(v.pattern == regime_pattern(classify(n, e)));
            }
            if (v.profile && v.pattern.Hn == Play::split && v.pattern.Ha == Play::split &&
                v.profile->rho_Ha >= v.profile->rho_Hn) {
                CHECK_FALSE(v.equilibrium);
            }
        }
        CHECK(marked == 1);
    }
}

TEST_CASE("property: split fractions are continuous across the boundaries") {
    testing::Gen g(0xc0417);
    for (int i = 0; i < 300; ++i) {
        const auto n = g.network();
        auto e = g.env();
        const auto b = regime_boundaries(n, e);
        for (double edge : {b.lambda1, b.lambda2, b.lambda3}) {
            if (edge - 1e-9 < 0.0 || edge + 1e-9 > 1.0) continue;
            auto lo = e, hi = e;
            lo.frac_informed = edge - 1e-9;
            hi.frac_informed = edge + 1e-9;
            CHECK(max_diff(solve_bwe(n, lo), solve_bwe(n, hi)) <= 1e-6);
        }
    }
}

TEST_CASE("lambda3 does not depend on p under perfect accuracy") {
    const NetworkParams n;
    const double ref = regime_boundaries(n, env_of(0.1, 0.5)).lambda3;
    for (int k = 1; k <= 9; ++k) {
        CHECK(std::abs(regime_boundaries(n, env_of(0.1 * k, 0.5)).lambda3 - ref) <= 1e-12);
    }
    // With an imperfect service it does.
    CHECK(std::abs(regime_boundaries(n, env_of(0.1, 0.5, 0.75)).lambda3 -
                   regime_boundaries(n, env_of(0.9, 0.5, 0.75)).lambda3) > 1e-3);
}
