#include <doctest.h>

#include <cmath>

#include "bwe/beliefs.hpp"
#include "bwe/model.hpp"
#include "generators.hpp"

using namespace bwe;

namespace {

InfoEnvironment env_of(double p, double eta_h, double eta_l = 0.5) {
    InfoEnvironment e;
    e.p_incident = p;
    e.accuracy_high = eta_h;
    e.accuracy_low = eta_l;
    return e;
}

constexpr TypeLabel kSignalOwners[] = {TypeLabel::Ln, TypeLabel::La, TypeLabel::Hn, TypeLabel::Ha};

}  // namespace

TEST_CASE("marginal type distribution") {
    CHECK(marginal_type_dist(env_of(0.2, 1.0)).p_Ha == doctest::Approx(0.2));
    CHECK(marginal_type_dist(env_of(0.2, 0.75)).p_Ha == doctest::Approx(0.35));
    for (double p : {0.05, 0.4, 0.93}) {
        const auto m = marginal_type_dist(env_of(p, 0.8));
        CHECK(m.p_La == doctest::Approx(0.5));
        CHECK(m.p_Ha + m.p_Hn == doctest::Approx(1.0));
    }
}

TEST_CASE("posterior of the incident state") {
    CHECK(posterior_incident(env_of(0.2, 1.0), Population::high, State::incident) == 1.0);
    CHECK(posterior_incident(env_of(0.2, 1.0), Population::high, State::normal) == 0.0);
    for (double p : {0.1, 0.37, 0.8}) {
        for (State s : kStates) {
            CHECK(posterior_incident(env_of(p, 0.9), Population::low, s) == doctest::Approx(p));
        }
    }
    CHECK(posterior_incident(env_of(0.2, 0.75), Population::high, State::incident) ==
          doctest::Approx(0.15 / 0.35).epsilon(1e-14));
    CHECK(std::abs(posterior_incident(env_of(0.2, 0.75), Population::high, State::incident) -
                   0.428571) < 1e-6);
}

TEST_CASE("conditional-likelihood beliefs") {
    const auto e = env_of(0.2, 0.75, 0.6);
    const auto t = belief_conditional_ck(e, TypeLabel::La);
    CHECK(t.at(State::incident, TypeLabel::Ha) == doctest::Approx(0.2 * 0.6 / 0.44 * 0.75));
    CHECK(std::abs(t.at(State::incident, TypeLabel::Ha) - 0.204545) < 1e-6);
    CHECK(t.entries.size() == 4);
    CHECK_THROWS_AS(belief_conditional_ck(e, TypeLabel::L), Error);
}

TEST_CASE("conditional-likelihood beliefs are symmetric when accuracies coincide") {
    // eta_h == eta_l is outside the validated range, but the construction
    // itself is symmetric; check it on the raw formulas.
    InfoEnvironment e = env_of(0.3, 0.7, 0.7);
    const auto hl = belief_conditional_ck(e, TypeLabel::Ha);
    const auto lh = belief_conditional_ck(e, TypeLabel::La);
    const auto hn = belief_conditional_ck(e, TypeLabel::Hn);
    const auto ln = belief_conditional_ck(e, TypeLabel::Ln);
    for (State s : kStates) {
        CHECK(hl.at(s, TypeLabel::La) == doctest::Approx(lh.at(s, TypeLabel::Ha)).epsilon(1e-14));
        CHECK(hl.at(s, TypeLabel::Ln) == doctest::Approx(lh.at(s, TypeLabel::Hn)).epsilon(1e-14));
        CHECK(hn.at(s, TypeLabel::La) == doctest::Approx(ln.at(s, TypeLabel::Ha)).epsilon(1e-14));
        CHECK(hn.at(s, TypeLabel::Ln) == doctest::Approx(ln.at(s, TypeLabel::Hn)).epsilon(1e-14));
    }
}

TEST_CASE("marginal beliefs") {
    const auto t = belief_marginal_ck(env_of(0.2, 1.0), TypeLabel::Ha);
    CHECK(t.at(State::incident, TypeLabel::La) == doctest::Approx(0.5));
    CHECK(t.at(State::normal, TypeLabel::La) == 0.0);
}

TEST_CASE("uninformative beliefs") {
    const auto e = env_of(0.2, 1.0);
    const auto l = belief_uninformative(e, PlayerType::L);
    CHECK(l.at(State::incident, TypeLabel::Ha) == doctest::Approx(0.04));
    CHECK(l.at(State::incident, TypeLabel::Hn) == doctest::Approx(0.16));
    CHECK(l.at(State::normal, TypeLabel::Ha) == doctest::Approx(0.16));
    CHECK(l.at(State::normal, TypeLabel::Hn) == doctest::Approx(0.64));
    const auto ha = belief_uninformative(e, PlayerType::Ha);
    CHECK(ha.at(State::incident, TypeLabel::L) == 1.0);
    CHECK(ha.at(State::normal, TypeLabel::L) == 0.0);

    try {
        belief_uninformative(env_of(0.2, 1.0, 0.6), PlayerType::L);
        FAIL("expected error");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::unsupported_treatment);
    }
}

TEST_CASE("expected route costs") {
    const NetworkParams n;
    InfoEnvironment e = env_of(0.2, 1.0);

    SUBCASE("degenerate belief of Ha equals the incident latency") {
        e.frac_informed = 0.5;
        const StrategyProfile s{0.3, 0.9, 0.4};
        const auto b = belief_uninformative(e, PlayerType::Ha);
        const double q = 0.4 * 2.5 + 0.3 * 2.5;
        CHECK(expected_route_cost(n, e, b, PlayerType::Ha, 1, s) ==
              doctest::Approx(latency(n, 1, State::incident, q)).epsilon(1e-15));
    }
    SUBCASE("L at the uninformed equilibrium is indifferent") {
        e.frac_informed = 0.0;
        const double k1 = 12.0 / 3.4;
        const StrategyProfile s{k1 / 5.0, 1.0, 0.0};
        const auto b = belief_uninformative(e, PlayerType::L);
        const double c1 = expected_route_cost(n, e, b, PlayerType::L, 1, s);
        const double c2 = expected_route_cost(n, e, b, PlayerType::L, 2, s);
        CHECK(c1 == doctest::Approx(1.4 * k1 + 19.0).epsilon(1e-14));
        CHECK(std::abs(c1 - 23.941176) < 1e-6);
        CHECK(c2 == doctest::Approx(c1).epsilon(1e-14));
    }
    SUBCASE("errors") {
        const StrategyProfile s{0.5, 0.5, 0.5};
        const auto b = belief_uninformative(e, PlayerType::Hn);
        auto code = [&](auto&& f) {
            try {
                f();
            } catch (const Error& err) {
                return err.code();
            }
            return ErrorCode::invalid_argument;
        };
        CHECK(code([&] { expected_route_cost(n, e, b, PlayerType::Ha, 1, s); }) ==
              ErrorCode::owner_mismatch);
        CHECK(code([&] { expected_route_cost(n, e, b, PlayerType::Hn, 0, s); }) ==
              ErrorCode::invalid_route);
        CHECK(code([&] { expected_route_cost(n, e, b, PlayerType::Hn, 1, {1.2, 0.5, 0.5}); }) ==
              ErrorCode::invalid_profile);
        const auto split_l = belief_marginal_ck(e, TypeLabel::Hn);
        CHECK(code([&] { expected_route_cost(n, e, split_l, PlayerType::Hn, 1, s); }) ==
              ErrorCode::unsupported_treatment);
    }
}

TEST_CASE("property: every treatment is a probability distribution") {
    testing::Gen g(0xbe11ef);
    for (int i = 0; i < 1000; ++i) {
        const auto e = g.env_any();
        for (TypeLabel owner : kSignalOwners) {
            for (const auto& t : {belief_conditional_ck(e, owner), belief_marginal_ck(e, owner)}) {
                CHECK(std::abs(t.total() - 1.0) <= 1e-12);
                for (const auto& entry : t.entries) CHECK(entry.probability >= 0.0);
            }
        }
        InfoEnvironment u = e;
        u.accuracy_low = 0.5;
        for (PlayerType owner : kPlayerTypes) {
            CHECK(std::abs(belief_uninformative(u, owner).total() - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("property: marginal beliefs collapse to the uninformative ones at eta_l = 0.5") {
    testing::Gen g(0xc011a95e);
    for (int i = 0; i < 1000; ++i) {
        const auto e = g.env();
        for (TypeLabel owner : {TypeLabel::Hn, TypeLabel::Ha}) {
            const auto hat = belief_marginal_ck(e, owner);
            const auto tilde = belief_conditional_ck(e, owner);
            const auto bar = belief_uninformative(e, owner == TypeLabel::Ha ? PlayerType::Ha : PlayerType::Hn);
            for (State s : kStates) {
                const double merged = hat.at(s, TypeLabel::Ln) + hat.at(s, TypeLabel::La);
                CHECK(std::abs(merged - bar.at(s, TypeLabel::L)) <= 1e-12);
                for (TypeLabel opp : {TypeLabel::Ln, TypeLabel::La}) {
                    CHECK(std::abs(hat.at(s, opp) - tilde.at(s, opp)) <= 1e-12);
                }
            }
        }
        const auto bar_l = belief_uninformative(e, PlayerType::L);
        for (TypeLabel owner : {TypeLabel::Ln, TypeLabel::La}) {
            const auto hat = belief_marginal_ck(e, owner);
            for (State s : kStates) {
                for (TypeLabel opp : {TypeLabel::Hn, TypeLabel::Ha}) {
                    CHECK(std::abs(hat.at(s, opp) - bar_l.at(s, opp)) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("property: posterior is monotone in accuracy") {
    testing::Gen g(0x9057);
    for (int i = 0; i < 500; ++i) {
        const double p = g.uniform(0.01, 0.99);
        const double lo = g.uniform(0.5, 0.99);
        const double hi = g.uniform(lo + 1e-3, 1.0);
        const auto a = env_of(p, lo);
        const auto b = env_of(p, hi);
        CHECK(posterior_incident(b, Population::high, State::incident) >
              posterior_incident(a, Population::high, State::incident));
        CHECK(posterior_incident(b, Population::high, State::normal) <
              posterior_incident(a, Population::high, State::normal));
    }
}
