#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bwe/model.hpp"

namespace bwe {

enum class Regime { R1, R2, R3, R4 };

const char* to_string(Regime r);

/// Absolute tolerance for comparing the informed fraction against a regime
/// boundary. Ties resolve to the closed regime with the lower index.
inline constexpr double kBoundaryTolerance = 1e-12;

struct RegimeBounds {
    double lambda1 = 0;
    double lambda2 = 0;
    double lambda3 = 0;
};

RegimeBounds regime_boundaries(const NetworkParams& params, const InfoEnvironment& env);

/// R1: λ < λ1, R2: λ1 <= λ <= λ2, R3: λ2 < λ < λ3, R4: λ3 <= λ <= 1.
Regime classify(const NetworkParams& params, const InfoEnvironment& env);

/// Closed-form Bayesian Wardrop equilibrium for the classified regime.
/// Requires accuracy_low == 0.5; accuracy_high may be anywhere in (0.5, 1].
StrategyProfile solve_bwe(const NetworkParams& params, const InfoEnvironment& env);

/// Expected cost of route 1 minus route 2 for type `t` under the
/// uninformative-L beliefs.
double expected_cost_gap(const NetworkParams& params, const InfoEnvironment& env,
                         const StrategyProfile& profile, PlayerType t);

/// Largest Wardrop violation over the three types, in minutes: the most
/// expensive used route minus the cheapest route. Types of an empty
/// population are skipped.
double wardrop_residual(const NetworkParams& params, const InfoEnvironment& env,
                        const StrategyProfile& profile);

/// Qualitative play of one type: all on route 2 (rho = 0), split, or all on
/// route 1 (rho = 1).
enum class Play { route2, split, route1 };

const char* to_string(Play p);

struct ProfilePattern {
    Play L = Play::route2;
    Play Hn = Play::route2;
    Play Ha = Play::route2;

    Play of(PlayerType t) const;
    std::string label() const;
    friend bool operator==(const ProfilePattern&, const ProfilePattern&) = default;
};

/// Pattern of the equilibrium in each regime.
ProfilePattern regime_pattern(Regime r);

struct PatternVerdict {
    ProfilePattern pattern;
    bool equilibrium = false;
    /// "equilibrium", "inconsistent", "underdetermined", "split_out_of_range",
    /// or "wardrop_violated".
    std::string reason;
    /// Solved split fractions, when the equality system had a unique solution.
    std::optional<StrategyProfile> profile;
};

/// Tests all 27 qualitative patterns: solves the equal-cost conditions of the
/// split types with the pure types fixed, then checks strict interiority and
/// the strict route preference of every pure type.
std::vector<PatternVerdict> enumerate_profiles(const NetworkParams& params,
                                               const InfoEnvironment& env);

}  // namespace bwe
