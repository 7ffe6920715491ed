#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bwe/model.hpp"

namespace bwe::cli {

enum class SweepAxis { lambda, p, eta_h };

struct SweepSpec {
    SweepAxis axis = SweepAxis::lambda;
    double start = 0;
    double stop = 0;
    std::size_t points = 0;
};

/// Parses "axis:start:stop:points". Throws Error(invalid_argument) on bad
/// syntax, an unknown axis, start >= stop, fewer than two points, or an
/// interval outside the axis's valid range.
SweepSpec parse_sweep(std::string_view text);

/// Evenly spaced values; the last one is exactly `stop`.
std::vector<double> sweep_values(const SweepSpec& spec);

/// Applies flat `key = value` lines ('#' starts a comment) on top of the
/// given parameters. Keys are the model field names.
void apply_config(std::string_view text, NetworkParams& params, InfoEnvironment& env);
void apply_config_file(const std::string& path, NetworkParams& params, InfoEnvironment& env);

/// Exit codes returned by run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Full command line (argv[0] included). Data goes to `out` unless --out is
/// given; diagnostics and summaries go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bwe::cli
