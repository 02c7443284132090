#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steer/json_io.hpp"
#include "steer/tolerances.hpp"

namespace steer::cli {

using io::Json;

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Named state constructor with JSON-valued parameters.
///   two_qubit_family: eta, z, beta1, beta2
///   qutrit_family:    eta, z
///   pure_random:      d_A, d_B (seed required)
///   product_random:   d_A, d_B (seed required)
/// `z` is a number or [re, im]. A beta is a label ("0", "1", "+", "-", "+i",
/// "-i") or a vector.
struct FixtureSpec {
  std::string name;
  Json params = Json::object();
  std::optional<std::uint64_t> seed;
};

/// Parses `KEY=VAL`; VAL is read as JSON and falls back to a plain string.
std::pair<std::string, Json> parse_param(const std::string& text);
/// Parses `KEY=VAL` with a numeric VAL.
std::pair<std::string, double> parse_tolerance(const std::string& text);

DensityOperator build_fixture(const FixtureSpec& spec);
Json cmd_fixture(const FixtureSpec& spec);

struct AnalyzeOptions {
  std::optional<std::uint64_t> seed;  // overrides the request's "seed"
  std::vector<std::pair<std::string, double>> tolerances;  // applied after the request's
};

/// Request:
///   {"schema_version": 1, "analysis": "...",
///    "state": {...} | "fixture": {"name": "...", "params": {...}, "seed": N},
///    "measurements": [{"label": "...", "pvm": [...]} | {"povm": [...]}],
///    "effect": matrix, "target": vector, "seed": N, "samples": N,
///    "tolerances": {"key": value}}
/// Selectors: conditional, assemblage, max-pure, decompose, classify,
/// witness, inequality, subspace.
Json cmd_analyze(const Json& request, const AnalyzeOptions& options = {});

}  // namespace steer::cli
