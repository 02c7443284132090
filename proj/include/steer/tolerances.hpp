#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace steer {

/// Numerical thresholds used across the toolkit. Every field can be
/// overridden per call; the CLI exposes them as `--tol key=value`.
struct Tolerances {
  double hermiticity = 1e-9;
  double normalization = 1e-9;
  double kernel = 1e-9;       // relative to the largest eigenvalue
  double rank = 1e-10;        // relative to the largest eigenvalue
  double purity = 1e-8;       // on 1 - Tr(sigma^2)
  double prob_floor = 1e-10;  // outcomes at or below are zero-probability
  double offdiag = 1e-8;      // classifier: steerable above this
  double offdiag_floor = 1e-10;  // classifier: separable at or below this
  double overlap = 1e-8;
  double orthogonality = 1e-8;
  double witness = 1e-8;
  double vector_identity = 1e-8;  // |1 - |<a|b>|| for merging pure states

  /// Sets a field by its key; returns false for unknown keys.
  bool set(std::string_view key, double value);
  std::optional<double> get(std::string_view key) const;
  std::vector<std::pair<std::string, double>> entries() const;
};

}  // namespace steer
