#pragma once

#include <array>

#include "steer/states.hpp"

namespace steer {

/// Spin-1 matrices in the basis |+1>, |0>, |-1>.
struct SpinOperators {
  Matrix sx, sy, sz, s_plus, s_minus;
};

SpinOperators spin1_operators();

struct InequalityResult {
  double lhs = 0.0;  // max over sign choices of |<S^sA x S^sB>|^2
  double rhs = 0.0;  // <((Sx^2 + Sy^2) - 7/16) x (Sx^2 + Sy^2)>
  bool violated = false;  // lhs > rhs + 1e-12
  int sign_a = +1;  // +1 selects S^+, -1 selects S^-
  int sign_b = +1;
  std::array<double, 4> all_lhs{};  // (+,+), (+,-), (-,+), (-,-)
};

/// Evaluates the two-qutrit steering inequality
///   |<S^sA x S^sB>|^2 > <((Sx^2 + Sy^2) - 7/16 I) x (Sx^2 + Sy^2)>
/// with the four sign choices searched exhaustively.
InequalityResult evaluate_inequality(const DensityOperator& rho);

/// Hermitian observable on the right-hand side.
Matrix inequality_rhs_observable();

}  // namespace steer
