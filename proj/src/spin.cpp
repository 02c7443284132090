#include "steer/spin.hpp"

#include <cmath>
#include <complex>

#include "steer/errors.hpp"

namespace steer {

SpinOperators spin1_operators() {
  using namespace spin1_basis;
  const double r2 = std::sqrt(2.0);
  SpinOperators s;
  s.sz = Matrix::Zero(3, 3);
  s.sz(kPlus, kPlus) = 1.0;
  s.sz(kMinus, kMinus) = -1.0;
  s.s_plus = Matrix::Zero(3, 3);
  s.s_plus(kPlus, kZero) = r2;   // |+1><0|
  s.s_plus(kZero, kMinus) = r2;  // |0><-1|
  s.s_minus = s.s_plus.adjoint();
  s.sx = 0.5 * (s.s_plus + s.s_minus);
  s.sy = Complex(0.0, -0.5) * (s.s_plus - s.s_minus);
  return s;
}

Matrix inequality_rhs_observable() {
  const SpinOperators s = spin1_operators();
  const Matrix transverse = s.sx * s.sx + s.sy * s.sy;
  return kron(transverse - (7.0 / 16.0) * Matrix::Identity(3, 3), transverse);
}

InequalityResult evaluate_inequality(const DensityOperator& rho) {
  if (rho.dims() != Dims{3, 3}) {
    throw DimensionError("evaluate_inequality: expects a two-qutrit state with dims (3, 3)");
  }
  const SpinOperators s = spin1_operators();
  const Matrix& m = rho.matrix();
  InequalityResult out;
  out.rhs = (m * inequality_rhs_observable()).trace().real();

  const Matrix* ladder[2] = {&s.s_plus, &s.s_minus};
  const int signs[2] = {+1, -1};
  double best = -1.0;
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      const Complex expectation = (m * kron(*ladder[ia], *ladder[ib])).trace();
      const double value = std::norm(expectation);
      out.all_lhs[static_cast<std::size_t>(ia * 2 + ib)] = value;
      if (value > best) {
        best = value;
        out.sign_a = signs[ia];
        out.sign_b = signs[ib];
      }
    }
  }
  out.lhs = best;
  out.violated = out.lhs > out.rhs + 1e-12;
  return out;
}

}  // namespace steer
