#include "catch_amalgamated.hpp"

#include <algorithm>

#include "helpers.hpp"
#include "steer/errors.hpp"
#include "steer/spin.hpp"

using namespace steer;
using namespace testing;
using Catch::Matchers::WithinAbs;
using namespace spin1_basis;

namespace {

Matrix comm(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace

TEST_CASE("spin-1 algebra") {
  const SpinOperators s = spin1_operators();
  const Complex i(0.0, 1.0);
  CHECK(max_abs(s.sz - diag({1.0, 0.0, -1.0})) == 0.0);
  CHECK(max_abs(comm(s.sx, s.sy) - i * s.sz) < 1e-12);
  CHECK(max_abs(comm(s.sy, s.sz) - i * s.sx) < 1e-12);
  CHECK(max_abs(comm(s.sz, s.sx) - i * s.sy) < 1e-12);
  CHECK(max_abs(s.s_plus - (s.sx + i * s.sy)) < 1e-12);
  CHECK(max_abs(s.s_minus - (s.sx - i * s.sy)) < 1e-12);
  CHECK(max_abs(s.sx * s.sx + s.sy * s.sy + s.sz * s.sz - 2.0 * Matrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("ladder action") {
  const SpinOperators s = spin1_operators();
  CHECK(max_abs(s.sz * basis_vector(3, kPlus) - basis_vector(3, kPlus)) == 0.0);
  CHECK(max_abs(s.s_plus * basis_vector(3, kMinus) - std::sqrt(2.0) * basis_vector(3, kZero)) < 1e-15);
  CHECK(max_abs(s.s_plus * basis_vector(3, kPlus)) == 0.0);
}

TEST_CASE("right-hand observable is Hermitian") {
  CHECK(hermitian_defect(inequality_rhs_observable()) < 1e-12);
}

TEST_CASE("inequality on the qutrit family") {
  for (int k = 0; k <= 10; ++k) {
    const double eta = 0.1 * k;
    const InequalityResult r = evaluate_inequality(qutrit_family({eta, 0.0}));
    CHECK_THAT(r.lhs, WithinAbs(0.0, 1e-10));
    CHECK_THAT(r.rhs, WithinAbs((50.0 - 41.0 * eta) / 16.0, 1e-9));
    CHECK_FALSE(r.violated);
  }
  CHECK_THAT(evaluate_inequality(qutrit_family({0.0, 0.0})).rhs, WithinAbs(3.125, 1e-12));
}

TEST_CASE("maximally mixed qutrits give zero left-hand side") {
  CHECK_THAT(evaluate_inequality(maximally_mixed(Dims{3, 3})).lhs, WithinAbs(0.0, 1e-15));
}

TEST_CASE("inequality detects a state with spin correlations") {
  // sum_m (-1)^m |m,-m> / sqrt3 correlates S+ on A with S- on B.
  Vector psi = Vector::Zero(9);
  psi(kPlus * 3 + kMinus) = 1.0 / std::sqrt(3.0);
  psi(kZero * 3 + kZero) = -1.0 / std::sqrt(3.0);
  psi(kMinus * 3 + kPlus) = 1.0 / std::sqrt(3.0);
  const InequalityResult r = evaluate_inequality(PureState(psi, Dims{3, 3}).density());
  CHECK(r.lhs > 0.0);
  CHECK_THAT(r.all_lhs[0], WithinAbs(0.0, 1e-15));
  CHECK_THAT(r.all_lhs[1], WithinAbs(r.lhs, 1e-15));
  // maximum picked over the four sign choices
  CHECK(r.lhs == *std::max_element(r.all_lhs.begin(), r.all_lhs.end()));
}

TEST_CASE("inequality needs two qutrits") {
  CHECK_THROWS_AS(evaluate_inequality(maximally_mixed(Dims{2, 2})), DimensionError);
}

TEST_CASE("left-hand side ignores eigenvector phases") {
  Rng rng(50);
  const DensityOperator rho = random_density(Dims{3, 3}, 3, rng);
  const Eigensystem es = eigh(rho.matrix());
  Matrix rotated = Matrix::Zero(9, 9);
  for (Eigen::Index k = 0; k < 9; ++k) {
    const Vector v = es.vectors.col(k) * std::polar(1.0, 0.37 * static_cast<double>(k));
    rotated += es.values(k) * v * v.adjoint();
  }
  const InequalityResult a = evaluate_inequality(rho);
  const InequalityResult b = evaluate_inequality(DensityOperator(rotated, Dims{3, 3}));
  CHECK_THAT(a.lhs, WithinAbs(b.lhs, 1e-12));
  CHECK_THAT(a.rhs, WithinAbs(b.rhs, 1e-12));
}
