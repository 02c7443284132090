#include "catch_amalgamated.hpp"

#include "helpers.hpp"
#include "steer/errors.hpp"
#include "steer/states.hpp"

using namespace steer;
using namespace testing;
using Catch::Matchers::WithinAbs;

TEST_CASE("density operator validation") {
  CHECK_NOTHROW(DensityOperator(diag({0.5, 0.5}), Dims{2}));
  CHECK_THROWS_AS(DensityOperator(diag({0.7, 0.5}), Dims{2}), InvalidOperator);
  CHECK_THROWS_AS(DensityOperator(diag({1.2, -0.2}), Dims{2}), InvalidOperator);
  Matrix skew(2, 2);
  skew << 0.5, 0.1, 0.0, 0.5;
  CHECK_THROWS_AS(DensityOperator(skew, Dims{2}), InvalidOperator);
  CHECK_THROWS_AS(DensityOperator(diag({0.5, 0.5}), Dims{3}), DimensionError);
  Matrix nan = diag({0.5, 0.5});
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(DensityOperator(nan, Dims{2}), InvalidOperator);
}

TEST_CASE("perturbations that break positivity, trace or Hermiticity are rejected") {
  Rng rng(10);
  std::uniform_real_distribution<double> u(1e-6, 1e-3);
  for (int n = 0; n < 100; ++n) {
    const DensityOperator rho = random_density(Dims{2, 2}, 2, rng);  // rank deficient
    const Matrix k = kernel(rho.matrix());
    const double eps = u(rng);
    switch (n % 3) {
      case 0: {  // push a kernel direction negative, keep the trace
        const Matrix m = (1.0 + eps) * rho.matrix() - eps * projector(k.col(0));
        CHECK_THROWS_AS(DensityOperator(m, Dims{2, 2}), InvalidOperator);
        break;
      }
      case 1:
        CHECK_THROWS_AS(DensityOperator(rho.matrix() * (1.0 + eps), Dims{2, 2}), InvalidOperator);
        break;
      default: {
        Matrix m = rho.matrix();
        m(0, 1) += Complex(0.0, eps);
        CHECK_THROWS_AS(DensityOperator(m, Dims{2, 2}), InvalidOperator);
      }
    }
  }
}

TEST_CASE("purity examples") {
  CHECK_THAT(purity(PureState(basis_vector(2, 0), Dims{2}).density()), WithinAbs(1.0, 1e-15));
  CHECK_THAT(purity(maximally_mixed(Dims{2})), WithinAbs(0.5, 1e-15));
  CHECK_THAT(purity(two_qubit_family({0.5, 0.0})), WithinAbs(0.5, 1e-15));
}

TEST_CASE("is_pure examples") {
  CHECK_FALSE(is_pure(maximally_mixed(Dims{2})).pure);
  const Vector plus = vec({kInvSqrt2, kInvSqrt2});
  const PurityCheck p = is_pure(PureState(plus, Dims{2}).density());
  REQUIRE(p.pure);
  CHECK(phase_distance(*p.vector, plus) < 1e-12);
  const Vector b1 = vec({0.6, Complex(0.0, 0.8)});
  const PurityCheck q = is_pure(two_qubit_family({1.0, Complex(0.3, 0.4), b1, basis_vector(2, 1)}));
  REQUIRE(q.pure);
  CHECK(phase_distance(*q.vector, kron(basis_vector(2, 0), b1)) < 1e-12);
}

TEST_CASE("purify a pure state") {
  const Vector v = vec({0.6, 0.0, 0.0, Complex(0.0, 0.8)});
  const PureState psi = purify(PureState(v, Dims{2, 2}).density());
  CHECK(psi.dims() == Dims{2, 2, 1});
  CHECK(phase_distance(psi.vector(), v) < 1e-12);
  // canonical phase: largest amplitude real positive
  Eigen::Index at = 0;
  psi.vector().cwiseAbs().maxCoeff(&at);
  CHECK(psi.vector()(at).imag() == 0.0);
  CHECK(psi.vector()(at).real() > 0.0);
}

TEST_CASE("purification of the family recovers the ancilla overlap up to a unitary on C") {
  const Vector b1 = basis_vector(2, 0), b2 = vec({kInvSqrt2, kInvSqrt2});
  for (Complex z : {Complex(0.0), Complex(0.5, -0.2), Complex(-0.9)}) {
    const double eta = 0.3;
    const PureState psi = purify(two_qubit_family({eta, z, b1, b2}));
    REQUIRE(psi.dims() == Dims{2, 2, 2});
    // gamma_i = (<alpha_i, beta_i| x I) Psi / c_i
    auto gamma = [&](const Vector& a, const Vector& b, double c) {
      Vector g = Vector::Zero(2);
      const Vector ab = kron(a, b);
      for (Eigen::Index k = 0; k < 2; ++k)
        for (Eigen::Index x = 0; x < 4; ++x) g(k) += std::conj(ab(x)) * psi.vector()(x * 2 + k);
      return Vector(g / c);
    };
    const Vector g1 = gamma(basis_vector(2, 0), b1, std::sqrt(eta));
    const Vector g2 = gamma(basis_vector(2, 1), b2, std::sqrt(1 - eta));
    CHECK(std::abs(g2.dot(g1) - z) < 1e-9);
    CHECK(std::abs(g1.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("purification of a maximally mixed qubit is maximally entangled with C") {
  const PureState psi = purify(maximally_mixed(Dims{1, 2}));
  CHECK(psi.dims() == Dims{1, 2, 2});
  const Matrix rc = reduced_from_pure(psi, {2});
  CHECK(max_abs(rc - Matrix::Identity(2, 2) / 2.0) < 1e-14);
}

TEST_CASE("purify then trace out C round trips") {
  Rng rng(11);
  for (int n = 0; n < 200; ++n) {
    const std::size_t da = 2 + n % 2, db = 2 + (n / 2) % 2;
    const DensityOperator rho = random_density(Dims{da, db}, 1 + n % (da * db), rng);
    const PureState psi = purify(rho);
    CHECK(psi.dims()[2] == 1 + n % (da * db));
    CHECK(max_abs(reduced_from_pure(psi, {0, 1}) - rho.matrix()) <= 1e-9);
    CHECK(max_abs(partial_trace(projector(psi.vector()), psi.dims(), {0, 1}) - rho.matrix()) <= 1e-9);
  }
}

TEST_CASE("two-qubit family examples") {
  const Vector b1 = vec({0.8, Complex(0.0, 0.6)});
  const DensityOperator top = two_qubit_family({1.0, Complex(0.2), b1, basis_vector(2, 1)});
  CHECK(max_abs(top.matrix() - projector(kron(basis_vector(2, 0), b1))) < 1e-15);

  const DensityOperator d = two_qubit_family({0.5, 0.0});
  CHECK(max_abs(d.matrix() - diag({0.5, 0.0, 0.0, 0.5})) < 1e-15);

  const Vector plus = vec({kInvSqrt2, kInvSqrt2});
  const DensityOperator p = two_qubit_family({0.5, 1.0, plus, plus});
  CHECK_THAT(purity(p), WithinAbs(1.0, 1e-12));
  CHECK(max_abs(p.matrix() * p.matrix() - p.matrix()) < 1e-12);
}

TEST_CASE("two-qubit family is positive across the grid") {
  const Vector plus = vec({kInvSqrt2, kInvSqrt2});
  for (int k = 0; k <= 10; ++k) {
    for (double r : {0.0, 0.5, 1.0}) {
      for (double phase : {0.0, 1.3}) {
        const Complex z = std::polar(r, phase);
        for (const auto& b2 : {basis_vector(2, 1), plus}) {
          const DensityOperator rho = two_qubit_family({0.1 * k, z, basis_vector(2, 0), b2});
          CHECK(eigh(rho.matrix()).values.minCoeff() >= -1e-10);
        }
      }
    }
  }
}

TEST_CASE("family parameters out of range are errors") {
  CHECK_THROWS_AS(two_qubit_family({1.2, 0.0}), InvalidParameter);
  CHECK_THROWS_AS(two_qubit_family({-0.1, 0.0}), InvalidParameter);
  CHECK_THROWS_AS(two_qubit_family({0.5, 1.5}), InvalidParameter);
  CHECK_THROWS_AS(two_qubit_family({0.5, 0.0, vec({1.0, 1.0}), basis_vector(2, 1)}), InvalidParameter);
  CHECK_THROWS_AS(qutrit_family({0.5, Complex(0.0, 2.0)}), InvalidParameter);
  CHECK_THROWS_AS(qutrit_family({2.0, 0.0}), InvalidParameter);
}

TEST_CASE("qutrit family examples") {
  const Vector s = qutrit_singlet();
  CHECK(s(2) == Complex(kInvSqrt2));
  CHECK(s(6) == Complex(-kInvSqrt2));
  CHECK(max_abs(qutrit_family({1.0, 0.0}).matrix() - projector(s)) < 1e-15);
  const Vector zz = kron(basis_vector(3, spin1_basis::kZero), basis_vector(3, spin1_basis::kZero));
  CHECK(max_abs(qutrit_family({0.0, 0.0}).matrix() - projector(zz)) < 1e-15);
  const double eta = 0.37;
  const Matrix expected = eta * projector(s) + (1 - eta) * projector(zz);
  CHECK(max_abs(qutrit_family({eta, 0.0}).matrix() - expected) < 1e-15);
}

TEST_CASE("reduced states") {
  const DensityOperator rho = qutrit_family({1.0, 0.0});
  CHECK(max_abs(rho.reduced({1}).matrix() - diag({0.5, 0.0, 0.5})) < 1e-15);
  CHECK(rho.reduced({1}).dims() == Dims{3});
}

TEST_CASE("from_unnormalized rescales") {
  const DensityOperator rho = DensityOperator::from_unnormalized(diag({2.0, 6.0}), Dims{2});
  CHECK(max_abs(rho.matrix() - diag({0.25, 0.75})) < 1e-15);
}
