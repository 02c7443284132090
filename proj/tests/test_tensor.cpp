#include "catch_amalgamated.hpp"

#include "helpers.hpp"
#include "steer/errors.hpp"
#include "steer/states.hpp"

using namespace steer;
using namespace testing;
using Catch::Matchers::WithinAbs;

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() { return diag({1.0, -1.0}); }

}  // namespace

TEST_CASE("kron of identities and projectors") {
  CHECK(kron(Matrix(Matrix::Identity(2, 2)), Matrix(Matrix::Identity(2, 2))) == Matrix::Identity(4, 4));
  CHECK(kron(diag({1.0, 0.0}), Matrix(Matrix::Identity(2, 2))) == diag({1.0, 1.0, 0.0, 0.0}));
}

TEST_CASE("kron(sigma_z, sigma_x) has blocks sigma_x and -sigma_x") {
  const Matrix k = kron(pauli_z(), pauli_x());
  Matrix expected = Matrix::Zero(4, 4);
  expected.topLeftCorner(2, 2) = pauli_x();
  expected.bottomRightCorner(2, 2) = -pauli_x();
  CHECK(k == expected);
}

TEST_CASE("kron is associative entrywise") {
  // Gaussian-integer entries keep every product exact, so equality is bitwise.
  Rng rng(1);
  std::uniform_int_distribution<int> u(-9, 9);
  auto integer_matrix = [&](Eigen::Index n) {
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
    return m;
  };
  for (int n = 0; n < 20; ++n) {
    const Matrix a = integer_matrix(2), b = integer_matrix(3), c = integer_matrix(2);
    CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
  }
}

TEST_CASE("kron rejects operators beyond the size cap") {
  CHECK_THROWS_AS(kron(Matrix(Matrix::Identity(8, 8)), Matrix(Matrix::Identity(9, 9))), DimensionError);
  CHECK_NOTHROW(kron(Matrix(Matrix::Identity(8, 8)), Matrix(Matrix::Identity(8, 8))));
}

TEST_CASE("vector kron follows A-first ordering") {
  const Vector v = kron({basis_vector(2, 1), basis_vector(3, 2)});
  CHECK(v(1 * 3 + 2) == Complex(1.0));
  CHECK(v.norm() == 1.0);
}

TEST_CASE("partial trace of a product returns the factor") {
  Rng rng(2);
  const DensityOperator a = random_density(Dims{2}, 2, rng);
  const DensityOperator b = random_density(Dims{3}, 3, rng);
  const Matrix ab = kron(a.matrix(), b.matrix());
  CHECK(max_abs(partial_trace(ab, Dims{2, 3}, {1}) - b.matrix()) < 1e-14);
  CHECK(max_abs(partial_trace(ab, Dims{2, 3}, {0}) - a.matrix()) < 1e-14);
}

TEST_CASE("partial trace of a maximally entangled pair is I/2") {
  const Vector phi = kInvSqrt2 * (kron(basis_vector(2, 0), basis_vector(2, 0)) +
                                  kron(basis_vector(2, 1), basis_vector(2, 1)));
  CHECK(max_abs(partial_trace(projector(phi), Dims{2, 2}, {0}) - Matrix::Identity(2, 2) / 2.0) < 1e-15);
}

TEST_CASE("tracing the ancilla of the three-party pure state gives the two-qubit family") {
  const double eta = 0.5;
  const Vector b1 = basis_vector(2, 0), b2 = basis_vector(2, 1);
  for (Complex z : {Complex(0.0), Complex(0.6, 0.3)}) {
    // gamma_1 = |0>, gamma_2 chosen with <gamma_2|gamma_1> = z
    const Vector g1 = basis_vector(2, 0);
    const Vector g2 = vec({std::conj(z), std::sqrt(1.0 - std::norm(z))});
    const Vector psi = std::sqrt(eta) * kron({basis_vector(2, 0), b1, g1}) +
                       std::sqrt(1.0 - eta) * kron({basis_vector(2, 1), b2, g2});
    const Matrix rho = partial_trace(projector(psi), Dims{2, 2, 2}, {0, 1});
    const Matrix expected = two_qubit_family({eta, z, b1, b2}).matrix();
    CHECK(max_abs(rho - expected) < 1e-15);
  }
}

TEST_CASE("partial trace pairs with local observables") {
  Rng rng(3);
  for (int n = 0; n < 120; ++n) {
    const std::size_t da = 2 + n % 2, db = 2 + (n / 2) % 2;
    const DensityOperator rho = random_density(Dims{da, db}, 1 + n % (da * db), rng);
    const Matrix e = random_hermitian(da, rng), f = random_hermitian(db, rng);
    const Complex lhs = (rho.matrix() * kron(e, f)).trace();
    const Matrix cond = partial_trace(rho.matrix() * kron(e, Matrix(Matrix::Identity(db, db))), Dims{da, db}, {1});
    const Complex rhs = (cond * f).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
    // linearity
    const Matrix g = random_hermitian(da * db, rng);
    const Matrix lin = partial_trace(2.0 * rho.matrix() - 0.5 * g, Dims{da, db}, {1});
    const Matrix sep = 2.0 * partial_trace(rho.matrix(), Dims{da, db}, {1}) -
                       0.5 * partial_trace(g, Dims{da, db}, {1});
    CHECK(max_abs(lin - sep) < 1e-12);
  }
}

TEST_CASE("partial trace checks shapes") {
  CHECK_THROWS_AS(partial_trace(Matrix::Identity(4, 4), Dims{2, 3}, {0}), DimensionError);
  CHECK_THROWS_AS(partial_trace(Matrix::Identity(6, 6), Dims{2, 3}, {2}), DimensionError);
}

TEST_CASE("eigh sorts descending") {
  const Eigensystem es = eigh(diag({3.0, 1.0, 2.0}));
  CHECK_THAT(es.values(0), WithinAbs(3.0, 1e-15));
  CHECK_THAT(es.values(1), WithinAbs(2.0, 1e-15));
  CHECK_THAT(es.values(2), WithinAbs(1.0, 1e-15));
  CHECK(std::abs(std::abs(es.vectors(0, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(es.vectors(2, 1)) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(es.vectors(1, 2)) - 1.0) < 1e-15);
}

TEST_CASE("eigh of sigma_x gives the Hadamard basis") {
  const Eigensystem es = eigh(pauli_x());
  CHECK_THAT(es.values(0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(es.values(1), WithinAbs(-1.0, 1e-15));
  CHECK(std::abs(std::abs(es.vectors.col(0).dot(vec({kInvSqrt2, kInvSqrt2}))) - 1.0) < 1e-14);
}

TEST_CASE("eigh of a pure family member") {
  const Vector zero = basis_vector(2, 0);
  const Eigensystem es = eigh(two_qubit_family({0.5, 1.0, zero, zero}).matrix());
  CHECK_THAT(es.values(0), WithinAbs(1.0, 1e-14));
  for (int i = 1; i < 4; ++i) CHECK_THAT(es.values(i), WithinAbs(0.0, 1e-14));
}

TEST_CASE("eigh reconstructs and is orthonormal") {
  Rng rng(4);
  for (int n = 0; n < 50; ++n) {
    const Matrix h = random_hermitian(2 + n % 5, rng);
    const Eigensystem es = eigh(h);
    const Matrix back = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    CHECK(max_abs(back - h) < 1e-12);
    CHECK(max_abs(es.vectors.adjoint() * es.vectors - Matrix::Identity(h.rows(), h.cols())) < 1e-12);
  }
}

TEST_CASE("eigh rejects non-Hermitian input") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(eigh(m), InvalidOperator);
}

TEST_CASE("kernel examples") {
  CHECK(kernel(Matrix::Zero(3, 3)).cols() == 3);
  const Matrix k1 = kernel(diag({1.0, 0.0}));
  REQUIRE(k1.cols() == 1);
  CHECK(std::abs(std::abs(k1(1, 0)) - 1.0) < 1e-15);
  const Matrix k2 = kernel(diag({1.0, 1e-14}), 1e-9);
  REQUIRE(k2.cols() == 1);
  CHECK(std::abs(std::abs(k2(1, 0)) - 1.0) < 1e-15);
}

TEST_CASE("kernel is orthogonal to the range") {
  Rng rng(5);
  for (int n = 0; n < 40; ++n) {
    const std::size_t d = 3 + n % 3;
    const DensityOperator rho = random_density(Dims{d}, 1 + n % (d - 1), rng);
    const Matrix k = kernel(rho.matrix());
    const Eigensystem es = eigh(rho.matrix());
    CHECK(static_cast<std::size_t>(k.cols()) == d - (1 + n % (d - 1)));
    for (Eigen::Index w = 0; w < es.values.size(); ++w) {
      if (es.values(w) <= 1e-9 * es.values(0)) continue;
      for (Eigen::Index v = 0; v < k.cols(); ++v) {
        CHECK(std::abs(es.vectors.col(w).dot(k.col(v))) <= 1e-9);
      }
    }
  }
}

TEST_CASE("canonical phase makes the largest entry real positive") {
  const Vector v = vec({Complex(0.0, 0.6), Complex(0.0, -0.8)});
  const Vector c = canonical_phase(v);
  CHECK(c(1).imag() == 0.0);
  CHECK(c(1).real() > 0.0);
  CHECK(phase_distance(v, c) < 1e-15);
}

TEST_CASE("complete_basis keeps seeds and skips dependent candidates") {
  const std::vector<Vector> seeds{vec({kInvSqrt2, kInvSqrt2, 0.0}), vec({kInvSqrt2, kInvSqrt2, 0.0})};
  const Matrix b = complete_basis(seeds, 3);
  REQUIRE(b.cols() == 3);
  CHECK(max_abs(b.adjoint() * b - Matrix::Identity(3, 3)) < 1e-14);
  CHECK(max_abs(b.col(0) - seeds[0]) < 1e-15);
}
