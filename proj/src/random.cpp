#include "steer/random.hpp"

#include <cmath>

#include "steer/errors.hpp"

namespace steer {
namespace {

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

Vector random_unit_vector(std::size_t dim, Rng& rng) {
  Vector v = ginibre(static_cast<Eigen::Index>(dim), 1, rng).col(0);
  return v / v.norm();
}

Matrix haar_unitary(std::size_t dim, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

DensityOperator random_density(const Dims& dims, std::size_t rank, Rng& rng) {
  if (rank == 0) throw InvalidParameter("random_density: rank must be >= 1");
  const Matrix g = ginibre(static_cast<Eigen::Index>(dims.total()),
                           static_cast<Eigen::Index>(rank), rng);
  const Matrix w = g * g.adjoint();
  return DensityOperator(hermitian_part(w / w.trace().real()), dims);
}

PureState random_pure_state(const Dims& dims, Rng& rng) {
  return PureState(random_unit_vector(dims.total(), rng), dims);
}

}  // namespace steer
