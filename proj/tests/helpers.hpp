#pragma once

#include <cmath>

#include "steer/random.hpp"
#include "steer/tensor.hpp"

namespace testing {

using steer::Complex;
using steer::Matrix;
using steer::Vector;

inline Vector vec(std::initializer_list<Complex> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

inline Matrix diag(std::initializer_list<Complex> xs) { return vec(xs).asDiagonal(); }

inline Matrix random_hermitian(std::size_t n, steer::Rng& rng) {
  std::normal_distribution<double> g;
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace testing
