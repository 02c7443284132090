#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace steer {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Hard cap on the side length of any operator built by kron() or held by a
/// density operator.
inline constexpr std::size_t kMaxDim = 64;

/// Ordered subsystem dimensions (d_A, d_B[, d_C]). Subsystem 0 is the
/// slowest-varying tensor index: |a,b> sits at a * d_B + b.
class Dims {
 public:
  Dims(std::initializer_list<std::size_t> factors);
  explicit Dims(std::vector<std::size_t> factors);

  std::size_t total() const noexcept { return total_; }
  std::size_t count() const noexcept { return factors_.size(); }
  std::size_t operator[](std::size_t i) const { return factors_.at(i); }
  const std::vector<std::size_t>& factors() const noexcept { return factors_; }

  /// Dims of the listed subsystems, in ascending subsystem order.
  Dims subset(std::span<const std::size_t> keep) const;

  friend bool operator==(const Dims&, const Dims&) = default;

 private:
  std::vector<std::size_t> factors_;
  std::size_t total_ = 1;
};

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
Vector kron(std::initializer_list<Vector> factors);

/// Traces out every subsystem not listed in `keep`.
Matrix partial_trace(const Matrix& m, const Dims& dims,
                     std::span<const std::size_t> keep);
Matrix partial_trace(const Matrix& m, const Dims& dims,
                     std::initializer_list<std::size_t> keep);

/// Hermitian eigendecomposition with eigenvalues in descending order.
/// Column k of `vectors` belongs to `values[k]`.
struct Eigensystem {
  RealVector values;
  Matrix vectors;
};

Eigensystem eigh(const Matrix& m, double herm_tol = 1e-9);

/// Orthonormal basis (as columns) of the numerical null space of a Hermitian
/// PSD matrix: eigenvectors whose eigenvalue is <= tol * max(lambda_max,
/// scale). A matrix with lambda_max <= 0 is all kernel.
Matrix kernel(const Matrix& m, double tol = 1e-9, double scale = 0.0);

double hermitian_defect(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-9);
Matrix hermitian_part(const Matrix& m);
bool all_finite(const Matrix& m);

Matrix projector(const Vector& v);
Vector basis_vector(std::size_t dim, std::size_t index);

/// Multiplies by the phase that makes the largest-magnitude entry real and
/// positive. Ties go to the lowest index.
Vector canonical_phase(const Vector& v);

/// Phase-invariant distance |1 - |<a|b>|| between unit vectors.
double phase_distance(const Vector& a, const Vector& b);

/// Gram-Schmidt over the given columns followed by the standard basis,
/// skipping candidates whose residual norm falls below `skip_tol`. Returns
/// `dim` orthonormal columns; the leading columns span the seeds.
Matrix complete_basis(std::span<const Vector> seeds, std::size_t dim,
                      double skip_tol = 1e-8);

}  // namespace steer
