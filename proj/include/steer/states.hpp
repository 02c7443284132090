#pragma once

#include <optional>

#include "steer/tensor.hpp"

namespace steer {

/// Positive semi-definite, unit-trace operator with a declared subsystem
/// factorization. Construction validates; instances are immutable.
class DensityOperator {
 public:
  /// Throws InvalidOperator unless the matrix is Hermitian within `tol`, has
  /// minimum eigenvalue >= -tol and trace within `tol` of one.
  DensityOperator(Matrix matrix, Dims dims, double tol = 1e-9);

  /// Normalizes a PSD operator by its trace. Rounding in `m` is magnified by
  /// 1/Tr(m), so the positivity check is widened by the same factor.
  static DensityOperator from_unnormalized(const Matrix& m, Dims dims,
                                           double tol = 1e-9);

  const Matrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return dims_.total(); }

  /// Reduced state on the listed subsystems.
  DensityOperator reduced(std::initializer_list<std::size_t> keep) const;

 private:
  Matrix matrix_;
  Dims dims_;
};

/// Normalized ket with a subsystem factorization.
class PureState {
 public:
  PureState(Vector vector, Dims dims, double tol = 1e-9);

  const Vector& vector() const noexcept { return vector_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return dims_.total(); }

  DensityOperator density() const;

 private:
  Vector vector_;
  Dims dims_;
};

double purity(const DensityOperator& rho);

struct PurityCheck {
  bool pure = false;
  double deficit = 1.0;  // 1 - Tr(rho^2)
  std::optional<Vector> vector;  // dominant eigenvector, canonical phase
};

PurityCheck is_pure(const DensityOperator& rho, double tol = 1e-8);

/// Canonical purification sum_k sqrt(lambda_k) |u_k>_AB |k>_C over
/// eigenvalues above rank_tol * lambda_max, in descending order, with each
/// u_k in canonical phase. The result factorizes as (d_A, d_B, d_C).
PureState purify(const DensityOperator& rho, double rank_tol = 1e-10);

/// Reduced state of a pure state on the listed subsystems, computed without
/// forming |psi><psi|.
Matrix reduced_from_pure(const PureState& psi,
                         std::initializer_list<std::size_t> keep);

DensityOperator product_state(const DensityOperator& a, const DensityOperator& b);
DensityOperator maximally_mixed(const Dims& dims);

/// Two-qubit family
///   eta |0,b1><0,b1| + (1-eta) |1,b2><1,b2|
///   + sqrt(eta(1-eta)) (z |0,b1><1,b2| + z* |1,b2><0,b1|).
struct TwoQubitFamilyParams {
  double eta = 0.5;
  Complex z = 0.0;
  Vector beta1 = basis_vector(2, 0);
  Vector beta2 = basis_vector(2, 1);
};

DensityOperator two_qubit_family(const TwoQubitFamilyParams& p);

/// Spin-1 basis indices: |+1>, |0>, |-1> map to 0, 1, 2.
namespace spin1_basis {
inline constexpr std::size_t kPlus = 0;
inline constexpr std::size_t kZero = 1;
inline constexpr std::size_t kMinus = 2;
}  // namespace spin1_basis

/// (|+1,-1> - |-1,+1>) / sqrt(2) on two qutrits.
Vector qutrit_singlet();

/// Two-qutrit family
///   eta |s><s| + (1-eta) |00><00| + sqrt(eta(1-eta)) (z |s><00| + z* |00><s|)
/// with |s> = qutrit_singlet().
struct QutritFamilyParams {
  double eta = 0.5;
  Complex z = 0.0;
};

DensityOperator qutrit_family(const QutritFamilyParams& p);

}  // namespace steer
