#include "steer/measurements.hpp"

#include <cmath>
#include <string>

namespace steer {
namespace {

std::string at_index(std::size_t index) {
  return index == PovmError::kNoIndex ? std::string()
                                      : " (effect " + std::to_string(index) + ")";
}

void check_effect(const Matrix& m, std::size_t index, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw PovmError(PovmError::Kind::DimensionMismatch, index, 0.0, {},
                    "effect must be a non-empty square matrix" + at_index(index));
  }
  if (!all_finite(m)) {
    throw PovmError(PovmError::Kind::NonFinite, index, 0.0, {},
                    "effect has a non-finite entry" + at_index(index));
  }
  const double defect = hermitian_defect(m);
  if (defect > tol) {
    throw PovmError(PovmError::Kind::NotHermitian, index, defect, {},
                    "effect is not Hermitian, defect " + std::to_string(defect) +
                        at_index(index));
  }
  const Eigensystem es = eigh(m, tol);
  const Eigen::Index last = es.values.size() - 1;
  if (es.values(last) < -tol) {
    throw PovmError(PovmError::Kind::NotPositive, index, -es.values(last),
                    es.vectors.col(last),
                    "effect has negative eigenvalue " +
                        std::to_string(es.values(last)) + at_index(index));
  }
  if (es.values(0) > 1.0 + tol) {
    throw PovmError(PovmError::Kind::ExceedsIdentity, index, es.values(0) - 1.0,
                    es.vectors.col(0),
                    "effect exceeds the identity, eigenvalue " +
                        std::to_string(es.values(0)) + at_index(index));
  }
}

void check_completeness(const std::vector<Effect>& effects, double tol) {
  const Eigen::Index d = effects.front().matrix().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : effects) sum += e.matrix();
  const Matrix gap = sum - Matrix::Identity(d, d);
  const double err = gap.norm();
  if (err <= tol) return;
  const Eigensystem es = eigh(hermitian_part(gap), INFINITY);
  const double excess = es.values(0);
  const double deficit = -es.values(d - 1);
  const bool is_deficit = deficit >= excess;
  const Vector dir = is_deficit ? Vector(es.vectors.col(d - 1)) : Vector(es.vectors.col(0));
  throw PovmError(PovmError::Kind::Incomplete, PovmError::kNoIndex,
                  is_deficit ? deficit : excess, canonical_phase(dir),
                  std::string("effects do not sum to the identity: Frobenius gap ") +
                      std::to_string(err) + ", largest " +
                      (is_deficit ? "deficit " : "excess ") +
                      std::to_string(is_deficit ? deficit : excess));
}

}  // namespace

Effect::Effect(Matrix m, double tol) : matrix_(std::move(m)) {
  check_effect(matrix_, PovmError::kNoIndex, tol);
}

bool Effect::is_rank_one_projector(double tol) const {
  const double idempotence = (matrix_ * matrix_ - matrix_).norm();
  return idempotence <= tol && std::abs(matrix_.trace().real() - 1.0) <= tol;
}

Povm::Povm(std::vector<Effect> effects, double tol) : effects_(std::move(effects)) {
  if (effects_.empty()) {
    throw PovmError(PovmError::Kind::Empty, PovmError::kNoIndex, 0.0, {},
                    "a POVM needs at least one effect");
  }
  for (std::size_t i = 1; i < effects_.size(); ++i) {
    if (effects_[i].dim() != effects_[0].dim()) {
      throw PovmError(PovmError::Kind::DimensionMismatch, i, 0.0, {},
                      "effects have different dimensions" + at_index(i));
    }
  }
  check_completeness(effects_, tol);
}

Povm povm_validate(std::span<const Matrix> effects, double tol) {
  if (effects.empty()) {
    throw PovmError(PovmError::Kind::Empty, PovmError::kNoIndex, 0.0, {},
                    "a POVM needs at least one effect");
  }
  std::vector<Effect> out;
  out.reserve(effects.size());
  for (std::size_t i = 0; i < effects.size(); ++i) {
    if (effects[i].rows() != effects[0].rows() || effects[i].cols() != effects[0].cols()) {
      throw PovmError(PovmError::Kind::DimensionMismatch, i, 0.0, {},
                      "effects have different dimensions" + at_index(i));
    }
    check_effect(effects[i], i, tol);
    out.emplace_back(effects[i], tol);
  }
  return Povm(std::move(out), tol);
}

NonDegeneratePvm::NonDegeneratePvm(std::vector<Vector> vectors, double tol)
    : vectors_(std::move(vectors)) {
  const std::size_t d = vectors_.size();
  if (d == 0) throw InvalidOperator("a PVM needs at least one vector");
  for (std::size_t i = 0; i < d; ++i) {
    if (static_cast<std::size_t>(vectors_[i].size()) != d) {
      throw DimensionError("PVM vector " + std::to_string(i) + " has length " +
                           std::to_string(vectors_[i].size()) + ", expected " +
                           std::to_string(d));
    }
    if (!all_finite(vectors_[i])) {
      throw InvalidOperator("PVM vector " + std::to_string(i) + " has a non-finite entry");
    }
  }
  const Matrix b = basis();
  const double err = (b.adjoint() * b - Matrix::Identity(b.cols(), b.cols()))
                         .cwiseAbs()
                         .maxCoeff();
  if (err > tol) {
    throw InvalidOperator("PVM vectors are not orthonormal (max Gram error " +
                          std::to_string(err) + ")");
  }
}

Matrix NonDegeneratePvm::basis() const {
  const auto d = static_cast<Eigen::Index>(vectors_.size());
  Matrix b(d, d);
  for (Eigen::Index i = 0; i < d; ++i) b.col(i) = vectors_[static_cast<std::size_t>(i)];
  return b;
}

Povm NonDegeneratePvm::to_povm() const {
  std::vector<Effect> effects;
  effects.reserve(vectors_.size());
  for (const auto& v : vectors_) effects.emplace_back(projector(v));
  return Povm(std::move(effects));
}

NonDegeneratePvm pvm_from_unitary(const NonDegeneratePvm& base, const Matrix& u,
                                  double tol) {
  const auto d = static_cast<Eigen::Index>(base.dim());
  if (u.rows() != d || u.cols() != d) {
    throw DimensionError("pvm_from_unitary: unitary has the wrong size");
  }
  const double err = (u.adjoint() * u - Matrix::Identity(d, d)).norm();
  if (!all_finite(u) || err > tol) {
    throw InvalidOperator("pvm_from_unitary: matrix is not unitary (error " +
                          std::to_string(err) + ")");
  }
  const Matrix rotated = base.basis() * u;
  std::vector<Vector> out;
  out.reserve(base.dim());
  for (Eigen::Index k = 0; k < d; ++k) out.emplace_back(rotated.col(k));
  return NonDegeneratePvm(std::move(out));
}

NonDegeneratePvm pvm_containing(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 1e-12)) throw InvalidParameter("pvm_containing: zero vector");
  const Vector seed = v / norm;
  return pvm_completing(std::span<const Vector>(&seed, 1));
}

NonDegeneratePvm pvm_completing(std::span<const Vector> seeds) {
  if (seeds.empty()) throw InvalidParameter("pvm_completing: no seed vectors");
  const auto dim = static_cast<std::size_t>(seeds.front().size());
  const Matrix b = complete_basis(seeds, dim);
  if (static_cast<std::size_t>(b.cols()) != dim) {
    throw InvalidParameter("pvm_completing: seeds are linearly dependent");
  }
  std::vector<Vector> out;
  out.reserve(dim);
  for (Eigen::Index k = 0; k < b.cols(); ++k) out.emplace_back(b.col(k));
  // Seeds must survive Gram-Schmidt unchanged, i.e. already be orthonormal.
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if ((out[i] - seeds[i]).norm() > 1e-8) {
      throw InvalidParameter("pvm_completing: seed vectors are not orthonormal");
    }
  }
  return NonDegeneratePvm(std::move(out));
}

NonDegeneratePvm computational_pvm(std::size_t dim) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back(basis_vector(dim, i));
  return NonDegeneratePvm(std::move(out));
}

}  // namespace steer
