#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steer/errors.hpp"
#include "steer/tensor.hpp"

namespace steer {

/// Why a candidate effect or POVM was rejected, with enough detail to say by
/// how much and in which direction.
class PovmError : public InvalidOperator {
 public:
  enum class Kind { Empty, DimensionMismatch, NonFinite, NotHermitian, NotPositive, ExceedsIdentity, Incomplete };

  static constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

  PovmError(Kind kind, std::size_t index, double magnitude, Vector direction,
            const std::string& message)
      : InvalidOperator(message),
        kind_(kind),
        index_(index),
        magnitude_(magnitude),
        direction_(std::move(direction)) {}

  Kind kind() const noexcept { return kind_; }
  /// Offending effect, or kNoIndex for whole-POVM failures.
  std::size_t index() const noexcept { return index_; }
  double magnitude() const noexcept { return magnitude_; }
  /// Eigenvector carrying the violation (empty when not applicable). For
  /// Incomplete this is the direction of the largest deficit or excess.
  const Vector& direction() const noexcept { return direction_; }

 private:
  Kind kind_;
  std::size_t index_;
  double magnitude_;
  Vector direction_;
};

/// 0 <= E <= I on Alice's space. Stored as a full matrix even when rank one.
class Effect {
 public:
  explicit Effect(Matrix m, double tol = 1e-9);

  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  /// True when E^2 = E and Tr E = 1 within tol.
  bool is_rank_one_projector(double tol = 1e-9) const;

 private:
  Matrix matrix_;
};

class Povm {
 public:
  explicit Povm(std::vector<Effect> effects, double tol = 1e-9);

  const std::vector<Effect>& effects() const noexcept { return effects_; }
  std::size_t size() const noexcept { return effects_.size(); }
  std::size_t dim() const noexcept { return effects_.front().dim(); }

 private:
  std::vector<Effect> effects_;
};

/// Orthonormal basis {|alpha_i>} of Alice's space, read as the rank-one
/// projective measurement {|alpha_i><alpha_i|}.
class NonDegeneratePvm {
 public:
  explicit NonDegeneratePvm(std::vector<Vector> vectors, double tol = 1e-9);

  const std::vector<Vector>& vectors() const noexcept { return vectors_; }
  const Vector& operator[](std::size_t i) const { return vectors_.at(i); }
  std::size_t dim() const noexcept { return vectors_.size(); }

  /// Columns are the |alpha_i>.
  Matrix basis() const;
  Povm to_povm() const;

 private:
  std::vector<Vector> vectors_;
};

Povm povm_validate(std::span<const Matrix> effects, double tol = 1e-9);

/// |alpha'_b> = sum_a |alpha_a> U_{ab}.
NonDegeneratePvm pvm_from_unitary(const NonDegeneratePvm& base, const Matrix& u,
                                  double tol = 1e-9);

/// A PVM whose first element is `v`, completed by Gram-Schmidt over the
/// standard basis.
NonDegeneratePvm pvm_containing(const Vector& v);

/// Completes orthonormal seeds to a PVM; seeds keep their order.
NonDegeneratePvm pvm_completing(std::span<const Vector> seeds);

NonDegeneratePvm computational_pvm(std::size_t dim);

/// One setting x of a measurement assemblage.
struct LabeledMeasurement {
  std::string label;
  Povm povm;
};

}  // namespace steer
