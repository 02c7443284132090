#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steer/measurements.hpp"
#include "steer/states.hpp"
#include "steer/tolerances.hpp"

namespace steer {

/// What Bob holds after Alice registers one outcome: the unnormalized
/// conditional state E' = Tr_A[rho (E x I_B)], its trace p, and, when p is
/// above the probability floor, the normalized steered state.
struct SteeredOutcome {
  std::optional<Effect> effect;  // absent for outcomes simulated by an LHS model
  Matrix conditional;
  double probability = 0.0;
  std::optional<DensityOperator> steered_state;
  bool pure = false;
  std::optional<Vector> pure_vector;  // canonical phase
};

/// Builds the outcome record from a conditional state. Checks positivity of
/// the conditional and classifies purity of the normalized state.
SteeredOutcome make_outcome(Matrix conditional, std::optional<Effect> effect,
                            const Dims& bob_dims, const Tolerances& tol = {});

/// Conditional states for every measurement setting. Each setting's
/// conditionals must add up to Bob's reduced state.
class Assemblage {
 public:
  struct Setting {
    std::string label;
    std::vector<SteeredOutcome> outcomes;
  };

  Assemblage(std::vector<Setting> settings, Matrix bob_state, Dims bob_dims,
             double tol = 1e-9);

  const std::vector<Setting>& settings() const noexcept { return settings_; }
  const Setting& operator[](std::size_t x) const { return settings_.at(x); }
  std::size_t size() const noexcept { return settings_.size(); }
  const Matrix& bob_state() const noexcept { return bob_state_; }
  const Dims& bob_dims() const noexcept { return bob_dims_; }

 private:
  std::vector<Setting> settings_;
  Matrix bob_state_;
  Dims bob_dims_;
};

/// E' = Tr_A[rho (E x I_B)] for a state factorized as (d_A, d_B).
Matrix conditional_operator(const DensityOperator& rho, const Matrix& effect);

SteeredOutcome conditional_state(const DensityOperator& rho, const Effect& e,
                                 const Tolerances& tol = {});

Assemblage assemblage(const DensityOperator& rho,
                      std::span<const LabeledMeasurement> measurements,
                      const Tolerances& tol = {});
Assemblage assemblage(const DensityOperator& rho,
                      std::span<const NonDegeneratePvm> measurements,
                      const Tolerances& tol = {});

/// Largest probability with which Alice can steer Bob to |beta>.
struct MaxPureSteering {
  double probability = 0.0;
  Effect effect;                      // projector onto `subspace`; zero when unreachable
  Matrix subspace;                    // orthonormal columns on H_A
  std::vector<Effect> rank_one_effects;  // |s_k><s_k| for each subspace column
};

/// The Alice vectors |a> with (|a><a|)' proportional to |beta><beta| form the
/// kernel of K = Tr_B[rho (I_A x (I_B - |beta><beta|))]. The optimal effect is
/// the projector onto that kernel; it accumulates every rank-one effect that
/// steers to |beta>.
MaxPureSteering max_pure_steering(const DensityOperator& rho, const Vector& beta,
                                  const Tolerances& tol = {});

/// One term c |alpha, beta, gamma> of a purified decomposition.
struct PurifiedTerm {
  std::size_t outcome = 0;  // index in the PVM
  double coefficient = 0.0;  // c_i = sqrt(p_i), real nonnegative
  Vector alice;
  Vector bob;  // canonical phase
};

/// |Psi> = sum_i c_i |alpha_i, beta_i, gamma_i> + |residual> inside the
/// canonical purification of rho. Only outcomes above the probability floor
/// contribute terms.
struct PurifiedDecomposition {
  std::vector<double> coefficients;  // one per PVM outcome, zero below the floor
  std::vector<PurifiedTerm> terms;
  /// G_ij = <gamma_j|gamma_i> over terms, computed from matrix elements of
  /// rho: <alpha_i,beta_i|rho|alpha_j,beta_j> = c_i c_j G_ij.
  Matrix ancilla_gram;
  PureState purification;
  std::vector<Vector> ancilla_vectors;  // gamma_i read off the purification
  Vector residual;

  /// sum_ij c_i c_j G_ij |alpha_i,beta_i><alpha_j,beta_j|.
  Matrix reconstruct() const;
};

PurifiedDecomposition purified_decomposition(const DensityOperator& rho,
                                             const NonDegeneratePvm& pvm,
                                             const Tolerances& tol = {});

/// Pure steered states from rank-one projective effects that are mutually
/// orthogonal and whose probabilities sum to one, together with the PVM that
/// contains their Alice effects.
struct OrthogonalCompleteFamily {
  std::vector<Vector> alice;
  std::vector<Vector> bob;
  std::vector<double> probabilities;
  NonDegeneratePvm pvm;
};

struct OrthogonalCompleteCheck {
  bool holds = false;
  std::string failure;  // empty when holds
  double magnitude = 0.0;  // worst overlap or |sum p - 1| behind the failure
  std::optional<OrthogonalCompleteFamily> family;
};

/// Premise violations (mixed or zero-probability outcome, effect not a rank
/// one projector) throw PreconditionError. A family that meets the premises
/// but has orthogonal steered states with non-orthogonal Alice effects throws
/// ConsistencyError.
OrthogonalCompleteCheck orthogonal_complete_check(
    std::span<const SteeredOutcome> outcomes, const Tolerances& tol = {});

/// Family built from every outcome of `pvm` above the probability floor.
OrthogonalCompleteCheck orthogonal_complete_check(const DensityOperator& rho,
                                                  const NonDegeneratePvm& pvm,
                                                  const Tolerances& tol = {});

struct PureSteeredSubspace {
  Matrix basis;  // orthonormal columns on H_B
  std::vector<std::size_t> members;  // family indices spanning it
  std::size_t samples_checked = 0;
  double min_sample_probability = 0.0;
};

/// span{beta_i : |<beta_i|extra>| > overlap tol}. Every state of a random
/// sample from the span is confirmed reachable with max_pure_steering.
PureSteeredSubspace pure_steered_subspace(const DensityOperator& rho,
                                          const OrthogonalCompleteFamily& family,
                                          const Vector& extra_beta,
                                          std::uint64_t seed = 0,
                                          std::size_t samples = 20,
                                          const Tolerances& tol = {});

struct ProductTerm {
  double weight = 0.0;
  Vector alice;
  Vector bob;
};

struct SteeringCertificate {
  std::size_t i = 0;
  std::size_t j = 0;
  double magnitude = 0.0;  // |<alpha_i,beta_i|rho|alpha_j,beta_j>|
};

struct SteerabilityVerdict {
  enum class Tag { Steerable, SeparableExplicit, Undetermined };

  Tag tag = Tag::Undetermined;
  std::optional<SteeringCertificate> certificate;
  std::optional<double> pure_probability_sum;
  std::vector<ProductTerm> ensemble;  // SeparableExplicit only
  double reconstruction_error = 0.0;  // SeparableExplicit only
  std::string diagnostic;
};

std::string to_string(SteerabilityVerdict::Tag tag);

/// Steerable-or-separable decision from a PVM whose outcomes all steer Bob to
/// pure, linearly independent states. Dependent states give Undetermined;
/// a mixed outcome throws NonPureOutcome.
SteerabilityVerdict classify(const DensityOperator& rho, const NonDegeneratePvm& pvm,
                             const Tolerances& tol = {});

}  // namespace steer
