#pragma once

// Reference computations for the acceptance suite. They avoid the toolkit's
// own partial trace, conditional-state and eigen-solver code paths.

#include <cstddef>
#include <vector>

#include "steer/random.hpp"
#include "steer/tensor.hpp"

namespace steer::oracles {

/// Transpose on the second factor of a (da, db) operator.
Matrix partial_transpose_b(const Matrix& rho, std::size_t da, std::size_t db);
/// Smallest eigenvalue of the partial transpose; negative means entangled
/// (and, for 2x2 and 2x3, non-negative means separable).
double ppt_min_eigenvalue(const Matrix& rho, std::size_t da, std::size_t db);

/// Tr_C |psi><psi| for psi indexed as x * dc + c.
Matrix trace_last(const Vector& psi, std::size_t dx, std::size_t dc);

/// Spectral norm of (I - P P^dagger) Q, both with orthonormal columns. Zero
/// when span Q lies inside span P.
double subspace_defect(const Matrix& q, const Matrix& p);

/// State whose maximal steering probability towards `target` is known by
/// construction:
///   sum_{i<k} c_i |alpha_i, target, gamma_i> + sum_{i>=k} c_i |alpha_i>|delta_i>_BC
/// with generic entangled delta_i.
struct ReachableInstance {
  Matrix rho;
  std::size_t da = 0, db = 0;
  Vector target;
  Matrix alice_subspace;  // alpha_0..alpha_{k-1}
  double probability = 0.0;  // sum_{i<k} c_i^2
};
ReachableInstance reachable_instance(Rng& rng);

struct SearchResult {
  double best = 0.0;
  std::size_t accepted = 0;
};
/// Best steering probability towards `target` over random rank-one effects
/// |a><a| whose conditional state is within `filter` (Frobenius) of
/// p |target><target|. Half of the samples are Haar on H_A, half Haar inside
/// the columns of `hint`.
SearchResult random_search_max_pure(const Matrix& rho, std::size_t da, std::size_t db,
                                    const Vector& target, const Matrix& hint,
                                    std::size_t samples, Rng& rng, double filter = 1e-6);

/// sum_i c_i |alpha_i, beta_i, gamma_i> traced over C, with orthonormal
/// alpha and beta bases of dimension d and random unit gamma_i.
struct OrthogonalFamilyInstance {
  Matrix rho;
  std::size_t d = 0;
  std::vector<Vector> alice, bob;
  std::vector<double> probabilities;
};
OrthogonalFamilyInstance orthogonal_family_instance(std::size_t d, std::size_t dc, Rng& rng,
                                                    bool orthogonal_bob = true);

}  // namespace steer::oracles
