#include "steer/steering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "steer/errors.hpp"
#include "steer/random.hpp"

namespace steer {
namespace {

void require_bipartite(const DensityOperator& rho, const char* op) {
  if (rho.dims().count() != 2) {
    throw DimensionError(std::string(op) +
                         ": state must be factorized as (d_A, d_B), got " +
                         std::to_string(rho.dims().count()) + " factors");
  }
}

void require_alice_dim(const DensityOperator& rho, std::size_t d, const char* op) {
  if (d != rho.dims()[0]) {
    throw DimensionError(std::string(op) + ": operator on a " + std::to_string(d) +
                         "-dimensional space, but d_A = " +
                         std::to_string(rho.dims()[0]));
  }
}

// <x|rho|y> for x, y on A x B.
Complex matrix_element(const DensityOperator& rho, const Vector& x, const Vector& y) {
  return x.dot(rho.matrix() * y);
}

// Orthonormal columns spanning the given vectors.
Matrix orthonormalize(const std::vector<Vector>& vs, Eigen::Index dim) {
  Matrix basis(dim, 0);
  for (const auto& v : vs) {
    Vector r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < basis.cols(); ++k) r -= basis.col(k) * basis.col(k).dot(r);
    }
    const double n = r.norm();
    if (n < 1e-8) continue;
    basis.conservativeResize(dim, basis.cols() + 1);
    basis.col(basis.cols() - 1) = r / n;
  }
  return basis;
}

struct ActiveOutcome {
  std::size_t index;
  double probability;
  Vector alice;
  Vector bob;
};

// Outcomes of `pvm` above the probability floor; each must steer to a pure state.
std::vector<ActiveOutcome> pure_active_outcomes(const DensityOperator& rho,
                                                const NonDegeneratePvm& pvm,
                                                const Tolerances& tol) {
  std::vector<ActiveOutcome> out;
  for (std::size_t i = 0; i < pvm.dim(); ++i) {
    const SteeredOutcome o = conditional_state(rho, Effect(projector(pvm[i])), tol);
    if (o.probability <= tol.prob_floor) continue;
    if (!o.pure) {
      throw NonPureOutcome(i, 1.0 - purity(*o.steered_state));
    }
    out.push_back({i, o.probability, pvm[i], *o.pure_vector});
  }
  return out;
}

}  // namespace

SteeredOutcome make_outcome(Matrix conditional, std::optional<Effect> effect,
                            const Dims& bob_dims, const Tolerances& tol) {
  if (static_cast<std::size_t>(conditional.rows()) != bob_dims.total() ||
      conditional.rows() != conditional.cols()) {
    throw DimensionError("conditional state does not match Bob's dimension");
  }
  SteeredOutcome out;
  out.effect = std::move(effect);
  out.conditional = hermitian_part(conditional);
  out.probability = out.conditional.trace().real();
  const Eigensystem es = eigh(out.conditional, tol.hermiticity);
  const double min_eig = es.values(es.values.size() - 1);
  if (min_eig < -tol.hermiticity) {
    throw InvalidOperator("conditional state has negative eigenvalue " +
                          std::to_string(min_eig));
  }
  if (out.probability > 1.0 + tol.hermiticity) {
    throw InvalidOperator("steering probability exceeds one: " +
                          std::to_string(out.probability));
  }
  if (out.probability > tol.prob_floor) {
    out.steered_state = DensityOperator::from_unnormalized(out.conditional, bob_dims,
                                                           tol.hermiticity);
    const PurityCheck check = is_pure(*out.steered_state, tol.purity);
    out.pure = check.pure;
    out.pure_vector = check.vector;
  }
  return out;
}

Assemblage::Assemblage(std::vector<Setting> settings, Matrix bob_state, Dims bob_dims,
                       double tol)
    : settings_(std::move(settings)),
      bob_state_(std::move(bob_state)),
      bob_dims_(std::move(bob_dims)) {
  for (const auto& s : settings_) {
    Matrix sum = Matrix::Zero(bob_state_.rows(), bob_state_.cols());
    for (const auto& o : s.outcomes) {
      if (o.conditional.rows() != sum.rows()) {
        throw DimensionError("assemblage setting '" + s.label +
                             "' has a conditional of the wrong size");
      }
      sum += o.conditional;
    }
    const double gap = (sum - bob_state_).norm();
    if (gap > tol) {
      throw InvalidOperator("assemblage setting '" + s.label +
                            "' violates no-signalling (gap " + std::to_string(gap) + ")");
    }
  }
}

Matrix conditional_operator(const DensityOperator& rho, const Matrix& effect) {
  require_bipartite(rho, "conditional_state");
  const auto da = static_cast<Eigen::Index>(rho.dims()[0]);
  const auto db = static_cast<Eigen::Index>(rho.dims()[1]);
  if (effect.rows() != da || effect.cols() != da) {
    require_alice_dim(rho, static_cast<std::size_t>(effect.rows()), "conditional_state");
  }
  const Matrix& m = rho.matrix();
  // E'_{b,b'} = sum_{a,a'} E_{a',a} rho_{(a,b),(a',b')}
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index ap = 0; ap < da; ++ap) {
      const Complex e = effect(ap, a);
      if (e == Complex(0.0)) continue;
      out += e * m.block(a * db, ap * db, db, db);
    }
  }
  return out;
}

SteeredOutcome conditional_state(const DensityOperator& rho, const Effect& e,
                                 const Tolerances& tol) {
  require_bipartite(rho, "conditional_state");
  require_alice_dim(rho, e.dim(), "conditional_state");
  return make_outcome(conditional_operator(rho, e.matrix()), e,
                      rho.dims().subset(std::vector<std::size_t>{1}), tol);
}

Assemblage assemblage(const DensityOperator& rho,
                      std::span<const LabeledMeasurement> measurements,
                      const Tolerances& tol) {
  require_bipartite(rho, "assemblage");
  std::vector<Assemblage::Setting> settings;
  settings.reserve(measurements.size());
  for (const auto& m : measurements) {
    require_alice_dim(rho, m.povm.dim(), "assemblage");
    Assemblage::Setting s{m.label, {}};
    for (const auto& e : m.povm.effects()) s.outcomes.push_back(conditional_state(rho, e, tol));
    settings.push_back(std::move(s));
  }
  return Assemblage(std::move(settings), partial_trace(rho.matrix(), rho.dims(), {1}),
                    rho.dims().subset(std::vector<std::size_t>{1}), tol.hermiticity);
}

Assemblage assemblage(const DensityOperator& rho,
                      std::span<const NonDegeneratePvm> measurements,
                      const Tolerances& tol) {
  std::vector<LabeledMeasurement> labeled;
  labeled.reserve(measurements.size());
  for (std::size_t x = 0; x < measurements.size(); ++x) {
    labeled.push_back({"x" + std::to_string(x), measurements[x].to_povm()});
  }
  return assemblage(rho, labeled, tol);
}

MaxPureSteering max_pure_steering(const DensityOperator& rho, const Vector& beta,
                                  const Tolerances& tol) {
  require_bipartite(rho, "max_pure_steering");
  const auto da = static_cast<Eigen::Index>(rho.dims()[0]);
  const auto db = static_cast<Eigen::Index>(rho.dims()[1]);
  if (beta.size() != db) throw DimensionError("max_pure_steering: target has the wrong dimension");
  if (std::abs(beta.norm() - 1.0) > tol.normalization) {
    throw InvalidParameter("max_pure_steering: target is not normalized");
  }

  // K_{a,a'} = sum_{b,b'} rho_{(a,b),(a',b')} Q_{b',b}, Q = I - |beta><beta|.
  const Matrix q = Matrix::Identity(db, db) - projector(beta);
  const Matrix& m = rho.matrix();
  Matrix k(da, da);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index ap = 0; ap < da; ++ap) {
      k(a, ap) = (m.block(a * db, ap * db, db, db).array() * q.transpose().array()).sum();
    }
  }

  const Matrix s = kernel(hermitian_part(k), tol.kernel, rho.matrix().trace().real());
  const Matrix p_s = s * s.adjoint();
  const double p = s.cols() == 0 ? 0.0 : conditional_operator(rho, p_s).trace().real();

  if (p <= tol.prob_floor) {
    return MaxPureSteering{0.0, Effect(Matrix::Zero(da, da)), Matrix(da, 0), {}};
  }
  MaxPureSteering out{p, Effect(hermitian_part(p_s)), s, {}};
  for (Eigen::Index c = 0; c < s.cols(); ++c) out.rank_one_effects.emplace_back(projector(s.col(c)));
  return out;
}

Matrix PurifiedDecomposition::reconstruct() const {
  if (terms.empty()) return Matrix();
  const Eigen::Index n = terms.front().alice.size() * terms.front().bob.size();
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Vector xi = kron(terms[i].alice, terms[i].bob);
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const Vector xj = kron(terms[j].alice, terms[j].bob);
      out += terms[i].coefficient * terms[j].coefficient *
             ancilla_gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
             xi * xj.adjoint();
    }
  }
  return out;
}

PurifiedDecomposition purified_decomposition(const DensityOperator& rho,
                                             const NonDegeneratePvm& pvm,
                                             const Tolerances& tol) {
  require_bipartite(rho, "purified_decomposition");
  require_alice_dim(rho, pvm.dim(), "purified_decomposition");
  const std::vector<ActiveOutcome> active = pure_active_outcomes(rho, pvm, tol);

  std::vector<double> coefficients(pvm.dim(), 0.0);
  std::vector<PurifiedTerm> terms;
  for (const auto& a : active) {
    coefficients[a.index] = std::sqrt(a.probability);
    terms.push_back({a.index, std::sqrt(a.probability), a.alice, a.bob});
  }

  const auto n = static_cast<Eigen::Index>(terms.size());
  Matrix gram = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& ti = terms[static_cast<std::size_t>(i)];
    const Vector xi = kron(ti.alice, ti.bob);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& tj = terms[static_cast<std::size_t>(j)];
      gram(i, j) = matrix_element(rho, xi, kron(tj.alice, tj.bob)) /
                   (ti.coefficient * tj.coefficient);
    }
  }

  PureState psi = purify(rho, tol.rank);
  const auto dc = static_cast<Eigen::Index>(psi.dims()[2]);
  std::vector<Vector> gammas;
  Vector residual = psi.vector();
  for (const auto& t : terms) {
    const Vector ab = kron(t.alice, t.bob);
    Vector gamma = Vector::Zero(dc);
    for (Eigen::Index x = 0; x < ab.size(); ++x) {
      gamma += std::conj(ab(x)) * psi.vector().segment(x * dc, dc);
    }
    gamma /= t.coefficient;
    residual -= t.coefficient * kron(ab, gamma);
    gammas.push_back(std::move(gamma));
  }

  return PurifiedDecomposition{std::move(coefficients), std::move(terms), std::move(gram),
                               std::move(psi), std::move(gammas), std::move(residual)};
}

OrthogonalCompleteCheck orthogonal_complete_check(std::span<const SteeredOutcome> outcomes,
                                                  const Tolerances& tol) {
  if (outcomes.empty()) throw PreconditionError("orthogonal_complete_check: no outcomes");
  std::vector<Vector> alice, bob;
  std::vector<double> probs;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SteeredOutcome& o = outcomes[i];
    const std::string where = "outcome " + std::to_string(i);
    if (!o.effect || !o.effect->is_rank_one_projector(tol.hermiticity)) {
      throw PreconditionError(where + ": effect is not a rank-one projector");
    }
    if (o.probability <= tol.prob_floor) {
      throw PreconditionError(where + ": zero steering probability");
    }
    if (!o.pure) throw PreconditionError(where + ": steered state is not pure");
    alice.push_back(eigh(o.effect->matrix()).vectors.col(0));
    bob.push_back(*o.pure_vector);
    probs.push_back(o.probability);
  }

  OrthogonalCompleteCheck out;
  double worst_bob = 0.0;
  for (std::size_t i = 0; i < bob.size(); ++i) {
    for (std::size_t j = i + 1; j < bob.size(); ++j) {
      worst_bob = std::max(worst_bob, std::abs(bob[i].dot(bob[j])));
    }
  }
  if (worst_bob > tol.orthogonality) {
    out.failure = "steered states are not orthogonal";
    out.magnitude = worst_bob;
    return out;
  }
  double total = 0.0;
  for (double p : probs) total += p;
  if (std::abs(total - 1.0) > tol.orthogonality) {
    out.failure = "steering probabilities do not sum to one";
    out.magnitude = std::abs(total - 1.0);
    return out;
  }

  // Premises hold, so the Alice effects must be orthogonal.
  double worst_alice = 0.0;
  for (std::size_t i = 0; i < alice.size(); ++i) {
    for (std::size_t j = i + 1; j < alice.size(); ++j) {
      worst_alice = std::max(worst_alice, std::abs(alice[i].dot(alice[j])));
    }
  }
  if (worst_alice > tol.orthogonality) {
    throw ConsistencyError(
        "orthogonal complete family with non-orthogonal Alice effects (overlap " +
        std::to_string(worst_alice) + ")");
  }

  const auto da = static_cast<std::size_t>(alice.front().size());
  const Matrix basis = complete_basis(alice, da);
  std::vector<Vector> pvm_vectors;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) pvm_vectors.emplace_back(basis.col(k));
  std::vector<Vector> family_alice(pvm_vectors.begin(),
                                   pvm_vectors.begin() + static_cast<std::ptrdiff_t>(alice.size()));
  out.holds = true;
  out.magnitude = std::max(worst_bob, std::abs(total - 1.0));
  out.family = OrthogonalCompleteFamily{std::move(family_alice), std::move(bob), std::move(probs),
                                        NonDegeneratePvm(std::move(pvm_vectors))};
  return out;
}

OrthogonalCompleteCheck orthogonal_complete_check(const DensityOperator& rho,
                                                  const NonDegeneratePvm& pvm,
                                                  const Tolerances& tol) {
  require_bipartite(rho, "orthogonal_complete_check");
  require_alice_dim(rho, pvm.dim(), "orthogonal_complete_check");
  std::vector<SteeredOutcome> outcomes;
  for (const auto& v : pvm.vectors()) {
    SteeredOutcome o = conditional_state(rho, Effect(projector(v)), tol);
    if (o.probability > tol.prob_floor) outcomes.push_back(std::move(o));
  }
  return orthogonal_complete_check(outcomes, tol);
}

PureSteeredSubspace pure_steered_subspace(const DensityOperator& rho,
                                          const OrthogonalCompleteFamily& family,
                                          const Vector& extra_beta, std::uint64_t seed,
                                          std::size_t samples, const Tolerances& tol) {
  require_bipartite(rho, "pure_steered_subspace");
  const auto db = static_cast<Eigen::Index>(rho.dims()[1]);
  for (const auto& b : family.bob) {
    if (b.size() != db) throw DimensionError("pure_steered_subspace: family does not match d_B");
  }
  const MaxPureSteering reach = max_pure_steering(rho, extra_beta, tol);
  if (reach.probability <= tol.prob_floor) {
    throw UnreachableTarget("pure_steered_subspace: the extra state is not a pure steered state");
  }

  PureSteeredSubspace out;
  std::vector<Vector> members;
  for (std::size_t i = 0; i < family.bob.size(); ++i) {
    if (std::abs(family.bob[i].dot(extra_beta)) > tol.overlap) {
      out.members.push_back(i);
      members.push_back(family.bob[i]);
    }
  }
  out.basis = orthonormalize(members, db);

  // Every state in the span must be reachable.
  Rng rng(seed);
  out.min_sample_probability = 1.0;
  for (std::size_t s = 0; s < samples && out.basis.cols() > 0; ++s) {
    const Vector coeffs = random_unit_vector(static_cast<std::size_t>(out.basis.cols()), rng);
    const Vector target = out.basis * coeffs;
    const double p = max_pure_steering(rho, target / target.norm(), tol).probability;
    if (p <= tol.prob_floor) {
      throw ConsistencyError("pure_steered_subspace: sampled state in the span is unreachable");
    }
    out.min_sample_probability = std::min(out.min_sample_probability, p);
    ++out.samples_checked;
  }
  return out;
}

std::string to_string(SteerabilityVerdict::Tag tag) {
  switch (tag) {
    case SteerabilityVerdict::Tag::Steerable: return "Steerable";
    case SteerabilityVerdict::Tag::SeparableExplicit: return "SeparableExplicit";
    case SteerabilityVerdict::Tag::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

SteerabilityVerdict classify(const DensityOperator& rho, const NonDegeneratePvm& pvm,
                             const Tolerances& tol) {
  require_bipartite(rho, "classify");
  require_alice_dim(rho, pvm.dim(), "classify");
  const std::vector<ActiveOutcome> active = pure_active_outcomes(rho, pvm, tol);
  const auto n = static_cast<Eigen::Index>(active.size());
  const auto db = static_cast<Eigen::Index>(rho.dims()[1]);

  SteerabilityVerdict verdict;

  // The steered states must be linearly independent.
  Matrix bobs(db, n);
  for (Eigen::Index i = 0; i < n; ++i) bobs.col(i) = active[static_cast<std::size_t>(i)].bob;
  const Eigensystem gram = eigh(hermitian_part(bobs.adjoint() * bobs));
  if (n > db || gram.values(n - 1) <= tol.rank * gram.values(0)) {
    verdict.diagnostic = "DependentSteeredStates: steered states are linearly dependent";
    return verdict;
  }

  // With independent |beta_i>, the operators |beta_i><beta_j| are independent
  // as well; this is what makes the off-diagonal test decisive.
  Matrix ops(db * db, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Matrix e = bobs.col(i) * bobs.col(j).adjoint();
      ops.col(i * n + j) = Eigen::Map<const Vector>(e.data(), db * db);
    }
  }
  const Eigen::JacobiSVD<Matrix> svd(ops);
  const RealVector sv = svd.singularValues();
  if (sv(sv.size() - 1) <= tol.rank * sv(0)) {
    throw ConsistencyError("classify: operators |beta_i><beta_j| are dependent");
  }

  double worst = 0.0;
  SteeringCertificate cert;
  std::vector<Vector> products;
  for (const auto& a : active) products.push_back(kron(a.alice, a.bob));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double mag = std::abs(matrix_element(rho, products[static_cast<std::size_t>(i)],
                                                 products[static_cast<std::size_t>(j)]));
      if (mag > worst) {
        worst = mag;
        cert = {active[static_cast<std::size_t>(i)].index,
                active[static_cast<std::size_t>(j)].index, mag};
      }
    }
  }

  if (worst > tol.offdiag) {
    verdict.tag = SteerabilityVerdict::Tag::Steerable;
    verdict.certificate = cert;
    return verdict;
  }
  if (worst > tol.offdiag_floor) {
    verdict.certificate = cert;
    verdict.diagnostic = "off-diagonal element " + std::to_string(worst) +
                         " lies between the separable and steerable thresholds";
    return verdict;
  }

  Matrix separable = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t i = 0; i < active.size(); ++i) {
    verdict.ensemble.push_back({active[i].probability, active[i].alice, active[i].bob});
    separable += active[i].probability * projector(products[i]);
  }
  verdict.reconstruction_error = (rho.matrix() - separable).norm();
  if (verdict.reconstruction_error > 1e-8) {
    verdict.ensemble.clear();
    verdict.diagnostic =
        "outcomes below the probability floor carry coherence; separable form fails by " +
        std::to_string(verdict.reconstruction_error);
    return verdict;
  }
  verdict.tag = SteerabilityVerdict::Tag::SeparableExplicit;
  return verdict;
}

}  // namespace steer
