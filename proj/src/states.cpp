#include "steer/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "steer/errors.hpp"

namespace steer {
namespace {

void validate_density(const Matrix& m, const Dims& dims, double tol) {
  if (m.rows() != m.cols()) {
    throw DimensionError("density operator must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  if (static_cast<std::size_t>(m.rows()) != dims.total()) {
    throw DimensionError("density operator of size " + std::to_string(m.rows()) +
                         " does not match factorization total " +
                         std::to_string(dims.total()));
  }
  if (dims.total() > kMaxDim) {
    throw DimensionError("density operator exceeds the dimension cap");
  }
  if (!all_finite(m)) throw InvalidOperator("density operator has a non-finite entry");
  const double defect = hermitian_defect(m);
  if (defect > tol) {
    throw InvalidOperator("density operator is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  }
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > tol) {
    throw InvalidOperator("density operator trace is " + std::to_string(trace));
  }
  const Eigensystem es = eigh(m, tol);
  const double min_eig = es.values(es.values.size() - 1);
  if (min_eig < -tol) {
    throw InvalidOperator("density operator has negative eigenvalue " +
                          std::to_string(min_eig));
  }
}

void check_unit_vector(const Vector& v, std::size_t dim, double tol,
                       const char* what) {
  if (static_cast<std::size_t>(v.size()) != dim) {
    throw InvalidParameter(std::string(what) + " must have dimension " +
                           std::to_string(dim));
  }
  if (!all_finite(v)) throw InvalidParameter(std::string(what) + " has a non-finite entry");
  if (std::abs(v.norm() - 1.0) > tol) {
    throw InvalidParameter(std::string(what) + " is not normalized (norm " +
                           std::to_string(v.norm()) + ")");
  }
}

void check_family_ranges(double eta, Complex z) {
  if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0) {
    throw InvalidParameter("eta must lie in [0, 1], got " + std::to_string(eta));
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
      std::abs(z) > 1.0 + 1e-12) {
    throw InvalidParameter("|z| must be at most 1, got " + std::to_string(std::abs(z)));
  }
}

// Two-term family eta |a><a| + (1-eta) |b><b| + sqrt(eta(1-eta)) (z|a><b| + h.c.).
Matrix coherent_mixture(double eta, Complex z, const Vector& a, const Vector& b) {
  const double s = std::sqrt(eta * (1.0 - eta));
  return eta * projector(a) + (1.0 - eta) * projector(b) +
         s * (z * a * b.adjoint() + std::conj(z) * b * a.adjoint());
}

}  // namespace

DensityOperator::DensityOperator(Matrix matrix, Dims dims, double tol)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  validate_density(matrix_, dims_, tol);
}

DensityOperator DensityOperator::from_unnormalized(const Matrix& m, Dims dims,
                                                   double tol) {
  const double trace = m.trace().real();
  if (!(trace > 0.0)) {
    throw InvalidOperator("cannot normalize an operator with trace " +
                          std::to_string(trace));
  }
  return DensityOperator(hermitian_part(m) / trace, std::move(dims),
                         tol + 1e-14 / trace);
}

DensityOperator DensityOperator::reduced(std::initializer_list<std::size_t> keep) const {
  std::vector<std::size_t> k(keep);
  return DensityOperator(partial_trace(matrix_, dims_, k), dims_.subset(k));
}

PureState::PureState(Vector vector, Dims dims, double tol)
    : vector_(std::move(vector)), dims_(std::move(dims)) {
  if (static_cast<std::size_t>(vector_.size()) != dims_.total()) {
    throw DimensionError("state vector of length " + std::to_string(vector_.size()) +
                         " does not match factorization total " +
                         std::to_string(dims_.total()));
  }
  if (!all_finite(vector_)) throw InvalidOperator("state vector has a non-finite entry");
  if (std::abs(vector_.norm() - 1.0) > tol) {
    throw InvalidOperator("state vector is not normalized (norm " +
                          std::to_string(vector_.norm()) + ")");
  }
}

DensityOperator PureState::density() const {
  return DensityOperator(projector(vector_), dims_);
}

double purity(const DensityOperator& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

PurityCheck is_pure(const DensityOperator& rho, double tol) {
  PurityCheck out;
  out.deficit = 1.0 - purity(rho);
  out.pure = out.deficit <= tol;
  if (out.pure) {
    const Eigensystem es = eigh(rho.matrix());
    out.vector = canonical_phase(es.vectors.col(0));
  }
  return out;
}

PureState purify(const DensityOperator& rho, double rank_tol) {
  const Eigensystem es = eigh(rho.matrix());
  const double lambda_max = es.values(0);
  Eigen::Index rank = 0;
  while (rank < es.values.size() && es.values(rank) > rank_tol * lambda_max) ++rank;

  const Eigen::Index n = rho.matrix().rows();
  Vector psi = Vector::Zero(n * rank);
  for (Eigen::Index k = 0; k < rank; ++k) {
    const Vector u = canonical_phase(es.vectors.col(k));
    const double amp = std::sqrt(es.values(k));
    for (Eigen::Index ab = 0; ab < n; ++ab) psi(ab * rank + k) = amp * u(ab);
  }
  psi /= psi.norm();

  std::vector<std::size_t> factors = rho.dims().factors();
  factors.push_back(static_cast<std::size_t>(rank));
  return PureState(std::move(psi), Dims(std::move(factors)));
}

Matrix reduced_from_pure(const PureState& psi,
                         std::initializer_list<std::size_t> keep) {
  const Dims& dims = psi.dims();
  const std::size_t parts = dims.count();
  std::vector<bool> kept(parts, false);
  for (std::size_t k : keep) {
    if (k >= parts) throw DimensionError("reduced_from_pure: subsystem out of range");
    kept[k] = true;
  }
  std::size_t kept_total = 1, traced_total = 1;
  for (std::size_t s = 0; s < parts; ++s) (kept[s] ? kept_total : traced_total) *= dims[s];

  // Reshape into (kept x traced) so that the reduced state is M M^dagger.
  Matrix reshaped(static_cast<Eigen::Index>(kept_total),
                  static_cast<Eigen::Index>(traced_total));
  for (std::size_t idx = 0; idx < dims.total(); ++idx) {
    std::size_t rest = idx, r = 0, t = 0, r_stride = 1, t_stride = 1;
    for (std::size_t s = parts; s-- > 0;) {
      const std::size_t digit = rest % dims[s];
      rest /= dims[s];
      if (kept[s]) {
        r += digit * r_stride;
        r_stride *= dims[s];
      } else {
        t += digit * t_stride;
        t_stride *= dims[s];
      }
    }
    reshaped(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)) =
        psi.vector()(static_cast<Eigen::Index>(idx));
  }
  return reshaped * reshaped.adjoint();
}

DensityOperator product_state(const DensityOperator& a, const DensityOperator& b) {
  std::vector<std::size_t> factors = a.dims().factors();
  for (std::size_t d : b.dims().factors()) factors.push_back(d);
  return DensityOperator(kron(a.matrix(), b.matrix()), Dims(std::move(factors)));
}

DensityOperator maximally_mixed(const Dims& dims) {
  const auto n = static_cast<Eigen::Index>(dims.total());
  return DensityOperator(Matrix::Identity(n, n) / static_cast<double>(n), dims);
}

DensityOperator two_qubit_family(const TwoQubitFamilyParams& p) {
  check_family_ranges(p.eta, p.z);
  check_unit_vector(p.beta1, 2, 1e-9, "beta1");
  check_unit_vector(p.beta2, 2, 1e-9, "beta2");
  const Vector a = kron(basis_vector(2, 0), p.beta1);
  const Vector b = kron(basis_vector(2, 1), p.beta2);
  return DensityOperator(coherent_mixture(p.eta, p.z, a, b), Dims{2, 2});
}

Vector qutrit_singlet() {
  using namespace spin1_basis;
  const double h = 1.0 / std::sqrt(2.0);
  Vector s = Vector::Zero(9);
  s(kPlus * 3 + kMinus) = h;
  s(kMinus * 3 + kPlus) = -h;
  return s;
}

DensityOperator qutrit_family(const QutritFamilyParams& p) {
  check_family_ranges(p.eta, p.z);
  using namespace spin1_basis;
  const Vector zero_zero = basis_vector(9, kZero * 3 + kZero);
  return DensityOperator(coherent_mixture(p.eta, p.z, qutrit_singlet(), zero_zero),
                         Dims{3, 3});
}

}  // namespace steer
