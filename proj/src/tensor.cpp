#include "steer/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "steer/errors.hpp"

namespace steer {

Dims::Dims(std::initializer_list<std::size_t> factors)
    : Dims(std::vector<std::size_t>(factors)) {}

Dims::Dims(std::vector<std::size_t> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw DimensionError("empty dimension factorization");
  for (std::size_t d : factors_) {
    if (d == 0) throw DimensionError("subsystem dimension must be >= 1");
    total_ *= d;
  }
}

Dims Dims::subset(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), i) != keep.end()) {
      out.push_back(factors_[i]);
    }
  }
  if (out.empty()) return Dims{1};
  return Dims(std::move(out));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const auto rows = static_cast<std::size_t>(a.rows() * b.rows());
  const auto cols = static_cast<std::size_t>(a.cols() * b.cols());
  if (rows > kMaxDim || cols > kMaxDim) {
    throw DimensionError("kron result " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " exceeds the dimension cap " +
                         std::to_string(kMaxDim));
  }
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Vector kron(std::initializer_list<Vector> factors) {
  Vector out = Vector::Ones(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

Matrix partial_trace(const Matrix& m, const Dims& dims,
                     std::span<const std::size_t> keep) {
  const auto n = static_cast<std::size_t>(m.rows());
  if (m.rows() != m.cols() || n != dims.total()) {
    throw DimensionError("partial_trace: matrix of size " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) +
                         " does not match factorization total " +
                         std::to_string(dims.total()));
  }
  for (std::size_t k : keep) {
    if (k >= dims.count()) {
      throw DimensionError("partial_trace: subsystem index " +
                           std::to_string(k) + " out of range");
    }
  }
  const std::size_t parts = dims.count();
  std::vector<bool> kept(parts, false);
  for (std::size_t k : keep) kept[k] = true;

  std::size_t kept_total = 1;
  std::size_t traced_total = 1;
  for (std::size_t s = 0; s < parts; ++s) {
    (kept[s] ? kept_total : traced_total) *= dims[s];
  }

  // full_index[r * traced_total + t] is the index in the full space whose
  // kept digits spell r and traced digits spell t.
  std::vector<std::size_t> full_index(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx;
    std::size_t r = 0, t = 0, r_stride = 1, t_stride = 1;
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
    full_index[r * traced_total + t] = idx;
  }

  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kept_total),
                            static_cast<Eigen::Index>(kept_total));
  for (std::size_t r = 0; r < kept_total; ++r) {
    for (std::size_t c = 0; c < kept_total; ++c) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < traced_total; ++t) {
        acc += m(static_cast<Eigen::Index>(full_index[r * traced_total + t]),
                 static_cast<Eigen::Index>(full_index[c * traced_total + t]));
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, const Dims& dims,
                     std::initializer_list<std::size_t> keep) {
  return partial_trace(m, dims,
                       std::span<const std::size_t>(keep.begin(), keep.size()));
}

double hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

bool is_hermitian(const Matrix& m, double tol) {
  return hermitian_defect(m) <= tol;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

Eigensystem eigh(const Matrix& m, double herm_tol) {
  if (m.rows() != m.cols()) throw DimensionError("eigh: matrix is not square");
  if (!all_finite(m)) throw InvalidOperator("eigh: non-finite entry");
  const double defect = hermitian_defect(m);
  if (defect > herm_tol) {
    throw InvalidOperator("eigh: matrix is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw InvalidOperator("eigh: eigensolver did not converge");
  }
  // Eigen sorts ascending.
  Eigensystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

Matrix kernel(const Matrix& m, double tol, double scale) {
  const Eigensystem es = eigh(m);
  const Eigen::Index n = m.rows();
  const double lambda_max = n > 0 ? es.values(0) : 0.0;
  if (lambda_max <= 0.0 && scale <= 0.0) return Matrix::Identity(n, n);
  const double threshold = tol * std::max(lambda_max, scale);
  Eigen::Index first = n;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (es.values(k) <= threshold) {
      first = k;
      break;
    }
  }
  return es.vectors.rightCols(n - first);
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Vector basis_vector(std::size_t dim, std::size_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

Vector canonical_phase(const Vector& v) {
  if (v.size() == 0) return v;
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) best = std::max(best, std::abs(v(i)));
  if (best == 0.0) return v;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= best * (1.0 - 1e-12)) {
      const Complex phase = std::conj(v(i)) / std::abs(v(i));
      return v * phase;
    }
  }
  return v;
}

double phase_distance(const Vector& a, const Vector& b) {
  return std::abs(1.0 - std::abs(a.dot(b)));
}

Matrix complete_basis(std::span<const Vector> seeds, std::size_t dim,
                      double skip_tol) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix basis(d, 0);
  auto try_add = [&](const Vector& candidate) {
    Vector r = candidate;
    // Two projection passes keep the result orthogonal to machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < basis.cols(); ++k) {
        r -= basis.col(k) * basis.col(k).dot(r);
      }
    }
    const double norm = r.norm();
    if (norm < skip_tol) return;
    basis.conservativeResize(d, basis.cols() + 1);
    basis.col(basis.cols() - 1) = r / norm;
  };
  for (const auto& s : seeds) {
    if (s.size() != d) throw DimensionError("complete_basis: seed dimension mismatch");
    if (basis.cols() < d) try_add(s);
  }
  for (std::size_t i = 0; i < dim && basis.cols() < d; ++i) {
    try_add(basis_vector(dim, i));
  }
  return basis;
}

}  // namespace steer
