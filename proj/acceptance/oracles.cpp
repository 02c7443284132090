#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace steer::oracles {
namespace {

Vector gaussian_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

Vector unit(std::size_t n, Rng& rng) {
  Vector v = gaussian_vector(n, rng);
  return v / v.norm();
}

// Orthonormal basis from Gram-Schmidt on Gaussian columns.
Matrix random_basis(std::size_t n, Rng& rng) {
  Matrix q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    Vector v = gaussian_vector(n, rng);
    for (Eigen::Index k = 0; k < c; ++k) v -= q.col(k) * q.col(k).dot(v);
    for (Eigen::Index k = 0; k < c; ++k) v -= q.col(k) * q.col(k).dot(v);
    q.col(c) = v / v.norm();
  }
  return q;
}

std::vector<double> random_weights(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = u(rng));
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace

Matrix partial_transpose_b(const Matrix& rho, std::size_t da, std::size_t db) {
  Matrix out(rho.rows(), rho.cols());
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b2 = 0; b2 < db; ++b2)
          out(static_cast<Eigen::Index>(a * db + b), static_cast<Eigen::Index>(a2 * db + b2)) =
              rho(static_cast<Eigen::Index>(a * db + b2), static_cast<Eigen::Index>(a2 * db + b));
  return out;
}

double ppt_min_eigenvalue(const Matrix& rho, std::size_t da, std::size_t db) {
  const Matrix pt = partial_transpose_b(rho, da, db);
  Eigen::ComplexEigenSolver<Matrix> solver(pt, false);
  double lo = INFINITY;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    lo = std::min(lo, solver.eigenvalues()(i).real());
  }
  return lo;
}

Matrix trace_last(const Vector& psi, std::size_t dx, std::size_t dc) {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dx), static_cast<Eigen::Index>(dx));
  for (std::size_t i = 0; i < dx; ++i)
    for (std::size_t j = 0; j < dx; ++j) {
      Complex s = 0.0;
      for (std::size_t c = 0; c < dc; ++c) {
        s += psi(static_cast<Eigen::Index>(i * dc + c)) *
             std::conj(psi(static_cast<Eigen::Index>(j * dc + c)));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
    }
  return out;
}

double subspace_defect(const Matrix& q, const Matrix& p) {
  const Matrix r = q - p * (p.adjoint() * q);
  if (r.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(r);
  return svd.singularValues()(0);
}

ReachableInstance reachable_instance(Rng& rng) {
  std::uniform_int_distribution<int> two_or_three(2, 3);
  ReachableInstance inst;
  inst.da = static_cast<std::size_t>(two_or_three(rng));
  inst.db = static_cast<std::size_t>(two_or_three(rng));
  const std::size_t dc = static_cast<std::size_t>(two_or_three(rng));
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, inst.da)(rng);

  const Matrix alpha = random_basis(inst.da, rng);
  inst.target = unit(inst.db, rng);
  const std::vector<double> w = random_weights(inst.da, rng);

  const std::size_t dbc = inst.db * dc;
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(inst.da * dbc));
  for (std::size_t i = 0; i < inst.da; ++i) {
    Vector bc(static_cast<Eigen::Index>(dbc));
    if (i < k) {
      const Vector gamma = unit(dc, rng);
      for (std::size_t b = 0; b < inst.db; ++b)
        for (std::size_t c = 0; c < dc; ++c)
          bc(static_cast<Eigen::Index>(b * dc + c)) =
              inst.target(static_cast<Eigen::Index>(b)) * gamma(static_cast<Eigen::Index>(c));
    } else {
      bc = unit(dbc, rng);
    }
    const double c = std::sqrt(w[i]);
    for (std::size_t a = 0; a < inst.da; ++a)
      for (std::size_t x = 0; x < dbc; ++x)
        psi(static_cast<Eigen::Index>(a * dbc + x)) +=
            c * alpha(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i)) *
            bc(static_cast<Eigen::Index>(x));
  }
  inst.rho = trace_last(psi, inst.da * inst.db, dc);
  inst.alice_subspace = alpha.leftCols(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) inst.probability += w[i];
  return inst;
}

SearchResult random_search_max_pure(const Matrix& rho, std::size_t da, std::size_t db,
                                    const Vector& target, const Matrix& hint,
                                    std::size_t samples, Rng& rng, double filter) {
  const std::size_t n = da * db;
  std::vector<Complex> r(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r[i * n + j] = rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  std::vector<Complex> t(db);
  for (std::size_t b = 0; b < db; ++b) t[b] = target(static_cast<Eigen::Index>(b));

  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> alpha(da), cond(db * db);
  const std::size_t k = static_cast<std::size_t>(hint.cols());
  std::vector<Complex> coeff(std::max<std::size_t>(k, 1));
  SearchResult out;

  for (std::size_t s = 0; s < samples; ++s) {
    if (s % 2 == 0 || k == 0) {
      for (auto& a : alpha) a = Complex(g(rng), g(rng));
    } else {
      for (std::size_t c = 0; c < k; ++c) coeff[c] = Complex(g(rng), g(rng));
      for (std::size_t a = 0; a < da; ++a) {
        Complex v = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
          v += hint(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c)) * coeff[c];
        }
        alpha[a] = v;
      }
    }
    double norm2 = 0.0;
    for (const auto& a : alpha) norm2 += std::norm(a);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : alpha) a *= inv;

    // E'_{b b2} = sum_{a a2} conj(alpha_a) alpha_a2 rho_{(a b),(a2 b2)}
    std::fill(cond.begin(), cond.end(), Complex(0.0));
    for (std::size_t a = 0; a < da; ++a) {
      const Complex ca = std::conj(alpha[a]);
      for (std::size_t a2 = 0; a2 < da; ++a2) {
        const Complex w = ca * alpha[a2];
        for (std::size_t b = 0; b < db; ++b) {
          const Complex* row = &r[(a * db + b) * n + a2 * db];
          for (std::size_t b2 = 0; b2 < db; ++b2) cond[b * db + b2] += w * row[b2];
        }
      }
    }
    double p = 0.0;
    for (std::size_t b = 0; b < db; ++b) p += cond[b * db + b].real();
    double dev2 = 0.0;
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t b2 = 0; b2 < db; ++b2)
        dev2 += std::norm(cond[b * db + b2] - p * t[b] * std::conj(t[b2]));
    if (std::sqrt(dev2) <= filter) {
      ++out.accepted;
      out.best = std::max(out.best, p);
    }
  }
  return out;
}

OrthogonalFamilyInstance orthogonal_family_instance(std::size_t d, std::size_t dc, Rng& rng,
                                                    bool orthogonal_bob) {
  OrthogonalFamilyInstance inst;
  inst.d = d;
  const Matrix alpha = random_basis(d, rng);
  const Matrix beta = random_basis(d, rng);
  inst.probabilities = random_weights(d, rng);
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(d * d * dc));
  for (std::size_t i = 0; i < d; ++i) {
    Vector b = beta.col(static_cast<Eigen::Index>(i));
    if (!orthogonal_bob && i > 0) {
      b = beta.col(static_cast<Eigen::Index>(i)) + 0.5 * beta.col(0);
      b /= b.norm();
    }
    const Vector a = alpha.col(static_cast<Eigen::Index>(i));
    const Vector gamma = unit(dc, rng);
    const double c = std::sqrt(inst.probabilities[i]);
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y)
        for (std::size_t z = 0; z < dc; ++z)
          psi(static_cast<Eigen::Index>((x * d + y) * dc + z)) +=
              c * a(static_cast<Eigen::Index>(x)) * b(static_cast<Eigen::Index>(y)) *
              gamma(static_cast<Eigen::Index>(z));
    inst.alice.push_back(a);
    inst.bob.push_back(b);
  }
  inst.rho = trace_last(psi, d * d, dc);
  return inst;
}

}  // namespace steer::oracles
