#include "criteria.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>

#include "oracles.hpp"
#include "steer/lhs.hpp"
#include "steer/random.hpp"
#include "steer/spin.hpp"
#include "steer/steering.hpp"

namespace steer::acceptance {
namespace {

using namespace std::complex_literals;
using Tag = SteerabilityVerdict::Tag;

// Collects case failures; the first one goes into the detail line.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++cases_;
    if (!ok && failures_++ == 0) first_ = what;
  }
  void note_worst(double v) { worst_ = std::max(worst_, v); }
  bool passed() const { return failures_ == 0 && cases_ > 0; }
  std::string summary(const std::string& extra = {}) const {
    std::ostringstream s;
    s << cases_ << " checks, " << failures_ << " failed";
    if (worst_ > 0.0) s << ", worst " << worst_;
    if (!extra.empty()) s << ", " << extra;
    if (failures_ > 0) s << "; first: " << first_;
    return s.str();
  }

 private:
  std::size_t cases_ = 0, failures_ = 0;
  double worst_ = 0.0;
  std::string first_;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

CriterionResult timed(int id, std::string name, double limit,
                      const std::function<std::pair<bool, std::string>()>& body) {
  CriterionResult r{id, std::move(name), false, {}, 0.0, limit};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto [ok, detail] = body();
    r.passed = ok;
    r.detail = std::move(detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit > 0.0 && r.seconds >= limit) {
    r.passed = false;
    r.detail += fmt(" (over time limit %.0f s)", limit);
  }
  return r;
}

// For a rank-one projector |a><a|, its largest column is a multiple of |a>.
Vector range_vector(const Matrix& e) {
  Eigen::Index best = 0;
  e.colwise().norm().maxCoeff(&best);
  const Vector v = e.col(best);
  return v / v.norm();
}

Vector vec2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

// Independent pairs in canonical phase (largest entry real positive).
std::vector<std::pair<Vector, Vector>> beta_pairs() {
  const double r = 1.0 / std::sqrt(2.0);
  return {
      {vec2(1.0, 0.0), vec2(0.0, 1.0)},
      {vec2(1.0, 0.0), vec2(r, r)},
      {vec2(0.8, 0.6i), vec2(0.6 * std::exp(0.7i), 0.8)},
  };
}

}  // namespace

CriterionResult criterion_1() {
  return timed(1, "inequality values on the qutrit family", 1.0, [] {
    Check c;
    for (int k = 0; k <= 10; ++k) {
      const double eta = 0.1 * k;
      const InequalityResult q = evaluate_inequality(qutrit_family({eta, 0.0}));
      const double rhs = (50.0 - 41.0 * eta) / 16.0;
      c.note_worst(std::abs(q.rhs - rhs));
      c.expect(std::abs(q.lhs) <= 1e-10, fmt("eta=%.1f lhs=%.3g", eta, q.lhs));
      c.expect(std::abs(q.rhs - rhs) <= 1e-9, fmt("eta=%.1f rhs=%.12g expected %.12g", eta, q.rhs, rhs));
      c.expect(!q.violated, fmt("eta=%.1f reported violated", eta));
    }
    return std::pair{c.passed(), c.summary()};
  });
}

CriterionResult criterion_2() {
  return timed(2, "classifier on the two-qubit grid", 1.0, [] {
    Check c;
    const auto pvm = computational_pvm(2);
    const auto pairs = beta_pairs();
    for (std::size_t pi = 0; pi < 2; ++pi) {
      for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (double z : {0.0, 0.5, 1.0}) {
          const auto rho = two_qubit_family({eta, z, pairs[pi].first, pairs[pi].second});
          const SteerabilityVerdict v = classify(rho, pvm);
          const bool steerable = z * z * eta * (1.0 - eta) > 0.0;
          const std::string at = fmt("pair %.0f eta=%.2f z=%.1f", double(pi), eta, z);
          c.expect(v.tag == (steerable ? Tag::Steerable : Tag::SeparableExplicit),
                   at + " tag " + to_string(v.tag));
          if (steerable && v.certificate) {
            const double expected = z * std::sqrt(eta * (1.0 - eta));
            c.note_worst(std::abs(v.certificate->magnitude - expected));
            c.expect(std::abs(v.certificate->magnitude - expected) <= 1e-9,
                     at + fmt(" certificate %.12g expected %.12g", v.certificate->magnitude, expected));
          }
        }
      }
    }
    return std::pair{c.passed(), c.summary()};
  });
}

CriterionResult criterion_3() {
  return timed(3, "ancilla overlap recovery", 0.0, [] {
    Check c;
    const auto pvm = computational_pvm(2);
    const std::vector<Complex> zs{0.0, 0.5, 1.0, -0.3 + 0.4i, 0.9 * std::exp(0.25i * M_PI)};
    double worst_rec = 0.0;
    for (const auto& [b1, b2] : beta_pairs()) {
      for (double eta : {0.25, 0.5, 0.75}) {
        for (Complex z : zs) {
          const auto rho = two_qubit_family({eta, z, b1, b2});
          const PurifiedDecomposition d = purified_decomposition(rho, pvm);
          const std::string at = fmt("eta=%.2f z=(%.2f,%.2f)", eta, z.real(), z.imag());
          if (d.terms.size() != 2) {
            c.expect(false, at + " expected two terms");
            continue;
          }
          const Complex g = d.ancilla_gram(0, 1);
          const Complex g_psi = d.ancilla_vectors[1].dot(d.ancilla_vectors[0]);
          const double rec = (d.reconstruct() - rho.matrix()).norm();
          worst_rec = std::max(worst_rec, rec);
          c.note_worst(std::max(std::abs(g - z), std::abs(g_psi - z)));
          c.expect(std::abs(g - z) <= 1e-9, at + fmt(" overlap (%.12g,%.12g)", g.real(), g.imag()));
          c.expect(std::abs(g_psi - z) <= 1e-9,
                   at + fmt(" purification overlap (%.12g,%.12g)", g_psi.real(), g_psi.imag()));
          c.expect(rec <= 1e-8, at + fmt(" reconstruction error %.3g", rec));
        }
      }
    }
    return std::pair{c.passed(), c.summary(fmt("worst reconstruction %.3g", worst_rec))};
  });
}

CriterionResult criterion_4() {
  return timed(4, "maximal pure steering beats random search", 60.0, [] {
    Check c;
    Rng rng(20240504);
    std::size_t accepted = 0;
    for (int n = 0; n < 50; ++n) {
      const oracles::ReachableInstance inst = oracles::reachable_instance(rng);
      const DensityOperator rho(inst.rho, Dims{inst.da, inst.db});
      const MaxPureSteering m = max_pure_steering(rho, inst.target);
      const oracles::SearchResult s = oracles::random_search_max_pure(
          inst.rho, inst.da, inst.db, inst.target, inst.alice_subspace, 100000, rng);
      accepted += s.accepted;
      const Matrix& e = m.effect.matrix();
      const double idem = (e * e - e).norm();
      const std::string at = fmt("instance %.0f (%.0fx%.0f)", n, double(inst.da), double(inst.db));
      c.note_worst(idem);
      c.expect(m.probability >= s.best - 1e-4,
               at + fmt(" p_max %.12g below search %.12g", m.probability, s.best));
      c.expect(m.probability >= inst.probability - 1e-9,
               at + fmt(" p_max %.12g below construction %.12g", m.probability, inst.probability));
      c.expect(idem <= 1e-9, at + fmt(" |E^2 - E| = %.3g", idem));
      c.expect(s.accepted > 0, at + " random search accepted nothing");
    }
    return std::pair{c.passed(), c.summary(fmt("%.0f accepted samples", double(accepted)))};
  });
}

CriterionResult criterion_5() {
  return timed(5, "pure steered subspace on the qutrit family", 0.0, [] {
    Check c;
    using namespace spin1_basis;
    Matrix pm(3, 2);
    pm.col(0) = basis_vector(3, kPlus);
    pm.col(1) = basis_vector(3, kMinus);
    Vector extra = 0.6 * basis_vector(3, kPlus) + 0.8i * basis_vector(3, kMinus);
    const auto pvm = computational_pvm(3);
    Rng rng(5);
    for (double eta : {0.25, 0.5, 0.75}) {
      for (double z : {0.0, 0.5}) {
        const std::string at = fmt("eta=%.2f z=%.1f", eta, z);
        const auto rho = qutrit_family({eta, z});
        const OrthogonalCompleteCheck family = orthogonal_complete_check(rho, pvm);
        c.expect(family.holds, at + " family premise failed: " + family.failure);
        if (!family.holds) continue;
        const PureSteeredSubspace sub =
            pure_steered_subspace(rho, *family.family, extra, 100 + static_cast<std::uint64_t>(eta * 100), 20);
        c.expect(sub.basis.cols() == 2, at + fmt(" dimension %.0f", double(sub.basis.cols())));
        if (sub.basis.cols() != 2) continue;
        const double angle = std::max(oracles::subspace_defect(sub.basis, pm),
                                      oracles::subspace_defect(pm, sub.basis));
        c.note_worst(angle);
        c.expect(angle <= 1e-8, at + fmt(" principal angle %.3g", angle));
        c.expect(sub.samples_checked == 20 && sub.min_sample_probability > 1e-10,
                 at + fmt(" samples %.0f min p %.3g", double(sub.samples_checked),
                          sub.min_sample_probability));
        for (int k = 0; k < 20; ++k) {
          const Vector w = random_unit_vector(2, rng);
          const Vector target = pm * w;
          const double p = max_pure_steering(rho, target).probability;
          c.expect(p > 1e-10, at + fmt(" independent sample %.0f unreachable (p=%.3g)", k, p));
        }
      }
    }
    return std::pair{c.passed(), c.summary()};
  });
}

CriterionResult criterion_6() {
  return timed(6, "orthogonal complete families have orthogonal effects", 0.0, [] {
    Check c;
    Rng rng(66);
    std::size_t held = 0, rejected = 0;
    for (int n = 0; n < 120; ++n) {
      const std::size_t d = n % 2 == 0 ? 2 : 3;
      const std::size_t dc = (n / 2) % 2 == 0 ? 2 : 3;
      const bool orthogonal = n % 5 != 4;
      const auto inst = oracles::orthogonal_family_instance(d, dc, rng, orthogonal);
      const DensityOperator rho(inst.rho, Dims{d, d});
      std::vector<SteeredOutcome> outcomes;
      for (std::size_t i = 0; i < d; ++i) {
        const MaxPureSteering m = max_pure_steering(rho, inst.bob[i]);
        if (m.rank_one_effects.empty()) {
          c.expect(false, fmt("instance %.0f: steered state %.0f unreachable", n, double(i)));
          continue;
        }
        outcomes.push_back(conditional_state(rho, m.rank_one_effects.front()));
      }
      if (outcomes.size() != d) continue;
      const OrthogonalCompleteCheck check = orthogonal_complete_check(outcomes);
      if (!orthogonal) {
        c.expect(!check.holds, fmt("instance %.0f: non-orthogonal family accepted", n));
        ++rejected;
        continue;
      }
      c.expect(check.holds, fmt("instance %.0f: premises rejected: ", n) + check.failure);
      if (!check.holds) continue;
      ++held;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
          const Vector ai = range_vector(outcomes[i].effect->matrix());
          const Vector aj = range_vector(outcomes[j].effect->matrix());
          const double overlap = std::abs(ai.dot(aj));
          c.note_worst(overlap);
          c.expect(overlap <= 1e-8, fmt("instance %.0f: effects %.0f,%.0f overlap %.3g", n,
                                        double(i), double(j), overlap));
        }
      }
    }
    return std::pair{c.passed(), c.summary(fmt("%.0f families held, %.0f rejected", double(held),
                                               double(rejected)))};
  });
}

CriterionResult criterion_7() {
  return timed(7, "LHS model reproduces separable assemblages", 0.0, [] {
    Check c;
    Rng rng(77);
    std::vector<LabeledMeasurement> ms{{"z", computational_pvm(2).to_povm()}};
    for (int k = 1; k < 5; ++k) {
      ms.push_back({"haar" + std::to_string(k),
                    pvm_from_unitary(computational_pvm(2), haar_unitary(2, rng)).to_povm()});
    }
    for (const auto& [b1, b2] : beta_pairs()) {
      for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const std::string at = fmt("eta=%.2f", eta);
        const auto rho = two_qubit_family({eta, 0.0, b1, b2});
        const SteerabilityVerdict v = classify(rho, computational_pvm(2));
        c.expect(v.tag == Tag::SeparableExplicit, at + " not separable: " + to_string(v.tag));
        if (v.tag != Tag::SeparableExplicit) continue;
        const LhsModel model = lhs_from_product_ensemble(v.ensemble, ms);
        const Assemblage target = assemblage(rho, ms);
        const LhsComparison cmp = lhs_explains(model.ensemble, model.response, target, 1e-10);
        c.note_worst(cmp.max_deviation);
        c.expect(cmp.explains && cmp.max_deviation < 1e-10,
                 at + fmt(" deviation %.3g", cmp.max_deviation));
        const PureWitnessReport w = pure_probability_witness(target);
        c.expect(w.total <= 1.0 + 1e-8 && !w.steerable, at + fmt(" witness total %.12g", w.total));
      }
    }
    return std::pair{c.passed(), c.summary()};
  });
}

CriterionResult criterion_8() {
  return timed(8, "witness detects the state the inequality misses", 0.0, [] {
    Check c;
    using namespace spin1_basis;
    const double r = 1.0 / std::sqrt(2.0);
    const Vector p = basis_vector(3, kPlus), zero = basis_vector(3, kZero), m = basis_vector(3, kMinus);
    const std::vector<NonDegeneratePvm> pvms{
        computational_pvm(3),
        NonDegeneratePvm({Vector(r * (p + m)), zero, Vector(r * (p - m))}),
        NonDegeneratePvm({Vector(r * (p + 1.0i * m)), zero, Vector(r * (p - 1.0i * m))}),
    };
    const double eta = 0.5;
    const auto rho = qutrit_family({eta, 0.0});
    const PureWitnessReport w = pure_probability_witness(assemblage(rho, pvms));
    const double expected = 1.0 + 2.0 * eta;
    c.expect(w.steerable && w.total > 1.0, fmt("witness total %.12g", w.total));
    c.expect(std::abs(w.total - expected) <= 1e-9, fmt("total %.12g expected %.12g", w.total, expected));
    Matrix pm(3, 2);
    pm << p, m;
    for (const auto& e : w.entries) {
      const bool in_zero = std::abs(std::abs(zero.dot(e.state)) - 1.0) <= 1e-9;
      const bool in_pm = (e.state - pm * (pm.adjoint() * e.state)).norm() <= 1e-9;
      c.expect(in_zero || in_pm, "forced state outside span{|0>} and span{|+1>,|-1>}");
    }
    const InequalityResult q = evaluate_inequality(rho);
    c.expect(!q.violated, fmt("inequality violated: lhs %.6g rhs %.6g", q.lhs, q.rhs));
    return std::pair{c.passed(), c.summary(fmt("total %.6g vs 1, inequality lhs %.3g rhs %.6g",
                                                w.total, q.lhs, q.rhs))};
  });
}

CriterionResult criterion_9() {
  return timed(9, "classifier agrees with partial transpose", 0.0, [] {
    Check c;
    const auto pvm = computational_pvm(2);
    const auto pairs = beta_pairs();
    for (std::size_t pi = 0; pi < 2; ++pi) {
      for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (double z : {0.0, 0.5, 1.0}) {
          const auto rho = two_qubit_family({eta, z, pairs[pi].first, pairs[pi].second});
          const SteerabilityVerdict v = classify(rho, pvm);
          const double lo = oracles::ppt_min_eigenvalue(rho.matrix(), 2, 2);
          const bool ppt = lo >= -1e-10;
          const std::string at = fmt("pair %.0f eta=%.2f z=%.1f min PT eig %.3g", double(pi), eta, z, lo);
          c.expect(v.tag != Tag::Undetermined, at + " undetermined");
          c.expect((v.tag == Tag::SeparableExplicit) == ppt, at + " tag " + to_string(v.tag));
        }
      }
    }
    return std::pair{c.passed(), c.summary()};
  });
}

std::vector<CriterionResult> run_all() {
  return {criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(),
          criterion_6(), criterion_7(), criterion_8(), criterion_9()};
}

std::string format(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s  %d  %s  (%.3f s)  ", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace steer::acceptance
