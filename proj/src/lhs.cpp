#include "steer/lhs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "steer/errors.hpp"

namespace steer {

LhsEnsemble::LhsEnsemble(std::vector<Member> members, double tol)
    : members_(std::move(members)) {
  if (members_.empty()) throw InvalidParameter("LHS ensemble is empty");
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.weight >= -tol)) {
      throw InvalidParameter("LHS weight is negative: " + std::to_string(m.weight));
    }
    if (m.state.dims() != members_.front().state.dims()) {
      throw DimensionError("LHS states have different dimensions");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > tol) {
    throw InvalidParameter("LHS weights sum to " + std::to_string(total));
  }
}

ResponseFunction::ResponseFunction(Table table, double tol) : table_(std::move(table)) {
  for (std::size_t x = 0; x < table_.size(); ++x) {
    for (std::size_t xi = 0; xi < table_[x].size(); ++xi) {
      const auto& row = table_[x][xi];
      const std::string where =
          "response row (x=" + std::to_string(x) + ", xi=" + std::to_string(xi) + ")";
      if (row.empty()) throw InvalidParameter(where + " is empty");
      double total = 0.0;
      for (double v : row) {
        if (!(v >= -tol && v <= 1.0 + tol)) {
          throw InvalidParameter(where + " has a value outside [0, 1]");
        }
        total += v;
      }
      if (std::abs(total - 1.0) > tol) {
        throw InvalidParameter(where + " sums to " + std::to_string(total));
      }
    }
  }
}

Assemblage reconstruct_assemblage(const LhsEnsemble& ensemble,
                                  const ResponseFunction& response,
                                  std::span<const std::string> labels,
                                  const Tolerances& tol) {
  if (labels.size() != response.settings()) {
    throw DimensionError("reconstruct_assemblage: " + std::to_string(labels.size()) +
                         " labels for " + std::to_string(response.settings()) +
                         " response settings");
  }
  const Dims& bob_dims = ensemble.members().front().state.dims();
  const auto db = static_cast<Eigen::Index>(bob_dims.total());
  Matrix bob_state = Matrix::Zero(db, db);
  for (const auto& m : ensemble.members()) bob_state += m.weight * m.state.matrix();

  std::vector<Assemblage::Setting> settings;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    const auto& rows = response.table()[x];
    if (rows.size() != ensemble.size()) {
      throw DimensionError("reconstruct_assemblage: setting '" + labels[x] + "' has " +
                           std::to_string(rows.size()) + " hidden-state rows, ensemble has " +
                           std::to_string(ensemble.size()));
    }
    const std::size_t outcomes = rows.front().size();
    for (const auto& r : rows) {
      if (r.size() != outcomes) {
        throw DimensionError("reconstruct_assemblage: ragged response rows in setting '" +
                             labels[x] + "'");
      }
    }
    Assemblage::Setting s{labels[x], {}};
    for (std::size_t a = 0; a < outcomes; ++a) {
      Matrix cond = Matrix::Zero(db, db);
      for (std::size_t xi = 0; xi < ensemble.size(); ++xi) {
        const auto& m = ensemble.members()[xi];
        cond += rows[xi][a] * m.weight * m.state.matrix();
      }
      s.outcomes.push_back(make_outcome(std::move(cond), std::nullopt, bob_dims, tol));
    }
    settings.push_back(std::move(s));
  }
  return Assemblage(std::move(settings), std::move(bob_state), bob_dims, tol.hermiticity);
}

LhsComparison lhs_explains(const LhsEnsemble& ensemble, const ResponseFunction& response,
                           const Assemblage& target, double tol) {
  std::vector<std::string> labels;
  for (const auto& s : target.settings()) labels.push_back(s.label);
  const Assemblage simulated = reconstruct_assemblage(ensemble, response, labels);

  LhsComparison out;
  for (std::size_t x = 0; x < target.size(); ++x) {
    const auto& want = target[x].outcomes;
    const auto& got = simulated[x].outcomes;
    if (want.size() != got.size()) {
      throw DimensionError("lhs_explains: setting '" + labels[x] +
                           "' has a different number of outcomes");
    }
    for (std::size_t a = 0; a < want.size(); ++a) {
      out.max_deviation =
          std::max(out.max_deviation, (want[a].conditional - got[a].conditional).norm());
    }
  }
  out.explains = out.max_deviation <= tol;
  return out;
}

LhsModel lhs_from_product_ensemble(std::span<const ProductTerm> terms,
                                   std::span<const LabeledMeasurement> measurements) {
  std::vector<LhsEnsemble::Member> members;
  for (const auto& t : terms) {
    const auto db = static_cast<std::size_t>(t.bob.size());
    members.push_back({t.weight, DensityOperator(projector(t.bob), Dims{db})});
  }
  ResponseFunction::Table table;
  std::vector<std::string> labels;
  for (const auto& m : measurements) {
    labels.push_back(m.label);
    std::vector<std::vector<double>> rows;
    for (const auto& t : terms) {
      if (static_cast<std::size_t>(t.alice.size()) != m.povm.dim()) {
        throw DimensionError("lhs_from_product_ensemble: Alice vector does not match setting '" +
                             m.label + "'");
      }
      std::vector<double> row;
      for (const auto& e : m.povm.effects()) {
        row.push_back(std::clamp(t.alice.dot(e.matrix() * t.alice).real(), 0.0, 1.0));
      }
      rows.push_back(std::move(row));
    }
    table.push_back(std::move(rows));
  }
  return LhsModel{LhsEnsemble(std::move(members)), ResponseFunction(std::move(table)),
                  std::move(labels)};
}

std::vector<ForcedPureState> forced_pure_states(const Assemblage& target,
                                                const Tolerances& tol) {
  auto find = [&](std::vector<ForcedPureState>& list, const Vector& v) {
    return std::find_if(list.begin(), list.end(), [&](const ForcedPureState& f) {
      return phase_distance(f.state, v) <= tol.vector_identity;
    });
  };

  std::vector<ForcedPureState> forced;
  for (std::size_t x = 0; x < target.size(); ++x) {
    std::vector<ForcedPureState> local;
    for (const auto& o : target[x].outcomes) {
      if (!o.pure || o.probability <= tol.prob_floor) continue;
      auto it = find(local, *o.pure_vector);
      if (it == local.end()) {
        local.push_back({*o.pure_vector, o.probability, x});
      } else {
        it->weight += o.probability;
      }
    }
    for (auto& f : local) {
      auto it = find(forced, f.state);
      if (it == forced.end()) {
        forced.push_back(std::move(f));
      } else if (f.weight > it->weight) {
        it->weight = f.weight;
        it->setting = f.setting;
      }
    }
  }
  return forced;
}

PureWitnessReport pure_probability_witness(const Assemblage& target, const Tolerances& tol) {
  PureWitnessReport out;
  out.entries = forced_pure_states(target, tol);
  for (const auto& f : out.entries) out.total += f.weight;
  out.steerable = out.total > 1.0 + tol.witness;
  return out;
}

SteerabilityVerdict witness_verdict(const PureWitnessReport& report) {
  SteerabilityVerdict v;
  v.pure_probability_sum = report.total;
  if (report.steerable) {
    v.tag = SteerabilityVerdict::Tag::Steerable;
  } else {
    v.diagnostic = "pure-probability sum does not exceed one; not witnessed";
  }
  return v;
}

}  // namespace steer
