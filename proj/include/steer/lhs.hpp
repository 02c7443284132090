#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "steer/steering.hpp"

namespace steer {

/// Finite local-hidden-state ensemble {P(xi), sigma_xi}.
class LhsEnsemble {
 public:
  struct Member {
    double weight;
    DensityOperator state;
  };

  explicit LhsEnsemble(std::vector<Member> members, double tol = 1e-9);

  const std::vector<Member>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  std::vector<Member> members_;
};

/// Response table P(a | x, xi), stored as table[x][xi][a].
class ResponseFunction {
 public:
  using Table = std::vector<std::vector<std::vector<double>>>;

  explicit ResponseFunction(Table table, double tol = 1e-9);

  const Table& table() const noexcept { return table_; }
  std::size_t settings() const noexcept { return table_.size(); }
  double operator()(std::size_t a, std::size_t x, std::size_t xi) const {
    return table_.at(x).at(xi).at(a);
  }

 private:
  Table table_;
};

/// A'_{a|x} = sum_xi P(a|x,xi) P(xi) sigma_xi.
Assemblage reconstruct_assemblage(const LhsEnsemble& ensemble,
                                  const ResponseFunction& response,
                                  std::span<const std::string> labels,
                                  const Tolerances& tol = {});

struct LhsComparison {
  bool explains = false;
  double max_deviation = 0.0;  // worst per-conditional Frobenius distance
};

LhsComparison lhs_explains(const LhsEnsemble& ensemble, const ResponseFunction& response,
                           const Assemblage& target, double tol);

/// LHS model of a separable state sum_xi p_xi |a_xi><a_xi| x |b_xi><b_xi|:
/// hidden states |b_xi> with weights p_xi, and responses
/// P(a|x,xi) = <a_xi|E_{a|x}|a_xi>. For a PVM containing every a_xi the
/// response is deterministic.
struct LhsModel {
  LhsEnsemble ensemble;
  ResponseFunction response;
  std::vector<std::string> labels;
};

LhsModel lhs_from_product_ensemble(std::span<const ProductTerm> terms,
                                   std::span<const LabeledMeasurement> measurements);

/// Pure state that every LHS ensemble for the assemblage must contain, with
/// the least weight it must carry.
struct ForcedPureState {
  Vector state;
  double weight = 0.0;
  std::size_t setting = 0;  // where the weight was attained
};

/// Scans the assemblage for pure conditionals. Within one setting, outcomes
/// that steer to the same state add up (their union is one coarser effect).
/// Across settings the same state keeps the largest weight.
std::vector<ForcedPureState> forced_pure_states(const Assemblage& target,
                                                const Tolerances& tol = {});

struct PureWitnessReport {
  std::vector<ForcedPureState> entries;
  double total = 0.0;
  bool steerable = false;  // total > 1 + witness tolerance
};

/// One-sided witness: forced weights over distinct pure states add up to more
/// than one only if no LHS model exists. A total <= 1 proves nothing.
PureWitnessReport pure_probability_witness(const Assemblage& target,
                                           const Tolerances& tol = {});

SteerabilityVerdict witness_verdict(const PureWitnessReport& report);

}  // namespace steer
