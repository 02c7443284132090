#include "catch_amalgamated.hpp"

#include "helpers.hpp"
#include "steer/errors.hpp"
#include "steer/lhs.hpp"

using namespace steer;
using namespace testing;
using Catch::Matchers::WithinAbs;

namespace {

const Vector kPlus2 = vec({kInvSqrt2, kInvSqrt2});

std::vector<LabeledMeasurement> as_labeled(const std::vector<NonDegeneratePvm>& pvms) {
  std::vector<LabeledMeasurement> out;
  for (std::size_t i = 0; i < pvms.size(); ++i) out.push_back({"x" + std::to_string(i), pvms[i].to_povm()});
  return out;
}

}  // namespace

TEST_CASE("ensemble and response validation") {
  CHECK_THROWS_AS(LhsEnsemble({{0.5, maximally_mixed(Dims{2})}}), InvalidParameter);
  CHECK_THROWS_AS(ResponseFunction(ResponseFunction::Table{{{}}}), InvalidParameter);
  CHECK_THROWS_AS(ResponseFunction(ResponseFunction::Table{{{0.5, 0.6}}}), InvalidParameter);
  CHECK_THROWS_AS(ResponseFunction(ResponseFunction::Table{{{1.5, -0.5}}}), InvalidParameter);
  CHECK_NOTHROW(ResponseFunction(ResponseFunction::Table{{{0.25, 0.75}}}));
}

TEST_CASE("a single hidden state with a uniform response") {
  Rng rng(40);
  const DensityOperator sigma = random_density(Dims{2}, 2, rng);
  const LhsEnsemble ens({{1.0, sigma}});
  const ResponseFunction resp({{{0.5, 0.5}}, {{0.2, 0.3, 0.5}}});
  const std::vector<std::string> labels{"a", "b"};
  const Assemblage a = reconstruct_assemblage(ens, resp, labels);
  CHECK(a[0].outcomes.size() == 2);
  CHECK(a[1].outcomes.size() == 3);
  CHECK(max_abs(a[1].outcomes[2].conditional - 0.5 * sigma.matrix()) < 1e-15);
  CHECK(a[1].label == "b");
}

TEST_CASE("separable family assemblage is reproduced exactly") {
  const double eta = 0.35;
  const Vector b1 = basis_vector(2, 0);
  const DensityOperator rho = two_qubit_family({eta, 0.0, b1, kPlus2});
  const LhsEnsemble ens({{eta, PureState(b1, Dims{2}).density()},
                         {1 - eta, PureState(kPlus2, Dims{2}).density()}});
  const ResponseFunction resp({{{1.0, 0.0}, {0.0, 1.0}}});
  const Assemblage target = assemblage(rho, std::vector<NonDegeneratePvm>{computational_pvm(2)});
  const LhsComparison cmp = lhs_explains(ens, resp, target, 1e-12);
  CHECK(cmp.explains);
  CHECK(cmp.max_deviation < 1e-12);

  const std::vector<std::string> labels{"x0"};
  const Assemblage self = reconstruct_assemblage(ens, resp, labels);
  CHECK(lhs_explains(ens, resp, self, 1e-15).explains);
}

TEST_CASE("the same ensemble does not explain an entangled assemblage") {
  const DensityOperator sep = two_qubit_family({0.5, 0.0});
  const DensityOperator ent = two_qubit_family({0.5, 1.0});
  const std::vector<NonDegeneratePvm> pvms{computational_pvm(2), pvm_containing(kPlus2)};
  const SteerabilityVerdict v = classify(sep, computational_pvm(2));
  const LhsModel model = lhs_from_product_ensemble(v.ensemble, as_labeled(pvms));
  CHECK(lhs_explains(model.ensemble, model.response, assemblage(sep, pvms), 1e-10).explains);
  const LhsComparison cmp = lhs_explains(model.ensemble, model.response, assemblage(ent, pvms), 1e-10);
  CHECK_FALSE(cmp.explains);
  CHECK(cmp.max_deviation > 0.1);
}

TEST_CASE("reconstructed assemblages are positive and no-signalling") {
  Rng rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 30; ++n) {
    std::vector<LhsEnsemble::Member> members;
    std::vector<double> w(3);
    double total = 0.0;
    for (auto& x : w) total += (x = u(rng) + 0.01);
    for (auto& x : w) members.push_back({x / total, random_density(Dims{2}, 1 + n % 2, rng)});
    const LhsEnsemble ens(members);
    ResponseFunction::Table table(2, std::vector<std::vector<double>>(3));
    for (auto& setting : table)
      for (auto& row : setting) {
        const double p = u(rng);
        row = {p, 1.0 - p};
      }
    const std::vector<std::string> labels{"a", "b"};
    const Assemblage a = reconstruct_assemblage(ens, ResponseFunction(table), labels);
    for (const auto& s : a.settings()) {
      Matrix sum = Matrix::Zero(2, 2);
      for (const auto& o : s.outcomes) {
        CHECK(eigh(o.conditional).values.minCoeff() >= -1e-12);
        sum += o.conditional;
      }
      CHECK(max_abs(sum - a.bob_state()) < 1e-9);
    }
  }
}

TEST_CASE("forced pure states from the family") {
  const double eta = 0.25;
  const Vector b1 = vec({0.8, Complex(0.0, 0.6)});
  const DensityOperator rho = two_qubit_family({eta, 0.0, b1, kPlus2});
  const Assemblage a = assemblage(rho, std::vector<NonDegeneratePvm>{computational_pvm(2)});
  const auto forced = forced_pure_states(a);
  REQUIRE(forced.size() == 2);
  CHECK(phase_distance(forced[0].state, b1) < 1e-12);
  CHECK_THAT(forced[0].weight, WithinAbs(eta, 1e-12));
  CHECK_THAT(forced[0].weight + forced[1].weight, WithinAbs(1.0, 1e-9));
}

TEST_CASE("no pure conditionals means nothing is forced") {
  const Assemblage a = assemblage(maximally_mixed(Dims{2, 2}),
                                  std::vector<NonDegeneratePvm>{computational_pvm(2)});
  CHECK(forced_pure_states(a).empty());
  const PureWitnessReport w = pure_probability_witness(a);
  CHECK(w.total == 0.0);
  CHECK(witness_verdict(w).tag == SteerabilityVerdict::Tag::Undetermined);
}

TEST_CASE("forcing takes the sum within a setting and the max across settings") {
  // Bob always ends in |0>; Alice's outcomes split the weight.
  const DensityOperator rho = product_state(maximally_mixed(Dims{2}), PureState(basis_vector(2, 0), Dims{2}).density());
  const std::vector<NonDegeneratePvm> pvms{computational_pvm(2), pvm_containing(kPlus2)};
  const auto forced = forced_pure_states(assemblage(rho, pvms));
  REQUIRE(forced.size() == 1);
  CHECK_THAT(forced[0].weight, WithinAbs(1.0, 1e-12));
  const PureWitnessReport w = pure_probability_witness(assemblage(rho, pvms));
  CHECK_THAT(w.total, WithinAbs(1.0, 1e-12));
  CHECK_FALSE(w.steerable);
}

TEST_CASE("pure entangled qubits with three unbiased measurements") {
  const Vector phi = kInvSqrt2 * (kron(basis_vector(2, 0), basis_vector(2, 0)) +
                                  kron(basis_vector(2, 1), basis_vector(2, 1)));
  const DensityOperator rho = PureState(phi, Dims{2, 2}).density();
  const std::vector<NonDegeneratePvm> pvms{computational_pvm(2), pvm_containing(kPlus2),
                                           pvm_containing(vec({kInvSqrt2, Complex(0.0, kInvSqrt2)}))};
  const PureWitnessReport w = pure_probability_witness(assemblage(rho, pvms));
  CHECK(w.entries.size() == 6);
  CHECK_THAT(w.total, WithinAbs(3.0, 1e-12));
  CHECK(w.steerable);
  CHECK(witness_verdict(w).tag == SteerabilityVerdict::Tag::Steerable);
}

TEST_CASE("two measurements on a random pure entangled state force four states") {
  Rng rng(42);
  const DensityOperator rho = random_pure_state(Dims{2, 2}, rng).density();
  const std::vector<NonDegeneratePvm> pvms{computational_pvm(2), pvm_containing(kPlus2)};
  CHECK(forced_pure_states(assemblage(rho, pvms)).size() >= 4);
}

TEST_CASE("witness is silent on explainable assemblages") {
  Rng rng(43);
  for (double eta : {0.0, 0.3, 0.5, 1.0}) {
    const DensityOperator rho = two_qubit_family({eta, 0.0, basis_vector(2, 0), kPlus2});
    std::vector<NonDegeneratePvm> pvms{computational_pvm(2)};
    for (int k = 0; k < 3; ++k) pvms.push_back(pvm_from_unitary(computational_pvm(2), haar_unitary(2, rng)));
    const Assemblage a = assemblage(rho, pvms);
    const SteerabilityVerdict v = classify(rho, computational_pvm(2));
    const LhsModel model = lhs_from_product_ensemble(v.ensemble, as_labeled(pvms));
    REQUIRE(lhs_explains(model.ensemble, model.response, a, 1e-10).explains);
    CHECK(pure_probability_witness(a).total <= 1.0 + 1e-8);
  }
}
