#pragma once

#include <string>
#include <vector>

namespace steer::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // zero when unbounded
};

CriterionResult criterion_1();  // spin-1 inequality values on the qutrit family
CriterionResult criterion_2();  // classifier over the two-qubit grid
CriterionResult criterion_3();  // ancilla Gram recovery and reconstruction
CriterionResult criterion_4();  // maximal pure steering against random search
CriterionResult criterion_5();  // pure steered subspace on the qutrit family
CriterionResult criterion_6();  // orthogonal outcomes force orthogonal effects
CriterionResult criterion_7();  // LHS model for separable two-qubit states
CriterionResult criterion_8();  // witness fires where the inequality does not
CriterionResult criterion_9();  // classifier against partial transpose

std::vector<CriterionResult> run_all();

/// "PASS  3  name  (0.012 s)  detail"
std::string format(const CriterionResult& r);

}  // namespace steer::acceptance
