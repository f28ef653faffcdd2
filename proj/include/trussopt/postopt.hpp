// Post-optimal analysis of a sized design: active-set detection, KKT
// multiplier recovery by nonnegative least squares, and the gradient of the
// optimal-value function with respect to the catalog choice matrix.
#pragma once

#include "trussopt/evaluation.hpp"

#include <vector>

namespace trussopt {

struct ActiveSets {
  std::vector<int> stress;  // flat indices into the 4n stress constraints
  std::vector<int> disp;    // displacement limit rows
  std::vector<int> lower;   // bars at their lower area bound
  std::vector<int> upper;   // bars at their upper area bound

  int total() const {
    return static_cast<int>(stress.size() + disp.size() + lower.size() + upper.size());
  }
};

// Marks a constraint active when its scaled value is within tol of zero and a
// bound active when the area is within tol of the bound relative to the range.
ActiveSets detect_active(const Evaluation& eval, const ConstraintScaling& scaling,
                         const Vec& a, const Vec& lower, const Vec& upper, double tol);

struct KktResult {
  Vec lambda_stress;  // size 4n, zero at inactive entries
  Vec lambda_disp;    // size d
  Vec lambda_lower;   // size n
  Vec lambda_upper;   // size n
  double stationarity = 0.0;  // infinity norm of the Lagrangian gradient in a
  bool qualification_ok = true;  // active gradients linearly independent
};

// Recovers nonnegative multipliers from the stationarity conditions in the
// area variables. Requires an evaluation with gradients.
KktResult kkt_multipliers(const Evaluation& eval, const ConstraintScaling& scaling,
                          const ActiveSets& active);

// Gradient of the optimal sizing weight with respect to the flattened choice
// matrix, holding the active set fixed. Bound multipliers drop out because
// the bounds do not depend on the choice matrix.
Vec psi_gradient(const Evaluation& eval, const ConstraintScaling& scaling,
                 const KktResult& kkt);

}  // namespace trussopt
