// Dense two-phase primal simplex for small linear programs with bounded
// variables. Every variable needs a finite lower bound; upper bounds may be
// infinite. The basis is refactorized each iteration, which is fine at the
// problem sizes the master produces.
#pragma once

#include "trussopt/model.hpp"

#include <vector>

namespace trussopt {

enum class RowType { LessEqual, Equal };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus status);

struct LinearProgram {
  Mat a;                      // one row per constraint
  Vec rhs;
  std::vector<RowType> rows;  // sense of each row
  Vec c;                      // objective coefficients, minimized
  Vec lower;                  // finite lower bounds
  Vec upper;                  // upper bounds, +infinity allowed
};

struct LpOptions {
  double feas_tol = 1e-8;   // phase-one residual acceptance
  double dual_tol = 1e-9;   // reduced-cost threshold
  double pivot_tol = 1e-10; // smallest usable pivot element
  int max_iter = 50000;
  int bland_after = 5000;   // switch to Bland's rule past this iteration
};

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  Vec x;
  double objective = 0.0;
  int iterations = 0;
};

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace trussopt
