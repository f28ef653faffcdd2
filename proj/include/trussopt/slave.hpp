// Continuous sizing solver: for a fixed catalog choice matrix, minimizes the
// structure weight over the cross-section areas subject to stress and
// displacement limits, using the method of moving asymptotes.
#pragma once

#include "trussopt/evaluation.hpp"
#include "trussopt/mma.hpp"

#include <limits>

namespace trussopt {

struct SlaveOptions {
  double kkt_tol = 1e-6;     // stationarity norm for first-order convergence
  double feas_tol = 1e-6;    // scaled constraint tolerance
  double active_tol = 1e-5;  // active-set detection tolerance
  double step_tol = 1e-9;    // step size stop, relative to the bound range
  int max_iter = 500;
  MmaOptions mma;
};

struct SlaveSolution {
  Vec a;                  // best areas found
  double psi = std::numeric_limits<double>::infinity();  // weight at a
  bool feasible = false;
  bool converged = false;  // first-order conditions met at a
  int iterations = 0;
  double kkt_residual = std::numeric_limits<double>::infinity();
  Evaluation eval;        // evaluation with gradients at a
};

// Starts from the upper bounds and iterates until the KKT residual drops
// below tolerance, the step stalls, or the iteration cap is reached. Keeps
// the best iterate seen, preferring feasible points by weight and falling
// back to the least-violated point when none is feasible.
SlaveSolution solve_slave(const TrussSystem& sys, const Catalog& catalog,
                          const ChoiceMatrix& b, const Vec& lower, const Vec& upper,
                          const ConstraintScaling& scaling, FemCallCounter& counter,
                          const SlaveOptions& options = {});

}  // namespace trussopt
