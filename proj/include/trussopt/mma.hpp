#pragma once
// Method of moving asymptotes: separable convex approximations around the
// current iterate with adaptive asymptotes, each subproblem solved to high
// accuracy by a primal-dual interior Newton method.  Standard published
// defaults; constraints enter as g(x) <= 0.

#include "trussopt/model.hpp"

namespace trussopt {

struct MmaOptions {
  double asy_init = 0.5;      // initial asymptote distance, fraction of range
  double asy_incr = 1.2;      // asymptote relaxation on oscillation-free steps
  double asy_decr = 0.7;      // asymptote tightening on oscillating steps
  double albefa = 0.1;        // bound offset from the asymptotes
  double move = 0.5;          // move limit, fraction of range
  double raa0 = 1e-5;         // minimum curvature term
  double epsimin = 1e-9;      // final interior-point relaxation
  double elastic_weight = 1000.0;  // linear penalty on constraint elastics
};

class MmaSolver {
 public:
  MmaSolver(int n, int m, Vec lower, Vec upper, MmaOptions options = {});

  // One outer iteration: builds the approximation at x from the objective
  // gradient, constraint values, and constraint jacobian (m x n), and
  // returns the subproblem minimizer within move limits.
  Vec update(const Vec& x, const Vec& dfdx, const Vec& g, const Mat& dgdx);

  void reset();

 private:
  Vec subsolve(const Vec& alfa, const Vec& beta) const;

  int n_;
  int m_;
  Vec lower_;
  Vec upper_;
  MmaOptions options_;

  int iter_ = 0;
  Vec xold1_;
  Vec xold2_;
  Vec low_;
  Vec upp_;

  // Subproblem data rebuilt by update() and read by subsolve().
  Vec p0_, q0_;
  Mat p_, q_;
  Vec b_;
};

}  // namespace trussopt
