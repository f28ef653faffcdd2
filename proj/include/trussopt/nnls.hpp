#pragma once
// Nonnegative least squares: minimize ||A x - b||_2 subject to x >= 0,
// by the active-set method of Lawson and Hanson.

#include "trussopt/model.hpp"

namespace trussopt {

struct NnlsResult {
  Vec x;                // solution, elementwise >= 0
  double residual = 0;  // ||A x - b||_2
  bool converged = false;
};

NnlsResult nnls(const Mat& a, const Vec& b, int max_iter = 0, double tol = -1.0);

}  // namespace trussopt
