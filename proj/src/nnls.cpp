#include "trussopt/nnls.hpp"

#include <Eigen/QR>

#include <limits>
#include <vector>

namespace trussopt {

namespace {

// Unconstrained least squares restricted to the passive column set.
Vec solve_passive(const Mat& a, const Vec& b, const std::vector<int>& passive) {
  Mat sub(a.rows(), static_cast<Eigen::Index>(passive.size()));
  for (size_t j = 0; j < passive.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = a.col(passive[j]);
  return sub.colPivHouseholderQr().solve(b);
}

}  // namespace

NnlsResult nnls(const Mat& a, const Vec& b, int max_iter, double tol) {
  const int ncols = static_cast<int>(a.cols());
  if (max_iter <= 0) max_iter = 3 * ncols + 30;
  if (tol < 0) {
    tol = 10.0 * std::numeric_limits<double>::epsilon() * a.cwiseAbs().maxCoeff() *
          static_cast<double>(std::max(a.rows(), a.cols()));
  }

  NnlsResult result;
  result.x = Vec::Zero(ncols);
  std::vector<bool> in_passive(static_cast<size_t>(ncols), false);
  std::vector<int> passive;

  Vec residual = b;
  for (int outer = 0; outer < max_iter; ++outer) {
    // Most-positive gradient of the unconstrained objective among active
    // (zero-clamped) columns decides which variable to free.
    const Vec w = a.transpose() * residual;
    int best = -1;
    double best_w = tol;
    for (int j = 0; j < ncols; ++j) {
      if (!in_passive[static_cast<size_t>(j)] && w(j) > best_w) {
        best = j;
        best_w = w(j);
      }
    }
    if (best < 0) {
      result.converged = true;
      break;
    }
    in_passive[static_cast<size_t>(best)] = true;
    passive.push_back(best);

    // Inner loop: restore feasibility of the passive-set least squares
    // solution by moving to the boundary and dropping offending columns.
    for (;;) {
      Vec z = solve_passive(a, b, passive);
      double alpha = 1.0;
      for (size_t j = 0; j < passive.size(); ++j) {
        if (z(static_cast<Eigen::Index>(j)) <= 0) {
          const double xj = result.x(passive[j]);
          const double step = xj / (xj - z(static_cast<Eigen::Index>(j)));
          alpha = std::min(alpha, step);
        }
      }
      if (alpha >= 1.0) {
        for (size_t j = 0; j < passive.size(); ++j) result.x(passive[j]) = z(static_cast<Eigen::Index>(j));
        break;
      }
      for (size_t j = 0; j < passive.size(); ++j) {
        const int col = passive[j];
        result.x(col) += alpha * (z(static_cast<Eigen::Index>(j)) - result.x(col));
      }
      std::vector<int> keep;
      for (int col : passive) {
        if (result.x(col) > tol) {
          keep.push_back(col);
        } else {
          result.x(col) = 0;
          in_passive[static_cast<size_t>(col)] = false;
        }
      }
      passive = std::move(keep);
      if (passive.empty()) break;
    }
    residual = b - a * result.x;
  }

  result.residual = (b - a * result.x).norm();
  return result;
}

}  // namespace trussopt
