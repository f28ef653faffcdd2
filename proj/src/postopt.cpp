#include "trussopt/postopt.hpp"

#include "trussopt/nnls.hpp"

#include <Eigen/QR>

#include <stdexcept>

namespace trussopt {

ActiveSets detect_active(const Evaluation& eval, const ConstraintScaling& scaling,
                         const Vec& a, const Vec& lower, const Vec& upper, double tol) {
  ActiveSets active;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < kConstraintsPerElement; ++j) {
      if (eval.stress(i, j) / scaling.stress_scale >= -tol) {
        active.stress.push_back(stress_index(i, j));
      }
    }
  }
  for (int r = 0; r < eval.disp.size(); ++r) {
    if (eval.disp(r) / scaling.disp_scale(r) >= -tol) active.disp.push_back(r);
  }
  for (int i = 0; i < n; ++i) {
    const double range = upper(i) - lower(i);
    if (a(i) - lower(i) <= tol * range) active.lower.push_back(i);
    if (upper(i) - a(i) <= tol * range) active.upper.push_back(i);
  }
  return active;
}

KktResult kkt_multipliers(const Evaluation& eval, const ConstraintScaling& scaling,
                          const ActiveSets& active) {
  if (!eval.has_gradients) {
    throw std::invalid_argument("kkt_multipliers: evaluation lacks gradients");
  }
  const int n = static_cast<int>(eval.dweight_da.size());
  const int cols = active.total();

  KktResult result;
  result.lambda_stress = Vec::Zero(kConstraintsPerElement * n);
  result.lambda_disp = Vec::Zero(eval.disp.size());
  result.lambda_lower = Vec::Zero(n);
  result.lambda_upper = Vec::Zero(n);

  if (cols == 0) {
    result.stationarity = eval.dweight_da.cwiseAbs().maxCoeff();
    return result;
  }

  // Columns are the area gradients of the active constraints in scaled form;
  // bound constraints contribute signed unit columns.
  Mat columns = Mat::Zero(n, cols);
  int col = 0;
  for (int idx : active.stress) {
    columns.col(col++) = eval.dstress_da.row(idx).transpose() / scaling.stress_scale;
  }
  for (int r : active.disp) {
    columns.col(col++) = eval.ddisp_da.row(r).transpose() / scaling.disp_scale(r);
  }
  for (int i : active.lower) columns(i, col++) = -1.0;
  for (int i : active.upper) columns(i, col++) = 1.0;

  const Vec rhs = -eval.dweight_da;
  const NnlsResult fit = nnls(columns, rhs);
  result.stationarity = (columns * fit.x - rhs).cwiseAbs().maxCoeff();

  Eigen::ColPivHouseholderQR<Mat> qr(columns);
  result.qualification_ok = qr.rank() == cols;

  col = 0;
  for (int idx : active.stress) result.lambda_stress(idx) = fit.x(col++);
  for (int r : active.disp) result.lambda_disp(r) = fit.x(col++);
  for (int i : active.lower) result.lambda_lower(i) = fit.x(col++);
  for (int i : active.upper) result.lambda_upper(i) = fit.x(col++);
  return result;
}

Vec psi_gradient(const Evaluation& eval, const ConstraintScaling& scaling,
                 const KktResult& kkt) {
  if (!eval.has_gradients) {
    throw std::invalid_argument("psi_gradient: evaluation lacks gradients");
  }
  Vec grad = eval.dweight_db;
  grad += eval.dstress_db.transpose() * (kkt.lambda_stress / scaling.stress_scale);
  grad += eval.ddisp_db.transpose() * kkt.lambda_disp.cwiseQuotient(scaling.disp_scale);
  return grad;
}

}  // namespace trussopt
