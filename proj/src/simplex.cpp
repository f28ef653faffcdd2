#include "trussopt/simplex.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace trussopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarStatus { Basic, AtLower, AtUpper };

// Working state for one solve. Columns are ordered structural variables,
// then slacks for the LessEqual rows, then one artificial per row.
struct Tableau {
  int m = 0;            // rows
  int total = 0;        // all columns including artificials
  int real = 0;         // structural plus slack columns
  Mat a;
  Vec rhs;
  Vec lower, upper;
  std::vector<VarStatus> status;
  std::vector<double> value;  // authoritative for nonbasic columns
  std::vector<int> basis;     // basic column per row
  int iterations = 0;

  Vec basic_values(const Eigen::PartialPivLU<Mat>& lu) const {
    Vec shift = rhs;
    for (int j = 0; j < total; ++j) {
      if (status[j] != VarStatus::Basic && value[j] != 0.0) shift -= a.col(j) * value[j];
    }
    return lu.solve(shift);
  }
};

// Runs primal simplex iterations with the given costs until no eligible
// entering column remains. Returns false when the problem is unbounded.
bool run_simplex(Tableau& t, const Vec& cost, const LpOptions& opt, LpStatus& status) {
  const int m = t.m;
  while (t.iterations < opt.max_iter) {
    ++t.iterations;
    Mat bmat(m, m);
    for (int i = 0; i < m; ++i) bmat.col(i) = t.a.col(t.basis[i]);
    const Eigen::PartialPivLU<Mat> lu(bmat);
    const Vec xb = t.basic_values(lu);

    Vec cb(m);
    for (int i = 0; i < m; ++i) cb(i) = cost(t.basis[i]);
    const Vec y = lu.transpose().solve(cb);

    // Pricing: pick the entering column. Dantzig rule by default, Bland's
    // rule after a while to break potential cycles.
    const bool bland = t.iterations > opt.bland_after;
    int enter = -1;
    double enter_sign = 0.0;
    double best_score = opt.dual_tol;
    for (int j = 0; j < t.total; ++j) {
      if (t.status[j] == VarStatus::Basic) continue;
      if (t.upper(j) - t.lower(j) <= 0.0) continue;  // fixed column
      const double reduced = cost(j) - y.dot(t.a.col(j));
      double score = 0.0;
      double sign = 0.0;
      if (t.status[j] == VarStatus::AtLower && reduced < -opt.dual_tol) {
        score = -reduced;
        sign = 1.0;
      } else if (t.status[j] == VarStatus::AtUpper && reduced > opt.dual_tol) {
        score = reduced;
        sign = -1.0;
      } else {
        continue;
      }
      if (bland) {
        enter = j;
        enter_sign = sign;
        break;
      }
      if (score > best_score) {
        best_score = score;
        enter = j;
        enter_sign = sign;
      }
    }
    if (enter < 0) {
      status = LpStatus::Optimal;
      return true;
    }

    const Vec w = lu.solve(t.a.col(enter));

    // Ratio test: the entering column moves by enter_sign * step, basic
    // columns move by -enter_sign * step * w.
    double step = t.upper(enter) - t.lower(enter);  // bound flip distance
    int leave = -1;
    bool leave_at_upper = false;
    for (int i = 0; i < m; ++i) {
      const double coef = enter_sign * w(i);
      const int col = t.basis[i];
      double limit = kInf;
      bool hits_upper = false;
      if (coef > opt.pivot_tol) {
        limit = (xb(i) - t.lower(col)) / coef;
      } else if (coef < -opt.pivot_tol) {
        if (t.upper(col) == kInf) continue;
        limit = (t.upper(col) - xb(i)) / (-coef);
        hits_upper = true;
      } else {
        continue;
      }
      if (limit < step - 1e-12 ||
          (limit < step + 1e-12 && leave >= 0 && col < t.basis[leave])) {
        step = limit;
        leave = i;
        leave_at_upper = hits_upper;
      }
    }
    if (step == kInf) {
      status = LpStatus::Unbounded;
      return false;
    }
    if (step < 0.0) step = 0.0;

    if (leave < 0) {
      // The entering column runs to its other bound without a basis change.
      t.status[enter] =
          enter_sign > 0 ? VarStatus::AtUpper : VarStatus::AtLower;
      t.value[enter] = enter_sign > 0 ? t.upper(enter) : t.lower(enter);
    } else {
      const int out = t.basis[leave];
      t.status[out] = leave_at_upper ? VarStatus::AtUpper : VarStatus::AtLower;
      t.value[out] = leave_at_upper ? t.upper(out) : t.lower(out);
      t.value[enter] += enter_sign * step;
      t.status[enter] = VarStatus::Basic;
      t.basis[leave] = enter;
    }
  }
  status = LpStatus::IterationLimit;
  return false;
}

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opt) {
  const int m = static_cast<int>(lp.a.rows());
  const int nvar = static_cast<int>(lp.a.cols());
  if (lp.rhs.size() != m || static_cast<int>(lp.rows.size()) != m) {
    throw std::invalid_argument("solve_lp: row count mismatch");
  }
  if (lp.c.size() != nvar || lp.lower.size() != nvar || lp.upper.size() != nvar) {
    throw std::invalid_argument("solve_lp: column count mismatch");
  }
  for (int j = 0; j < nvar; ++j) {
    if (!std::isfinite(lp.lower(j))) {
      throw std::invalid_argument("solve_lp: lower bounds must be finite");
    }
    if (lp.upper(j) < lp.lower(j)) {
      throw std::invalid_argument("solve_lp: inconsistent bounds");
    }
  }

  int num_slack = 0;
  for (const RowType row : lp.rows) {
    if (row == RowType::LessEqual) ++num_slack;
  }

  Tableau t;
  t.m = m;
  t.real = nvar + num_slack;
  t.total = t.real + m;
  t.a = Mat::Zero(m, t.total);
  t.a.leftCols(nvar) = lp.a;
  t.rhs = lp.rhs;
  t.lower = Vec::Zero(t.total);
  t.upper = Vec::Constant(t.total, kInf);
  t.lower.head(nvar) = lp.lower;
  t.upper.head(nvar) = lp.upper;
  t.status.assign(t.total, VarStatus::AtLower);
  t.value.assign(t.total, 0.0);
  t.basis.resize(m);

  int slack = nvar;
  for (int i = 0; i < m; ++i) {
    if (lp.rows[i] == RowType::LessEqual) t.a(i, slack++) = 1.0;
  }

  // Start every real column at its lower bound and let one artificial per
  // row absorb the residual, signed so artificials start nonnegative.
  for (int j = 0; j < t.real; ++j) t.value[j] = t.lower(j);
  Vec residual = t.rhs;
  for (int j = 0; j < t.real; ++j) {
    if (t.value[j] != 0.0) residual -= t.a.col(j) * t.value[j];
  }
  for (int i = 0; i < m; ++i) {
    const int art = t.real + i;
    t.a(i, art) = residual(i) >= 0 ? 1.0 : -1.0;
    t.status[art] = VarStatus::Basic;
    t.basis[i] = art;
  }

  LpSolution solution;

  Vec phase1_cost = Vec::Zero(t.total);
  phase1_cost.tail(m).setOnes();
  LpStatus status = LpStatus::IterationLimit;
  if (!run_simplex(t, phase1_cost, opt, status)) {
    // Phase one minimizes a sum of nonnegative columns, so unbounded here
    // means a numerical breakdown rather than a real ray.
    solution.status = status == LpStatus::Unbounded ? LpStatus::IterationLimit : status;
    solution.iterations = t.iterations;
    return solution;
  }

  {
    Mat bmat(m, m);
    for (int i = 0; i < m; ++i) bmat.col(i) = t.a.col(t.basis[i]);
    const Vec xb = t.basic_values(Eigen::PartialPivLU<Mat>(bmat));
    double infeas = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] >= t.real) infeas += std::abs(xb(i));
    }
    for (int j = t.real; j < t.total; ++j) {
      if (t.status[j] != VarStatus::Basic) infeas += std::abs(t.value[j]);
    }
    if (infeas > opt.feas_tol * (1.0 + lp.rhs.cwiseAbs().maxCoeff())) {
      solution.status = LpStatus::Infeasible;
      solution.iterations = t.iterations;
      return solution;
    }
  }

  // Lock the artificials at zero for phase two.
  for (int j = t.real; j < t.total; ++j) {
    t.upper(j) = 0.0;
    if (t.status[j] != VarStatus::Basic) {
      t.status[j] = VarStatus::AtLower;
      t.value[j] = 0.0;
    }
  }

  Vec phase2_cost = Vec::Zero(t.total);
  phase2_cost.head(nvar) = lp.c;
  run_simplex(t, phase2_cost, opt, status);
  solution.status = status;
  solution.iterations = t.iterations;
  if (status != LpStatus::Optimal) return solution;

  Mat bmat(m, m);
  for (int i = 0; i < m; ++i) bmat.col(i) = t.a.col(t.basis[i]);
  const Vec xb = t.basic_values(Eigen::PartialPivLU<Mat>(bmat));
  solution.x = Vec(nvar);
  for (int j = 0; j < nvar; ++j) solution.x(j) = t.value[j];
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < nvar) solution.x(t.basis[i]) = xb(i);
  }
  solution.objective = lp.c.dot(solution.x);
  return solution;
}

}  // namespace trussopt
