#include "trussopt/slave.hpp"

#include "trussopt/postopt.hpp"

#include <stdexcept>
#include <utility>

namespace trussopt {

SlaveSolution solve_slave(const TrussSystem& sys, const Catalog& catalog,
                          const ChoiceMatrix& b, const Vec& lower, const Vec& upper,
                          const ConstraintScaling& scaling, FemCallCounter& counter,
                          const SlaveOptions& options) {
  const int n = sys.num_bars();
  const int d = sys.num_disp_limits();
  const int m = kConstraintsPerElement * n + d;
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("solve_slave: bound size mismatch");
  }
  if ((upper - lower).minCoeff() <= 0) {
    throw std::invalid_argument("solve_slave: upper bounds must exceed lower bounds");
  }

  MmaSolver mma(n, m, lower, upper, options.mma);
  Vec x = upper;
  const double range_max = (upper - lower).maxCoeff();

  SlaveSolution best;
  double best_violation = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    Evaluation eval = evaluate(sys, catalog, x, b, /*want_gradients=*/true, counter);

    Vec g(m);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < kConstraintsPerElement; ++j) {
        g(stress_index(i, j)) = eval.stress(i, j) / scaling.stress_scale;
      }
    }
    for (int r = 0; r < d; ++r) {
      g(kConstraintsPerElement * n + r) = eval.disp(r) / scaling.disp_scale(r);
    }
    const double violation = g.maxCoeff();
    const bool feasible = violation <= options.feas_tol;

    const ActiveSets active = detect_active(eval, scaling, x, lower, upper, options.active_tol);
    const KktResult kkt = kkt_multipliers(eval, scaling, active);
    const bool stationary = feasible && kkt.stationarity <= options.kkt_tol;

    const Vec dfdx = eval.dweight_da;
    Mat dgdx(m, n);
    dgdx.topRows(kConstraintsPerElement * n) = eval.dstress_da / scaling.stress_scale;
    for (int r = 0; r < d; ++r) {
      dgdx.row(kConstraintsPerElement * n + r) = eval.ddisp_da.row(r) / scaling.disp_scale(r);
    }

    bool keep = stationary;
    if (!keep) {
      if (feasible) {
        keep = !best.feasible || eval.weight < best.psi;
      } else {
        keep = !best.feasible && violation < best_violation;
      }
    }
    if (keep) {
      best.a = x;
      best.psi = eval.weight;
      best.feasible = feasible;
      best.kkt_residual = kkt.stationarity;
      best.eval = std::move(eval);
      best_violation = violation;
    }
    best.iterations = iter;

    if (stationary) {
      best.converged = true;
      break;
    }

    const Vec x_new = mma.update(x, dfdx, g, dgdx);
    const double step = (x_new - x).cwiseAbs().maxCoeff();
    x = x_new;
    if (step <= options.step_tol * range_max) break;
  }

  if (best.a.size() == 0) {
    throw std::runtime_error("solve_slave: no iterate evaluated");
  }
  return best;
}

}  // namespace trussopt
