#include "trussopt/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace trussopt {

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

// Wall (plate) buckling capacity 4 pi^2 E K^2 / (12 (1 - nu^2)); this term
// does not depend on the area.
double wall_buckling_capacity(const CatalogEntry& entry) {
  const double nu = entry.material.nu;
  return 4.0 * kPiSq * entry.material.e * entry.kratio * entry.kratio /
         (12.0 * (1.0 - nu * nu));
}

void check_dims(const TrussSystem& sys, const Catalog& catalog, const Vec& a,
                const ChoiceMatrix& b) {
  if (a.size() != sys.num_bars()) throw std::invalid_argument("evaluate: area vector size mismatch");
  if (b.n() != sys.num_bars()) throw std::invalid_argument("evaluate: choice matrix rows mismatch");
  if (b.p() != static_cast<int>(catalog.size())) {
    throw std::invalid_argument("evaluate: choice matrix columns do not match catalog size");
  }
}

}  // namespace

ConstraintScaling default_scaling(const TrussSystem& sys) {
  ConstraintScaling scaling;
  scaling.stress_scale = 100.0;
  scaling.disp_scale = sys.disp_bounds().cwiseAbs().cwiseMax(1.0);
  return scaling;
}

double weight(const TrussSystem& sys, const Catalog& catalog, const Vec& a,
              const ChoiceMatrix& b) {
  check_dims(sys, catalog, a, b);
  const Vec rho = relaxed_density(catalog, b);
  return rho.cwiseProduct(sys.lengths()).cwiseProduct(a).sum();
}

void weight_gradients(const TrussSystem& sys, const Catalog& catalog, const Vec& a,
                      const ChoiceMatrix& b, Vec& dweight_da, Vec& dweight_db) {
  check_dims(sys, catalog, a, b);
  const int n = b.n();
  const int p = b.p();
  dweight_da = relaxed_density(catalog, b).cwiseProduct(sys.lengths());
  dweight_db.resize(static_cast<Eigen::Index>(n) * p);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < p; ++c) {
      dweight_db(b.flat(i, c)) = catalog[static_cast<size_t>(c)].material.rho * sys.length(i) * a(i);
    }
  }
}

Evaluation evaluate(const TrussSystem& sys, const Catalog& catalog, const Vec& a,
                    const ChoiceMatrix& b, bool want_gradients, FemCallCounter& counter) {
  check_dims(sys, catalog, a, b);
  for (int i = 0; i < a.size(); ++i) {
    if (!(a(i) > 0)) throw std::domain_error("evaluate: areas must be positive");
  }

  const int n = sys.num_bars();
  const int p = b.p();
  const int d = sys.num_disp_limits();

  const Vec emod = relaxed_modulus(catalog, b);
  const FemState state = assemble_and_solve(sys, emod.cwiseProduct(a), counter);

  Evaluation eval;
  eval.weight = weight(sys, catalog, a, b);
  eval.stress.resize(n, kConstraintsPerElement);
  for (int i = 0; i < n; ++i) {
    const double sigma = state.phi(i) / a(i);
    const double li = sys.length(i);
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (int c = 0; c < p; ++c) {
      const CatalogEntry& entry = catalog[static_cast<size_t>(c)];
      const double bic = b.b(i, c);
      if (bic == 0.0) continue;
      const double euler = kPiSq * entry.material.e * profile_inertia(a(i), entry) /
                           (a(i) * li * li);
      s1 += bic * (sigma - entry.material.sigma_t);
      s2 += bic * (-sigma - entry.material.sigma_c);
      s3 += bic * (-sigma - euler);
      s4 += bic * (-sigma - wall_buckling_capacity(entry));
    }
    eval.stress(i, 0) = s1;
    eval.stress(i, 1) = s2;
    eval.stress(i, 2) = s3;
    eval.stress(i, 3) = s4;
  }
  eval.disp = sys.disp_selector() * state.u - sys.disp_bounds();

  if (!eval.stress.allFinite() || !eval.disp.allFinite()) {
    throw std::runtime_error("evaluate: non-finite constraint value");
  }
  if (!want_gradients) return eval;

  // Shared adjoint data: V maps any stiffness direction to du, and
  // M_ik = dphi_i/dEA_k = delta_ik elong_i/l_i + (EA_i/l_i) g_i . v_k.
  const Mat v = influence_displacements(sys, state);
  const Vec stiffness = state.ea.cwiseQuotient(sys.lengths());
  Mat m = sys.bar_geometry().transpose() * v;
  m = stiffness.asDiagonal() * m;
  m.diagonal() += state.elongation.cwiseQuotient(sys.lengths());

  weight_gradients(sys, catalog, a, b, eval.dweight_da, eval.dweight_db);

  const Eigen::Index np = static_cast<Eigen::Index>(n) * p;
  eval.dstress_da = Mat::Zero(static_cast<Eigen::Index>(n) * kConstraintsPerElement, n);
  eval.dstress_db = Mat::Zero(static_cast<Eigen::Index>(n) * kConstraintsPerElement, np);
  eval.ddisp_da = Mat::Zero(d, n);
  eval.ddisp_db = Mat::Zero(d, np);

  // Displacement rows: du/da_k = Etilde_k v_k, du/dB_kc = E(c) a_k v_k.
  if (d > 0) {
    const Mat pv = sys.disp_selector() * v;  // d x n
    for (int k = 0; k < n; ++k) {
      eval.ddisp_da.col(k) = pv.col(k) * emod(k);
      for (int c = 0; c < p; ++c) {
        eval.ddisp_db.col(b.flat(k, c)) = pv.col(k) * (catalog[static_cast<size_t>(c)].material.e * a(k));
      }
    }
  }

  // Stress rows.  The blended constraint for element i depends on a_k and
  // B_kc through phi_i (for every k) and directly through a_i and B_ic.
  for (int i = 0; i < n; ++i) {
    const double sigma = state.phi(i) / a(i);
    const double li = sys.length(i);
    const double wsum = b.b.row(i).sum();  // 1 for row-stochastic rows

    // d(phi_i/a_i) assembled per direction below; direct area terms first.
    double euler_direct = 0;  // d/da_i of the blended Euler capacity term
    for (int c = 0; c < p; ++c) {
      const CatalogEntry& entry = catalog[static_cast<size_t>(c)];
      const double bic = b.b(i, c);
      if (bic == 0.0) continue;
      // I(a,c)/a = I0 a / a0^2, so the capacity grows linearly in a.
      euler_direct += bic * kPiSq * entry.material.e * entry.i0 / (entry.a0 * entry.a0 * li * li);
    }

    for (int k = 0; k < n; ++k) {
      // d sigma_i / da_k via phi, plus the -phi/a^2 own-area term.
      double dsigma = emod(k) * m(i, k) / a(i);
      if (k == i) dsigma -= sigma / a(i);
      eval.dstress_da(stress_index(i, 0), k) = wsum * dsigma;
      eval.dstress_da(stress_index(i, 1), k) = -wsum * dsigma;
      eval.dstress_da(stress_index(i, 2), k) = -wsum * dsigma - (k == i ? euler_direct : 0.0);
      eval.dstress_da(stress_index(i, 3), k) = -wsum * dsigma;
    }

    for (int k = 0; k < n; ++k) {
      for (int c = 0; c < p; ++c) {
        const CatalogEntry& entry = catalog[static_cast<size_t>(c)];
        const Eigen::Index col = b.flat(k, c);
        const double dsigma = entry.material.e * a(k) * m(i, k) / a(i);
        double ds1 = wsum * dsigma;
        double ds2 = -wsum * dsigma;
        double ds3 = -wsum * dsigma;
        double ds4 = -wsum * dsigma;
        if (k == i) {
          // Direct selection terms: the raw constraint of entry c itself.
          const double euler = kPiSq * entry.material.e * profile_inertia(a(i), entry) /
                               (a(i) * li * li);
          ds1 += sigma - entry.material.sigma_t;
          ds2 += -sigma - entry.material.sigma_c;
          ds3 += -sigma - euler;
          ds4 += -sigma - wall_buckling_capacity(entry);
        }
        eval.dstress_db(stress_index(i, 0), col) = ds1;
        eval.dstress_db(stress_index(i, 1), col) = ds2;
        eval.dstress_db(stress_index(i, 2), col) = ds3;
        eval.dstress_db(stress_index(i, 3), col) = ds4;
      }
    }
  }

  eval.has_gradients = true;
  return eval;
}

GradientCheckReport gradient_check(const TrussSystem& sys, const Catalog& catalog,
                                   const Vec& lower, const Vec& upper, int states,
                                   unsigned seed, FemCallCounter& counter) {
  const int n = sys.num_bars();
  const int p = static_cast<int>(catalog.size());
  const int d = sys.num_disp_limits();
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("gradient_check: bound vector size mismatch");
  }
  if (states <= 0) throw std::invalid_argument("gradient_check: states must be positive");

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  GradientCheckReport report;
  report.states = states;

  auto accumulate = [](double fd, double analytic, double& worst) {
    const double err = std::abs(fd - analytic) /
                       std::max({1.0, std::abs(fd), std::abs(analytic)});
    worst = std::max(worst, err);
  };
  auto compare_direction = [&](const Evaluation& base, const Evaluation& plus,
                               const Evaluation& minus, double h, Eigen::Index col,
                               bool area, double& worst) {
    const Vec& dweight = area ? base.dweight_da : base.dweight_db;
    const Mat& dstress = area ? base.dstress_da : base.dstress_db;
    const Mat& ddisp = area ? base.ddisp_da : base.ddisp_db;
    accumulate((plus.weight - minus.weight) / (2 * h), dweight(col), worst);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < kConstraintsPerElement; ++j) {
        accumulate((plus.stress(i, j) - minus.stress(i, j)) / (2 * h),
                   dstress(stress_index(i, j), col), worst);
      }
    }
    for (int r = 0; r < d; ++r) {
      accumulate((plus.disp(r) - minus.disp(r)) / (2 * h), ddisp(r, col), worst);
    }
  };

  for (int s = 0; s < states; ++s) {
    Vec a(n);
    for (int i = 0; i < n; ++i) a(i) = lower(i) + (upper(i) - lower(i)) * unit(rng);
    ChoiceMatrix b;
    b.b.resize(n, p);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < p; ++c) b.b(i, c) = 0.05 + 0.95 * unit(rng);
      b.b.row(i) /= b.b.row(i).sum();
    }

    const Evaluation base = evaluate(sys, catalog, a, b, true, counter);

    for (int k = 0; k < n; ++k) {
      const double h = 1e-4 * std::max(upper(k) - lower(k), 1e-2 * std::abs(a(k)));
      Vec ap = a, am = a;
      ap(k) += h;
      am(k) -= h;
      const Evaluation plus = evaluate(sys, catalog, ap, b, false, counter);
      const Evaluation minus = evaluate(sys, catalog, am, b, false, counter);
      compare_direction(base, plus, minus, h, k, true, report.max_rel_area);
    }

    // Raw entry perturbations; evaluate() does not require row sums of one,
    // so each B_kc direction can be probed independently.
    const double h = 1e-4;
    for (int k = 0; k < n; ++k) {
      for (int c = 0; c < p; ++c) {
        ChoiceMatrix bp = b, bm = b;
        bp.b(k, c) += h;
        bm.b(k, c) -= h;
        const Evaluation plus = evaluate(sys, catalog, a, bp, false, counter);
        const Evaluation minus = evaluate(sys, catalog, a, bm, false, counter);
        compare_direction(base, plus, minus, h, b.flat(k, c), false, report.max_rel_choice);
      }
    }
  }
  return report;
}

}  // namespace trussopt
