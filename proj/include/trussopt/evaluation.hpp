#pragma once
// Objective and constraint functions of the sizing problem: structural
// weight, the four per-element stress-type constraints (tension,
// compression, column buckling, wall buckling) blended by the choice
// matrix, and the displacement limits, all with analytic gradients with
// respect to areas and to the choice matrix entries.

#include "trussopt/fem.hpp"
#include "trussopt/model.hpp"
#include "trussopt/truss.hpp"

namespace trussopt {

// Number of stress-type constraints per element.
inline constexpr int kConstraintsPerElement = 4;

// Flattened row-major index of stress constraint (element i, kind j).
inline int stress_index(int i, int j) { return i * kConstraintsPerElement + j; }

struct Evaluation {
  double weight = 0;  // kg
  Mat stress;         // n x 4, MPa; feasible iff <= 0
  Vec disp;           // d, mm; feasible iff <= 0

  bool has_gradients = false;
  Vec dweight_da;   // n
  Vec dweight_db;   // n*p, row-major (i, c)
  Mat dstress_da;   // (n*4) x n
  Mat dstress_db;   // (n*4) x (n*p)
  Mat ddisp_da;     // d x n
  Mat ddisp_db;     // d x (n*p)

  double max_stress_violation() const { return stress.size() ? stress.maxCoeff() : 0.0; }
  double max_disp_violation() const { return disp.size() ? disp.maxCoeff() : 0.0; }
};

// Normalization used when constraints enter a solver or an active-set /
// multiplier computation: stress rows by a fixed 100 MPa reference, each
// displacement row by the magnitude of its own bound.
struct ConstraintScaling {
  double stress_scale = 100.0;  // MPa
  Vec disp_scale;               // mm, per displacement row
};

ConstraintScaling default_scaling(const TrussSystem& sys);

// Structural weight sum_i sum_c rho(c) l_i B_ic a_i.
double weight(const TrussSystem& sys, const Catalog& catalog, const Vec& a,
              const ChoiceMatrix& b);

// Closed-form weight gradients: dw/da_i = sum_c rho(c) l_i B_ic,
// dw/dB_ic = rho(c) l_i a_i.
void weight_gradients(const TrussSystem& sys, const Catalog& catalog, const Vec& a,
                      const ChoiceMatrix& b, Vec& dweight_da, Vec& dweight_db);

// Full evaluation at (a, B): one stiffness solve with EA_i = Etilde_i(B) a_i,
// then the blended constraints
//   s_i1 = phi/a - sigma_t(c),  s_i2 = -phi/a - sigma_c(c),
//   s_i3 = -phi/a - pi^2 E(c) I(a,c) / (a l^2),
//   s_i4 = -phi/a - 4 pi^2 E(c) K(c)^2 / (12 (1 - nu(c)^2)),
//   stress_ij = sum_c B_ic s_ij(c),  disp = P u - ubar.
// With want_gradients set, exact derivative blocks are assembled from the
// shared influence displacements (no additional FEM calls).
Evaluation evaluate(const TrussSystem& sys, const Catalog& catalog, const Vec& a,
                    const ChoiceMatrix& b, bool want_gradients, FemCallCounter& counter);

struct GradientCheckReport {
  int states = 0;            // random (a, B) points tested
  double max_rel_area = 0;   // worst error over all area directions
  double max_rel_choice = 0; // worst error over all choice-matrix directions
};

// Central finite differences of weight, every stress row, and every
// displacement row against the analytic blocks, at random areas inside the
// bounds and random row-stochastic matrices. Errors are relative with a
// unit floor: |fd - analytic| / max(1, |fd|, |analytic|).
GradientCheckReport gradient_check(const TrussSystem& sys, const Catalog& catalog,
                                   const Vec& lower, const Vec& upper, int states,
                                   unsigned seed, FemCallCounter& counter);

}  // namespace trussopt
