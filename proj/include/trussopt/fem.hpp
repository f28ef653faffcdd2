#pragma once
// Direct-stiffness analysis of the reduced system K u = f and exact
// sensitivities of (u, phi) along any per-bar axial-stiffness direction.
// The factorization is retained so sensitivity solves never re-assemble.

#include "trussopt/truss.hpp"

#include <Eigen/Cholesky>

namespace trussopt {

// Per-run analysis counter, owned by the driver and passed explicitly.
// One assemble_and_solve equals one call; sensitivity back-solves are free.
struct FemCallCounter {
  long long calls = 0;
};

struct FemState {
  Vec ea;          // per-bar axial stiffness E*A, N
  Vec u;           // free-dof displacements, mm
  Vec elongation;  // per-bar axial elongation, mm
  Vec phi;         // per-bar axial force, N (tension positive)
  Eigen::LLT<Mat> llt;  // factorization of the reduced stiffness matrix
};

// Assembles K = G diag(EA/l) G^T, solves K u = f, and derives elongations
// and axial forces.  Throws on non-positive EA or an under-restrained
// (non-positive-definite) model.  Counts exactly one FEM call.
FemState assemble_and_solve(const TrussSystem& sys, const Vec& ea, FemCallCounter& counter);

// Directional derivatives of u and phi along dea = dEA/dtheta, reusing the
// stored factorization (no FEM call):
//   du/dtheta  = -K^{-1} (dK/dtheta) u,
//   dphi_i     = (dea_i / l_i) elongation_i + (EA_i / l_i) (G^T du)_i.
void state_sensitivity(const TrussSystem& sys, const FemState& state, const Vec& dea_dtheta,
                       Vec& du_dtheta, Vec& dphi_dtheta);

// Influence displacement matrix V (q x n): column k solves
//   K v_k = -g_k elongation_k / l_k,
// so du/dtheta = V dEA/dtheta for every stiffness direction at once.
Mat influence_displacements(const TrussSystem& sys, const FemState& state);

}  // namespace trussopt
