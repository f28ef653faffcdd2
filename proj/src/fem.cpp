#include "trussopt/fem.hpp"

#include <stdexcept>
#include <string>

namespace trussopt {

FemState assemble_and_solve(const TrussSystem& sys, const Vec& ea, FemCallCounter& counter) {
  const int n = sys.num_bars();
  if (ea.size() != n) throw std::invalid_argument("assemble_and_solve: EA size mismatch");
  for (int i = 0; i < n; ++i) {
    if (!(ea(i) > 0)) {
      throw std::domain_error("assemble_and_solve: non-positive axial stiffness on bar " +
                              std::to_string(i + 1));
    }
  }

  const Mat& g = sys.bar_geometry();
  const Vec stiffness = ea.cwiseQuotient(sys.lengths());  // EA/l per bar
  Mat k = g * stiffness.asDiagonal() * g.transpose();

  FemState state;
  state.ea = ea;
  state.llt.compute(k);
  if (state.llt.info() != Eigen::Success) {
    throw std::runtime_error("assemble_and_solve: reduced stiffness matrix is not positive "
                             "definite (model under-restrained or mechanism present)");
  }
  state.u = state.llt.solve(sys.load_vector());
  state.elongation = g.transpose() * state.u;
  state.phi = stiffness.cwiseProduct(state.elongation);
  counter.calls += 1;
  return state;
}

void state_sensitivity(const TrussSystem& sys, const FemState& state, const Vec& dea_dtheta,
                       Vec& du_dtheta, Vec& dphi_dtheta) {
  const int n = sys.num_bars();
  if (dea_dtheta.size() != n) throw std::invalid_argument("state_sensitivity: direction size mismatch");

  // (dK) u = G diag(dea/l) G^T u = G (dea .* elongation ./ l)
  const Vec rhs = sys.bar_geometry() * dea_dtheta.cwiseProduct(state.elongation)
                                           .cwiseQuotient(sys.lengths());
  du_dtheta = -state.llt.solve(rhs);

  const Vec delong = sys.bar_geometry().transpose() * du_dtheta;
  dphi_dtheta = dea_dtheta.cwiseProduct(state.elongation).cwiseQuotient(sys.lengths()) +
                state.ea.cwiseQuotient(sys.lengths()).cwiseProduct(delong);
}

Mat influence_displacements(const TrussSystem& sys, const FemState& state) {
  const Mat rhs = sys.bar_geometry() *
                  state.elongation.cwiseQuotient(sys.lengths()).asDiagonal();
  return -state.llt.solve(rhs);
}

}  // namespace trussopt
