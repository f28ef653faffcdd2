#pragma once
// Pin-jointed truss definition (nodes, bars, supports, loads, displacement
// limits) and the precomputed free-dof quantities used by the stiffness
// assembly.

#include "trussopt/model.hpp"

#include <utility>
#include <vector>

namespace trussopt {

// One displacement limit row: sign * u(node, axis) - bound <= 0.
struct DispLimit {
  int node = 0;      // 0-based
  int axis = 0;      // 0 = x, 1 = y, 2 = z
  double sign = -1;  // +1 or -1
  double bound = 0;  // mm
};

struct TrussModel {
  Mat nodes;                                   // num_nodes x dim, mm
  Eigen::Matrix<int, Eigen::Dynamic, 2> bars;  // n x 2, 0-based node ids
  std::vector<std::pair<int, int>> fixed_dofs; // (node, axis)
  Mat loads;                                   // num_nodes x dim, N
  std::vector<DispLimit> disp_limits;
};

// Length and unit direction cosines of one bar.  Throws on a degenerate
// (coincident-node) bar.
std::pair<double, Vec> element_geometry(const TrussModel& model, int bar);

// Immutable compiled view of a TrussModel: free-dof numbering, per-bar
// geometry, the scatter matrix G whose column i maps bar i's axial
// direction onto the free dofs (so K = G diag(EA/l) G^T and the bar
// elongation is G^T u), the reduced load vector, and the displacement
// selector P with its bounds.
class TrussSystem {
 public:
  explicit TrussSystem(TrussModel model);

  const TrussModel& model() const { return model_; }
  int dim() const { return static_cast<int>(model_.nodes.cols()); }
  int num_nodes() const { return static_cast<int>(model_.nodes.rows()); }
  int num_bars() const { return static_cast<int>(model_.bars.rows()); }
  int num_free_dofs() const { return q_; }
  int num_disp_limits() const { return static_cast<int>(model_.disp_limits.size()); }

  double length(int bar) const { return lengths_(bar); }
  const Vec& lengths() const { return lengths_; }
  Vec direction(int bar) const { return directions_.col(bar); }

  const Mat& bar_geometry() const { return g_; }        // q x n
  const Vec& load_vector() const { return f_; }         // q
  const Mat& disp_selector() const { return p_; }       // d x q
  const Vec& disp_bounds() const { return disp_bounds_; }  // d

  // Free-dof index of (node, axis), or -1 when fixed.
  int free_dof(int node, int axis) const;

 private:
  TrussModel model_;
  int q_ = 0;
  std::vector<int> dof_index_;  // num_nodes * dim entries, -1 for fixed
  Vec lengths_;
  Mat directions_;  // dim x n
  Mat g_;
  Vec f_;
  Mat p_;
  Vec disp_bounds_;
};

}  // namespace trussopt
