#include "trussopt/truss.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace trussopt {

std::pair<double, Vec> element_geometry(const TrussModel& model, int bar) {
  if (bar < 0 || bar >= model.bars.rows()) {
    throw std::invalid_argument("element_geometry: bar index out of range");
  }
  const int a = model.bars(bar, 0);
  const int b = model.bars(bar, 1);
  const Vec delta = model.nodes.row(b) - model.nodes.row(a);
  const double length = delta.norm();
  if (!(length > 0)) {
    throw std::invalid_argument("bar " + std::to_string(bar + 1) + ": coincident end nodes");
  }
  return {length, delta / length};
}

TrussSystem::TrussSystem(TrussModel model) : model_(std::move(model)) {
  const int dim = static_cast<int>(model_.nodes.cols());
  const int num_nodes = static_cast<int>(model_.nodes.rows());
  const int n = static_cast<int>(model_.bars.rows());
  if (dim != 2 && dim != 3) throw std::invalid_argument("truss: node coordinates must be 2D or 3D");
  if (num_nodes < 2) throw std::invalid_argument("truss: at least two nodes required");
  if (n < 1) throw std::invalid_argument("truss: at least one bar required");
  if (model_.loads.rows() != num_nodes || model_.loads.cols() != dim) {
    throw std::invalid_argument("truss: load table must be num_nodes x dim");
  }

  for (int i = 0; i < n; ++i) {
    const int a = model_.bars(i, 0);
    const int b = model_.bars(i, 1);
    if (a < 0 || a >= num_nodes || b < 0 || b >= num_nodes) {
      throw std::invalid_argument("bar " + std::to_string(i + 1) + ": node index out of range");
    }
    if (a == b) {
      throw std::invalid_argument("bar " + std::to_string(i + 1) + ": references a single node twice");
    }
  }

  // Free-dof numbering: row-major over (node, axis), skipping supports.
  dof_index_.assign(static_cast<size_t>(num_nodes) * dim, 0);
  std::set<std::pair<int, int>> fixed(model_.fixed_dofs.begin(), model_.fixed_dofs.end());
  for (const auto& [node, axis] : fixed) {
    if (node < 0 || node >= num_nodes || axis < 0 || axis >= dim) {
      throw std::invalid_argument("support references node " + std::to_string(node + 1) +
                                  " axis " + std::to_string(axis) + " outside the model");
    }
  }
  q_ = 0;
  for (int node = 0; node < num_nodes; ++node) {
    for (int axis = 0; axis < dim; ++axis) {
      const size_t slot = static_cast<size_t>(node) * dim + axis;
      dof_index_[slot] = fixed.count({node, axis}) ? -1 : q_++;
    }
  }
  if (q_ == 0) throw std::invalid_argument("truss: every dof is fixed");

  lengths_.resize(n);
  directions_.resize(dim, n);
  g_ = Mat::Zero(q_, n);
  for (int i = 0; i < n; ++i) {
    auto [length, dir] = element_geometry(model_, i);
    lengths_(i) = length;
    directions_.col(i) = dir;
    const int a = model_.bars(i, 0);
    const int b = model_.bars(i, 1);
    for (int axis = 0; axis < dim; ++axis) {
      // Elongation = (u_b - u_a) . dir, so scatter +dir at b and -dir at a.
      if (const int fa = free_dof(a, axis); fa >= 0) g_(fa, i) -= dir(axis);
      if (const int fb = free_dof(b, axis); fb >= 0) g_(fb, i) += dir(axis);
    }
  }

  f_ = Vec::Zero(q_);
  for (int node = 0; node < num_nodes; ++node) {
    for (int axis = 0; axis < dim; ++axis) {
      const double value = model_.loads(node, axis);
      const int dof = free_dof(node, axis);
      if (dof >= 0) {
        f_(dof) += value;
      } else if (value != 0.0) {
        throw std::invalid_argument("load applied to fixed dof (node " + std::to_string(node + 1) +
                                    ")");
      }
    }
  }

  const int d = static_cast<int>(model_.disp_limits.size());
  p_ = Mat::Zero(d, q_);
  disp_bounds_.resize(d);
  for (int r = 0; r < d; ++r) {
    const DispLimit& row = model_.disp_limits[static_cast<size_t>(r)];
    if (row.node < 0 || row.node >= num_nodes || row.axis < 0 || row.axis >= dim) {
      throw std::invalid_argument("displacement limit " + std::to_string(r + 1) +
                                  ": node or axis out of range");
    }
    if (row.sign != 1.0 && row.sign != -1.0) {
      throw std::invalid_argument("displacement limit " + std::to_string(r + 1) +
                                  ": sign must be +1 or -1");
    }
    const int dof = free_dof(row.node, row.axis);
    if (dof < 0) {
      throw std::invalid_argument("displacement limit " + std::to_string(r + 1) +
                                  ": applies to a fixed dof");
    }
    p_(r, dof) = row.sign;
    disp_bounds_(r) = row.bound;
  }
}

int TrussSystem::free_dof(int node, int axis) const {
  return dof_index_[static_cast<size_t>(node) * dim() + axis];
}

}  // namespace trussopt
