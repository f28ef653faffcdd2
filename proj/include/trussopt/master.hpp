// Outer-approximation master problem: pick the catalog choice matrix that
// minimizes the tightest cut underestimate of the sizing weight, subject to
// beating the incumbent by at least epsilon. Solved exactly by LP-relaxation
// branch and bound; a brute-force enumerator is provided for cross-checks.
#pragma once

#include "trussopt/model.hpp"
#include "trussopt/simplex.hpp"

#include <string>
#include <vector>

namespace trussopt {

struct OaCut {
  double psi = 0;      // sizing weight at the anchor design, kg
  Vec anchor;          // flattened binary choice matrix the cut is built at
  Vec gradient;        // weight gradient with respect to the choice matrix
  bool slave_feasible = true;  // whether the sizing run found a feasible point
};

class MasterProblem {
 public:
  MasterProblem(int n, int p, double epsilon = 1e-3);

  int n() const { return n_; }
  int p() const { return p_; }
  double epsilon() const { return epsilon_; }
  const std::vector<OaCut>& cuts() const { return cuts_; }

  // Appends a cut. Throws std::invalid_argument on size mismatch, on a
  // non-binary anchor, or when the anchor duplicates an existing cut.
  void add_cut(OaCut cut);

  bool has_anchor(const Vec& anchor) const;

 private:
  int n_;
  int p_;
  double epsilon_;
  std::vector<OaCut> cuts_;
};

// Tightest cut value at a flattened binary choice matrix:
//   max_t [ psi_t + gradient_t . (flat - anchor_t) ].
double cut_value(const MasterProblem& problem, const Vec& flat);

struct MilpOptions {
  double integrality_tol = 1e-6;
  double prune_tol = 1e-12;  // slack when pruning against the incumbent
  long long max_nodes = 2000000;
  LpOptions lp;
};

struct MilpResult {
  bool feasible = false;   // a binary matrix beats the incumbent cap
  ChoiceMatrix choice;     // only meaningful when feasible
  double eta = 0;          // cut value at choice; +infinity when infeasible
  long long nodes = 0;     // branch-and-bound nodes solved
  long long lp_iterations = 0;
};

// Branch and bound over the LP relaxation. u_min is the incumbent weight;
// the master requires eta <= u_min - epsilon (no cap when u_min is
// infinite). Branching fixes the most fractional entry, best-first on the
// relaxation bound. Requires at least one cut.
MilpResult solve_milp(const MasterProblem& problem, double u_min,
                      const MilpOptions& options = {});

// Enumerates all p^n binary matrices and applies the same feasibility test.
// Throws when p^n exceeds a million.
MilpResult brute_force_milp(const MasterProblem& problem, double u_min);

// The LP relaxation in CPLEX LP text format, for inspection.
std::string to_lp_format(const MasterProblem& problem, double u_min);

}  // namespace trussopt
