// Outer loop of the bi-level decomposition: alternates the continuous sizing
// slave with the cut-based master over the catalog choice matrix until the
// master proves that no choice can beat the incumbent by epsilon. Also hosts
// the exhaustive enumeration baseline used for cross-checks.
#pragma once

#include "trussopt/master.hpp"
#include "trussopt/slave.hpp"

#include <memory>
#include <vector>

namespace trussopt {

// One sizing solve viewed from the outer loop.
struct OracleResult {
  double psi = 0;           // objective value at the oracle optimum
  Vec gradient;             // d psi / dB, flattened n*p
  bool feasible = false;
  bool qualification_ok = true;
  double kkt_residual = 0;
  Vec a;                    // sizing variables; empty for abstract oracles
};

class SlaveOracle {
 public:
  virtual ~SlaveOracle() = default;
  virtual OracleResult solve(const ChoiceMatrix& b) = 0;
  virtual long long fem_calls() const { return 0; }
};

// The sizing slave on a truss: MMA minimization followed by multiplier
// recovery, with the choice-matrix gradient assembled from the multipliers.
class TrussSlaveOracle : public SlaveOracle {
 public:
  TrussSlaveOracle(const TrussSystem& sys, const Catalog& catalog, Vec lower, Vec upper,
                   const SlaveOptions& options = {});

  OracleResult solve(const ChoiceMatrix& b) override;
  long long fem_calls() const override { return counter_.calls; }

  // Details of the most recent solve, for reporting.
  const SlaveSolution& last_solution() const { return last_; }

 private:
  const TrussSystem& sys_;
  const Catalog& catalog_;
  Vec lower_, upper_;
  ConstraintScaling scaling_;
  SlaveOptions options_;
  FemCallCounter counter_;
  SlaveSolution last_;
};

// Strictly convex separable test oracle with a closed-form minimizer:
//   psi(B) = |B - center|^2 + offset . B,  always feasible.
class QuadraticOracle : public SlaveOracle {
 public:
  QuadraticOracle(Vec center, Vec offset);
  OracleResult solve(const ChoiceMatrix& b) override;

 private:
  Vec center_, offset_;
};

struct OaOptions {
  double epsilon = 1e-3;  // kg; required improvement over the incumbent
  int max_iter = 200;
  SlaveOptions slave;
  MilpOptions milp;
};

enum class OaStatus { MasterInfeasible, IterationCap };

const char* to_string(OaStatus status);

struct HistoryRow {
  int k = 0;                // outer iteration, from 0
  double u = 0;             // slave objective at this iterate
  double u_min = 0;         // incumbent after this iterate; +infinity if none
  double eta = 0;           // master objective; +infinity when the master is infeasible
  long long fem_calls = 0;  // cumulative
  long long nlp_solves = 0; // cumulative
  double wall_ms = 0;       // cumulative
  bool slave_feasible = false;
  bool qualification_ok = true;
  double kkt_residual = 0;  // slave stationarity measure at this iterate
};

struct OaResult {
  OaStatus status = OaStatus::IterationCap;
  ChoiceMatrix best_choice;   // only meaningful when best_weight is finite
  Vec best_a;
  double best_weight = 0;     // +infinity when no feasible design was found
  int iterations = 0;         // number of outer iterations run
  std::vector<HistoryRow> history;
  long long fem_calls = 0;
  long long nlp_solves = 0;
  long long milp_nodes = 0;
  long long milp_lp_iterations = 0;
  double wall_ms = 0;
  bool recheck_ok = false;    // independent feasibility check of the result
};

// Core loop over an arbitrary oracle. Starts from the binary matrix b0,
// keeps the best feasible oracle value as the incumbent, linearizes every
// oracle answer into a master cut, and stops when the master cannot propose
// a design at least epsilon better or the iteration cap is hit.
OaResult bilevel_oa_with_oracle(SlaveOracle& oracle, const ChoiceMatrix& b0,
                                const OaOptions& options = {});

// Full truss pipeline, including an independent feasibility re-evaluation
// of the final design.
OaResult bilevel_oa(const TrussSystem& sys, const Catalog& catalog, const Vec& lower,
                    const Vec& upper, const ChoiceMatrix& b0, const OaOptions& options = {});

struct EnumerateResult {
  bool feasible = false;
  ChoiceMatrix choice;
  Vec a;
  double weight = 0;        // +infinity when nothing is feasible
  long long sized = 0;      // number of matrices passed to the sizing solver
  long long fem_calls = 0;
  double wall_ms = 0;
};

// Sizes every one of the p^n binary matrices and keeps the lightest feasible
// design; ties break toward the lexicographically smallest index vector.
// The work is split across jobs threads with a deterministic reduction.
EnumerateResult enumerate_baseline(const TrussSystem& sys, const Catalog& catalog,
                                   const Vec& lower, const Vec& upper,
                                   const SlaveOptions& options = {}, int jobs = 1);

// Number of elements whose catalog selection differs.
int hamming_distance(const ChoiceMatrix& x, const ChoiceMatrix& y);

}  // namespace trussopt
