#include "trussopt/driver.hpp"

#include "trussopt/postopt.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace trussopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  const auto now = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(now - start).count();
}

// Scaled feasibility test shared by the incumbent re-check and enumeration.
bool design_feasible(const TrussSystem& sys, const Catalog& catalog, const Vec& a,
                     const ChoiceMatrix& b, const ConstraintScaling& scaling,
                     double tol, FemCallCounter& counter) {
  const Evaluation eval = evaluate(sys, catalog, a, b, /*want_gradients=*/false, counter);
  double violation = eval.stress.maxCoeff() / scaling.stress_scale;
  for (int r = 0; r < eval.disp.size(); ++r) {
    violation = std::max(violation, eval.disp(r) / scaling.disp_scale(r));
  }
  return violation <= tol;
}

}  // namespace

const char* to_string(OaStatus status) {
  switch (status) {
    case OaStatus::MasterInfeasible: return "master-infeasible";
    case OaStatus::IterationCap: return "iteration-cap";
  }
  return "unknown";
}

TrussSlaveOracle::TrussSlaveOracle(const TrussSystem& sys, const Catalog& catalog,
                                   Vec lower, Vec upper, const SlaveOptions& options)
    : sys_(sys), catalog_(catalog), lower_(std::move(lower)), upper_(std::move(upper)),
      scaling_(default_scaling(sys)), options_(options) {}

OracleResult TrussSlaveOracle::solve(const ChoiceMatrix& b) {
  last_ = solve_slave(sys_, catalog_, b, lower_, upper_, scaling_, counter_, options_);
  const ActiveSets active =
      detect_active(last_.eval, scaling_, last_.a, lower_, upper_, options_.active_tol);
  const KktResult kkt = kkt_multipliers(last_.eval, scaling_, active);

  OracleResult result;
  result.psi = last_.psi;
  result.gradient = psi_gradient(last_.eval, scaling_, kkt);
  result.feasible = last_.feasible;
  result.qualification_ok = kkt.qualification_ok;
  result.kkt_residual = kkt.stationarity;
  result.a = last_.a;
  return result;
}

QuadraticOracle::QuadraticOracle(Vec center, Vec offset)
    : center_(std::move(center)), offset_(std::move(offset)) {
  if (center_.size() != offset_.size()) {
    throw std::invalid_argument("QuadraticOracle: size mismatch");
  }
}

OracleResult QuadraticOracle::solve(const ChoiceMatrix& b) {
  const Vec flat = b.flattened();
  if (flat.size() != center_.size()) {
    throw std::invalid_argument("QuadraticOracle: choice matrix size mismatch");
  }
  OracleResult result;
  result.psi = (flat - center_).squaredNorm() + offset_.dot(flat);
  result.gradient = 2.0 * (flat - center_) + offset_;
  result.feasible = true;
  result.qualification_ok = true;
  result.kkt_residual = 0.0;
  return result;
}

OaResult bilevel_oa_with_oracle(SlaveOracle& oracle, const ChoiceMatrix& b0,
                                const OaOptions& options) {
  validate(b0, /*require_binary=*/true);
  const int n = b0.n();
  const int p = b0.p();
  const auto start = std::chrono::steady_clock::now();

  MasterProblem master(n, p, options.epsilon);
  OaResult result;
  result.best_weight = kInf;

  ChoiceMatrix current = b0;
  for (int k = 0; k < options.max_iter; ++k) {
    const OracleResult slave = oracle.solve(current);
    ++result.nlp_solves;
    result.iterations = k + 1;

    if (slave.feasible && slave.psi < result.best_weight) {
      result.best_weight = slave.psi;
      result.best_choice = current;
      result.best_a = slave.a;
    }

    OaCut cut;
    cut.psi = slave.psi;
    cut.anchor = current.flattened();
    cut.gradient = slave.gradient;
    cut.slave_feasible = slave.feasible;
    master.add_cut(std::move(cut));

    const MilpResult milp = solve_milp(master, result.best_weight, options.milp);
    result.milp_nodes += milp.nodes;
    result.milp_lp_iterations += milp.lp_iterations;

    HistoryRow row;
    row.k = k;
    row.u = slave.psi;
    row.u_min = result.best_weight;
    row.eta = milp.feasible ? milp.eta : kInf;
    row.fem_calls = oracle.fem_calls();
    row.nlp_solves = result.nlp_solves;
    row.wall_ms = elapsed_ms(start);
    row.slave_feasible = slave.feasible;
    row.qualification_ok = slave.qualification_ok;
    row.kkt_residual = slave.kkt_residual;
    result.history.push_back(row);

    if (!milp.feasible) {
      result.status = OaStatus::MasterInfeasible;
      break;
    }
    result.status = OaStatus::IterationCap;
    current = milp.choice;
  }

  result.fem_calls = oracle.fem_calls();
  result.wall_ms = elapsed_ms(start);
  result.recheck_ok = std::isfinite(result.best_weight);
  return result;
}

OaResult bilevel_oa(const TrussSystem& sys, const Catalog& catalog, const Vec& lower,
                    const Vec& upper, const ChoiceMatrix& b0, const OaOptions& options) {
  TrussSlaveOracle oracle(sys, catalog, lower, upper, options.slave);
  OaResult result = bilevel_oa_with_oracle(oracle, b0, options);

  if (std::isfinite(result.best_weight)) {
    // Re-verify the returned design with a fresh evaluation rather than
    // trusting the flags accumulated during the run.
    FemCallCounter recheck_counter;
    const ConstraintScaling scaling = default_scaling(sys);
    result.recheck_ok = design_feasible(sys, catalog, result.best_a, result.best_choice,
                                        scaling, options.slave.feas_tol, recheck_counter);
    result.fem_calls += recheck_counter.calls;
  } else {
    result.recheck_ok = false;
  }
  return result;
}

EnumerateResult enumerate_baseline(const TrussSystem& sys, const Catalog& catalog,
                                   const Vec& lower, const Vec& upper,
                                   const SlaveOptions& options, int jobs) {
  const int n = sys.num_bars();
  const int p = static_cast<int>(catalog.size());
  if (p <= 0) throw std::invalid_argument("enumerate_baseline: empty catalog");
  const double count_d = std::pow(static_cast<double>(p), n);
  if (count_d > 2e6) {
    throw std::invalid_argument("enumerate_baseline: p^n too large to enumerate");
  }
  const long long count = static_cast<long long>(count_d + 0.5);
  if (jobs < 1) jobs = 1;
  if (static_cast<long long>(jobs) > count) jobs = static_cast<int>(count);

  const auto start = std::chrono::steady_clock::now();
  const ConstraintScaling scaling = default_scaling(sys);

  struct WorkerBest {
    double weight = kInf;
    std::vector<int> indices;
    Vec a;
    long long fem_calls = 0;
    long long sized = 0;
  };
  std::vector<WorkerBest> best(jobs);

  const auto work = [&](int worker) {
    WorkerBest& mine = best[worker];
    FemCallCounter counter;
    std::vector<int> indices(n);
    for (long long linear = worker; linear < count; linear += jobs) {
      long long rest = linear;
      for (int i = n - 1; i >= 0; --i) {
        indices[i] = static_cast<int>(rest % p);
        rest /= p;
      }
      const ChoiceMatrix b = ChoiceMatrix::from_indices(p, indices);
      const SlaveSolution sized = solve_slave(sys, catalog, b, lower, upper, scaling,
                                              counter, options);
      ++mine.sized;
      if (!sized.feasible) continue;
      if (sized.psi < mine.weight ||
          (sized.psi == mine.weight && indices < mine.indices)) {
        mine.weight = sized.psi;
        mine.indices = indices;
        mine.a = sized.a;
      }
    }
    mine.fem_calls = counter.calls;
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }

  EnumerateResult result;
  result.weight = kInf;
  for (const WorkerBest& mine : best) {
    result.fem_calls += mine.fem_calls;
    result.sized += mine.sized;
    if (mine.weight == kInf) continue;
    if (mine.weight < result.weight ||
        (mine.weight == result.weight && !result.feasible) ||
        (mine.weight == result.weight && mine.indices < result.choice.to_indices())) {
      result.feasible = true;
      result.choice = ChoiceMatrix::from_indices(p, mine.indices);
      result.a = mine.a;
      result.weight = mine.weight;
    }
  }
  result.wall_ms = elapsed_ms(start);
  return result;
}

int hamming_distance(const ChoiceMatrix& x, const ChoiceMatrix& y) {
  const std::vector<int> cx = x.to_indices();
  const std::vector<int> cy = y.to_indices();
  if (cx.size() != cy.size()) {
    throw std::invalid_argument("hamming_distance: element count mismatch");
  }
  int distance = 0;
  for (size_t i = 0; i < cx.size(); ++i) {
    if (cx[i] != cy[i]) ++distance;
  }
  return distance;
}

}  // namespace trussopt
