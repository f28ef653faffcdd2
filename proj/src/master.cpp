#include "trussopt/master.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace trussopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact lower bound on the cut value over all row-stochastic matrices: each
// cut is minimized independently by picking the smallest gradient entry per
// row, and the max of the per-cut minima bounds the max from below.
double eta_lower_bound(const MasterProblem& problem) {
  const int n = problem.n();
  const int p = problem.p();
  double bound = -kInf;
  for (const OaCut& cut : problem.cuts()) {
    double value = cut.psi - cut.gradient.dot(cut.anchor);
    for (int i = 0; i < n; ++i) {
      value += cut.gradient.segment(i * p, p).minCoeff();
    }
    bound = std::max(bound, value);
  }
  return bound;
}

ChoiceMatrix round_to_binary(const Vec& flat, int n, int p) {
  std::vector<int> indices(n);
  for (int i = 0; i < n; ++i) {
    int best = 0;
    flat.segment(i * p, p).maxCoeff(&best);
    indices[i] = best;
  }
  return ChoiceMatrix::from_indices(p, indices);
}

}  // namespace

MasterProblem::MasterProblem(int n, int p, double epsilon)
    : n_(n), p_(p), epsilon_(epsilon) {
  if (n_ <= 0 || p_ <= 0) throw std::invalid_argument("MasterProblem: empty dimensions");
  if (epsilon_ <= 0) throw std::invalid_argument("MasterProblem: epsilon must be positive");
}

void MasterProblem::add_cut(OaCut cut) {
  const int np = n_ * p_;
  if (cut.anchor.size() != np || cut.gradient.size() != np) {
    throw std::invalid_argument("add_cut: size mismatch");
  }
  ChoiceMatrix anchor(Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                     Eigen::RowMajor>>(cut.anchor.data(), n_, p_));
  if (!anchor.is_binary()) {
    throw std::invalid_argument("add_cut: anchor is not a binary choice matrix");
  }
  if (has_anchor(cut.anchor)) {
    throw std::invalid_argument("add_cut: duplicate anchor; the outer loop revisited a design");
  }
  cuts_.push_back(std::move(cut));
}

bool MasterProblem::has_anchor(const Vec& anchor) const {
  for (const OaCut& cut : cuts_) {
    if (cut.anchor.size() == anchor.size() && cut.anchor == anchor) return true;
  }
  return false;
}

double cut_value(const MasterProblem& problem, const Vec& flat) {
  if (problem.cuts().empty()) {
    throw std::invalid_argument("cut_value: no cuts");
  }
  double value = -kInf;
  for (const OaCut& cut : problem.cuts()) {
    value = std::max(value, cut.psi + cut.gradient.dot(flat - cut.anchor));
  }
  return value;
}

MilpResult solve_milp(const MasterProblem& problem, double u_min,
                      const MilpOptions& options) {
  if (problem.cuts().empty()) {
    throw std::invalid_argument("solve_milp: no cuts");
  }
  const int n = problem.n();
  const int p = problem.p();
  const int np = n * p;
  const int num_cuts = static_cast<int>(problem.cuts().size());
  const double cap = std::isfinite(u_min) ? u_min - problem.epsilon() : kInf;
  const double eta_lb = eta_lower_bound(problem);

  MilpResult result;
  result.eta = kInf;
  if (cap < eta_lb) return result;  // no matrix can beat the incumbent

  // Columns: eta, then the flattened choice matrix. Rows: one row-sum
  // equality per element, then one inequality per cut.
  LinearProgram lp;
  lp.a = Mat::Zero(n + num_cuts, 1 + np);
  lp.rhs = Vec(n + num_cuts);
  lp.rows.assign(n, RowType::Equal);
  lp.rows.insert(lp.rows.end(), num_cuts, RowType::LessEqual);
  for (int i = 0; i < n; ++i) {
    lp.a.row(i).segment(1 + i * p, p).setOnes();
    lp.rhs(i) = 1.0;
  }
  for (int t = 0; t < num_cuts; ++t) {
    const OaCut& cut = problem.cuts()[t];
    lp.a(n + t, 0) = -1.0;
    lp.a.row(n + t).tail(np) = cut.gradient.transpose();
    lp.rhs(n + t) = cut.gradient.dot(cut.anchor) - cut.psi;
  }
  lp.c = Vec::Zero(1 + np);
  lp.c(0) = 1.0;

  struct Node {
    double bound;
    long long id;
    Vec lower, upper;  // bounds on the choice block only
  };
  const auto worse = [](const Node& a, const Node& b) {
    return a.bound > b.bound || (a.bound == b.bound && a.id > b.id);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  long long next_id = 0;
  open.push({eta_lb, next_id++, Vec::Zero(np), Vec::Ones(np)});

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound >= result.eta - options.prune_tol) break;  // best-first: rest is worse
    if (++result.nodes > options.max_nodes) {
      throw std::runtime_error("solve_milp: node limit exceeded");
    }

    lp.lower = Vec(1 + np);
    lp.upper = Vec(1 + np);
    lp.lower(0) = eta_lb;
    lp.upper(0) = cap;
    lp.lower.tail(np) = node.lower;
    lp.upper.tail(np) = node.upper;

    const LpSolution relax = solve_lp(lp, options.lp);
    result.lp_iterations += relax.iterations;
    if (relax.status == LpStatus::Infeasible) continue;
    if (relax.status != LpStatus::Optimal) {
      throw std::runtime_error(std::string("solve_milp: relaxation ") +
                               to_string(relax.status));
    }
    if (relax.objective >= result.eta - options.prune_tol) continue;

    // Most fractional entry: largest distance from the nearest integer.
    int branch = -1;
    double worst = options.integrality_tol;
    for (int j = 0; j < np; ++j) {
      const double v = relax.x(1 + j);
      const double dist = std::min(v, 1.0 - v);
      if (dist > worst) {
        worst = dist;
        branch = j;
      }
    }

    if (branch < 0) {
      const ChoiceMatrix rounded = round_to_binary(relax.x.tail(np), n, p);
      const Vec flat = rounded.flattened();
      const double eta = cut_value(problem, flat);
      if (eta <= cap && eta < result.eta) {
        result.feasible = true;
        result.choice = rounded;
        result.eta = eta;
      }
      continue;
    }

    const int row = branch / p;
    Node fixed_one{relax.objective, next_id++, node.lower, node.upper};
    fixed_one.lower(branch) = 1.0;
    for (int c = 0; c < p; ++c) {
      if (row * p + c != branch) fixed_one.upper(row * p + c) = 0.0;
    }
    Node fixed_zero{relax.objective, next_id++, std::move(node.lower), std::move(node.upper)};
    fixed_zero.upper(branch) = 0.0;
    open.push(std::move(fixed_one));
    open.push(std::move(fixed_zero));
  }

  if (!result.feasible) result.eta = kInf;
  return result;
}

MilpResult brute_force_milp(const MasterProblem& problem, double u_min) {
  if (problem.cuts().empty()) {
    throw std::invalid_argument("brute_force_milp: no cuts");
  }
  const int n = problem.n();
  const int p = problem.p();
  const double count = std::pow(static_cast<double>(p), n);
  if (count > 1e6) {
    throw std::invalid_argument("brute_force_milp: p^n too large to enumerate");
  }
  const double cap = std::isfinite(u_min) ? u_min - problem.epsilon() : kInf;

  MilpResult result;
  result.eta = kInf;
  std::vector<int> indices(n, 0);
  while (true) {
    const ChoiceMatrix candidate = ChoiceMatrix::from_indices(p, indices);
    const double eta = cut_value(problem, candidate.flattened());
    ++result.nodes;
    if (eta <= cap && eta < result.eta) {
      result.feasible = true;
      result.choice = candidate;
      result.eta = eta;
    }
    int i = n - 1;
    while (i >= 0 && indices[i] == p - 1) indices[i--] = 0;
    if (i < 0) break;
    ++indices[i];
  }
  if (!result.feasible) result.eta = kInf;
  return result;
}

std::string to_lp_format(const MasterProblem& problem, double u_min) {
  const int n = problem.n();
  const int p = problem.p();
  const double cap = std::isfinite(u_min) ? u_min - problem.epsilon() : kInf;
  std::ostringstream out;
  out.precision(17);
  out << "\\ outer approximation master: n=" << n << " p=" << p
      << " cuts=" << problem.cuts().size() << "\n";
  out << "Minimize\n obj: eta\nSubject To\n";
  for (int i = 0; i < n; ++i) {
    out << " row_" << i << ":";
    for (int c = 0; c < p; ++c) {
      out << (c ? " + " : " ") << "b_" << i << "_" << c;
    }
    out << " = 1\n";
  }
  for (size_t t = 0; t < problem.cuts().size(); ++t) {
    const OaCut& cut = problem.cuts()[t];
    out << " cut_" << t << ": - eta";
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < p; ++c) {
        const double g = cut.gradient(i * p + c);
        if (g == 0) continue;
        out << (g >= 0 ? " + " : " - ") << std::abs(g) << " b_" << i << "_" << c;
      }
    }
    out << " <= " << cut.gradient.dot(cut.anchor) - cut.psi << "\n";
  }
  out << "Bounds\n";
  if (std::isfinite(cap)) {
    out << " -1e30 <= eta <= " << cap << "\n";
  } else {
    out << " eta free\n";
  }
  out << "Binaries\n";
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < p; ++c) out << " b_" << i << "_" << c << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace trussopt
