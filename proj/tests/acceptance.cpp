// Acceptance suite: end-to-end checks of the solver stack, one verdict line
// per criterion. Hard criteria gate the exit code; soft and stretch entries
// report without failing the build. Enumeration results can be cached
// between runs with --cache-dir; a cached entry is revalidated by re-sizing
// its stored selection before it is trusted.
#include "trussopt/archive.hpp"
#include "trussopt/driver.hpp"
#include "trussopt/generators.hpp"
#include "trussopt/postopt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace trussopt;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double now_ms() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double, std::milli>(clock::now() - start).count();
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

std::string fmt(double v, const char* format = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

struct Verdict {
  int index = 0;
  const char* kind = "hard";  // hard | soft | stretch
  bool pass = false;
  bool skipped = false;
  std::string label;
  std::string detail;
};

void print_verdict(const Verdict& v) {
  const char* word = v.skipped ? "SKIP" : (v.pass ? "PASS" : "FAIL");
  std::printf("criterion %2d [%-7s] %s  %s: %s\n", v.index, v.kind, word, v.label.c_str(),
              v.detail.c_str());
  std::fflush(stdout);
}

// A completed outer-loop run kept for the cross-cutting criteria 5c and 7.
struct StoredRun {
  std::string name;
  CompiledCase cc;
  OaResult result;
};

OaResult run_oa(const CompiledCase& cc) {
  OaOptions options;
  options.epsilon = cc.epsilon;
  options.max_iter = cc.max_iter;
  return bilevel_oa(cc.sys, cc.catalog, cc.lower, cc.upper, cc.b0, options);
}

// Text cache for enumeration baselines keyed by case name. An entry is only
// trusted after re-sizing its stored selection reproduces the stored weight.
class EnumCache {
 public:
  explicit EnumCache(fs::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }

  EnumerateResult run(const std::string& key, const CompiledCase& cc) {
    if (std::optional<EnumerateResult> hit = load(key, cc)) return *hit;
    const EnumerateResult fresh = enumerate_baseline(cc.sys, cc.catalog, cc.lower, cc.upper);
    store(key, fresh);
    return fresh;
  }

 private:
  std::optional<EnumerateResult> load(const std::string& key, const CompiledCase& cc) const {
    if (dir_.empty()) return std::nullopt;
    std::ifstream in(dir_ / (key + ".cache"));
    if (!in) return std::nullopt;

    double weight = 0;
    long long sized = 0, fem = 0;
    std::vector<int> selection;
    std::string head;
    if (!(in >> head >> weight) || head != "weight") return std::nullopt;
    if (!(in >> head >> sized) || head != "sized") return std::nullopt;
    if (!(in >> head >> fem) || head != "fem") return std::nullopt;
    if (!(in >> head) || head != "selection") return std::nullopt;
    int c = 0;
    while (in >> c) selection.push_back(c);
    if (static_cast<int>(selection.size()) != cc.sys.num_bars()) return std::nullopt;

    // Revalidate with a single sizing solve before trusting the entry.
    const ChoiceMatrix choice =
        ChoiceMatrix::from_indices(static_cast<int>(cc.catalog.size()), selection);
    FemCallCounter counter;
    const SlaveSolution check = solve_slave(cc.sys, cc.catalog, choice, cc.lower, cc.upper,
                                            default_scaling(cc.sys), counter);
    if (!check.feasible || rel_diff(check.psi, weight) > 1e-9) return std::nullopt;

    EnumerateResult result;
    result.feasible = true;
    result.choice = choice;
    result.a = check.a;
    result.weight = check.psi;
    result.sized = sized;
    result.fem_calls = fem;
    return result;
  }

  void store(const std::string& key, const EnumerateResult& result) const {
    if (dir_.empty() || !result.feasible) return;
    std::ofstream out(dir_ / (key + ".cache"));
    if (!out) return;
    out << "weight " << fmt(result.weight, "%.17g") << "\n";
    out << "sized " << result.sized << "\n";
    out << "fem " << result.fem_calls << "\n";
    out << "selection";
    for (const int c : result.choice.to_indices()) out << " " << c;
    out << "\n";
  }

  fs::path dir_;
};

bool same_active_sets(const ActiveSets& x, const ActiveSets& y) {
  return x.stress == y.stress && x.disp == y.disp && x.lower == y.lower && x.upper == y.upper;
}

// The published ten-bar results: displacement bound, optimal weight, and
// the catalog vector (1 = AL2139, 2 = TA6V).
struct TenBarRow {
  double ubar;
  double weight;
  std::vector<int> selection;
};

const std::vector<TenBarRow>& ten_bar_reference() {
  static const std::vector<TenBarRow> rows = {
      {17, 15.912, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1}},
      {18, 15.175, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1}},
      {19, 14.570, {2, 1, 1, 1, 1, 1, 2, 1, 1, 1}},
      {20, 13.996, {2, 1, 1, 1, 1, 1, 2, 1, 1, 1}},
      {22, 12.988, {2, 2, 1, 1, 1, 2, 2, 1, 2, 1}},
  };
  return rows;
}

std::vector<int> one_based(const ChoiceMatrix& choice) {
  std::vector<int> c = choice.to_indices();
  for (int& x : c) ++x;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  fs::path cache_dir;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cache-dir" && i + 1 < argc) {
      cache_dir = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--cache-dir DIR]\n";
      return 2;
    }
  }
  EnumCache cache(cache_dir);

  std::vector<Verdict> verdicts;
  std::vector<StoredRun> runs;  // every outer-loop run from criteria 1-4
  const auto record = [&](Verdict v) {
    print_verdict(v);
    verdicts.push_back(std::move(v));
  };

  // Criteria 1 and 2: ten-bar outer loop vs enumeration and vs the
  // published table.
  {
    const double oa_start = now_ms();
    double oa_ms = 0;
    int worst_dh = 0;
    double worst_rel = 0;
    int exact_selections = 0;
    double worst_published_rel = 0;
    std::string published_notes;
    bool all_solved = true;

    for (const TenBarRow& row : ten_bar_reference()) {
      const CompiledCase cc = compile_case(make_ten_bar(row.ubar));
      const double t0 = now_ms();
      const OaResult oa = run_oa(cc);
      oa_ms += now_ms() - t0;
      const std::string name = "ten-bar-u" + fmt(row.ubar, "%.0f");
      runs.push_back({name, cc, oa});

      const EnumerateResult base = cache.run(name, cc);
      if (!base.feasible || !std::isfinite(oa.best_weight)) {
        all_solved = false;
        continue;
      }
      worst_dh = std::max(worst_dh, hamming_distance(oa.best_choice, base.choice));
      worst_rel = std::max(worst_rel, rel_diff(oa.best_weight, base.weight));

      const double published_rel = std::abs(oa.best_weight - row.weight) / row.weight;
      worst_published_rel = std::max(worst_published_rel, published_rel);
      if (one_based(oa.best_choice) == row.selection) ++exact_selections;
      published_notes += (published_notes.empty() ? "" : ", ") + fmt(row.ubar, "%.0f") + "mm:" +
                     fmt(oa.best_weight, "%.3f") + "/" + fmt(row.weight, "%.3f");
    }

    Verdict c1;
    c1.index = 1;
    c1.kind = "hard";
    c1.label = "ten-bar outer loop matches enumeration";
    c1.pass = all_solved && worst_dh == 0 && worst_rel <= 1e-3 && oa_ms < 600000;
    c1.detail = "max d_h " + std::to_string(worst_dh) + ", max rel dw " + fmt(worst_rel) +
                ", oa time " + fmt(oa_ms / 1000, "%.1f") + " s";
    record(c1);

    Verdict c2;
    c2.index = 2;
    c2.kind = "soft";
    c2.label = "ten-bar weights and selections vs published table";
    c2.pass = worst_published_rel <= 0.02 && exact_selections >= 4;
    c2.detail = "max rel dev " + fmt(worst_published_rel * 100, "%.2f") + "%, exact selections " +
                std::to_string(exact_selections) + "/5 (" + published_notes + ")";
    record(c2);
    (void)oa_start;
  }

  // Criterion 3: the two-bar walk-through trace.
  {
    const CompiledCase cc = compile_case(make_two_bar());
    const double t0 = now_ms();
    const OaResult oa = run_oa(cc);
    const double ms = now_ms() - t0;
    runs.push_back({"two-bar", cc, oa});

    const bool selection_ok = one_based(oa.best_choice) == std::vector<int>({1, 2});
    const bool areas_ok = oa.best_a.size() == 2 &&
                          std::abs(oa.best_a(0) - 300) <= 0.1 &&
                          std::abs(oa.best_a(1) - 300) <= 0.1;
    const double weight_rel = std::abs(oa.best_weight - 3.07) / 3.07;

    Verdict c3;
    c3.index = 3;
    c3.kind = "hard";
    c3.label = "two-bar trace";
    c3.pass = oa.status == OaStatus::MasterInfeasible && oa.iterations == 2 &&
              selection_ok && areas_ok && weight_rel <= 0.05 && ms < 5000;
    c3.detail = std::to_string(oa.iterations) + " iterations, final (AL2139, TA6V): " +
                (selection_ok ? "yes" : "no") + ", areas (" + fmt(oa.best_a(0), "%.2f") +
                ", " + fmt(oa.best_a(1), "%.2f") + "), weight " +
                fmt(oa.best_weight, "%.4f") + " kg, " + fmt(ms, "%.0f") + " ms";
    record(c3);
  }

  // Criterion 4: cantilever scaling, outer loop vs enumeration for one to
  // three blocks, including the 2^15 enumeration.
  {
    const double t_start = now_ms();
    const double published[3] = {2.56, 6.06, 10.23};
    int worst_dh = 0;
    double worst_rel = 0, worst_published_rel = 0;
    bool all_solved = true;
    std::string notes;

    for (int blocks = 1; blocks <= 3; ++blocks) {
      const CompiledCase cc = compile_case(make_cantilever(blocks));
      const OaResult oa = run_oa(cc);
      const std::string name = "cantilever-" + std::to_string(blocks);
      runs.push_back({name, cc, oa});

      const EnumerateResult base = cache.run(name, cc);
      if (!base.feasible || !std::isfinite(oa.best_weight)) {
        all_solved = false;
        continue;
      }
      worst_dh = std::max(worst_dh, hamming_distance(oa.best_choice, base.choice));
      worst_rel = std::max(worst_rel, rel_diff(oa.best_weight, base.weight));
      worst_published_rel = std::max(
          worst_published_rel, std::abs(oa.best_weight - published[blocks - 1]) / published[blocks - 1]);
      notes += (notes.empty() ? "" : ", ") + std::to_string(5 * blocks) + " bars " +
               fmt(oa.best_weight, "%.3f") + "/" + fmt(published[blocks - 1], "%.2f");
    }
    const double elapsed_ms = now_ms() - t_start;

    Verdict c4;
    c4.index = 4;
    c4.kind = "hard";
    c4.label = "cantilever outer loop matches enumeration";
    c4.pass = all_solved && worst_dh == 0 && worst_rel <= 1e-3 && elapsed_ms < 900000;
    c4.detail = "max d_h " + std::to_string(worst_dh) + ", max rel dw " + fmt(worst_rel) +
                ", " + fmt(elapsed_ms / 1000, "%.0f") + " s total; published weights " +
                fmt(worst_published_rel * 100, "%.1f") + "% off (" + notes + ", soft)";
    record(c4);
  }

  // Criterion 5: gradient suites.
  {
    // (a) analytic gradients vs central differences at random states.
    const CompiledCase cc = compile_case(make_ten_bar(20));
    FemCallCounter counter;
    const GradientCheckReport fd =
        gradient_check(cc.sys, cc.catalog, cc.lower, cc.upper, 100, 90210, counter);

    // (b) the choice gradient of the optimal sizing weight vs re-solved
    // finite differences along row-stochastic directions, at points whose
    // active set is stable across the step.
    const ConstraintScaling scaling = default_scaling(cc.sys);
    std::mt19937 rng(311);
    const double h = 1e-4;
    int accepted = 0, attempts = 0;
    double worst_psi = 0;
    FemCallCounter fd_counter;
    while (accepted < 20 && attempts < 400) {
      ++attempts;
      std::vector<int> c(10);
      for (int& x : c) x = static_cast<int>(rng() % 2);
      const ChoiceMatrix b = ChoiceMatrix::from_indices(2, c);

      const SlaveSolution base =
          solve_slave(cc.sys, cc.catalog, b, cc.lower, cc.upper, scaling, fd_counter);
      if (!base.feasible || !base.converged) continue;
      const ActiveSets act =
          detect_active(base.eval, scaling, base.a, cc.lower, cc.upper, 1e-5);
      const KktResult kkt = kkt_multipliers(base.eval, scaling, act);
      if (!kkt.qualification_ok || kkt.stationarity > 1e-6) continue;
      const Vec grad = psi_gradient(base.eval, scaling, kkt);

      const int i = static_cast<int>(rng() % 10);
      const int from = c[i], to = 1 - from;
      Mat moved = b.b;
      moved(i, from) -= h;
      moved(i, to) += h;
      const SlaveSolution shifted = solve_slave(cc.sys, cc.catalog, ChoiceMatrix(moved),
                                                cc.lower, cc.upper, scaling, fd_counter);
      if (!shifted.feasible || !shifted.converged) continue;
      const ActiveSets act2 =
          detect_active(shifted.eval, scaling, shifted.a, cc.lower, cc.upper, 1e-5);
      if (!same_active_sets(act, act2)) continue;

      const double fd_psi = (shifted.psi - base.psi) / h;
      const double an_psi = grad(b.flat(i, to)) - grad(b.flat(i, from));
      worst_psi = std::max(worst_psi, rel_diff(fd_psi, an_psi));
      ++accepted;
    }

    // (c) stationarity at every sizing solution the criteria 1-4 runs
    // visited, plus multiplier nonnegativity re-derived at each final
    // design (the recovery itself is a nonnegative least-squares fit, so
    // nonnegativity holds at every visited point by construction).
    double worst_station = 0;
    double worst_lambda = 0;
    for (const StoredRun& run : runs) {
      for (const HistoryRow& row : run.result.history) {
        if (row.slave_feasible) worst_station = std::max(worst_station, row.kkt_residual);
      }
      if (!std::isfinite(run.result.best_weight)) continue;
      FemCallCounter check_counter;
      const ConstraintScaling run_scaling = default_scaling(run.cc.sys);
      const SlaveSolution sol =
          solve_slave(run.cc.sys, run.cc.catalog, run.result.best_choice, run.cc.lower,
                      run.cc.upper, run_scaling, check_counter);
      const ActiveSets act =
          detect_active(sol.eval, run_scaling, sol.a, run.cc.lower, run.cc.upper, 1e-5);
      const KktResult kkt = kkt_multipliers(sol.eval, run_scaling, act);
      worst_station = std::max(worst_station, kkt.stationarity);
      const double min_lambda =
          std::min({kkt.lambda_stress.size() ? kkt.lambda_stress.minCoeff() : 0.0,
                    kkt.lambda_disp.size() ? kkt.lambda_disp.minCoeff() : 0.0,
                    kkt.lambda_lower.size() ? kkt.lambda_lower.minCoeff() : 0.0,
                    kkt.lambda_upper.size() ? kkt.lambda_upper.minCoeff() : 0.0});
      worst_lambda = std::min(worst_lambda, min_lambda);
    }

    Verdict c5;
    c5.index = 5;
    c5.kind = "hard";
    c5.label = "gradient suites";
    c5.pass = fd.states == 100 && fd.max_rel_area <= 1e-5 && fd.max_rel_choice <= 1e-5 &&
              accepted == 20 && worst_psi <= 1e-2 && worst_station <= 1e-6 &&
              worst_lambda >= -1e-12;
    c5.detail = "(a) rel err area " + fmt(fd.max_rel_area) + ", choice " +
                fmt(fd.max_rel_choice) + "; (b) " + std::to_string(accepted) +
                "/20 stable points, rel err " + fmt(worst_psi) + "; (c) stationarity " +
                fmt(worst_station) + ", min multiplier " + fmt(worst_lambda);
    record(c5);
  }

  // Criterion 6: branch and bound vs brute force on random instances.
  {
    const double t0 = now_ms();
    std::mt19937 rng(5150);
    std::normal_distribution<double> normal(0.0, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int mismatches = 0;
    int instances = 0;

    for (int trial = 0; trial < 500; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 4);
      const int p = 1 + static_cast<int>(rng() % 3);
      MasterProblem problem(n, p, 1e-3);
      const int cuts = 1 + static_cast<int>(rng() % 5);
      double best_psi = kInf;
      for (int t = 0; t < cuts; ++t) {
        Vec anchor = Vec::Zero(n * p);
        for (int i = 0; i < n; ++i) anchor(i * p + static_cast<int>(rng() % p)) = 1;
        if (problem.has_anchor(anchor)) continue;
        OaCut cut;
        cut.anchor = anchor;
        cut.psi = 5 * unit(rng);
        cut.gradient = Vec(n * p);
        for (int k = 0; k < n * p; ++k) cut.gradient(k) = normal(rng);
        problem.add_cut(std::move(cut));
        best_psi = std::min(best_psi, problem.cuts().back().psi);
      }
      if (problem.cuts().empty()) continue;
      ++instances;
      const double u_min = trial % 3 == 0 ? kInf : best_psi + normal(rng);

      const MilpResult fast = solve_milp(problem, u_min);
      const MilpResult brute = brute_force_milp(problem, u_min);
      bool ok = fast.feasible == brute.feasible;
      if (ok && fast.feasible) {
        ok = std::abs(fast.eta - brute.eta) <= 1e-9 &&
             std::abs(cut_value(problem, fast.choice.flattened()) - fast.eta) <= 1e-9;
      }
      if (!ok) ++mismatches;
    }
    const double ms = now_ms() - t0;

    Verdict c6;
    c6.index = 6;
    c6.kind = "hard";
    c6.label = "branch and bound equals brute force";
    c6.pass = mismatches == 0 && instances >= 450 && ms < 60000;
    c6.detail = std::to_string(instances) + " instances, " + std::to_string(mismatches) +
                " mismatches, " + fmt(ms / 1000, "%.1f") + " s";
    record(c6);
  }

  // Criterion 7: outer loop invariants on every stored run. A repeated
  // design would have thrown inside the cut bookkeeping, so completing the
  // runs already certifies no-repetition.
  {
    bool monotone = true;
    bool terminated = true;
    for (const StoredRun& run : runs) {
      terminated = terminated && run.result.status == OaStatus::MasterInfeasible;
      const auto& h = run.result.history;
      for (size_t k = 1; k < h.size(); ++k) {
        if (h[k].u_min > h[k - 1].u_min + 1e-12) monotone = false;
        if (h[k].eta < h[k - 1].eta - 1e-9) monotone = false;
      }
      if (!h.empty() && !std::isinf(h.back().eta)) terminated = false;
    }

    Verdict c7;
    c7.index = 7;
    c7.kind = "hard";
    c7.label = "outer loop invariants";
    c7.pass = monotone && terminated && !runs.empty();
    c7.detail = std::to_string(runs.size()) +
                " runs: U_min non-increasing, eta non-decreasing, no repeated design "
                "(duplicate cuts throw), termination master-infeasible: " +
                (monotone && terminated ? "all hold" : "violated");
    record(c7);
  }

  // Criterion 8: convergence to the exhaustive optimum on the convex mock
  // oracle.
  {
    std::mt19937 rng(888);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int failures = 0;
    for (int draw = 0; draw < 100; ++draw) {
      const int n = 2 + static_cast<int>(rng() % 3);
      const int p = 2 + static_cast<int>(rng() % 2);
      Vec center(n * p), offset(n * p);
      for (int k = 0; k < n * p; ++k) {
        center(k) = unit(rng);
        offset(k) = unit(rng) - 0.5;
      }

      // Exhaustive minimum over all p^n one-hot matrices.
      double best = kInf;
      std::vector<int> c(n, 0);
      while (true) {
        const Vec flat = ChoiceMatrix::from_indices(p, c).flattened();
        best = std::min(best, (flat - center).squaredNorm() + offset.dot(flat));
        int i = n - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) break;
        ++c[i];
      }

      std::vector<int> c0(n);
      for (int& x : c0) x = static_cast<int>(rng() % p);
      QuadraticOracle oracle(center, offset);
      const OaResult result = bilevel_oa_with_oracle(oracle, ChoiceMatrix::from_indices(p, c0));
      const Vec flat = result.best_choice.flattened();
      const double achieved = (flat - center).squaredNorm() + offset.dot(flat);
      if (result.status != OaStatus::MasterInfeasible ||
          std::abs(result.best_weight - best) > 1e-9 ||
          std::abs(achieved - best) > 1e-9) {
        ++failures;
      }
    }

    Verdict c8;
    c8.index = 8;
    c8.kind = "hard";
    c8.label = "convex mock oracle reaches the exhaustive optimum";
    c8.pass = failures == 0;
    c8.detail = "100 draws, " + std::to_string(failures) + " failures";
    record(c8);
  }

  // Criterion 9 (stretch): the 120-bar dome.
  {
    Verdict c9;
    c9.index = 9;
    c9.kind = "stretch";
    c9.label = "120-bar dome";
    const CompiledCase cc = compile_case(make_dome());
    const double t0 = now_ms();
    const OaResult oa = run_oa(cc);
    const double ms = now_ms() - t0;
    c9.pass = oa.status == OaStatus::MasterInfeasible && oa.iterations <= 10 &&
              oa.recheck_ok && ms < 4 * 3600 * 1000.0;
    c9.detail = std::to_string(oa.iterations) + " iterations, " +
                std::to_string(oa.nlp_solves) + " nlp, " + std::to_string(oa.fem_calls) +
                " fem, weight " + fmt(oa.best_weight, "%.1f") +
                " kg (published: 3 iterations, 35339 fem, 1506 kg), " +
                fmt(ms / 1000, "%.1f") + " s, recheck " + (oa.recheck_ok ? "ok" : "failed");
    record(c9);
  }

  // Criterion 10: sub-exponential analysis-count growth over cantilever
  // sizes, shown by the slope of ln(#FEM) against the element count staying
  // below ln 2 (the growth rate of the p = 2 enumeration).
  {
    std::vector<double> x, y;
    bool all_solved = true;
    std::string counts;
    for (int blocks = 1; blocks <= 6; ++blocks) {
      const CompiledCase cc = compile_case(make_cantilever(blocks));
      const OaResult oa = run_oa(cc);
      if (oa.status != OaStatus::MasterInfeasible || !std::isfinite(oa.best_weight)) {
        all_solved = false;
        break;
      }
      x.push_back(5.0 * blocks);
      y.push_back(std::log(static_cast<double>(oa.fem_calls)));
      counts += (counts.empty() ? "" : ",") + std::to_string(oa.fem_calls);
    }

    double slope = kInf;
    if (all_solved) {
      const double n = static_cast<double>(x.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
      }
      slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }

    Verdict c10;
    c10.index = 10;
    c10.kind = "hard";
    c10.label = "analysis count grows sub-exponentially";
    c10.pass = all_solved && slope < std::log(2.0);
    c10.detail = "fem calls per size (" + counts + "), ln slope " + fmt(slope, "%.4f") +
                 " vs ln 2 = 0.6931";
    record(c10);
  }

  bool ok = true;
  for (const Verdict& v : verdicts) {
    if (std::string(v.kind) == "hard" && !v.skipped && !v.pass) ok = false;
  }
  std::printf("acceptance: %s\n", ok ? "all hard criteria pass" : "HARD CRITERIA FAILED");
  return ok ? 0 : 1;
}
