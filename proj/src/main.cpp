// Command line front end: solve runs the outer loop or the enumeration
// baseline on a case file and archives the results, gradcheck compares the
// analytic constraint gradients against finite differences, bench runs the
// scaling suites, and gen writes the built-in cases to disk.
#include "CLI11.hpp"

#include "trussopt/archive.hpp"
#include "trussopt/casefile.hpp"
#include "trussopt/driver.hpp"
#include "trussopt/evaluation.hpp"
#include "trussopt/generators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace trussopt;

// TRUSSOPT_LOG: 0 silent, 1 summaries (default), 2 per-iteration detail.
int verbosity() {
  static const int level = [] {
    const char* raw = std::getenv("TRUSSOPT_LOG");
    if (raw == nullptr || *raw == '\0') return 1;
    char* end = nullptr;
    const long parsed = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0') return 1;
    return static_cast<int>(std::clamp(parsed, 0L, 2L));
  }();
  return level;
}

std::string format_weight(double w) {
  if (!std::isfinite(w)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", w);
  return buf;
}

std::string selection_string(const ChoiceMatrix& b) {
  std::string out = "[";
  const std::vector<int> indices = b.to_indices();
  for (size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(indices[i] + 1);
  }
  out += "]";
  return out;
}

void print_history(const std::vector<HistoryRow>& history) {
  for (const HistoryRow& row : history) {
    std::printf("  k=%d U=%s U_min=%s eta=%s fem=%lld nlp=%lld\n", row.k,
                format_weight(row.u).c_str(), format_weight(row.u_min).c_str(),
                format_weight(row.eta).c_str(), row.fem_calls, row.nlp_solves);
  }
}

struct SolveArgs {
  std::string case_path;
  std::string solver = "oa";
  std::string out_dir;
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  int max_iter = -1;
};

int run_solve(const SolveArgs& args) {
  CaseFile c = load_case(args.case_path);
  if (std::isfinite(args.epsilon)) c.epsilon = args.epsilon;
  if (args.max_iter > 0) c.max_iter = args.max_iter;
  const CompiledCase compiled = compile_case(c);

  if (args.solver == "enum") {
    const EnumerateResult result = enumerate_baseline(compiled.sys, compiled.catalog,
                                                      compiled.lower, compiled.upper);
    write_enum_archive(args.out_dir, c, result);
    if (verbosity() >= 1) {
      std::printf("%s: enumerated %lld selections, weight %s kg", c.name.c_str(),
                  result.sized, format_weight(result.weight).c_str());
      if (result.feasible) std::printf(", selection %s", selection_string(result.choice).c_str());
      std::printf(" (%lld fem calls, %.0f ms)\n", result.fem_calls, result.wall_ms);
    }
    return result.feasible ? 0 : 2;
  }

  OaOptions options;
  options.epsilon = compiled.epsilon;
  options.max_iter = compiled.max_iter;
  const OaResult result = bilevel_oa(compiled.sys, compiled.catalog, compiled.lower,
                                     compiled.upper, compiled.b0, options);
  write_oa_archive(args.out_dir, c, result);

  const bool solved = std::isfinite(result.best_weight);
  if (verbosity() >= 2) print_history(result.history);
  if (verbosity() >= 1) {
    std::printf("%s: %s after %d iterations, weight %s kg", c.name.c_str(),
                to_string(result.status), result.iterations,
                format_weight(result.best_weight).c_str());
    if (solved) {
      std::printf(", selection %s, recheck %s", selection_string(result.best_choice).c_str(),
                  result.recheck_ok ? "ok" : "FAILED");
    }
    std::printf(" (%lld fem calls, %lld nlp solves, %.0f ms)\n", result.fem_calls,
                result.nlp_solves, result.wall_ms);
  }
  if (result.status == OaStatus::IterationCap) return 3;
  return solved ? 0 : 2;
}

struct GradcheckArgs {
  std::string case_path;
  unsigned seed = 1;
};

int run_gradcheck(const GradcheckArgs& args) {
  const CaseFile c = load_case(args.case_path);
  const CompiledCase compiled = compile_case(c);
  FemCallCounter counter;
  const GradientCheckReport report = gradient_check(compiled.sys, compiled.catalog,
                                                    compiled.lower, compiled.upper,
                                                    /*states=*/100, args.seed, counter);
  const double tol = 1e-5;
  const bool pass = report.max_rel_area <= tol && report.max_rel_choice <= tol;
  std::printf("%s: %d states, max relative error %.3e (areas) %.3e (choices), "
              "%lld fem calls: %s\n",
              c.name.c_str(), report.states, report.max_rel_area, report.max_rel_choice,
              counter.calls, pass ? "PASS" : "FAIL");
  return pass ? 0 : 2;
}

struct BenchArgs {
  std::string suite;
  std::string out_dir;
  int jobs = 1;
};

struct BenchRow {
  std::string instance;
  bool failed = false;
  double weight = 0;
  int iterations = 0;
  long long nlp = 0;
  long long fem = 0;
  double wall_ms = 0;
};

BenchRow bench_instance(const std::string& instance, const CaseFile& c) {
  BenchRow row;
  row.instance = instance;
  try {
    const CompiledCase compiled = compile_case(c);
    OaOptions options;
    options.epsilon = compiled.epsilon;
    options.max_iter = compiled.max_iter;
    const OaResult result = bilevel_oa(compiled.sys, compiled.catalog, compiled.lower,
                                       compiled.upper, compiled.b0, options);
    row.weight = result.best_weight;
    row.iterations = result.iterations;
    row.nlp = result.nlp_solves;
    row.fem = result.fem_calls;
    row.wall_ms = result.wall_ms;
    row.failed = !std::isfinite(result.best_weight) || !result.recheck_ok;
  } catch (const std::exception& e) {
    row.failed = true;
    if (verbosity() >= 1) {
      std::fprintf(stderr, "bench %s failed: %s\n", instance.c_str(), e.what());
    }
  }
  return row;
}

int run_bench(const BenchArgs& args) {
  std::vector<std::pair<std::string, CaseFile>> instances;
  if (args.suite == "scaling-elements") {
    for (int blocks = 1; blocks <= 10; ++blocks) {
      char name[32];
      std::snprintf(name, sizeof(name), "cantilever-%02d", blocks);
      instances.emplace_back(name, make_cantilever(blocks));
    }
  } else {
    for (int p : {4, 9, 12, 15, 18, 36, 45, 72, 90}) {
      char name[32];
      std::snprintf(name, sizeof(name), "ten-bar-p%02d", p);
      instances.emplace_back(name, make_catalog_scaling(p));
    }
  }

  std::vector<BenchRow> rows(instances.size());
  const int jobs = std::max(1, std::min<int>(args.jobs, static_cast<int>(instances.size())));
  if (jobs == 1) {
    for (size_t i = 0; i < instances.size(); ++i) {
      if (verbosity() >= 1) std::printf("running %s\n", instances[i].first.c_str());
      rows[i] = bench_instance(instances[i].first, instances[i].second);
    }
  } else {
    std::atomic<size_t> next{0};
    auto work = [&] {
      for (size_t i = next.fetch_add(1); i < instances.size(); i = next.fetch_add(1)) {
        rows[i] = bench_instance(instances[i].first, instances[i].second);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path csv_path = std::filesystem::path(args.out_dir) /
                                         (args.suite + ".csv");
  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("bench: cannot write " + csv_path.string());
  out << "instance,w_star,iter,nlp,fem,wall_ms\n";
  int failures = 0;
  for (const BenchRow& row : rows) {
    if (row.failed) {
      ++failures;
      out << row.instance << ",failed,,,,\n";
      continue;
    }
    char line[256];
    std::snprintf(line, sizeof(line), "%s,%.6f,%d,%lld,%lld,%.1f\n", row.instance.c_str(),
                  row.weight, row.iterations, row.nlp, row.fem, row.wall_ms);
    out << line;
  }
  out.close();
  if (verbosity() >= 1) {
    std::printf("wrote %s (%zu rows, %d failed)\n", csv_path.string().c_str(), rows.size(),
                failures);
  }
  return failures == 0 ? 0 : 2;
}

struct GenArgs {
  std::string name;
  int blocks = 2;
  double ubar = std::numeric_limits<double>::quiet_NaN();
  std::string out_path;
};

int run_gen(const GenArgs& args) {
  const CaseFile c = generate_case(args.name, args.blocks, args.ubar);
  save_case(c, args.out_path);
  if (verbosity() >= 1) {
    std::printf("wrote %s (%d nodes, %d bars, %zu catalog entries)\n", args.out_path.c_str(),
                static_cast<int>(c.model.nodes.rows()), static_cast<int>(c.model.bars.rows()),
                c.catalog.size());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truss weight minimization over catalog selections"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "run a solver on a case file");
  solve->add_option("--case", solve_args.case_path, "case file")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--solver", solve_args.solver, "oa or enum")
      ->check(CLI::IsMember({"oa", "enum"}));
  solve->add_option("--out", solve_args.out_dir, "output directory")->required();
  solve->add_option("--epsilon", solve_args.epsilon, "improvement threshold, kg");
  solve->add_option("--max-iter", solve_args.max_iter, "outer iteration cap");

  GradcheckArgs grad_args;
  CLI::App* gradcheck = app.add_subcommand("gradcheck", "finite-difference gradient check");
  gradcheck->add_option("--case", grad_args.case_path, "case file")
      ->required()
      ->check(CLI::ExistingFile);
  gradcheck->add_option("--seed", grad_args.seed, "random seed");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "run a scaling suite");
  bench->add_option("--suite", bench_args.suite, "scaling-elements or scaling-catalogs")
      ->required()
      ->check(CLI::IsMember({"scaling-elements", "scaling-catalogs"}));
  bench->add_option("--out", bench_args.out_dir, "output directory")->required();
  bench->add_option("--jobs", bench_args.jobs, "parallel instances")->check(CLI::PositiveNumber);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "write a built-in case to disk");
  gen->add_option("--name", gen_args.name, "two-bar, ten-bar, cantilever, or dome")
      ->required()
      ->check(CLI::IsMember({"two-bar", "ten-bar", "cantilever", "dome"}));
  gen->add_option("--blocks", gen_args.blocks, "cantilever block count")
      ->check(CLI::PositiveNumber);
  gen->add_option("--ubar", gen_args.ubar, "displacement limit, mm");
  gen->add_option("--out", gen_args.out_path, "output case file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(solve_args);
    if (gradcheck->parsed()) return run_gradcheck(grad_args);
    if (bench->parsed()) return run_bench(bench_args);
    return run_gen(gen_args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
