#include "trussopt/archive.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace trussopt {

namespace {

using nlohmann::json;

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

// 1-based catalog selections read better next to the case file's b0 line.
json selection_json(const ChoiceMatrix& choice) {
  json out = json::array();
  for (const int c : choice.to_indices()) out.push_back(c + 1);
  return out;
}

json areas_json(const Vec& a) {
  json out = json::array();
  for (int i = 0; i < a.size(); ++i) out.push_back(a(i));
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

}  // namespace

void write_history_csv(const std::filesystem::path& path,
                       const std::vector<HistoryRow>& history) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "k,U,U_min,eta,fem_calls,nlp_solves,wall_ms\n";
  for (const HistoryRow& row : history) {
    out << row.k << "," << csv_number(row.u) << "," << csv_number(row.u_min) << ","
        << csv_number(row.eta) << "," << row.fem_calls << "," << row.nlp_solves << ","
        << csv_number(row.wall_ms) << "\n";
  }
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

void write_oa_archive(const std::filesystem::path& dir, const CaseFile& c,
                      const OaResult& result) {
  std::filesystem::create_directories(dir);
  write_text(dir / "case.txt", serialize_case(c));
  write_history_csv(dir / "history.csv", result.history);

  const bool solved = std::isfinite(result.best_weight);
  json summary;
  summary["case"] = c.name;
  summary["solver"] = "oa";
  summary["status"] = to_string(result.status);
  summary["weight"] = json_number(result.best_weight);
  summary["selection"] = solved ? selection_json(result.best_choice) : json(nullptr);
  summary["areas"] = solved ? areas_json(result.best_a) : json(nullptr);
  summary["eta"] = result.history.empty() ? json(nullptr) : json_number(result.history.back().eta);
  summary["iterations"] = result.iterations;
  summary["fem_calls"] = result.fem_calls;
  summary["nlp_solves"] = result.nlp_solves;
  summary["milp_nodes"] = result.milp_nodes;
  summary["wall_ms"] = result.wall_ms;
  summary["recheck_ok"] = result.recheck_ok;
  summary["epsilon"] = c.epsilon;
  write_text(dir / "result.json", summary.dump(2) + "\n");
}

void write_enum_archive(const std::filesystem::path& dir, const CaseFile& c,
                        const EnumerateResult& result) {
  std::filesystem::create_directories(dir);
  write_text(dir / "case.txt", serialize_case(c));

  json summary;
  summary["case"] = c.name;
  summary["solver"] = "enum";
  summary["weight"] = json_number(result.weight);
  summary["selection"] = result.feasible ? selection_json(result.choice) : json(nullptr);
  summary["areas"] = result.feasible ? areas_json(result.a) : json(nullptr);
  summary["sized"] = result.sized;
  summary["fem_calls"] = result.fem_calls;
  summary["wall_ms"] = result.wall_ms;
  write_text(dir / "result.json", summary.dump(2) + "\n");
}

}  // namespace trussopt
