// Text case files: a sectioned, comment-friendly format carrying the truss,
// the material and profile tables, the catalog, area bounds, and solver
// settings. Serialization uses %.17g so a parse of the output reproduces
// every double bit-exactly.
#pragma once

#include "trussopt/model.hpp"
#include "trussopt/truss.hpp"

#include <string>
#include <utility>
#include <vector>

namespace trussopt {

struct CaseFile {
  std::string name = "case";
  TrussModel model;
  std::vector<Material> materials;
  std::vector<ProfileShape> profiles;
  // Catalog entries as (material index, profile index) into the tables.
  std::vector<std::pair<int, int>> catalog;
  double area_lower = 0;  // mm^2, uniform over bars
  double area_upper = 0;
  double epsilon = 1e-3;  // kg
  int max_iter = 200;
  std::vector<int> b0;    // 0-based catalog index per bar; empty = all first
};

// Parses the text of a case file. Throws std::invalid_argument with the line
// number and the offending field on malformed input.
CaseFile parse_case(const std::string& text);

// Reads and parses a file; errors mention the path.
CaseFile load_case(const std::string& path);

std::string serialize_case(const CaseFile& c);
void save_case(const CaseFile& c, const std::string& path);

// Everything the solvers need, derived from a parsed case.
struct CompiledCase {
  std::string name;
  TrussSystem sys;
  Catalog catalog;
  Vec lower, upper;
  ChoiceMatrix b0;
  double epsilon;
  int max_iter;
};

CompiledCase compile_case(const CaseFile& c);

}  // namespace trussopt
