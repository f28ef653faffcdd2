#include "trussopt/casefile.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace trussopt {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* axis_name(int axis) {
  switch (axis) {
    case 0: return "x";
    case 1: return "y";
    case 2: return "z";
  }
  throw std::invalid_argument("axis_name: axis out of range");
}

int axis_from_name(const std::string& s, int dim, int line) {
  int axis = -1;
  if (s == "x") axis = 0;
  else if (s == "y") axis = 1;
  else if (s == "z") axis = 2;
  if (axis < 0 || axis >= dim) {
    throw std::invalid_argument("case line " + std::to_string(line) +
                                ": unknown axis '" + s + "'");
  }
  return axis;
}

struct TokenLine {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<TokenLine> tokenize(const std::string& text) {
  std::vector<TokenLine> lines;
  std::istringstream stream(text);
  std::string raw;
  int number = 0;
  while (std::getline(stream, raw)) {
    ++number;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    TokenLine line;
    line.number = number;
    std::string token;
    while (fields >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw std::invalid_argument("case line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& token, int line, const char* field) {
  size_t used = 0;
  double value = 0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    fail(line, std::string(field) + ": '" + token + "' is not a number");
  }
  if (used != token.size()) {
    fail(line, std::string(field) + ": trailing characters in '" + token + "'");
  }
  return value;
}

int parse_int(const std::string& token, int line, const char* field) {
  size_t used = 0;
  long value = 0;
  try {
    value = std::stol(token, &used);
  } catch (const std::exception&) {
    fail(line, std::string(field) + ": '" + token + "' is not an integer");
  }
  if (used != token.size()) {
    fail(line, std::string(field) + ": trailing characters in '" + token + "'");
  }
  return static_cast<int>(value);
}

void expect_fields(const TokenLine& line, size_t count, const char* shape) {
  if (line.tokens.size() != count) {
    fail(line.number, std::string("expected '") + shape + "', got " +
                          std::to_string(line.tokens.size()) + " fields");
  }
}

}  // namespace

CaseFile parse_case(const std::string& text) {
  const std::vector<TokenLine> lines = tokenize(text);
  CaseFile c;
  int dim = 0;
  std::string section;
  std::unordered_map<std::string, int> material_index;
  std::unordered_map<std::string, int> profile_index;

  std::vector<std::vector<double>> nodes;
  std::vector<std::pair<int, int>> bars;
  bool have_areas = false;

  for (const TokenLine& line : lines) {
    const std::string& head = line.tokens.front();
    if (head.front() == '[') {
      if (head.back() != ']' || line.tokens.size() != 1) {
        fail(line.number, "malformed section header '" + head + "'");
      }
      section = head.substr(1, head.size() - 2);
      if (section != "nodes" && section != "bars" && section != "supports" &&
          section != "loads" && section != "disp_limits" && section != "materials" &&
          section != "profiles" && section != "catalog" && section != "areas" &&
          section != "solver") {
        fail(line.number, "unknown section [" + section + "]");
      }
      continue;
    }

    if (section.empty()) {
      if (head == "name") {
        expect_fields(line, 2, "name <identifier>");
        c.name = line.tokens[1];
      } else if (head == "dim") {
        expect_fields(line, 2, "dim <2|3>");
        dim = parse_int(line.tokens[1], line.number, "dim");
        if (dim != 2 && dim != 3) fail(line.number, "dim must be 2 or 3");
      } else {
        fail(line.number, "unexpected '" + head + "' before the first section");
      }
      continue;
    }

    if (section == "nodes") {
      if (dim == 0) fail(line.number, "dim must be declared before [nodes]");
      expect_fields(line, 1 + dim, dim == 2 ? "index x y" : "index x y z");
      const int index = parse_int(line.tokens[0], line.number, "node index");
      if (index != static_cast<int>(nodes.size())) {
        fail(line.number, "node index " + std::to_string(index) + " out of order");
      }
      std::vector<double> coords(dim);
      for (int k = 0; k < dim; ++k) {
        coords[k] = parse_double(line.tokens[1 + k], line.number, "coordinate");
      }
      nodes.push_back(std::move(coords));
    } else if (section == "bars") {
      expect_fields(line, 3, "index node_a node_b");
      const int index = parse_int(line.tokens[0], line.number, "bar index");
      if (index != static_cast<int>(bars.size())) {
        fail(line.number, "bar index " + std::to_string(index) + " out of order");
      }
      bars.emplace_back(parse_int(line.tokens[1], line.number, "node_a"),
                        parse_int(line.tokens[2], line.number, "node_b"));
    } else if (section == "supports") {
      expect_fields(line, 2, "node axis");
      const int node = parse_int(line.tokens[0], line.number, "node");
      c.model.fixed_dofs.emplace_back(node, axis_from_name(line.tokens[1], dim, line.number));
    } else if (section == "loads") {
      expect_fields(line, 3, "node axis value");
      const int node = parse_int(line.tokens[0], line.number, "node");
      const int axis = axis_from_name(line.tokens[1], dim, line.number);
      const double value = parse_double(line.tokens[2], line.number, "load value");
      if (node < 0 || node >= static_cast<int>(nodes.size())) {
        fail(line.number, "load node " + std::to_string(node) + " out of range");
      }
      if (c.model.loads.size() == 0) {
        c.model.loads = Mat::Zero(static_cast<int>(nodes.size()), dim);
      }
      c.model.loads(node, axis) += value;
    } else if (section == "disp_limits") {
      expect_fields(line, 4, "node axis sign bound");
      DispLimit limit;
      limit.node = parse_int(line.tokens[0], line.number, "node");
      limit.axis = axis_from_name(line.tokens[1], dim, line.number);
      limit.sign = parse_double(line.tokens[2], line.number, "sign");
      limit.bound = parse_double(line.tokens[3], line.number, "bound");
      c.model.disp_limits.push_back(limit);
    } else if (section == "materials") {
      expect_fields(line, 6, "name rho e nu sigma_t sigma_c");
      Material m;
      m.name = line.tokens[0];
      m.rho = parse_double(line.tokens[1], line.number, "rho");
      m.e = parse_double(line.tokens[2], line.number, "e");
      m.nu = parse_double(line.tokens[3], line.number, "nu");
      m.sigma_t = parse_double(line.tokens[4], line.number, "sigma_t");
      m.sigma_c = parse_double(line.tokens[5], line.number, "sigma_c");
      if (material_index.count(m.name)) fail(line.number, "duplicate material " + m.name);
      material_index[m.name] = static_cast<int>(c.materials.size());
      c.materials.push_back(std::move(m));
    } else if (section == "profiles") {
      expect_fields(line, 5, "name kind t h w");
      ProfileShape s;
      s.name = line.tokens[0];
      try {
        s.kind = profile_kind_from_string(line.tokens[1]);
      } catch (const std::exception& e) {
        fail(line.number, e.what());
      }
      s.t = parse_double(line.tokens[2], line.number, "t");
      s.h = parse_double(line.tokens[3], line.number, "h");
      s.w = parse_double(line.tokens[4], line.number, "w");
      if (profile_index.count(s.name)) fail(line.number, "duplicate profile " + s.name);
      profile_index[s.name] = static_cast<int>(c.profiles.size());
      c.profiles.push_back(std::move(s));
    } else if (section == "catalog") {
      expect_fields(line, 2, "material profile");
      const auto mat = material_index.find(line.tokens[0]);
      if (mat == material_index.end()) {
        fail(line.number, "unknown material '" + line.tokens[0] + "'");
      }
      const auto prof = profile_index.find(line.tokens[1]);
      if (prof == profile_index.end()) {
        fail(line.number, "unknown profile '" + line.tokens[1] + "'");
      }
      c.catalog.emplace_back(mat->second, prof->second);
    } else if (section == "areas") {
      expect_fields(line, 2, "lower upper");
      c.area_lower = parse_double(line.tokens[0], line.number, "lower");
      c.area_upper = parse_double(line.tokens[1], line.number, "upper");
      if (have_areas) fail(line.number, "repeated [areas] entry");
      have_areas = true;
    } else if (section == "solver") {
      if (head == "epsilon") {
        expect_fields(line, 2, "epsilon <kg>");
        c.epsilon = parse_double(line.tokens[1], line.number, "epsilon");
      } else if (head == "max_iter") {
        expect_fields(line, 2, "max_iter <count>");
        c.max_iter = parse_int(line.tokens[1], line.number, "max_iter");
      } else if (head == "b0") {
        if (line.tokens.size() != bars.size() + 1) {
          fail(line.number, "b0 expects one 1-based catalog index per bar (" +
                                std::to_string(bars.size()) + ")");
        }
        c.b0.resize(bars.size());
        for (size_t i = 0; i < bars.size(); ++i) {
          const int one_based = parse_int(line.tokens[1 + i], line.number, "b0 entry");
          if (one_based < 1 || one_based > static_cast<int>(c.catalog.size())) {
            fail(line.number, "b0 entry " + std::to_string(one_based) +
                                  " outside catalog 1.." + std::to_string(c.catalog.size()));
          }
          c.b0[i] = one_based - 1;
        }
      } else {
        fail(line.number, "unknown solver key '" + head + "'");
      }
    }
  }

  if (dim == 0) throw std::invalid_argument("case: missing 'dim' declaration");
  if (nodes.empty()) throw std::invalid_argument("case: [nodes] section is empty");
  if (bars.empty()) throw std::invalid_argument("case: [bars] section is empty");
  if (c.catalog.empty()) throw std::invalid_argument("case: [catalog] section is empty");
  if (!have_areas) throw std::invalid_argument("case: [areas] section is missing");

  c.model.nodes = Mat(static_cast<int>(nodes.size()), dim);
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (int k = 0; k < dim; ++k) c.model.nodes(static_cast<int>(i), k) = nodes[i][k];
  }
  c.model.bars.resize(static_cast<int>(bars.size()), 2);
  for (size_t i = 0; i < bars.size(); ++i) {
    c.model.bars(static_cast<int>(i), 0) = bars[i].first;
    c.model.bars(static_cast<int>(i), 1) = bars[i].second;
  }
  if (c.model.loads.size() == 0) {
    c.model.loads = Mat::Zero(static_cast<int>(nodes.size()), dim);
  }
  return c;
}

CaseFile load_case(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open case file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_case(buffer.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string serialize_case(const CaseFile& c) {
  const int dim = static_cast<int>(c.model.nodes.cols());
  std::ostringstream out;
  out << "# truss sizing case\n";
  out << "name " << c.name << "\n";
  out << "dim " << dim << "\n";

  out << "\n[nodes]\n# index";
  for (int k = 0; k < dim; ++k) out << " " << axis_name(k);
  out << "\n";
  for (int i = 0; i < c.model.nodes.rows(); ++i) {
    out << i;
    for (int k = 0; k < dim; ++k) out << " " << format_double(c.model.nodes(i, k));
    out << "\n";
  }

  out << "\n[bars]\n# index node_a node_b\n";
  for (int i = 0; i < c.model.bars.rows(); ++i) {
    out << i << " " << c.model.bars(i, 0) << " " << c.model.bars(i, 1) << "\n";
  }

  out << "\n[supports]\n# node axis\n";
  for (const auto& [node, axis] : c.model.fixed_dofs) {
    out << node << " " << axis_name(axis) << "\n";
  }

  out << "\n[loads]\n# node axis value\n";
  for (int i = 0; i < c.model.loads.rows(); ++i) {
    for (int k = 0; k < dim; ++k) {
      if (c.model.loads(i, k) != 0.0) {
        out << i << " " << axis_name(k) << " " << format_double(c.model.loads(i, k)) << "\n";
      }
    }
  }

  if (!c.model.disp_limits.empty()) {
    out << "\n[disp_limits]\n# node axis sign bound\n";
    for (const DispLimit& limit : c.model.disp_limits) {
      out << limit.node << " " << axis_name(limit.axis) << " " << format_double(limit.sign)
          << " " << format_double(limit.bound) << "\n";
    }
  }

  out << "\n[materials]\n# name rho e nu sigma_t sigma_c\n";
  for (const Material& m : c.materials) {
    out << m.name << " " << format_double(m.rho) << " " << format_double(m.e) << " "
        << format_double(m.nu) << " " << format_double(m.sigma_t) << " "
        << format_double(m.sigma_c) << "\n";
  }

  out << "\n[profiles]\n# name kind t h w\n";
  for (const ProfileShape& s : c.profiles) {
    out << s.name << " " << to_string(s.kind) << " " << format_double(s.t) << " "
        << format_double(s.h) << " " << format_double(s.w) << "\n";
  }

  out << "\n[catalog]\n# material profile\n";
  for (const auto& [mat, prof] : c.catalog) {
    out << c.materials.at(mat).name << " " << c.profiles.at(prof).name << "\n";
  }

  out << "\n[areas]\n# lower upper\n";
  out << format_double(c.area_lower) << " " << format_double(c.area_upper) << "\n";

  out << "\n[solver]\n";
  out << "epsilon " << format_double(c.epsilon) << "\n";
  out << "max_iter " << c.max_iter << "\n";
  if (!c.b0.empty()) {
    out << "b0";
    for (const int idx : c.b0) out << " " << idx + 1;
    out << "\n";
  }
  return out.str();
}

void save_case(const CaseFile& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write case file: " + path);
  out << serialize_case(c);
  if (!out) throw std::runtime_error("failed while writing case file: " + path);
}

CompiledCase compile_case(const CaseFile& c) {
  Catalog catalog;
  catalog.reserve(c.catalog.size());
  for (const auto& [mat, prof] : c.catalog) {
    catalog.push_back(make_catalog_entry(c.materials.at(mat), c.profiles.at(prof)));
  }
  const int n = static_cast<int>(c.model.bars.rows());
  if (c.area_upper <= c.area_lower || c.area_lower <= 0) {
    throw std::invalid_argument("case: area bounds must satisfy 0 < lower < upper");
  }
  std::vector<int> b0 = c.b0;
  if (b0.empty()) b0.assign(n, 0);
  if (static_cast<int>(b0.size()) != n) {
    throw std::invalid_argument("case: b0 length does not match the bar count");
  }
  return CompiledCase{
      c.name,
      TrussSystem(c.model),
      std::move(catalog),
      Vec::Constant(n, c.area_lower),
      Vec::Constant(n, c.area_upper),
      ChoiceMatrix::from_indices(static_cast<int>(c.catalog.size()), b0),
      c.epsilon,
      c.max_iter,
  };
}

}  // namespace trussopt
