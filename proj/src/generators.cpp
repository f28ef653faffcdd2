#include "trussopt/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trussopt {

namespace {

// Reference dimensions (t, h, w) shared by the I/C/T profile families,
// sizes 1..10.
constexpr double kProfileDims[10][3] = {
    {5, 50, 40},  {10, 110, 40}, {10, 90, 40}, {10, 100, 40}, {5, 100, 40},
    {10, 60, 40}, {15, 100, 40}, {10, 70, 35}, {10, 80, 40},  {10, 90, 45},
};

constexpr ProfileKind kKinds[3] = {ProfileKind::I, ProfileKind::C, ProfileKind::T};
const char* const kMaterialOrder[3] = {"AL2139", "TA6V", "AL2024"};

std::string profile_name(ProfileKind kind, int size) {
  return std::string(to_string(kind)) + std::to_string(size);
}

// Registers the named materials and profiles on the case and resolves the
// (material name, profile name) catalog list against them.
void attach_catalog(CaseFile& c,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
  for (const auto& [mat_name, prof_name] : entries) {
    int mat = -1;
    for (size_t i = 0; i < c.materials.size(); ++i) {
      if (c.materials[i].name == mat_name) mat = static_cast<int>(i);
    }
    if (mat < 0) {
      c.materials.push_back(standard_material(mat_name));
      mat = static_cast<int>(c.materials.size()) - 1;
    }
    int prof = -1;
    for (size_t i = 0; i < c.profiles.size(); ++i) {
      if (c.profiles[i].name == prof_name) prof = static_cast<int>(i);
    }
    if (prof < 0) {
      const ProfileKind kind = profile_kind_from_string(prof_name.substr(0, 1));
      const int size = std::stoi(prof_name.substr(1));
      c.profiles.push_back(standard_profile(kind, size));
      prof = static_cast<int>(c.profiles.size()) - 1;
    }
    c.catalog.emplace_back(mat, prof);
  }
}

// Nodes and bars of a cantilever with the given number of 1000 mm blocks:
// bottom node 2k and top node 2k + 1 at x = 1000 k, the x = 0 pair pinned.
// Per block, bars in the order top chord, bottom chord, end vertical, then
// the two crossing diagonals.
TrussModel cantilever_model(int blocks, double tip_load) {
  if (blocks < 1) throw std::invalid_argument("cantilever: blocks must be positive");
  const int num_nodes = 2 * (blocks + 1);
  TrussModel model;
  model.nodes = Mat(num_nodes, 2);
  for (int k = 0; k <= blocks; ++k) {
    model.nodes(2 * k, 0) = 1000.0 * k;
    model.nodes(2 * k, 1) = 0.0;
    model.nodes(2 * k + 1, 0) = 1000.0 * k;
    model.nodes(2 * k + 1, 1) = 1000.0;
  }
  model.bars.resize(5 * blocks, 2);
  int bar = 0;
  for (int k = 1; k <= blocks; ++k) {
    const int bl = 2 * (k - 1), tl = 2 * (k - 1) + 1;
    const int br = 2 * k, tr = 2 * k + 1;
    model.bars.row(bar++) << tl, tr;  // top chord
    model.bars.row(bar++) << bl, br;  // bottom chord
    model.bars.row(bar++) << br, tr;  // end vertical
    model.bars.row(bar++) << bl, tr;  // rising diagonal
    model.bars.row(bar++) << tl, br;  // falling diagonal
  }
  model.fixed_dofs = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  model.loads = Mat::Zero(num_nodes, 2);
  model.loads(2 * blocks, 1) = tip_load;  // bottom tip node
  return model;
}

}  // namespace

std::vector<Material> standard_materials() {
  return {
      {"AL2139", 2.8e-6, 71000, 0.3, 150, 200},
      {"AL2024", 2.77e-6, 74000, 0.33, 160, 210},
      {"TA6V", 4.43e-6, 110000, 0.33, 1100, 860},
  };
}

Material standard_material(const std::string& name) {
  for (Material& m : standard_materials()) {
    if (m.name == name) return m;
  }
  throw std::invalid_argument("unknown material: " + name);
}

ProfileShape standard_profile(ProfileKind kind, int size) {
  if (size < 1 || size > 10) {
    throw std::invalid_argument("profile size must lie in 1..10");
  }
  ProfileShape s;
  s.name = profile_name(kind, size);
  s.kind = kind;
  s.t = kProfileDims[size - 1][0];
  s.h = kProfileDims[size - 1][1];
  s.w = kProfileDims[size - 1][2];
  return s;
}

std::vector<std::pair<std::string, std::string>> catalog_table_90() {
  std::vector<std::pair<std::string, std::string>> entries;
  entries.reserve(90);
  for (const char* material : kMaterialOrder) {
    for (const ProfileKind kind : kKinds) {
      for (int size = 1; size <= 10; ++size) {
        entries.emplace_back(material, profile_name(kind, size));
      }
    }
  }
  return entries;
}

std::vector<std::pair<std::string, std::string>> catalog_table_size_major() {
  std::vector<std::pair<std::string, std::string>> entries;
  entries.reserve(90);
  for (int size = 1; size <= 10; ++size) {
    for (const char* material : kMaterialOrder) {
      for (const ProfileKind kind : kKinds) {
        entries.emplace_back(material, profile_name(kind, size));
      }
    }
  }
  return entries;
}

CaseFile make_two_bar() {
  CaseFile c;
  c.name = "two_bar";
  c.model.nodes = Mat(3, 2);
  c.model.nodes << 0, 0, 1000, 1000, 1000, -1000;
  c.model.bars.resize(2, 2);
  c.model.bars << 0, 2, 0, 1;  // element 1 lower, element 2 upper
  c.model.fixed_dofs = {{1, 0}, {1, 1}, {2, 0}, {2, 1}};
  c.model.loads = Mat::Zero(3, 2);
  c.model.loads(0, 0) = -100000;
  c.model.loads(0, 1) = -100000;
  c.model.disp_limits.push_back({0, 1, -1.0, 7.0});
  attach_catalog(c, {{"AL2139", "I1"}, {"TA6V", "I1"}});
  c.area_lower = 300;
  c.area_upper = 2000;
  c.b0 = {1, 0};  // start from TA6V on element 1, AL2139 on element 2
  return c;
}

namespace {

// Two-block cantilever with the bars renumbered to the usual ten-bar
// convention: top chords, bottom chords, verticals, then the diagonals of
// each bay (falling before rising).
TrussModel ten_bar_model() {
  TrussModel model = cantilever_model(2, -100000);
  const int order[10] = {0, 5, 1, 6, 2, 7, 4, 3, 9, 8};
  const Eigen::Matrix<int, Eigen::Dynamic, 2> bars = model.bars;
  for (int i = 0; i < 10; ++i) model.bars.row(i) = bars.row(order[i]);
  return model;
}

}  // namespace

CaseFile make_ten_bar(double ubar) {
  if (!(ubar > 0)) throw std::invalid_argument("ten-bar: ubar must be positive");
  CaseFile c;
  c.name = "ten_bar";
  c.model = ten_bar_model();
  c.model.disp_limits.push_back({4, 1, -1.0, ubar});  // bottom tip node
  attach_catalog(c, {{"AL2139", "I1"}, {"TA6V", "I1"}});
  c.area_lower = 100;
  c.area_upper = 1300;
  c.b0.assign(10, 0);
  return c;
}

CaseFile make_cantilever(int blocks) {
  CaseFile c;
  c.name = "cantilever" + std::to_string(blocks);
  c.model = cantilever_model(blocks, -30000);
  attach_catalog(c, {{"AL2139", "I1"}, {"TA6V", "I1"}});
  c.area_lower = 100;
  c.area_upper = 2000;
  c.b0.assign(5 * blocks, 0);
  return c;
}

CaseFile make_catalog_scaling(int p) {
  if (p < 1 || p > 90) throw std::invalid_argument("catalog scaling: p must lie in 1..90");
  CaseFile c;
  c.name = "ten_bar_p" + std::to_string(p);
  c.model = ten_bar_model();
  c.model.disp_limits.push_back({4, 1, -1.0, 10.0});
  auto table = catalog_table_size_major();
  table.resize(p);
  attach_catalog(c, table);
  c.area_lower = 100;
  c.area_upper = 1300;
  c.b0.assign(10, 0);
  return c;
}

CaseFile make_dome() {
  constexpr double kDeg = std::numbers::pi / 180.0;
  CaseFile c;
  c.name = "dome120";
  const int num_nodes = 1 + 12 + 24 + 12;
  c.model.nodes = Mat(num_nodes, 3);
  c.model.nodes.row(0) << 0, 0, 7000;
  for (int k = 0; k < 12; ++k) {  // nodes 1..12, first ring
    const double angle = 30.0 * k * kDeg;
    c.model.nodes.row(1 + k) << 6941 * std::cos(angle), 6941 * std::sin(angle), 5850;
  }
  for (int k = 0; k < 24; ++k) {  // nodes 13..36, second ring
    const double angle = 15.0 * k * kDeg;
    c.model.nodes.row(13 + k) << 12500 * std::cos(angle), 12500 * std::sin(angle), 3000;
  }
  for (int k = 0; k < 12; ++k) {  // nodes 37..48, supports
    const double angle = (15.0 + 30.0 * k) * kDeg;
    c.model.nodes.row(37 + k) << 15890 * std::cos(angle), 15890 * std::sin(angle), 0;
  }

  c.model.bars.resize(120, 2);
  int bar = 0;
  const auto ring1 = [](int k) { return 1 + ((k % 12) + 12) % 12; };
  const auto ring2 = [](int k) { return 13 + ((k % 24) + 24) % 24; };
  for (int k = 0; k < 12; ++k) c.model.bars.row(bar++) << 0, ring1(k);
  for (int k = 0; k < 12; ++k) c.model.bars.row(bar++) << ring1(k), ring1(k + 1);
  for (int k = 0; k < 24; ++k) c.model.bars.row(bar++) << ring2(k), ring2(k + 1);
  for (int k = 0; k < 12; ++k) {  // first-to-second ring diagonals
    c.model.bars.row(bar++) << ring1(k), ring2(2 * k + 1);
    c.model.bars.row(bar++) << ring1(k + 1), ring2(2 * k + 1);
  }
  for (int k = 0; k < 12; ++k) {  // second-ring-to-support diagonals
    c.model.bars.row(bar++) << ring2(2 * k), 37 + k;
    c.model.bars.row(bar++) << ring2(2 * k + 2), 37 + k;
  }
  for (int k = 0; k < 12; ++k) c.model.bars.row(bar++) << ring1(k), ring2(2 * k);
  for (int k = 0; k < 12; ++k) c.model.bars.row(bar++) << ring2(2 * k + 1), 37 + k;

  for (int k = 0; k < 12; ++k) {
    c.model.fixed_dofs.emplace_back(37 + k, 0);
    c.model.fixed_dofs.emplace_back(37 + k, 1);
    c.model.fixed_dofs.emplace_back(37 + k, 2);
  }
  c.model.loads = Mat::Zero(num_nodes, 3);
  c.model.loads(0, 2) = -60000;
  for (int k = 0; k < 12; ++k) c.model.loads(1 + k, 2) = -30000;
  for (int k = 0; k < 24; ++k) c.model.loads(13 + k, 2) = -10000;
  c.model.disp_limits.push_back({0, 2, -1.0, 10.0});

  attach_catalog(c, catalog_table_90());
  c.area_lower = 100;
  c.area_upper = 6000;
  c.b0.assign(120, 0);
  return c;
}

CaseFile generate_case(const std::string& name, int blocks, double ubar) {
  if (name == "two-bar") return make_two_bar();
  if (name == "ten-bar") return make_ten_bar(std::isnan(ubar) ? 17.0 : ubar);
  if (name == "cantilever") return make_cantilever(blocks);
  if (name == "dome") return make_dome();
  throw std::invalid_argument(
      "unknown case name '" + name + "'; expected two-bar, ten-bar, cantilever, or dome");
}

}  // namespace trussopt
