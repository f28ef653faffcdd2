#pragma once
// Materials, thin-walled profile sections, and the catalog of
// (material, profile) choices each structural element may adopt.
//
// Units throughout the library: lengths mm, areas mm^2, forces N,
// stresses MPa (N/mm^2), densities kg/mm^3, weights kg.

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace trussopt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Material {
  std::string name;
  double rho = 0;      // density, kg/mm^3
  double e = 0;        // Young's modulus, MPa
  double nu = 0;       // Poisson ratio
  double sigma_t = 0;  // allowable tension stress, MPa
  double sigma_c = 0;  // allowable compression stress magnitude, MPa
};

// Throws std::invalid_argument on non-physical values.
void validate(const Material& m);

enum class ProfileKind { I, C, T };

const char* to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& s);

// Thin-walled open section described by its reference dimensions
// x0 = (t, h, w): wall thickness, web height, flange width.
struct ProfileShape {
  std::string name;
  ProfileKind kind = ProfileKind::I;
  double t = 0;  // mm
  double h = 0;  // mm
  double w = 0;  // mm
};

void validate(const ProfileShape& s);

// Thin-walled section area at the reference dimensions.
// I and C sections: two flanges plus web, 2wt + ht; T section: wt + ht.
double profile_area(const ProfileShape& s);

// Strong-axis bending inertia at the reference dimensions.
// I and C: web th^3/12 plus flanges at +-h/2.  T: web plus single flange
// about the section centroid.
double profile_reference_inertia(const ProfileShape& s);

// Wall slenderness ratio t/w driving the local (plate) buckling limit.
double profile_thickness_ratio(const ProfileShape& s);

// One admissible (material, profile) pair with its derived reference
// quantities.  Areas scale all section dimensions by sqrt(a/a0), so the
// inertia scales as (a/a0)^2.
struct CatalogEntry {
  Material material;
  ProfileShape profile;
  double a0 = 0;      // reference area, mm^2
  double i0 = 0;      // reference strong-axis inertia, mm^4
  double kratio = 0;  // thickness ratio t/w
};

CatalogEntry make_catalog_entry(const Material& material, const ProfileShape& profile);

// Bending inertia of entry scaled to area a: I0 * (a/a0)^2.
double profile_inertia(double a, const CatalogEntry& entry);

using Catalog = std::vector<CatalogEntry>;

// The n x p categorical choice matrix.  Rows sum to one; binary rows are
// one-hot selections of a single catalog entry per element.
struct ChoiceMatrix {
  Mat b;

  ChoiceMatrix() = default;
  explicit ChoiceMatrix(Mat values) : b(std::move(values)) {}

  int n() const { return static_cast<int>(b.rows()); }
  int p() const { return static_cast<int>(b.cols()); }

  // Flattened row-major index of entry (i, c).
  int flat(int i, int c) const { return i * p() + c; }

  // One-hot matrix from 0-based per-element catalog indices.
  static ChoiceMatrix from_indices(int p, const std::vector<int>& c);

  // Per-element catalog indices; requires a binary matrix.
  std::vector<int> to_indices() const;

  // Entries exactly 0 or 1 with one 1 per row.
  bool is_binary() const;

  bool is_row_stochastic(double tol = 1e-12) const;

  // The flattened n*p vector view (row-major).
  Vec flattened() const;
};

// Throws std::invalid_argument unless B is row-stochastic with entries in
// [0, 1] (and exactly binary when require_binary is set).
void validate(const ChoiceMatrix& b, bool require_binary = false);

// Convex B-weighted material properties per element.
Vec relaxed_modulus(const Catalog& catalog, const ChoiceMatrix& b);   // MPa
Vec relaxed_density(const Catalog& catalog, const ChoiceMatrix& b);   // kg/mm^3

}  // namespace trussopt
