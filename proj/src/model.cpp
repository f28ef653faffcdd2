#include "trussopt/model.hpp"

#include <cmath>
#include <stdexcept>

namespace trussopt {

void validate(const Material& m) {
  if (!(m.rho > 0) || !(m.e > 0) || !(m.sigma_t > 0) || !(m.sigma_c > 0)) {
    throw std::invalid_argument("material '" + m.name + "': all properties must be positive");
  }
  if (!(m.nu > 0) || !(m.nu < 0.5)) {
    throw std::invalid_argument("material '" + m.name + "': poisson ratio must lie in (0, 0.5)");
  }
}

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::I: return "I";
    case ProfileKind::C: return "C";
    case ProfileKind::T: return "T";
  }
  return "?";
}

ProfileKind profile_kind_from_string(const std::string& s) {
  if (s == "I") return ProfileKind::I;
  if (s == "C") return ProfileKind::C;
  if (s == "T") return ProfileKind::T;
  throw std::invalid_argument("unknown profile kind '" + s + "' (expected I, C, or T)");
}

void validate(const ProfileShape& s) {
  if (!(s.t > 0) || !(s.h > 0) || !(s.w > 0)) {
    throw std::invalid_argument("profile '" + s.name + "': dimensions must be positive");
  }
  if (!(s.t < s.h) || !(s.t < s.w)) {
    throw std::invalid_argument("profile '" + s.name + "': thickness must be below height and width");
  }
}

double profile_area(const ProfileShape& s) {
  switch (s.kind) {
    case ProfileKind::I:
    case ProfileKind::C:
      return 2.0 * s.w * s.t + s.h * s.t;
    case ProfileKind::T:
      return s.w * s.t + s.h * s.t;
  }
  throw std::invalid_argument("profile '" + s.name + "': unknown kind");
}

double profile_reference_inertia(const ProfileShape& s) {
  const double web = s.t * s.h * s.h * s.h / 12.0;
  switch (s.kind) {
    case ProfileKind::I:
    case ProfileKind::C:
      // Two flanges at +-h/2 from the mid-height centroid.
      return web + 2.0 * s.w * s.t * (s.h / 2.0) * (s.h / 2.0);
    case ProfileKind::T: {
      // Web spans [0, h], flange sits at the web top; centroid height ybar.
      const double ybar = (s.w * s.h + s.h * s.h / 2.0) / (s.w + s.h);
      return web + s.t * s.h * (s.h / 2.0 - ybar) * (s.h / 2.0 - ybar) +
             s.w * s.t * (s.h - ybar) * (s.h - ybar);
    }
  }
  throw std::invalid_argument("profile '" + s.name + "': unknown kind");
}

double profile_thickness_ratio(const ProfileShape& s) { return s.t / s.w; }

CatalogEntry make_catalog_entry(const Material& material, const ProfileShape& profile) {
  validate(material);
  validate(profile);
  CatalogEntry entry;
  entry.material = material;
  entry.profile = profile;
  entry.a0 = profile_area(profile);
  entry.i0 = profile_reference_inertia(profile);
  entry.kratio = profile_thickness_ratio(profile);
  if (!(entry.kratio > 0) || !(entry.kratio < 1)) {
    throw std::invalid_argument("catalog entry " + material.name + "/" + profile.name +
                                ": thickness ratio must lie in (0, 1)");
  }
  return entry;
}

double profile_inertia(double a, const CatalogEntry& entry) {
  if (!(a > 0)) throw std::invalid_argument("profile_inertia: area must be positive");
  const double scale = a / entry.a0;
  return entry.i0 * scale * scale;
}

ChoiceMatrix ChoiceMatrix::from_indices(int p, const std::vector<int>& c) {
  if (p <= 0) throw std::invalid_argument("ChoiceMatrix: p must be positive");
  Mat b = Mat::Zero(static_cast<Eigen::Index>(c.size()), p);
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0 || c[i] >= p) {
      throw std::invalid_argument("ChoiceMatrix: catalog index out of range at element " +
                                  std::to_string(i + 1));
    }
    b(static_cast<Eigen::Index>(i), c[i]) = 1.0;
  }
  return ChoiceMatrix(std::move(b));
}

std::vector<int> ChoiceMatrix::to_indices() const {
  if (!is_binary()) {
    throw std::invalid_argument("ChoiceMatrix: to_indices requires a binary matrix");
  }
  std::vector<int> c(static_cast<size_t>(n()));
  for (int i = 0; i < n(); ++i) {
    Eigen::Index arg = 0;
    b.row(i).maxCoeff(&arg);
    c[static_cast<size_t>(i)] = static_cast<int>(arg);
  }
  return c;
}

bool ChoiceMatrix::is_binary() const {
  for (int i = 0; i < n(); ++i) {
    int ones = 0;
    for (int c = 0; c < p(); ++c) {
      const double v = b(i, c);
      if (v == 1.0) {
        ++ones;
      } else if (v != 0.0) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return n() > 0;
}

bool ChoiceMatrix::is_row_stochastic(double tol) const {
  if (n() == 0 || p() == 0) return false;
  for (int i = 0; i < n(); ++i) {
    double sum = 0;
    for (int c = 0; c < p(); ++c) {
      const double v = b(i, c);
      if (v < -tol || v > 1 + tol) return false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

Vec ChoiceMatrix::flattened() const {
  Vec out(static_cast<Eigen::Index>(n()) * p());
  for (int i = 0; i < n(); ++i) {
    for (int c = 0; c < p(); ++c) out(flat(i, c)) = b(i, c);
  }
  return out;
}

void validate(const ChoiceMatrix& b, bool require_binary) {
  if (b.n() == 0 || b.p() == 0) {
    throw std::invalid_argument("ChoiceMatrix: empty matrix");
  }
  if (require_binary) {
    if (!b.is_binary()) throw std::invalid_argument("ChoiceMatrix: binary one-hot rows required");
    return;
  }
  if (!b.is_row_stochastic()) {
    throw std::invalid_argument("ChoiceMatrix: rows must sum to 1 with entries in [0, 1]");
  }
}

namespace {

Vec weighted_property(const Catalog& catalog, const ChoiceMatrix& b, double Material::* field) {
  if (static_cast<int>(catalog.size()) != b.p()) {
    throw std::invalid_argument("catalog size does not match choice matrix columns");
  }
  Vec out = Vec::Zero(b.n());
  for (int i = 0; i < b.n(); ++i) {
    for (int c = 0; c < b.p(); ++c) {
      out(i) += b.b(i, c) * (catalog[static_cast<size_t>(c)].material.*field);
    }
  }
  return out;
}

}  // namespace

Vec relaxed_modulus(const Catalog& catalog, const ChoiceMatrix& b) {
  return weighted_property(catalog, b, &Material::e);
}

Vec relaxed_density(const Catalog& catalog, const ChoiceMatrix& b) {
  return weighted_property(catalog, b, &Material::rho);
}

}  // namespace trussopt
