// Built-in case generators: the shipped material and profile tables plus the
// standard test structures (two-bar, ten-bar cantilever, scalable cantilever,
// 120-bar dome) and the catalog-scaling variants.
#pragma once

#include "trussopt/casefile.hpp"

#include <string>
#include <vector>

namespace trussopt {

// The three shipped materials: AL2139, AL2024, TA6V.
std::vector<Material> standard_materials();
Material standard_material(const std::string& name);

// Shipped thin-walled profiles, kinds I/C/T in sizes 1..10 sharing the same
// reference dimension table.
ProfileShape standard_profile(ProfileKind kind, int size);

// The full 90-entry catalog ordering used by the dome: for each material in
// [AL2139, TA6V, AL2024] and each kind in [I, C, T], sizes 1..10.
std::vector<std::pair<std::string, std::string>> catalog_table_90();

// Size-major ordering used by the catalog-scaling study: for each size 1..10,
// the nine (material, kind) combinations [AL2139, TA6V, AL2024] x [I, C, T].
// The first p entries form the scaled-down catalogs.
std::vector<std::pair<std::string, std::string>> catalog_table_size_major();

// Two bars under a corner load; the shipped walk-through case.
CaseFile make_two_bar();

// Two-block cantilever (the classic 10-bar layout) with a tip displacement
// limit of ubar millimeters and the {AL2139, TA6V} I1 catalog.
CaseFile make_ten_bar(double ubar);

// Scalable cantilever of unit 1000 mm blocks, 5 bars per block, 30 kN tip
// load, stress constraints only.
CaseFile make_cantilever(int blocks);

// Ten-bar geometry with ubar = 10 mm and the first p entries of the
// size-major catalog table. p must lie in 1..90.
CaseFile make_catalog_scaling(int p);

// 120-bar dome: apex, two rings, and twelve supports, loaded downward with
// 60/30/10 kN and a 10 mm apex displacement limit over the 90-entry catalog.
CaseFile make_dome();

// Dispatch by name for the command line: two-bar, ten-bar, cantilever, dome.
// blocks applies to cantilever; ubar to ten-bar (NaN keeps the default).
CaseFile generate_case(const std::string& name, int blocks, double ubar);

}  // namespace trussopt
