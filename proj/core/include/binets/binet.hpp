#pragma once

#include <optional>
#include <string>
#include <vector>

#include "binets/euclid.hpp"
#include "binets/lattice.hpp"
#include "binets/projective.hpp"

namespace binets {

inline constexpr double kDefaultTol = 1e-9;

// Points in R^3 on vertices and faces.
using Binet = CellField<Vec3>;
// Oriented planes on vertices and faces.
using BiStarNet = CellField<Plane>;
// Homogeneous representatives, e.g. a lift into RP^4 or RP^5.
using HomField = CellField<Vec>;

struct ResidualEntry {
  CellId at;
  std::string label;
  double residual = 0.0;
  bool degenerate = false;
};

struct CheckReport {
  std::string check;
  double tolerance = kDefaultTol;
  bool passed = true;
  std::size_t checked = 0;
  std::size_t degenerate = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  std::optional<ResidualEntry> worst;
  std::vector<ResidualEntry> entries;

  void add(ResidualEntry e);
  void finish();
};

struct PrincipalReport {
  CheckReport conjugate;
  CheckReport orthogonal;
  bool passed() const { return conjugate.passed && orthogonal.passed; }
};

// Coplanarity of the points incident to each cell whose lattice neighbourhood
// lies in the window and is fully present.
CheckReport check_conjugate(const Binet& b, double tol = kDefaultTol);
// Same for homogeneous points: rank of the normalised representatives.
CheckReport check_conjugate_projective(const HomField& x, double tol = kDefaultTol);
// |<b(v) - b(v2), b(f) - b(f2)>| / (|.| |.|) per cross. Zero length edges throw.
CheckReport check_orthogonal(const Binet& b, double tol = kDefaultTol);
PrincipalReport check_principal(const Binet& b, double tol = kDefaultTol);
// Angle between the intersection lines b(v) ^ b(v2) and b(f) ^ b(f2).
CheckReport check_bistar_orthogonal(const BiStarNet& p, double tol = kDefaultTol);
// |<x, x'>| for incident pairs, on unit representatives.
CheckReport check_polar_binet(const HomField& x, const QuadricForm& form, double tol = kDefaultTol);

// Plane through the points incident to each cell (where the neighbourhood is
// complete), oriented coherently along the incidence graph.
BiStarNet box_planes(const Binet& b, double tol = kDefaultTol);
// Common point of the planes incident to each cell.
Binet box_star_points(const BiStarNet& p, double tol = kDefaultTol);
// Root normal has its first significant coordinate positive, neighbours
// follow with <u, u'> > 0.
void orient_coherently(BiStarNet& p);

// Incident present cells, or nullopt when the lattice neighbourhood is
// truncated by the window or has holes.
template <class T>
std::optional<std::vector<CellId>> full_neighbourhood(const CellField<T>& field, const CellId& c) {
  auto n = incident_cells(field.window(), c);
  if (n.truncated) return std::nullopt;
  for (const auto& d : n.cells)
    if (!field.has(d)) return std::nullopt;
  return n.cells;
}

}  // namespace binets
