#pragma once

#include <vector>

#include "binets/lifts.hpp"

namespace binets {

struct EdgeIntersection {
  CellId a, b;
  double skewness = 0.0;  // zero iff the two normal lines are coplanar
  bool parallel = false;
  Vec3 point = Vec3::Zero();
};

struct NormalBicongruence {
  CellField<Line> lines;
  std::vector<EdgeIntersection> edges;
  double max_skewness = 0.0;
};
// N(d) passes through b(d) perpendicular to the plane through its incident
// points. Adjacent normals meet exactly when b is principal.
NormalBicongruence normal_bicongruence(const Binet& b, double tol = kDefaultTol);
NormalBicongruence normal_bicongruence(const Binet& b, const BiStarNet& planes);

// Intersections of adjacent normals along lattice axis 0 or 1, arranged as a
// binet on the edges: V'(i,j) from the V-edge leaving (i,j), F'(i,j) from the
// F-edge leaving Face(i,j). Parallel normals leave the cell empty.
struct FocalBinet {
  Binet points;
  std::size_t at_infinity = 0;
};
FocalBinet focal_binet(const Binet& b, int axis, double tol = kDefaultTol);

// Section of the decoded sphere of d with the plane through its incident points.
struct CellCircle {
  Vec3 center;
  Vec3 normal;
  double r_squared;
  bool imaginary() const { return r_squared < 0; }
};
CellCircle cell_circle(const MoebiusLift& lift, const BiStarNet& planes, const CellId& d);

// Cone with apex b(d) and axis u(d) whose tangent planes have normals at
// angle acos(sigma) to the axis.
struct CellCone {
  Vec3 apex;
  Vec3 axis;
  double cos_normal_angle;
  bool imaginary() const { return std::abs(cos_normal_angle) > 1.0 + 1e-12; }
  bool flat() const { return std::abs(std::abs(cos_normal_angle) - 1.0) <= 1e-12; }
};
CellCone cell_cone(const Binet& b, const LaguerreLift& lift, const CellId& d);

// Sphere polar to the join of the two lifted box planes of an adjacent pair.
// When that polar point describes a plane, `flat` is set and `plane` holds it.
struct CurvatureSphere {
  Sphere sphere;
  bool flat = false;
  Plane plane;
  double rank_gap = 0.0;  // fifth over fourth singular value of the join
};
CurvatureSphere curvature_sphere(const MoebiusLift& lift, const CellEdge& e);

// Common point of two adjacent Lie lines, decoded as an oriented sphere.
struct LieCurvaturePoint {
  Vec point;
  double skewness = 0.0;
  Sphere sphere;
  double oriented_radius = 0.0;
};
LieCurvaturePoint lie_curvature_point(const LineBicongruence& l, const CellEdge& e);

}  // namespace binets
