#pragma once

#include <optional>

#include "binets/binet.hpp"

namespace binets {

// ---- Moebius geometry: R^5 with the form (++++-), spheres are points ----

// e_inf = (e5 + e4)/2, e_0 = (e5 - e4)/2
Vec moebius_e_inf();
Vec moebius_e_zero();
// c + e_0 + 2 rho e_inf; the sphere has r^2 = |c|^2 - 2 rho
Vec moebius_point(const Vec3& center, double rho);

struct AdditivePotential {
  CellField<double> rho;
  double scale = 1.0;  // mean distance between incident points
  double max_cycle_residual = 0.0;
  double mean_cycle_residual = 0.0;
  std::optional<Cross> worst;
  double max_polar_residual = 0.0;
};
// rho(d) + rho(d') = <b(d), b(d')> along a spanning tree from the smallest
// cell, anchored by rho(root) = rho0. Residuals are divided by scale^2.
AdditivePotential solve_additive_potential(const Binet& b, double rho0);

struct MoebiusLift {
  Binet base;
  CellField<double> rho;
  HomField points;  // raw representatives moebius_point(b, rho)
  double cycle_residual = 0.0;
  double polar_residual = 0.0;
};
// Throws NotOrthogonal when the cycle residual exceeds tol.
MoebiusLift moebius_lift(const Binet& b, double rho0, double tol = kDefaultTol);
MoebiusLift moebius_lift_from_rho(const Binet& b, const CellField<double>& rho);
// Anchor rho0 for which the lifted sphere of cell c has radius zero. Vertex
// and face potentials move in opposite directions with rho0.
double point_sphere_anchor(const Binet& b, const CellId& c);

// Central projection from B = (0,0,0,1,1) to the Euclidean chart.
Vec3 project_moebius(const Vec& x);

struct Sphere {
  Vec3 center = Vec3::Zero();
  double r_squared = 0.0;
  bool imaginary() const { return r_squared < 0.0; }
};
// r^2 = <x,x> / (4 <x, e_inf>^2); a point polar to e_inf is a plane and throws.
Sphere sphere_from_lift(const Vec& x);
Plane radical_plane(const Sphere& a, const Sphere& b);

// ---- Laguerre geometry: R^5 with the degenerate form (+++-0) ----

// [u, sigma, h] for the oriented plane <u, x> + h = 0 with |u| = 1
Vec laguerre_point(const Plane& p, double sigma);

struct MultiplicativePotential {
  CellField<double> sigma;
  double max_cycle_residual = 0.0;  // |log| of the cross ratio of inner products
  double mean_cycle_residual = 0.0;
  std::optional<Cross> worst;
  double max_polar_residual = 0.0;
};
// sigma(d) sigma(d') = <u(d), u(d')> along a spanning tree, sigma(root) = sigma0.
MultiplicativePotential solve_multiplicative_potential(const CellField<Vec3>& u, double sigma0);

// Unit normals with coherent orientation.
BiStarNet unit_normals(BiStarNet p);

struct NormalBinet {
  Binet points;  // u / sigma
  CellField<double> sigma;
  double cycle_residual = 0.0;
  CheckReport conjugacy;
};
NormalBinet normal_binet(const BiStarNet& p, double sigma0, double tol = kDefaultTol);

struct LaguerreLift {
  BiStarNet base;
  CellField<double> sigma;
  HomField points;  // raw [u, sigma, h]
  double cycle_residual = 0.0;
  double polar_residual = 0.0;
};
// Throws NotOrthogonal when the cycle residual exceeds tol.
LaguerreLift laguerre_lift(const BiStarNet& p, double sigma0, double tol = kDefaultTol);

// ---- Lie geometry: R^6 with the form (++++--) ----

Vec lie_e_inf();
Vec lie_point_m();  // e6, the Moebius part lives in its polar
Vec lie_point_b();  // (0,0,0,1,1,0), the Laguerre part lives in its polar
Vec embed_moebius_to_lie(const Vec& x);
// [u, sigma, h] -> u - 2h e_inf + sigma e6
Vec embed_laguerre_to_lie(const Vec& y);

struct LieLine {
  Vec p;  // point of M^perp (a sphere)
  Vec q;  // point of B^perp (a plane with an angle)
};
using LineBicongruence = CellField<LieLine>;

struct LieLift {
  LineBicongruence lines;
  MoebiusLift moebius;
  LaguerreLift laguerre;
  CheckReport incident_polarity;
  CheckReport adjacent_intersection;
};
// Lines b_Q(d) v b_B(d) on every cell carrying both lifts. The plane field
// defaults to box_planes(b); supply one to include boundary vertex planes.
LieLift lie_lift(const Binet& b, double rho0, double sigma0, double tol = kDefaultTol);
LieLift lie_lift(const Binet& b, const BiStarNet& planes, double rho0, double sigma0,
                 double tol = kDefaultTol);

// Polarity of incident lines (all four products of spanning vectors) and
// intersection of adjacent lines (fourth singular value of the stacked spans).
CheckReport check_line_polarity(const LineBicongruence& l, double tol = kDefaultTol);
CheckReport check_line_intersection(const LineBicongruence& l, double tol = kDefaultTol);

// Same-kind neighbours: V-edges and F-edges.
std::vector<CellEdge> adjacent_pairs(const Window& w);

// Projection of a line from B v M: the normal line through the point in the
// direction of the plane normal.
struct ProjectedLine {
  Line line;
  bool degenerate = false;  // line meets the centre of projection
};
ProjectedLine project_lie_to_normal_line(const LieLine& l);

// Point and oriented plane recovered from the sections of a line with M^perp
// and B^perp.
struct LieSection {
  Vec3 point;
  double rho;
  Plane plane;
  double sigma;
};
LieSection lie_section(const LieLine& l);

LineBicongruence transform_lines(const LineBicongruence& l, const ProjTransform& t);
struct SectionBinet {
  Binet points;
  BiStarNet planes;
  CellField<double> rho;
  CellField<double> sigma;
};
SectionBinet sections(const LineBicongruence& l);

}  // namespace binets
