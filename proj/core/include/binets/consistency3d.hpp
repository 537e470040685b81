#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "binets/lifts.hpp"

namespace binets {

// ---- one cube of a polar conjugate binet in RP^4 ----

// Corners are indexed by bit mask, bit a meaning a step along axis a:
// v = 0, v1 = 1, v2 = 2, v12 = 3, v3 = 4, v13 = 5, v23 = 6, v123 = 7.
// Faces are indexed 2 * plane + top, where the top face of a plane is the one
// shifted along the remaining axis.
int cube_face_index(FacePlane p, bool top);
// Corner masks of a face in the order r, r + ea, r + ea + eb, r + eb.
std::array<int, 4> cube_face_corners(FacePlane p, bool top);

using PlaneField = CellField<ProjSubspace>;

struct CubeData {
  std::array<std::optional<Vec>, 8> vertices;
  std::array<std::optional<ProjSubspace>, 8> vertex_planes;
  std::array<std::optional<Vec>, 6> faces;
  std::array<std::optional<ProjSubspace>, 6> face_planes;
};

// Largest violation among the supplied relations: incident points polar,
// points polar to their own plane, faces inside the planes of their corners.
double cube_input_residual(const CubeData& d, const QuadricForm& form);

struct CubeCompletion {
  CubeData cube;
  double polarity_residual = 0.0;  // max |<x, y>| / (|x| |y|) over the new incident pairs
  double meet_residual = 0.0;      // worst nullity defect of the plane meets
};
// Needs the corners v1 .. v23 and their planes. Fills the three top faces with
// their planes, then v123 with its plane. Throws InvalidInput when the input
// residual exceeds tol and Degenerate for non-generic joins or meets.
CubeCompletion complete_polar_cube(const CubeData& d, const QuadricForm& form = QuadricForm::moebius(),
                                   double tol = kDefaultTol);
// Same after relabelling axis a as perm[a]; the result is mapped back.
CubeCompletion complete_polar_cube_permuted(const CubeData& d, std::array<int, 3> perm,
                                            const QuadricForm& form = QuadricForm::moebius(),
                                            double tol = kDefaultTol);

// Random polar cube for the Moebius form. `truth` is complete; `data` lacks
// v123, the top faces and their planes.
struct PolarCubeSample {
  CubeData data;
  CubeData truth;
};
PolarCubeSample random_polar_cube(std::uint64_t seed);

// ---- Z^3 ----

// Cells on the coordinate planes through window.lo: vertices with some
// coordinate at its lower bound, faces lying in such a plane.
bool on_initial_slice(const Window& w, const CellId& c);

// Points on the initial slices of a Z^3 window, plus a plane for every slice
// vertex. Where fewer than three incident faces are known, the plane is part
// of the initial data.
struct PolarInitialData {
  HomField points;
  PlaneField planes;
};

struct PolarBinet3D {
  HomField points;
  PlaneField vertex_planes;
  PlaneField face_planes;
  double max_polarity_residual = 0.0;
  double max_meet_residual = 0.0;
  std::size_t cubes = 0;
};
// Completes cube by cube. axis_priority lists the axes from the slowest loop
// to the fastest; the default sweeps lexicographically in (k, j, i).
PolarBinet3D complete_polar_z3(const PolarInitialData& d, const QuadricForm& form = QuadricForm::moebius(),
                               std::array<int, 3> axis_priority = {2, 1, 0});

struct Z3Options {
  double noise = 0.1;
  bool planar = false;  // keep every point in the chart plane z = 0
};
// Random polar initial data for the Moebius form on a Z^3 window with at
// least two vertices per axis.
PolarInitialData random_polar_initial_data(std::uint64_t seed, const Window& w, const Z3Options& opt = {});

// Euclidean initial data: slice points of a principal binet and a plane
// through every slice vertex.
struct Z3InitialData {
  Binet points;
  BiStarNet planes;
};
Z3InitialData project_initial_data(const PolarInitialData& d);
// Euclidean plane of a plane of RP^4 under central projection from e_inf.
Plane project_plane(const ProjSubspace& s);

struct Z3Extension {
  Binet binet;
  HomField lift;
  PlaneField vertex_planes;
  double initial_cycle_residual = 0.0;
  double max_polarity_residual = 0.0;
  double max_meet_residual = 0.0;
};
// Moebius-lifts the initial slices, lifts each vertex plane E to
// (E v e_inf) ^ b(v)^perp, completes every cube and projects back.
Z3Extension extend_principal_to_z3(const Z3InitialData& d, double rho0 = 0.0, double tol = kDefaultTol,
                                   std::array<int, 3> axis_priority = {2, 1, 0});

// ---- conjugate face-nets ----

// Coplanarity of the twelve faces around each vertex where all are present.
CheckReport check_facenet(const HomField& faces, double tol = 1e-8);

struct FaceNetCompletion {
  HomField faces;
  double max_skewness = 0.0;
};
// g lives on the 12-faces of a Z^3 window and is a conjugate net there. The
// 13-face at s is the common point of g(s-e2) v g(s) and g(s-e2+e3) v g(s+e3),
// the 23-face the same with e1 for e2. Faces without the needed data stay
// empty. Throws NotConjugate when two such lines are skew beyond tol.
FaceNetCompletion facenet_completion(const HomField& g, double tol = 1e-8);

struct EuclideanFaceNet {
  Binet faces;
  double max_skewness = 0.0;
  std::size_t at_infinity = 0;  // parallel focal lines
};
EuclideanFaceNet facenet_completion(const Binet& g, double tol = 1e-8);

// Restriction to vertices and 12-faces.
Binet restrict_to_pair(const Binet& b);
// g on the vertices of a Z^3 window w, h a net on the vertices of the 12-face
// range of w, placed on the 12-faces.
Binet pair_from_nets(const Binet& g, const Binet& h);

// c = (g, completed h) and c' = (h as vertices, completed g as faces), where
// g(s + e1 + e2) sits on the 12-face s of c'.
struct SymmetricCompletion {
  Binet c;
  Binet c_prime;
  PrincipalReport c_report;
  PrincipalReport c_prime_report;
  bool agree() const { return c_report.passed() == c_prime_report.passed(); }
};
SymmetricCompletion check_symmetric_completion(const Binet& pair, double tol = 1e-8);

}  // namespace binets
