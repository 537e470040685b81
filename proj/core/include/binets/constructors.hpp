#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "binets/binet.hpp"

namespace binets {

// Initial data for the propagators. `data` lives on `window` grown by one
// vertex on every side: all of its faces must be present, and the vertices of
// `window` on the lines i = origin[0] and j = origin[1] must be present. The
// extra ring of faces supplies the dual edges of the outermost vertex edges,
// so every vertex of `window` is determined.
struct CauchyData {
  Window window;
  std::array<int, 2> origin{0, 0};
  Binet data;
};

Window padded(const Window& w, int by = 1);

enum class SweepOrder { RowMajor, ColumnMajor };

// Each new vertex meets the plane of its three predecessors and the two
// planes orthogonal to the dual edges of its new edges.
Binet propagate_principal(const CauchyData& d, SweepOrder order = SweepOrder::RowMajor);

// Only the two orthogonality planes are imposed; the new vertex moves on
// their common line. The free parameter f in (0,1) picks the point
// origin + L tan(pi (f - 1/2)) dir, where origin is the point of the line
// closest to the centroid of the three predecessors and L the mean length of
// the two known edges.
struct OrthogonalStep {
  CellId vertex;
  Line line;
  Plane conjugacy_plane;
  double scale;
};
using FreedomFn = std::function<double(const OrthogonalStep&)>;
Binet propagate_orthogonal(const CauchyData& d, const FreedomFn& freedom,
                           SweepOrder order = SweepOrder::RowMajor);
// Missing cells use f = 1/2.
Binet propagate_orthogonal(const CauchyData& d, const CellField<double>& freedom,
                           SweepOrder order = SweepOrder::RowMajor);
// The parameter that lands on the conjugacy plane.
double conjugate_freedom(const OrthogonalStep& s);

// Random conjugate net on the vertices of w: a random affine grid, perturbed
// on the two lower coordinate lines, then every point chosen in the plane of
// its three predecessors with 2-parameter noise. noise = 0 gives the affine
// image of the integer grid.
Binet generate_conjugate_net(std::uint64_t seed, const Window& w, double noise);
// Same for a Z^3 window: each cube closes on the three planes through the
// known faces.
Binet generate_conjugate_net_3d(std::uint64_t seed, const Window& w, double noise);

// Face values F(i, j) = net(i, j) on the window whose faces match net's vertices.
Binet faces_from_net(const Binet& net);

// A random principal binet on [0, m-1] x [0, n-1] from a random conjugate
// face net and axes near the face centroids.
Binet random_principal_binet(std::uint64_t seed, int m, int n, double noise = 0.1);
CauchyData random_cauchy_data(std::uint64_t seed, int m, int n, double noise = 0.1);

struct ProfileCurve {
  std::vector<double> r;
  std::vector<double> z;
  double angular_step = 0.3;
  int count = 8;
  double angle_offset = 0.0;
  // (dr, dz) of the smooth profile at sample 0, when known
  std::optional<std::array<double, 2>> tangent0;
};
// (r_j cos(theta_i), r_j sin(theta_i), z_j), theta_i = offset + i * step,
// on the vertices of [0, count-1] x [0, samples-1].
Binet generate_revolution_circular(const ProfileCurve& profile);
// Any vertex profile with any face profile (faces at angle (i + 1/2) step) is
// principal.
Binet revolution_principal_binet(const ProfileCurve& vertex_profile, const std::vector<double>& face_r,
                                 const std::vector<double>& face_z);

CircleFit circumcircle_checked(std::span<const Vec3> points, double tol = kDefaultTol);

struct ConicalNet {
  BiStarNet planes;  // vertex planes only
  double closure_residual = 0.0;
  bool degenerate = false;  // the four planes around some face have no unique common point
};
// Reflect h0 across the perpendicular bisector of every vertex edge.
// g must be circular; h0 should contain g(v0) for the canonical lift.
ConicalNet reflection_conical_from_circular(const Binet& g, const Plane& h0, double tol = kDefaultTol);

struct CircularNet {
  Binet points;  // vertex points only
  double closure_residual = 0.0;
};
// Reflect g0 across the bisector plane mapping h(v) onto h(v2) for each edge.
CircularNet reflection_circular_from_conical(const BiStarNet& h, const Vec3& g0, double tol = kDefaultTol);

struct CircularConical {
  Binet binet;         // g on vertices, box-star of h on faces
  BiStarNet planes;    // h on vertices, quad planes on faces
  double closure_residual = 0.0;
};
CircularConical circular_conical_binet(const Binet& g, const Plane& h0, double tol = kDefaultTol);

// Standard families on a window of `count` x `samples` vertices.
ProfileCurve cylinder_profile(int samples, int count, double height_step = 0.25, double angular_step = 0.3);
ProfileCurve sphere_profile(int samples, int count, double polar_start = 0.5, double polar_step = 0.2,
                            double angular_step = 0.3);
ProfileCurve cone_profile(int samples, int count, double r0 = 1.0, double dr = 0.2, double dz = 0.3,
                          double angular_step = 0.3);
// Principal binets of revolution.
// cylinder_binet: unit cylinder; faces at the mid heights on the lines where
// the tangent planes of neighbouring meridians meet.
Binet cylinder_binet(int samples, int count, double height_step = 0.25, double angular_step = 0.3);
// cone_binet: faces at the midpoints of the profile segments.
Binet cone_binet(int samples, int count, double r0 = 1.0, double dr = 0.2, double dz = 0.3,
                 double angular_step = 0.3);
// sphere_binet: circular-conical binet with vertices on the unit sphere and
// faces at the apexes of its tangent cones. Rows stay above the equator.
Binet sphere_binet(int samples, int count, double polar_start = 0.5, double polar_step = 0.1,
                   double angular_step = 0.3);

// Tangent plane of the surface of revolution at the vertex (0, 0); uses the
// chord to sample 1 when tangent0 is unset.
Plane profile_tangent_plane(const ProfileCurve& p);

}  // namespace binets
