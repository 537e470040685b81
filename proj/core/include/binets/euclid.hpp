#pragma once

#include <optional>
#include <span>
#include <vector>

#include "binets/projective.hpp"

namespace binets {

// Oriented plane {x : <normal, x> + offset = 0} with |normal| = 1.
struct Plane {
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;

  static Plane through(const Vec3& point, const Vec3& normal);
  double signed_distance(const Vec3& x) const { return normal.dot(x) + offset; }
  Vec3 foot(const Vec3& x) const { return x - signed_distance(x) * normal; }
  Plane flipped() const { return {-normal, -offset}; }
  Plane reflected(const Plane& mirror) const;
};

struct Line {
  Vec3 point = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();  // unit

  Vec3 closest_point(const Vec3& x) const { return point + (x - point).dot(direction) * direction; }
};

// Affine reflection x -> x - 2(<m,x> + c) m in the mirror plane (m, c).
Vec3 reflect(const Plane& mirror, const Vec3& x);

// Smallest singular value of the differences p_i - p_0, divided by the
// largest. Zero iff the points are coplanar.
double coplanarity_residual(std::span<const Vec3> points);
// Second singular value over the largest; near zero means collinear.
double collinearity_residual(std::span<const Vec3> points);

// Total least squares plane. Orientation is left to the caller.
Plane fit_plane(std::span<const Vec3> points);

struct PlaneMeet {
  Vec3 point;
  double residual;  // max |signed distance| / length scale
  double condition;  // smallest / largest singular value of the normal matrix
};
// Least squares common point of three or more planes.
PlaneMeet meet_planes(std::span<const Plane> planes);

struct LineMeet {
  Vec3 point;         // midpoint of the common perpendicular
  double skewness;    // |det(d1, d2, p2 - p1)| / |p2 - p1|, zero iff coplanar
  bool parallel;
};
LineMeet meet_lines(const Line& a, const Line& b);

// Circle through four points, gated on concyclicity.
struct Circle {
  Vec3 center;
  double radius;
  Vec3 axis;
};
struct CircleFit {
  Circle circle;
  double residual;  // max(coplanarity, max | |p - c| - r | / r)
};
CircleFit circumcircle(std::span<const Vec3> points);

// Plane through three points, or std::nullopt when they are collinear.
std::optional<Plane> plane_through(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace binets
