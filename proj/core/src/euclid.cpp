#include "binets/euclid.hpp"

#include <algorithm>
#include <cmath>

namespace binets {

Plane Plane::through(const Vec3& point, const Vec3& normal) {
  const double n = normal.norm();
  if (!(n > 0)) throw Error(ErrorKind::Degenerate, "plane normal is zero");
  Vec3 u = normal / n;
  return {u, -u.dot(point)};
}

Plane Plane::reflected(const Plane& m) const {
  const double um = normal.dot(m.normal);
  return {normal - 2.0 * um * m.normal, offset - 2.0 * m.offset * um};
}

Vec3 reflect(const Plane& m, const Vec3& x) { return x - 2.0 * m.signed_distance(x) * m.normal; }

namespace {

Eigen::Vector3d singular_values_of_differences(std::span<const Vec3> points) {
  if (points.size() < 2) return Eigen::Vector3d::Zero();
  Eigen::MatrixXd d(static_cast<Eigen::Index>(points.size()) - 1, 3);
  for (std::size_t i = 1; i < points.size(); ++i) d.row(static_cast<Eigen::Index>(i) - 1) = (points[i] - points[0]).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
  Eigen::Vector3d s = Eigen::Vector3d::Zero();
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) s[i] = svd.singularValues()[i];
  return s;
}

}  // namespace

double coplanarity_residual(std::span<const Vec3> points) {
  const Eigen::Vector3d s = singular_values_of_differences(points);
  return s[0] > 0 ? s[2] / s[0] : 0.0;
}

double collinearity_residual(std::span<const Vec3> points) {
  const Eigen::Vector3d s = singular_values_of_differences(points);
  return s[0] > 0 ? s[1] / s[0] : 0.0;
}

Plane fit_plane(std::span<const Vec3> points) {
  if (points.size() < 3) throw Error(ErrorKind::Degenerate, "a plane needs at least three points");
  Vec3 c = Vec3::Zero();
  for (const auto& p : points) c += p;
  c /= static_cast<double>(points.size());
  Eigen::MatrixXd d(static_cast<Eigen::Index>(points.size()), 3);
  for (std::size_t i = 0; i < points.size(); ++i) d.row(static_cast<Eigen::Index>(i)) = (points[i] - c).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s.size() < 2 || !(s[1] > kRankTol * s[0])) throw Error(ErrorKind::Degenerate, "points are collinear");
  return Plane::through(c, svd.matrixV().col(2));
}

PlaneMeet meet_planes(std::span<const Plane> planes) {
  if (planes.size() < 3) throw Error(ErrorKind::Degenerate, "a point needs at least three planes");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(planes.size()), 3);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(planes.size()));
  double hscale = 0.0;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) = planes[i].normal.transpose();
    rhs[static_cast<Eigen::Index>(i)] = -planes[i].offset;
    hscale = std::max(hscale, std::abs(planes[i].offset));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  PlaneMeet m;
  m.condition = s[0] > 0 ? s[2] / s[0] : 0.0;
  m.point = svd.solve(rhs);
  double worst = 0.0;
  for (const auto& p : planes) worst = std::max(worst, std::abs(p.signed_distance(m.point)));
  const double scale = std::max({1.0, hscale, m.point.norm()});
  m.residual = worst / scale;
  return m;
}

LineMeet meet_lines(const Line& a, const Line& b) {
  const Vec3 w = b.point - a.point;
  const Vec3 c = a.direction.cross(b.direction);
  const double sin2 = c.squaredNorm();
  LineMeet m;
  const double wn = w.norm();
  m.skewness = wn > 0 ? std::abs(c.dot(w)) / wn : 0.0;
  m.parallel = sin2 < 1e-20;
  if (m.parallel) {
    m.point = 0.5 * (a.point + b.closest_point(a.point));
    return m;
  }
  // Closest points a.point + s a.dir and b.point + t b.dir.
  const double s = w.cross(b.direction).dot(c) / sin2;
  const double t = w.cross(a.direction).dot(c) / sin2;
  m.point = 0.5 * ((a.point + s * a.direction) + (b.point + t * b.direction));
  return m;
}

CircleFit circumcircle(std::span<const Vec3> points) {
  if (points.size() < 3) throw Error(ErrorKind::Degenerate, "a circle needs at least three points");
  const Vec3& p0 = points[0];
  const Vec3 a = points[1] - p0;
  const Vec3 b = points[2] - p0;
  const Vec3 n = a.cross(b);
  const double n2 = n.squaredNorm();
  if (n2 < 1e-24 * a.squaredNorm() * b.squaredNorm())
    throw Error(ErrorKind::Degenerate, "first three points are collinear");
  // circumcenter of a triangle in 3D
  const Vec3 rel = (b.squaredNorm() * n.cross(a) + a.squaredNorm() * b.cross(n)) / (2.0 * n2);
  CircleFit fit;
  fit.circle.center = p0 + rel;
  fit.circle.radius = rel.norm();
  fit.circle.axis = n.normalized();
  double worst = coplanarity_residual(points);
  for (const auto& p : points)
    worst = std::max(worst, std::abs((p - fit.circle.center).norm() - fit.circle.radius) / fit.circle.radius);
  fit.residual = worst;
  return fit;
}

std::optional<Plane> plane_through(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a);
  const double scale = (b - a).norm() * (c - a).norm();
  if (!(n.norm() > 1e-12 * scale) || scale == 0.0) return std::nullopt;
  return Plane::through(a, n);
}

}  // namespace binets
