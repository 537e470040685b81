#include "binets/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace binets {

NormalBicongruence normal_bicongruence(const Binet& b, double tol) {
  return normal_bicongruence(b, box_planes(b, tol));
}

NormalBicongruence normal_bicongruence(const Binet& b, const BiStarNet& planes) {
  NormalBicongruence out;
  out.lines = CellField<Line>(b.window());
  planes.for_each([&](const CellId& c, const Plane& p) {
    if (b.has(c)) out.lines.set(c, Line{b.at(c), p.normal.normalized()});
  });
  for (const auto& [a, c] : adjacent_pairs(b.window())) {
    if (!out.lines.has(a) || !out.lines.has(c)) continue;
    const LineMeet m = meet_lines(out.lines.at(a), out.lines.at(c));
    out.edges.push_back({a, c, m.skewness, m.parallel, m.point});
    out.max_skewness = std::max(out.max_skewness, m.skewness);
  }
  return out;
}

FocalBinet focal_binet(const Binet& b, int axis, double tol) {
  const Window& w = b.window();
  if (w.dims() != 2 || (axis != 0 && axis != 1)) throw Error(ErrorKind::InvalidInput, "focal binets are taken along axis 0 or 1 of a Z^2 window");
  if (w.extent(axis) < 2) throw Error(ErrorKind::InvalidInput, "window too small for a focal binet");
  const NormalBicongruence n = normal_bicongruence(b, tol);
  std::array<int, 2> hi{w.hi(0), w.hi(1)};
  hi[static_cast<std::size_t>(axis)] -= 1;
  FocalBinet out;
  out.points = Binet(Window::box({w.lo(0), w.lo(1)}, hi));
  for (const auto& c : out.points.window().cells()) {
    // V'(i,j) sits on the V-edge leaving (i,j), F'(i,j) on the F-edge leaving Face(i,j)
    const CellId src = c.is_vertex() ? CellId::vertex(c.r[0], c.r[1]) : CellId::face(c.r[0], c.r[1]);
    const CellId dst = src.shifted(axis, 1);
    if (!n.lines.has(src) || !n.lines.has(dst)) continue;
    const LineMeet m = meet_lines(n.lines.at(src), n.lines.at(dst));
    if (m.parallel) {
      ++out.at_infinity;
      continue;
    }
    out.points.set(c, m.point);
  }
  return out;
}

CellCircle cell_circle(const MoebiusLift& lift, const BiStarNet& planes, const CellId& d) {
  const Sphere s = sphere_from_lift(lift.points.at(d));
  const Plane& p = planes.at(d);
  const double dist = p.signed_distance(s.center);
  return {p.foot(s.center), p.normal, s.r_squared - dist * dist};
}

CellCone cell_cone(const Binet& b, const LaguerreLift& lift, const CellId& d) {
  return {b.at(d), lift.base.at(d).normal, lift.sigma.at(d)};
}

namespace {

void append_box(const MoebiusLift& lift, const CellId& d, std::vector<Vec>& rows) {
  auto nb = full_neighbourhood(lift.points, d);
  if (!nb) throw Error(ErrorKind::InvalidInput, "incomplete neighbourhood", d.str());
  for (const auto& c : *nb) rows.push_back(lift.points.at(c).normalized());
}

}  // namespace

CurvatureSphere curvature_sphere(const MoebiusLift& lift, const CellEdge& e) {
  std::vector<Vec> rows;
  append_box(lift, e.first, rows);
  append_box(lift, e.second, rows);
  Mat m(static_cast<Eigen::Index>(rows.size()), 5);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const std::string where = e.first.str() + "-" + e.second.str();
  if (s.size() < 4 || !(s[3] > kRankTol * s[0])) throw Error(ErrorKind::Degenerate, "lifted box planes span less than a 3-space", where);
  CurvatureSphere out;
  out.rank_gap = s.size() > 4 ? s[4] / s[3] : 0.0;
  // G x is orthogonal to the join, and G^2 = I for the Moebius form
  Vec x = QuadricForm::moebius().gram() * svd.matrixV().col(4);
  const double w = x[4] - x[3];
  if (std::abs(w) <= 1e-12 * x.norm()) {
    // <x, lift(p)> = <m, p> - x4 for x = (m, x4, x4)
    const Vec3 m3(x[0], x[1], x[2]);
    out.flat = true;
    out.plane = Plane{m3.normalized(), -x[3] / m3.norm()};
    return out;
  }
  out.sphere = sphere_from_lift(x);
  return out;
}

LieCurvaturePoint lie_curvature_point(const LineBicongruence& l, const CellEdge& e) {
  const LieLine& a = l.at(e.first);
  const LieLine& b = l.at(e.second);
  Mat m(6, 4);
  m.col(0) = a.p.normalized();
  m.col(1) = a.q.normalized();
  m.col(2) = -b.p.normalized();
  m.col(3) = -b.q.normalized();
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  LieCurvaturePoint out;
  out.skewness = s[3] / s[0];
  const Eigen::Vector4d c = svd.matrixV().col(3);
  out.point = c[0] * m.col(0) + c[1] * m.col(1);
  out.point.normalize();
  out.sphere = sphere_from_lift(Vec(out.point.head(5)));
  out.oriented_radius = out.point[5] / (out.point[4] - out.point[3]);
  return out;
}

}  // namespace binets
