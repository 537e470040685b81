#pragma once

// Reference computations written independently of the library: plain loops,
// Gaussian elimination and closed forms. Tests compare library output to these.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace oracle {

using V = Eigen::VectorXd;
using V3 = Eigen::Vector3d;

// Rank by Gaussian elimination with partial pivoting on the rows given.
inline int rank(std::vector<V> rows, double tol = 1e-9) {
  if (rows.empty()) return 0;
  const long n = rows[0].size();
  double scale = 0.0;
  for (const auto& r : rows) scale = std::max(scale, r.cwiseAbs().maxCoeff());
  int rk = 0;
  for (long col = 0; col < n && rk < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    double best = tol * scale;
    for (int i = rk; i < static_cast<int>(rows.size()); ++i)
      if (std::abs(rows[i][col]) > best) {
        best = std::abs(rows[i][col]);
        piv = i;
      }
    if (piv < 0) continue;
    std::swap(rows[rk], rows[piv]);
    for (int i = rk + 1; i < static_cast<int>(rows.size()); ++i) rows[i] -= rows[i][col] / rows[rk][col] * rows[rk];
    ++rk;
  }
  return rk;
}

// Moebius form (++++-) written out.
inline double moebius(const V& x, const V& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3] - x[4] * y[4];
}
inline double lie(const V& x, const V& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3] - x[4] * y[4] - x[5] * y[5];
}

// c + e0 + 2 rho e_inf with e0 = (e5 - e4)/2, e_inf = (e5 + e4)/2.
inline V sphere_lift(const V3& c, double rho) {
  V x(5);
  x << c[0], c[1], c[2], rho - 0.5, rho + 0.5;
  return x;
}

// Volume of the tetrahedron over the product of its three edge lengths.
inline double tetra_flatness(const V3& a, const V3& b, const V3& c, const V3& d) {
  const V3 u = b - a, v = c - a, w = d - a;
  return std::abs(u.dot(v.cross(w))) / (u.norm() * v.norm() * w.norm());
}

// Centre of the circle through three points, via the two bisector planes and
// the plane of the points.
inline V3 circumcenter(const V3& a, const V3& b, const V3& c) {
  Eigen::Matrix3d m;
  Eigen::Vector3d r;
  const V3 n = (b - a).cross(c - a);
  m.row(0) = (b - a).transpose();
  m.row(1) = (c - a).transpose();
  m.row(2) = n.transpose();
  r << 0.5 * (b.squaredNorm() - a.squaredNorm()), 0.5 * (c.squaredNorm() - a.squaredNorm()), n.dot(a);
  return m.fullPivLu().solve(r);
}

// Distance from a point to the z axis.
inline double axis_distance(const V3& p) { return std::hypot(p[0], p[1]); }

// Distance between a line (point, unit direction) and the z axis.
inline double line_axis_distance(const V3& p, const V3& d) {
  const V3 ez(0, 0, 1);
  const V3 n = d.cross(ez);
  if (n.norm() < 1e-12) return axis_distance(p);
  return std::abs(p.dot(n)) / n.norm();
}

}  // namespace oracle
