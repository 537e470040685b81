#include "binets/consistency3d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "binets/random.hpp"

namespace binets {

int cube_face_index(FacePlane p, bool top) { return 2 * static_cast<int>(p) + (top ? 1 : 0); }

namespace {

int third_axis(FacePlane p) {
  const auto [a, b] = plane_axes(p);
  return 3 - a - b;
}

constexpr std::array<FacePlane, 3> kPlanes{FacePlane::P12, FacePlane::P13, FacePlane::P23};

Vec unit(const Vec& x) { return x / x.norm(); }

double unit_inner(const QuadricForm& q, const Vec& x, const Vec& y) {
  return std::abs(q(x, y)) / (x.norm() * y.norm());
}

// weight of the affine chart used by the projection
double chart_weight(const Vec& x) { return x[4] - x[3]; }

ProjSubspace join_points(std::span<const Vec> pts, const std::string& where) {
  Mat m(static_cast<Eigen::Index>(pts.size()), pts.front().size());
  for (std::size_t i = 0; i < pts.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = unit(pts[i]).transpose();
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const auto k = static_cast<Eigen::Index>(pts.size());
  if (!(s[k - 1] > kRankTol * s[0])) throw Error(ErrorKind::Degenerate, "points do not span a subspace of full dimension", where);
  return ProjSubspace::span(svd.matrixV().leftCols(k).transpose());
}

struct PointMeet {
  Vec point;
  double residual;
};

// Common point of subspaces whose stacked equations have nullity one.
PointMeet meet_point(std::span<const ProjSubspace> spaces, const std::string& where) {
  Eigen::Index rows = 0;
  for (const auto& s : spaces) rows += s.annihilator().rows();
  const Eigen::Index n = spaces.front().ambient_dim() + 1;
  Mat m(rows, n);
  Eigen::Index r = 0;
  for (const auto& s : spaces) {
    const Mat a = s.annihilator();
    m.middleRows(r, a.rows()) = a;
    r += a.rows();
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  Vec s = Vec::Zero(n);
  s.head(std::min(rows, n)) = svd.singularValues().head(std::min(rows, n));
  if (!(s[n - 2] > kRankTol * s[0])) throw Error(ErrorKind::Degenerate, "planes do not meet in a single point", where);
  return {svd.matrixV().col(n - 1), s[n - 1] / s[0]};
}

std::string mask_name(int m) {
  if (m == 0) return "v";
  std::string s = "v";
  for (int a = 0; a < 3; ++a)
    if (m & (1 << a)) s += std::to_string(a + 1);
  return s;
}

// Completion without the input gate.
CubeCompletion complete_cube_raw(const CubeData& d, const QuadricForm& q, const std::string& where) {
  CubeCompletion out;
  out.cube = d;
  CubeData& c = out.cube;
  for (int m = 1; m < 7; ++m) {
    if (!d.vertices[static_cast<std::size_t>(m)] || !d.vertex_planes[static_cast<std::size_t>(m)])
      throw Error(ErrorKind::InvalidInput, "cube corner " + mask_name(m) + " needs a point and a plane", where);
  }
  std::array<ProjSubspace, 3> top_planes;
  for (std::size_t i = 0; i < 3; ++i) {
    const FacePlane p = kPlanes[i];
    std::vector<Vec> pts;
    std::vector<ProjSubspace> planes;
    for (int m : cube_face_corners(p, true)) {
      if (m == 7) continue;
      pts.push_back(*d.vertices[static_cast<std::size_t>(m)]);
      planes.push_back(*d.vertex_planes[static_cast<std::size_t>(m)]);
    }
    const std::string at = where + " top " + to_string(p);
    top_planes[i] = join_points(pts, at);
    const PointMeet pm = meet_point(planes, at);
    const auto fi = static_cast<std::size_t>(cube_face_index(p, true));
    c.faces[fi] = pm.point;
    c.face_planes[fi] = top_planes[i];
    out.meet_residual = std::max(out.meet_residual, pm.residual);
  }
  std::vector<Vec> new_faces;
  for (auto p : kPlanes) new_faces.push_back(*c.faces[static_cast<std::size_t>(cube_face_index(p, true))]);
  const PointMeet top = meet_point(top_planes, where + " v123");
  out.meet_residual = std::max(out.meet_residual, top.residual);
  c.vertices[7] = top.point;
  c.vertex_planes[7] = join_points(new_faces, where + " v123");

  for (auto p : kPlanes) {
    const Vec& f = *c.faces[static_cast<std::size_t>(cube_face_index(p, true))];
    for (int m : cube_face_corners(p, true))
      out.polarity_residual = std::max(out.polarity_residual, unit_inner(q, f, *c.vertices[static_cast<std::size_t>(m)]));
  }
  return out;
}

}  // namespace

std::array<int, 4> cube_face_corners(FacePlane p, bool top) {
  const auto [a, b] = plane_axes(p);
  const int base = top ? (1 << third_axis(p)) : 0;
  return {base, base | (1 << a), base | (1 << a) | (1 << b), base | (1 << b)};
}

double cube_input_residual(const CubeData& d, const QuadricForm& q) {
  double r = 0.0;
  for (std::size_t m = 0; m < 8; ++m) {
    if (d.vertices[m] && d.vertex_planes[m]) {
      const Mat& basis = d.vertex_planes[m]->basis();
      for (Eigen::Index i = 0; i < basis.rows(); ++i)
        r = std::max(r, unit_inner(q, *d.vertices[m], basis.row(i).transpose()));
    }
  }
  for (auto p : kPlanes)
    for (bool top : {false, true}) {
      const auto fi = static_cast<std::size_t>(cube_face_index(p, top));
      if (!d.faces[fi]) continue;
      const Vec& f = *d.faces[fi];
      if (d.face_planes[fi]) {
        const Mat& basis = d.face_planes[fi]->basis();
        for (Eigen::Index i = 0; i < basis.rows(); ++i) r = std::max(r, unit_inner(q, f, basis.row(i).transpose()));
      }
      for (int m : cube_face_corners(p, top)) {
        const auto mi = static_cast<std::size_t>(m);
        if (d.vertices[mi]) r = std::max(r, unit_inner(q, f, *d.vertices[mi]));
        if (d.vertex_planes[mi]) r = std::max(r, d.vertex_planes[mi]->distance(f));
      }
    }
  return r;
}

CubeCompletion complete_polar_cube(const CubeData& d, const QuadricForm& form, double tol) {
  const double in = cube_input_residual(d, form);
  if (in > tol)
    throw Error(ErrorKind::InvalidInput, "cube data violates polarity or incidence (residual " + std::to_string(in) + ")");
  return complete_cube_raw(d, form, "cube");
}

namespace {

CubeData relabel(const CubeData& d, const std::array<int, 3>& perm) {
  CubeData out;
  for (int m = 0; m < 8; ++m) {
    int pm = 0;
    for (int a = 0; a < 3; ++a)
      if (m & (1 << a)) pm |= 1 << perm[static_cast<std::size_t>(a)];
    out.vertices[static_cast<std::size_t>(pm)] = d.vertices[static_cast<std::size_t>(m)];
    out.vertex_planes[static_cast<std::size_t>(pm)] = d.vertex_planes[static_cast<std::size_t>(m)];
  }
  for (auto p : kPlanes) {
    const auto [a, b] = plane_axes(p);
    const FacePlane pp = plane_of_axes(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
    for (bool top : {false, true}) {
      const auto from = static_cast<std::size_t>(cube_face_index(p, top));
      const auto to = static_cast<std::size_t>(cube_face_index(pp, top));
      out.faces[to] = d.faces[from];
      out.face_planes[to] = d.face_planes[from];
    }
  }
  return out;
}

}  // namespace

CubeCompletion complete_polar_cube_permuted(const CubeData& d, std::array<int, 3> perm, const QuadricForm& form,
                                            double tol) {
  std::array<int, 3> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) throw Error(ErrorKind::InvalidInput, "not a permutation of the axes");
  std::array<int, 3> inv{};
  for (int a = 0; a < 3; ++a) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])] = a;
  CubeCompletion c = complete_polar_cube(relabel(d, perm), form, tol);
  c.cube = relabel(c.cube, inv);
  return c;
}

// ---------------------------------------------------------------- generators

namespace {

// Lift of a point near `at` standing for a sphere of radius about 0.35.
Vec random_lift(Rng& rng, const Vec3& at, double jitter, bool planar) {
  Vec3 c = at + jitter * Vec3(rng.normal(), rng.normal(), planar ? 0.0 : rng.normal());
  const double r = rng.uniform(0.25, 0.45);
  return moebius_point(c, 0.5 * (c.squaredNorm() - r * r));
}

Vec to_chart(const Vec& x) {
  const double w = chart_weight(x);
  if (std::abs(w) <= 1e-12 * x.norm()) throw Error(ErrorKind::PointAtInfinity, "point on the plane at infinity of the chart");
  return x / w;
}

// b + c - a plus a small step inside the plane of the three.
Vec parallelogram(Rng& rng, const Vec& a, const Vec& b, const Vec& c, double noise) {
  const Vec pa = to_chart(a), pb = to_chart(b), pc = to_chart(c);
  return pb + pc - pa + noise * (rng.uniform(-1, 1) * (pb - pa) + rng.uniform(-1, 1) * (pc - pa));
}

// Point of the line with chart position nearest `target`; for planar data
// the point with z = 0.
Vec line_point(const ProjSubspace& line, const Vec3& target, bool planar, const std::string& where) {
  const Vec l1 = line.basis().row(0).transpose();
  const Vec l2 = line.basis().row(1).transpose();
  const double a1 = chart_weight(l1), a2 = chart_weight(l2);
  const double aa = a1 * a1 + a2 * a2;
  if (!(aa > 1e-24)) throw Error(ErrorKind::Degenerate, "polar line lies at infinity", where);
  const Vec p0 = (a1 * l1 + a2 * l2) / aa;
  const Vec d = a2 * l1 - a1 * l2;
  const Vec3 d3 = d.head<3>();
  double t;
  if (planar) {
    if (!(std::abs(d3[2]) > 1e-12)) throw Error(ErrorKind::Degenerate, "polar line parallel to the plane", where);
    t = -p0[2] / d3[2];
  } else {
    if (!(d3.squaredNorm() > 1e-24)) throw Error(ErrorKind::Degenerate, "polar line projects to a point", where);
    t = (target - p0.head<3>()).dot(d3) / d3.squaredNorm();
  }
  return p0 + t * d;
}

// Intersection of a line with the plane of three points, all inside a common
// 3-space.
Vec line_meets_plane(const ProjSubspace& line, const Vec& a, const Vec& b, const Vec& c, const std::string& where) {
  Mat m(5, 5);
  m.col(0) = unit(a);
  m.col(1) = unit(b);
  m.col(2) = unit(c);
  m.col(3) = -line.basis().row(0).transpose();
  m.col(4) = -line.basis().row(1).transpose();
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (!(s[3] > kRankTol * s[0])) throw Error(ErrorKind::Degenerate, "line and plane do not meet in a point", where);
  const Vec x = svd.matrixV().col(4);
  return x[0] * m.col(0) + x[1] * m.col(1) + x[2] * m.col(2);
}

Vec3 grid_position(const Vec3& r, bool planar) {
  if (!planar) return r;
  return {r[0] + 0.35 * r[2], r[1] + 0.55 * r[2], 0.0};
}

Vec3 cell_position(const CellId& c, bool planar) {
  Vec3 r(c.r[0], c.r[1], c.r[2]);
  if (c.is_face()) {
    const auto [a, b] = plane_axes(c.plane);
    r[a] += 0.5;
    r[b] += 0.5;
  }
  return grid_position(r, planar);
}

}  // namespace

PolarCubeSample random_polar_cube(std::uint64_t seed) {
  Rng rng(seed);
  const QuadricForm q = QuadricForm::moebius();
  CubeData t;
  auto corner = [](int m) { return CellId::vertex(m & 1, (m >> 1) & 1, (m >> 2) & 1); };
  for (int m : {0, 1, 2, 4}) t.vertices[static_cast<std::size_t>(m)] = random_lift(rng, cell_position(corner(m), false), 0.15, false);
  auto v = [&](int m) -> const Vec& { return *t.vertices[static_cast<std::size_t>(m)]; };
  t.vertices[3] = parallelogram(rng, v(0), v(1), v(2), 0.2);
  t.vertices[5] = parallelogram(rng, v(0), v(1), v(4), 0.2);
  t.vertices[6] = parallelogram(rng, v(0), v(2), v(4), 0.2);
  {
    std::vector<ProjSubspace> planes;
    for (auto p : kPlanes) {
      std::vector<Vec> pts;
      for (int m : cube_face_corners(p, true))
        if (m != 7) pts.push_back(v(m));
      planes.push_back(join_points(pts, "random cube"));
    }
    t.vertices[7] = to_chart(meet_point(planes, "random cube").point);
  }
  for (auto p : kPlanes)
    for (bool top : {false, true}) {
      const auto fi = static_cast<std::size_t>(cube_face_index(p, top));
      std::vector<Vec> pts;
      for (int m : cube_face_corners(p, top)) pts.push_back(v(m));
      const auto three = std::span<const Vec>(pts).first(3);
      t.face_planes[fi] = join_points(three, "random cube");
      CellId f = CellId::face(p, 0, 0, 0);
      if (top) f = f.shifted(third_axis(p), 1);
      const Vec3 target = cell_position(f, false) + 0.15 * Vec3(rng.normal(), rng.normal(), rng.normal());
      t.faces[fi] = line_point(polar(q, *t.face_planes[fi]), target, false, "random cube");
    }
  for (int m = 0; m < 8; ++m) {
    std::vector<Vec> pts;
    for (auto p : kPlanes)
      for (bool top : {false, true}) {
        const auto c = cube_face_corners(p, top);
        if (std::find(c.begin(), c.end(), m) != c.end()) pts.push_back(*t.faces[static_cast<std::size_t>(cube_face_index(p, top))]);
      }
    t.vertex_planes[static_cast<std::size_t>(m)] = join_points(pts, "random cube");
  }
  PolarCubeSample s{t, t};
  s.data.vertices[7].reset();
  s.data.vertex_planes[7].reset();
  for (auto p : kPlanes) {
    const auto fi = static_cast<std::size_t>(cube_face_index(p, true));
    s.data.faces[fi].reset();
    s.data.face_planes[fi].reset();
  }
  return s;
}

bool on_initial_slice(const Window& w, const CellId& c) {
  if (c.is_vertex()) return c.r[0] == w.lo(0) || c.r[1] == w.lo(1) || c.r[2] == w.lo(2);
  const int t = third_axis(c.plane);
  return c.r[static_cast<std::size_t>(t)] == w.lo(t);
}

PolarInitialData random_polar_initial_data(std::uint64_t seed, const Window& w, const Z3Options& opt) {
  if (w.dims() != 3) throw Error(ErrorKind::InvalidInput, "initial data lives on a Z^3 window");
  for (int a = 0; a < 3; ++a)
    if (w.extent(a) < 2) throw Error(ErrorKind::InvalidInput, "need at least two vertices per axis");
  Rng rng(seed);
  const QuadricForm q = QuadricForm::moebius();
  const bool planar = opt.planar;
  PolarInitialData d{HomField(w), PlaneField(w)};
  // Faces are generated one layer past hi so that every slice vertex plane is
  // spanned by faces; adjacent planes then share the line of their edge faces.
  const Window we = Window::box3({w.lo(0), w.lo(1), w.lo(2)}, {w.hi(0) + 1, w.hi(1) + 1, w.hi(2) + 1});
  HomField x(we);
  const int i0 = w.lo(0), j0 = w.lo(1), k0 = w.lo(2);

  auto free_point = [&](const CellId& c) { x.set(c, random_lift(rng, cell_position(c, planar), 0.1, planar)); };
  auto para = [&](const CellId& c, const CellId& a, const CellId& b, const CellId& e) {
    x.set(c, parallelogram(rng, x.at(a), x.at(b), x.at(e), opt.noise));
  };
  using P = FacePlane;
  // 12-faces on k = k0
  for (int j = j0; j < we.hi(1); ++j)
    for (int i = i0; i < we.hi(0); ++i) {
      const CellId f = CellId::face(P::P12, i, j, k0);
      if (i == i0 || j == j0) free_point(f);
      else para(f, f.shifted(0, -1).shifted(1, -1), f.shifted(1, -1), f.shifted(0, -1));
    }
  // 13-faces on j = j0; the row k = k0 closes quads with the 12-faces
  for (int k = k0; k < we.hi(2); ++k)
    for (int i = i0; i < we.hi(0); ++i) {
      const CellId f = CellId::face(P::P13, i, j0, k);
      if (k == k0) {
        if (i == i0) free_point(f);
        else para(f, CellId::face(P::P12, i - 1, j0, k0), CellId::face(P::P12, i, j0, k0), f.shifted(0, -1));
      } else if (i == i0) {
        free_point(f);
      } else {
        para(f, f.shifted(0, -1).shifted(2, -1), f.shifted(2, -1), f.shifted(0, -1));
      }
    }
  // 23-faces on i = i0
  for (int k = k0; k < we.hi(2); ++k)
    for (int j = j0; j < we.hi(1); ++j) {
      const CellId f = CellId::face(P::P23, i0, j, k);
      if (k == k0 && j == j0) free_point(f);
      else if (k == k0) para(f, CellId::face(P::P12, i0, j - 1, k0), CellId::face(P::P12, i0, j, k0), f.shifted(1, -1));
      else if (j == j0) para(f, CellId::face(P::P13, i0, j0, k - 1), CellId::face(P::P13, i0, j0, k), f.shifted(2, -1));
      else para(f, f.shifted(1, -1).shifted(2, -1), f.shifted(2, -1), f.shifted(1, -1));
    }

  // vertex planes: span of the incident slice faces
  for (const auto& v : w.vertices()) {
    if (!on_initial_slice(w, v)) continue;
    std::vector<Vec> pts;
    for (const auto& f : incident_cells(we, v).cells)
      if (x.has(f)) pts.push_back(unit(x.at(f)));
    Mat m(static_cast<Eigen::Index>(pts.size()), 5);
    for (std::size_t i = 0; i < pts.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
    const ProjSubspace plane = ProjSubspace::span(m, 1e-8);
    if (plane.dim() != 2) throw Error(ErrorKind::Degenerate, "incident initial faces do not span a plane", v.str());
    d.planes.set(v, plane);
  }

  // vertex points on the polar lines: free on the axes, then closing quads
  auto on_line = [&](const CellId& v) {
    const Vec3 target = cell_position(v, planar) + 0.1 * Vec3(rng.normal(), rng.normal(), planar ? 0.0 : rng.normal());
    x.set(v, line_point(polar(q, d.planes.at(v)), target, planar, v.str()));
  };
  auto close = [&](const CellId& v, int a, int b) {
    const CellId p = v.shifted(a, -1).shifted(b, -1);
    x.set(v, line_meets_plane(polar(q, d.planes.at(v)), x.at(p), x.at(v.shifted(b, -1)), x.at(v.shifted(a, -1)), v.str()));
  };
  for (const auto& v : w.vertices()) {
    const int at_lo = (v.r[0] == i0) + (v.r[1] == j0) + (v.r[2] == k0);
    if (at_lo >= 2) on_line(v);
  }
  for (const auto& v : w.vertices()) {
    const bool ci = v.r[0] == i0, cj = v.r[1] == j0, ck = v.r[2] == k0;
    if (ci + cj + ck != 1) continue;
    if (ck) close(v, 0, 1);
    else if (cj) close(v, 0, 2);
    else close(v, 1, 2);
  }
  x.for_each([&](const CellId& c, const Vec& p) {
    if (w.contains(c)) d.points.set(c, p);
  });
  return d;
}

// ---------------------------------------------------------------- Z^3 sweep

PolarBinet3D complete_polar_z3(const PolarInitialData& d, const QuadricForm& form, std::array<int, 3> priority) {
  const Window& w = d.points.window();
  if (w.dims() != 3) throw Error(ErrorKind::InvalidInput, "cube completion needs a Z^3 window");
  std::array<int, 3> sorted = priority;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) throw Error(ErrorKind::InvalidInput, "axis priority is not a permutation");

  PolarBinet3D out{HomField(w), PlaneField(w), PlaneField(w)};
  for (const auto& c : w.cells()) {
    if (!on_initial_slice(w, c)) continue;
    if (!d.points.has(c)) throw Error(ErrorKind::InvalidInput, "initial data missing", c.str());
    out.points.set(c, d.points.at(c));
    if (c.is_vertex()) {
      if (!d.planes.has(c)) throw Error(ErrorKind::InvalidInput, "initial vertex plane missing", c.str());
      out.vertex_planes.set(c, d.planes.at(c));
    }
  }
  for (const auto& f : w.faces()) {
    if (!on_initial_slice(w, f)) continue;
    const auto corners = face_vertices(f);
    std::vector<Vec> pts{out.points.at(corners[0]), out.points.at(corners[1]), out.points.at(corners[3])};
    out.face_planes.set(f, join_points(pts, f.str()));
  }

  const auto s0 = static_cast<std::size_t>(priority[0]);
  const auto s1 = static_cast<std::size_t>(priority[1]);
  const auto s2 = static_cast<std::size_t>(priority[2]);
  std::array<int, 3> r{};
  for (r[s0] = w.lo(priority[0]); r[s0] < w.hi(priority[0]); ++r[s0])
    for (r[s1] = w.lo(priority[1]); r[s1] < w.hi(priority[1]); ++r[s1])
      for (r[s2] = w.lo(priority[2]); r[s2] < w.hi(priority[2]); ++r[s2]) {
        const CellId base = CellId::vertex(r[0], r[1], r[2]);
        auto corner = [&](int m) { return CellId::vertex(r[0] + (m & 1), r[1] + ((m >> 1) & 1), r[2] + ((m >> 2) & 1)); };
        auto face = [&](FacePlane p, bool top) {
          CellId f = CellId::face(p, r[0], r[1], r[2]);
          return top ? f.shifted(third_axis(p), 1) : f;
        };
        CubeData cube;
        for (int m = 0; m < 7; ++m) {
          const CellId v = corner(m);
          cube.vertices[static_cast<std::size_t>(m)] = out.points.get(v);
          cube.vertex_planes[static_cast<std::size_t>(m)] = out.vertex_planes.get(v);
        }
        const std::string where = "cube " + base.str();
        const CubeCompletion done = complete_cube_raw(cube, form, where);
        for (auto p : kPlanes) {
          const auto fi = static_cast<std::size_t>(cube_face_index(p, true));
          out.points.set(face(p, true), *done.cube.faces[fi]);
          out.face_planes.set(face(p, true), *done.cube.face_planes[fi]);
        }
        out.points.set(corner(7), *done.cube.vertices[7]);
        out.vertex_planes.set(corner(7), *done.cube.vertex_planes[7]);
        out.max_polarity_residual = std::max(out.max_polarity_residual, done.polarity_residual);
        out.max_meet_residual = std::max(out.max_meet_residual, done.meet_residual);
        ++out.cubes;
      }
  return out;
}

// ---------------------------------------------------------------- Euclidean

Plane project_plane(const ProjSubspace& s) {
  if (s.dim() != 2 || s.ambient_dim() != 4) throw Error(ErrorKind::DimensionMismatch, "expected a plane of RP^4");
  Mat m(3, 4);
  for (Eigen::Index i = 0; i < 3; ++i) {
    const Vec x = s.basis().row(i).transpose();
    m.row(i) << x[0], x[1], x[2], chart_weight(x);
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv[2] > kRankTol * sv[0])) throw Error(ErrorKind::Degenerate, "plane contains the centre of projection");
  const Eigen::Vector4d e = svd.matrixV().col(3);
  const Vec3 n = e.head<3>();
  const double len = n.norm();
  if (!(len > 1e-12)) throw Error(ErrorKind::PointAtInfinity, "plane projects to the plane at infinity");
  return {n / len, e[3] / len};
}

Z3InitialData project_initial_data(const PolarInitialData& d) {
  const Window& w = d.points.window();
  Z3InitialData out{Binet(w), BiStarNet(w)};
  d.points.for_each([&](const CellId& c, const Vec& x) { out.points.set(c, project_moebius(x)); });
  d.planes.for_each([&](const CellId& c, const ProjSubspace& s) { out.planes.set(c, project_plane(s)); });
  return out;
}

Z3Extension extend_principal_to_z3(const Z3InitialData& d, double rho0, double tol, std::array<int, 3> priority) {
  const Window& w = d.points.window();
  if (w.dims() != 3) throw Error(ErrorKind::InvalidInput, "extension needs a Z^3 window");
  for (const auto& c : w.cells())
    if (on_initial_slice(w, c) && !d.points.has(c)) throw Error(ErrorKind::InvalidInput, "initial data missing", c.str());

  const CheckReport conj = check_conjugate(d.points, tol);
  if (!conj.passed) throw Error(ErrorKind::NotConjugate, "initial slices are not conjugate", conj.worst ? conj.worst->label : "");
  const AdditivePotential pot = solve_additive_potential(d.points, rho0);
  if (pot.max_cycle_residual > tol) {
    const Cross& c = *pot.worst;
    throw Error(ErrorKind::NotOrthogonal, "initial slices are not orthogonal (cycle residual " + std::to_string(pot.max_cycle_residual) + ")",
                c.v.str() + "-" + c.v2.str() + "|" + c.f.str() + "-" + c.f2.str());
  }
  const QuadricForm q = QuadricForm::moebius();
  PolarInitialData lifted{HomField(w), PlaneField(w)};
  d.points.for_each([&](const CellId& c, const Vec3& p) { lifted.points.set(c, moebius_point(p, pot.rho.at(c))); });
  for (const auto& v : w.vertices()) {
    if (!on_initial_slice(w, v)) continue;
    if (!d.planes.has(v)) throw Error(ErrorKind::InvalidInput, "initial vertex plane missing", v.str());
    const Plane& e = d.planes.at(v);
    // the plane carries the faces around v, not v itself
    for (const auto& f : incident_cells(w, v).cells)
      if (d.points.has(f) && std::abs(e.signed_distance(d.points.at(f))) > std::max(tol, 1e-9) * std::max(1.0, pot.scale))
        throw Error(ErrorKind::InvalidInput, "vertex plane misses an incident face", v.str() + "|" + f.str());
    Mat eq(2, 5);
    eq.row(0) << e.normal[0], e.normal[1], e.normal[2], -e.offset, e.offset;
    eq.row(1) = (q.gram() * lifted.points.at(v)).transpose();
    lifted.planes.set(v, ProjSubspace::kernel(eq, 4));
  }
  const PolarBinet3D full = complete_polar_z3(lifted, q, priority);
  Z3Extension out{Binet(w), full.points, full.vertex_planes};
  out.initial_cycle_residual = pot.max_cycle_residual;
  out.max_polarity_residual = full.max_polarity_residual;
  out.max_meet_residual = full.max_meet_residual;
  full.points.for_each([&](const CellId& c, const Vec& x) {
    try {
      out.binet.set(c, project_moebius(x));
    } catch (const Error& e) {
      throw Error(e.kind(), e.what(), c.str());
    }
  });
  return out;
}

// ---------------------------------------------------------------- face-nets

CheckReport check_facenet(const HomField& faces, double tol) {
  CheckReport r;
  r.check = "facenet";
  r.tolerance = tol;
  const Window& w = faces.window();
  for (const auto& v : w.vertices()) {
    const Neighborhood nb = incident_cells(w, v);
    if (nb.truncated) continue;
    if (!std::all_of(nb.cells.begin(), nb.cells.end(), [&](const CellId& f) { return faces.has(f); })) continue;
    Mat m(static_cast<Eigen::Index>(nb.cells.size()), faces.at(nb.cells[0]).size());
    for (std::size_t i = 0; i < nb.cells.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = unit(faces.at(nb.cells[i])).transpose();
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    ResidualEntry e{v, v.str(), s.size() > 3 ? s[3] / s[0] : 0.0, s[2] / s[0] <= kRankTol};
    r.add(std::move(e));
  }
  r.finish();
  return r;
}

namespace {

struct Focal {
  Vec point;
  double skewness;
};

Focal line_meet(const Vec& a, const Vec& b, const Vec& c, const Vec& e, const std::string& where) {
  Mat m(a.size(), 4);
  m.col(0) = unit(a);
  m.col(1) = unit(b);
  m.col(2) = -unit(c);
  m.col(3) = -unit(e);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (!(s[2] > kRankTol * s[0])) throw Error(ErrorKind::Degenerate, "focal lines coincide or collapse", where);
  const Eigen::Vector4d x = svd.matrixV().col(3);
  return {x[0] * m.col(0) + x[1] * m.col(1), s[3] / s[0]};
}

}  // namespace

FaceNetCompletion facenet_completion(const HomField& g, double tol) {
  const Window& w = g.window();
  if (w.dims() != 3) throw Error(ErrorKind::InvalidInput, "face-nets live on Z^3 windows");
  FaceNetCompletion out{HomField(w)};
  for (const auto& f : w.faces()) {
    if (f.plane == FacePlane::P12) {
      if (g.has(f)) out.faces.set(f, g.at(f));
      continue;
    }
    // 13-faces use the 2-direction of g, 23-faces the 1-direction
    const int a = f.plane == FacePlane::P13 ? 1 : 0;
    const CellId s = CellId::face(FacePlane::P12, f.r[0], f.r[1], f.r[2]);
    const std::array<CellId, 4> need{s.shifted(a, -1), s, s.shifted(a, -1).shifted(2, 1), s.shifted(2, 1)};
    if (!std::all_of(need.begin(), need.end(), [&](const CellId& c) { return g.has(c); })) continue;
    const Focal p = line_meet(g.at(need[0]), g.at(need[1]), g.at(need[2]), g.at(need[3]), f.str());
    if (p.skewness > tol)
      throw Error(ErrorKind::NotConjugate, "focal lines are skew (residual " + std::to_string(p.skewness) + ")", f.str());
    out.max_skewness = std::max(out.max_skewness, p.skewness);
    out.faces.set(f, p.point);
  }
  return out;
}

EuclideanFaceNet facenet_completion(const Binet& g, double tol) {
  HomField h(g.window());
  g.for_each([&](const CellId& c, const Vec3& p) {
    Vec x(4);
    x << p, 1.0;
    h.set(c, x);
  });
  const FaceNetCompletion hc = facenet_completion(h, tol);
  EuclideanFaceNet out{Binet(g.window()), hc.max_skewness};
  hc.faces.for_each([&](const CellId& c, const Vec& x) {
    if (std::abs(x[3]) <= 1e-12 * x.norm()) {
      ++out.at_infinity;
      return;
    }
    out.faces.set(c, Vec3(x.head<3>() / x[3]));
  });
  return out;
}

Binet restrict_to_pair(const Binet& b) {
  Binet out(b.window());
  b.for_each([&](const CellId& c, const Vec3& p) {
    if (c.is_vertex() || c.plane == FacePlane::P12) out.set(c, p);
  });
  return out;
}

Binet pair_from_nets(const Binet& g, const Binet& h) {
  const Window& w = g.window();
  if (w.dims() != 3) throw Error(ErrorKind::InvalidInput, "pairs live on Z^3 windows");
  const Window hw = Window::box3({w.lo(0), w.lo(1), w.lo(2)}, {w.hi(0) - 1, w.hi(1) - 1, w.hi(2)});
  if (!(h.window() == hw)) throw Error(ErrorKind::DimensionMismatch, "h must live on the 12-face range of g's window");
  Binet out(w);
  g.for_each([&](const CellId& c, const Vec3& p) {
    if (c.is_vertex()) out.set(c, p);
  });
  h.for_each([&](const CellId& c, const Vec3& p) {
    if (c.is_vertex()) out.set(CellId::face(FacePlane::P12, c.r[0], c.r[1], c.r[2]), p);
  });
  return out;
}

SymmetricCompletion check_symmetric_completion(const Binet& pair, double tol) {
  const Window& w = pair.window();
  if (w.dims() != 3 || w.extent(0) < 3 || w.extent(1) < 3)
    throw Error(ErrorKind::InvalidInput, "symmetric completion needs a Z^3 window with at least three vertices along axes 1 and 2");
  SymmetricCompletion out;

  out.c = Binet(w);
  Binet g12(w);
  pair.for_each([&](const CellId& c, const Vec3& p) {
    if (c.is_vertex()) out.c.set(c, p);
    else if (c.plane == FacePlane::P12) g12.set(c, p);
  });
  facenet_completion(g12, tol).faces.for_each([&](const CellId& c, const Vec3& p) { out.c.set(c, p); });

  const Window wp = Window::box3({w.lo(0), w.lo(1), w.lo(2)}, {w.hi(0) - 1, w.hi(1) - 1, w.hi(2)});
  out.c_prime = Binet(wp);
  Binet gp(wp);
  for (const auto& v : wp.vertices()) {
    const CellId f = CellId::face(FacePlane::P12, v.r[0], v.r[1], v.r[2]);
    if (pair.has(f)) out.c_prime.set(v, pair.at(f));
  }
  for (const auto& f : wp.faces()) {
    if (f.plane != FacePlane::P12) continue;
    const CellId v = CellId::vertex(f.r[0] + 1, f.r[1] + 1, f.r[2]);
    if (pair.has(v)) gp.set(f, pair.at(v));
  }
  facenet_completion(gp, tol).faces.for_each([&](const CellId& c, const Vec3& p) { out.c_prime.set(c, p); });

  out.c_report = check_principal(out.c, tol);
  out.c_prime_report = check_principal(out.c_prime, tol);
  return out;
}

}  // namespace binets
