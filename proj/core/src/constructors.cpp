#include "binets/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "binets/random.hpp"

namespace binets {

Window padded(const Window& w, int by) {
  if (w.dims() == 2) return Window::box({w.lo(0) - by, w.lo(1) - by}, {w.hi(0) + by, w.hi(1) + by});
  return Window::box3({w.lo(0) - by, w.lo(1) - by, w.lo(2) - by}, {w.hi(0) + by, w.hi(1) + by, w.hi(2) + by});
}

namespace {

struct StepGeometry {
  CellId target;
  Vec3 p00, p10, p01;
  Vec3 n1, n2;  // normals of the two orthogonality planes
  double c1, c2;  // <n1, x> = c1, <n2, x> = c2
  Plane conj;
  double scale;
};

void validate(const CauchyData& d) {
  const Window& w = d.window;
  if (w.dims() != 2) throw Error(ErrorKind::InvalidInput, "propagation runs on Z^2 windows");
  if (!(d.data.window() == padded(w))) throw Error(ErrorKind::InvalidInput, "Cauchy data must live on the window grown by one");
  for (const auto& f : d.data.window().faces())
    if (!d.data.has(f)) throw Error(ErrorKind::InvalidInput, "missing face value", f.str());
  const auto [oi, oj] = d.origin;
  if (oi < w.lo(0) || oi > w.hi(0) || oj < w.lo(1) || oj > w.hi(1))
    throw Error(ErrorKind::InvalidInput, "axis origin outside window", "origin");
  for (int i = w.lo(0); i <= w.hi(0); ++i)
    if (!d.data.has(CellId::vertex(i, oj))) throw Error(ErrorKind::InvalidInput, "missing axis vertex", CellId::vertex(i, oj).str());
  for (int j = w.lo(1); j <= w.hi(1); ++j)
    if (!d.data.has(CellId::vertex(oi, j))) throw Error(ErrorKind::InvalidInput, "missing axis vertex", CellId::vertex(oi, j).str());
}

// Visit every off-axis vertex after its three predecessors.
template <class F>
void sweep(const CauchyData& d, SweepOrder order, F&& step) {
  const Window& w = d.window;
  const auto [oi, oj] = d.origin;
  for (int si : {1, -1})
    for (int sj : {1, -1}) {
      const int ni = si > 0 ? w.hi(0) - oi : oi - w.lo(0);
      const int nj = sj > 0 ? w.hi(1) - oj : oj - w.lo(1);
      const int outer = order == SweepOrder::RowMajor ? nj : ni;
      const int inner = order == SweepOrder::RowMajor ? ni : nj;
      for (int a = 1; a <= outer; ++a)
        for (int b = 1; b <= inner; ++b) {
          const int di = order == SweepOrder::RowMajor ? b : a;
          const int dj = order == SweepOrder::RowMajor ? a : b;
          step(oi + si * di, oj + sj * dj, si, sj);
        }
    }
}

StepGeometry step_geometry(const Binet& b, int i, int j, int si, int sj) {
  StepGeometry g;
  g.target = CellId::vertex(i, j);
  g.p00 = b.at(CellId::vertex(i - si, j - sj));
  g.p10 = b.at(CellId::vertex(i, j - sj));
  g.p01 = b.at(CellId::vertex(i - si, j));
  const int im = std::min(i, i - si);
  const int jm = std::min(j, j - sj);
  // edge (i, j-sj)-(i, j) has dual faces F(i-1, jm), F(i, jm)
  g.n1 = b.at(CellId::face(i, jm)) - b.at(CellId::face(i - 1, jm));
  // edge (i-si, j)-(i, j) has dual faces F(im, j-1), F(im, j)
  g.n2 = b.at(CellId::face(im, j)) - b.at(CellId::face(im, j - 1));
  g.c1 = g.n1.dot(g.p10);
  g.c2 = g.n2.dot(g.p01);
  const Vec3 cn = (g.p10 - g.p00).cross(g.p01 - g.p00);
  if (!(cn.norm() > 1e-14 * (g.p10 - g.p00).norm() * (g.p01 - g.p00).norm()))
    throw Error(ErrorKind::Degenerate, "predecessors are collinear", g.target.str());
  g.conj = Plane::through(g.p00, cn);
  g.scale = 0.5 * ((g.p10 - g.p00).norm() + (g.p01 - g.p00).norm());
  if (g.n1.norm() == 0.0 || g.n2.norm() == 0.0) throw Error(ErrorKind::Regularity, "zero length dual edge", g.target.str());
  return g;
}

Binet start_from(const CauchyData& d) {
  Binet out(d.window);
  for (const auto& c : d.window.cells())
    if (d.data.has(c)) out.set(c, d.data.at(c));
  return out;
}

// The working binet needs the padding faces too.
Binet working_copy(const CauchyData& d) { return d.data; }

}  // namespace

Binet propagate_principal(const CauchyData& d, SweepOrder order) {
  validate(d);
  Binet work = working_copy(d);
  sweep(d, order, [&](int i, int j, int si, int sj) {
    const StepGeometry g = step_geometry(work, i, j, si, sj);
    Eigen::Matrix3d a;
    Eigen::Vector3d rhs;
    a.row(0) = g.conj.normal.transpose();
    rhs[0] = -g.conj.offset;
    a.row(1) = g.n1.normalized().transpose();
    rhs[1] = g.c1 / g.n1.norm();
    a.row(2) = g.n2.normalized().transpose();
    rhs[2] = g.c2 / g.n2.norm();
    if (std::abs(a.determinant()) < 1e-10) throw Error(ErrorKind::Degenerate, "the three planes do not meet in a point", g.target.str());
    work.set(g.target, a.fullPivLu().solve(rhs));
  });
  Binet out = start_from(d);
  for (const auto& v : d.window.vertices()) out.set(v, work.at(v));
  return out;
}

double conjugate_freedom(const OrthogonalStep& s) {
  const double denom = s.conjugacy_plane.normal.dot(s.line.direction);
  if (std::abs(denom) < 1e-14) throw Error(ErrorKind::Degenerate, "line parallel to the conjugacy plane", s.vertex.str());
  const double t = -s.conjugacy_plane.signed_distance(s.line.point) / denom;
  return std::atan(t / s.scale) / std::numbers::pi + 0.5;
}

Binet propagate_orthogonal(const CauchyData& d, const FreedomFn& freedom, SweepOrder order) {
  validate(d);
  Binet work = working_copy(d);
  sweep(d, order, [&](int i, int j, int si, int sj) {
    const StepGeometry g = step_geometry(work, i, j, si, sj);
    Vec3 dir = g.n1.cross(g.n2);
    if (dir.norm() < 1e-12 * g.n1.norm() * g.n2.norm())
      throw Error(ErrorKind::Degenerate, "orthogonality planes are parallel", g.target.str());
    dir = HomVector(dir.normalized()).coords();
    // point of the line nearest to the centroid
    const Vec3 centroid = (g.p00 + g.p10 + g.p01) / 3.0;
    Eigen::Matrix<double, 2, 3> n;
    n.row(0) = g.n1.transpose();
    n.row(1) = g.n2.transpose();
    const Eigen::Vector2d c(g.c1, g.c2);
    const Vec3 origin = centroid + n.transpose() * (n * n.transpose()).ldlt().solve(c - n * centroid);
    OrthogonalStep s{g.target, Line{origin, dir}, g.conj, g.scale};
    const double f = freedom(s);
    if (!(f > 0.0 && f < 1.0)) throw Error(ErrorKind::InvalidInput, "freedom must lie in (0, 1)", g.target.str());
    work.set(g.target, origin + g.scale * std::tan(std::numbers::pi * (f - 0.5)) * dir);
  });
  Binet out = start_from(d);
  for (const auto& v : d.window.vertices()) out.set(v, work.at(v));
  return out;
}

Binet propagate_orthogonal(const CauchyData& d, const CellField<double>& freedom, SweepOrder order) {
  return propagate_orthogonal(
      d, [&](const OrthogonalStep& s) { return freedom.get(s.vertex).value_or(0.5); }, order);
}

namespace {

struct AffineGrid {
  Vec3 c, a1, a2, a3;
  Vec3 at(int i, int j, int k = 0) const { return c + i * a1 + j * a2 + k * a3; }
};

AffineGrid random_affine(Rng& rng) {
  AffineGrid g;
  g.c = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
  // random orthonormal frame, mildly sheared and scaled
  const Vec3 n = rng.unit_vector();
  Vec3 t = n.unitOrthogonal();
  Vec3 s = n.cross(t);
  g.a1 = rng.uniform(0.8, 1.2) * (t + 0.2 * rng.uniform(-1, 1) * s);
  g.a2 = rng.uniform(0.8, 1.2) * (s + 0.2 * rng.uniform(-1, 1) * t);
  g.a3 = rng.uniform(0.8, 1.2) * (n + 0.2 * rng.uniform(-1, 1) * (s + t));
  return g;
}

Vec3 random_offset(Rng& rng, double noise) { return noise * Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)); }

}  // namespace

Binet generate_conjugate_net(std::uint64_t seed, const Window& w, double noise) {
  if (w.dims() != 2) throw Error(ErrorKind::InvalidInput, "expected a Z^2 window");
  Rng rng(seed);
  const AffineGrid g = random_affine(rng);
  Binet net(w);
  const int i0 = w.lo(0), j0 = w.lo(1);
  for (int j = w.lo(1); j <= w.hi(1); ++j)
    for (int i = w.lo(0); i <= w.hi(0); ++i) {
      const CellId v = CellId::vertex(i, j);
      if (i == i0 || j == j0) {
        net.set(v, g.at(i - i0, j - j0) + random_offset(rng, noise));
        continue;
      }
      const Vec3 p00 = net.at(CellId::vertex(i - 1, j - 1));
      const Vec3 p10 = net.at(CellId::vertex(i, j - 1));
      const Vec3 p01 = net.at(CellId::vertex(i - 1, j));
      const double al = 0.5 * noise * rng.uniform(-1, 1);
      const double be = 0.5 * noise * rng.uniform(-1, 1);
      net.set(v, p10 + p01 - p00 + al * (p10 - p00) + be * (p01 - p00));
    }
  return net;
}

Binet generate_conjugate_net_3d(std::uint64_t seed, const Window& w, double noise) {
  if (w.dims() != 3) throw Error(ErrorKind::InvalidInput, "expected a Z^3 window");
  Rng rng(seed);
  const AffineGrid g = random_affine(rng);
  Binet net(w);
  const std::array<int, 3> lo{w.lo(0), w.lo(1), w.lo(2)};
  for (const auto& v : w.vertices()) {
    std::vector<int> free_axes;
    for (int a = 0; a < 3; ++a)
      if (v.r[static_cast<std::size_t>(a)] > lo[static_cast<std::size_t>(a)]) free_axes.push_back(a);
    auto at = [&](std::initializer_list<int> back) {
      CellId c = v;
      for (int a : back) c = c.shifted(a, -1);
      return net.at(c);
    };
    if (free_axes.size() <= 1) {
      net.set(v, g.at(v.r[0] - lo[0], v.r[1] - lo[1], v.r[2] - lo[2]) + random_offset(rng, noise));
    } else if (free_axes.size() == 2) {
      const int a = free_axes[0], b = free_axes[1];
      const Vec3 p00 = at({a, b}), p10 = at({b}), p01 = at({a});
      const double al = 0.5 * noise * rng.uniform(-1, 1);
      const double be = 0.5 * noise * rng.uniform(-1, 1);
      net.set(v, p10 + p01 - p00 + al * (p10 - p00) + be * (p01 - p00));
    } else {
      // x123 on the planes (x1, x12, x13), (x2, x12, x23), (x3, x13, x23)
      const Vec3 x1 = at({1, 2}), x2 = at({0, 2}), x3 = at({0, 1});
      const Vec3 x12 = at({2}), x13 = at({1}), x23 = at({0});
      std::array<Plane, 3> planes;
      const std::array<std::array<Vec3, 3>, 3> tri{{{x1, x12, x13}, {x2, x12, x23}, {x3, x13, x23}}};
      for (std::size_t t = 0; t < 3; ++t) {
        auto p = plane_through(tri[t][0], tri[t][1], tri[t][2]);
        if (!p) throw Error(ErrorKind::Degenerate, "collinear cube face", v.str());
        planes[t] = *p;
      }
      net.set(v, meet_planes(planes).point);
    }
  }
  return net;
}

Binet faces_from_net(const Binet& net) {
  const Window& w = net.window();
  if (w.dims() != 2) throw Error(ErrorKind::InvalidInput, "expected a Z^2 net");
  Binet out(Window::box({w.lo(0), w.lo(1)}, {w.hi(0) + 1, w.hi(1) + 1}));
  net.for_each([&](const CellId& c, const Vec3& p) {
    if (c.is_vertex()) out.set(CellId::face(c.r[0], c.r[1]), p);
  });
  return out;
}

CauchyData random_cauchy_data(std::uint64_t seed, int m, int n, double noise) {
  CauchyData d;
  d.window = Window::grid(m, n);
  d.origin = {0, 0};
  const Window pad = padded(d.window);
  // faces of the padded window are F(i, j) for i, j in [-1, m-1] x [-1, n-1]
  const Binet net = generate_conjugate_net(seed, Window::box({-1, -1}, {m - 1, n - 1}), noise);
  d.data = Binet(pad);
  net.for_each([&](const CellId& c, const Vec3& p) { d.data.set(CellId::face(c.r[0], c.r[1]), p); });
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto centroid = [&](int i, int j) {
    return 0.25 * (d.data.at(CellId::face(i - 1, j - 1)) + d.data.at(CellId::face(i, j - 1)) +
                   d.data.at(CellId::face(i - 1, j)) + d.data.at(CellId::face(i, j)));
  };
  for (int i = 0; i < m; ++i) d.data.set(CellId::vertex(i, 0), centroid(i, 0) + random_offset(rng, noise));
  for (int j = 1; j < n; ++j) d.data.set(CellId::vertex(0, j), centroid(0, j) + random_offset(rng, noise));
  return d;
}

Binet random_principal_binet(std::uint64_t seed, int m, int n, double noise) {
  return propagate_principal(random_cauchy_data(seed, m, n, noise));
}

Binet generate_revolution_circular(const ProfileCurve& p) {
  if (p.r.size() != p.z.size() || p.r.size() < 2 || p.count < 2)
    throw Error(ErrorKind::InvalidInput, "profile needs matching r and z with at least two samples");
  const int samples = static_cast<int>(p.r.size());
  Binet g(Window::grid(p.count, samples));
  for (int j = 0; j < samples; ++j)
    for (int i = 0; i < p.count; ++i) {
      const double t = p.angle_offset + i * p.angular_step;
      const auto js = static_cast<std::size_t>(j);
      g.set(CellId::vertex(i, j), Vec3(p.r[js] * std::cos(t), p.r[js] * std::sin(t), p.z[js]));
    }
  return g;
}

Binet revolution_principal_binet(const ProfileCurve& p, const std::vector<double>& fr, const std::vector<double>& fz) {
  Binet b = generate_revolution_circular(p);
  if (fr.size() + 1 != p.r.size() || fz.size() != fr.size())
    throw Error(ErrorKind::InvalidInput, "face profile needs one sample fewer than the vertex profile");
  for (const auto& f : b.window().faces()) {
    const double t = p.angle_offset + (f.r[0] + 0.5) * p.angular_step;
    const auto js = static_cast<std::size_t>(f.r[1]);
    b.set(f, Vec3(fr[js] * std::cos(t), fr[js] * std::sin(t), fz[js]));
  }
  return b;
}

CircleFit circumcircle_checked(std::span<const Vec3> points, double tol) {
  CircleFit fit = circumcircle(points);
  if (fit.residual > tol) throw Error(ErrorKind::NotCircular, "points are not concyclic (residual " + std::to_string(fit.residual) + ")");
  return fit;
}

namespace {

using Affine = Eigen::Matrix4d;

Affine reflection_matrix(const Plane& m) {
  Affine r = Affine::Identity();
  r.topLeftCorner<3, 3>() -= 2.0 * m.normal * m.normal.transpose();
  r.topRightCorner<3, 1>() = -2.0 * m.offset * m.normal;
  return r;
}

// Deviation from the identity of the composed reflections around each face.
double closure_residual(const Window& w, const std::function<Plane(const CellId&, const CellId&)>& mirror,
                        const std::function<double(const CellId&)>& scale) {
  double worst = 0.0;
  for (const auto& f : w.faces()) {
    const auto c = face_vertices(f);
    Affine m = Affine::Identity();
    for (std::size_t e = 0; e < 4; ++e) m = reflection_matrix(mirror(c[e], c[(e + 1) % 4])) * m;
    const Affine d = m - Affine::Identity();
    worst = std::max({worst, d.topLeftCorner<3, 3>().cwiseAbs().maxCoeff(),
                      d.topRightCorner<3, 1>().cwiseAbs().maxCoeff() / scale(f)});
  }
  return worst;
}

// Breadth first over vertex edges from the lowest vertex.
std::vector<CellEdge> vertex_tree(const Window& w) {
  std::vector<CellEdge> out;
  std::vector<char> seen(w.vertex_count(), 0);
  const CellId root = w.cell(0);
  std::deque<CellId> q{root};
  seen[0] = 1;
  while (!q.empty()) {
    const CellId v = q.front();
    q.pop_front();
    for (int a = 0; a < w.dims(); ++a)
      for (int s : {1, -1}) {
        const CellId u = v.shifted(a, s);
        if (!w.contains(u) || seen[w.index(u)]) continue;
        seen[w.index(u)] = 1;
        out.emplace_back(v, u);
        q.push_back(u);
      }
  }
  return out;
}

void require_vertex_net(const Window& w, const std::function<bool(const CellId&)>& has) {
  if (w.dims() != 2) throw Error(ErrorKind::InvalidInput, "reflection constructions run on Z^2 windows");
  for (const auto& v : w.vertices())
    if (!has(v)) throw Error(ErrorKind::InvalidInput, "missing vertex value", v.str());
}

}  // namespace

ConicalNet reflection_conical_from_circular(const Binet& g, const Plane& h0, double tol) {
  const Window& w = g.window();
  require_vertex_net(w, [&](const CellId& c) { return g.has(c); });
  auto mirror = [&](const CellId& a, const CellId& b) {
    const Vec3 d = g.at(b) - g.at(a);
    if (!(d.norm() > 0)) throw Error(ErrorKind::Regularity, "coincident vertices", a.str() + "-" + b.str());
    return Plane::through(0.5 * (g.at(a) + g.at(b)), d);
  };
  ConicalNet out;
  out.planes = BiStarNet(w);
  if (!(h0.normal.norm() > 0)) throw Error(ErrorKind::InvalidInput, "initial plane has zero normal", "h0");
  out.planes.set(w.cell(0), Plane{h0.normal.normalized(), h0.offset / h0.normal.norm()});
  for (const auto& [a, b] : vertex_tree(w)) out.planes.set(b, out.planes.at(a).reflected(mirror(a, b)));
  out.closure_residual = closure_residual(w, mirror, [&](const CellId& f) {
    const auto c = face_vertices(f);
    return 0.5 * ((g.at(c[1]) - g.at(c[0])).norm() + (g.at(c[3]) - g.at(c[0])).norm());
  });
  if (out.closure_residual > tol)
    throw Error(ErrorKind::NotCircular, "reflections around a face do not close (residual " + std::to_string(out.closure_residual) + ")");
  for (const auto& f : w.faces()) {
    std::vector<Plane> ps;
    for (const auto& v : face_vertices(f)) ps.push_back(out.planes.at(v));
    if (meet_planes(ps).condition <= kRankTol) out.degenerate = true;
  }
  return out;
}

CircularNet reflection_circular_from_conical(const BiStarNet& h, const Vec3& g0, double tol) {
  const Window& w = h.window();
  require_vertex_net(w, [&](const CellId& c) { return h.has(c); });
  auto mirror = [&](const CellId& a, const CellId& b) {
    const Plane& p = h.at(a);
    const Plane& q = h.at(b);
    const Vec3 d = p.normal - q.normal;
    const double n = d.norm();
    if (n < 1e-12) throw Error(ErrorKind::Regularity, "parallel equally oriented planes", a.str() + "-" + b.str());
    return Plane{d / n, (p.offset - q.offset) / n};
  };
  CircularNet out;
  out.points = Binet(w);
  out.points.set(w.cell(0), g0);
  for (const auto& [a, b] : vertex_tree(w)) out.points.set(b, reflect(mirror(a, b), out.points.at(a)));
  out.closure_residual = closure_residual(w, mirror, [&](const CellId& f) {
    double s = 0.0;
    for (const auto& v : face_vertices(f)) s = std::max(s, (out.points.at(v) - g0).norm());
    return std::max(s, 1.0);
  });
  if (out.closure_residual > tol)
    throw Error(ErrorKind::NotCircular, "reflections around a face do not close (residual " + std::to_string(out.closure_residual) + ")");
  return out;
}

CircularConical circular_conical_binet(const Binet& g, const Plane& h0, double tol) {
  const ConicalNet h = reflection_conical_from_circular(g, h0, tol);
  if (h.degenerate) throw Error(ErrorKind::Degenerate, "conical net has faces whose planes do not meet in a point");
  CircularConical out;
  out.closure_residual = h.closure_residual;
  out.binet = Binet(g.window());
  out.planes = BiStarNet(g.window());
  for (const auto& v : g.window().vertices()) {
    out.binet.set(v, g.at(v));
    out.planes.set(v, h.planes.at(v));
  }
  for (const auto& f : g.window().faces()) {
    std::vector<Plane> ps;
    std::vector<Vec3> pts;
    for (const auto& v : face_vertices(f)) {
      ps.push_back(h.planes.at(v));
      pts.push_back(g.at(v));
    }
    out.binet.set(f, meet_planes(ps).point);
    out.planes.set(f, fit_plane(pts));
  }
  orient_coherently(out.planes);
  return out;
}

ProfileCurve cylinder_profile(int samples, int count, double height_step, double angular_step) {
  ProfileCurve p;
  p.count = count;
  p.angular_step = angular_step;
  for (int j = 0; j < samples; ++j) {
    p.r.push_back(1.0);
    p.z.push_back(j * height_step);
  }
  p.tangent0 = std::array<double, 2>{0.0, 1.0};
  return p;
}

ProfileCurve sphere_profile(int samples, int count, double polar_start, double polar_step, double angular_step) {
  ProfileCurve p;
  p.count = count;
  p.angular_step = angular_step;
  for (int j = 0; j < samples; ++j) {
    const double phi = polar_start + j * polar_step;
    p.r.push_back(std::sin(phi));
    p.z.push_back(std::cos(phi));
  }
  p.tangent0 = std::array<double, 2>{std::cos(polar_start), -std::sin(polar_start)};
  return p;
}

ProfileCurve cone_profile(int samples, int count, double r0, double dr, double dz, double angular_step) {
  ProfileCurve p;
  p.count = count;
  p.angular_step = angular_step;
  for (int j = 0; j < samples; ++j) {
    p.r.push_back(r0 + j * dr);
    p.z.push_back(j * dz);
  }
  p.tangent0 = std::array<double, 2>{dr, dz};
  return p;
}

Plane profile_tangent_plane(const ProfileCurve& p) {
  if (p.r.size() < 2) throw Error(ErrorKind::InvalidInput, "profile needs two samples");
  const double dr = p.tangent0 ? (*p.tangent0)[0] : p.r[1] - p.r[0];
  const double dz = p.tangent0 ? (*p.tangent0)[1] : p.z[1] - p.z[0];
  const double t = p.angle_offset;
  const Vec3 radial(std::cos(t), std::sin(t), 0.0);
  const Vec3 point = p.r[0] * radial + Vec3(0, 0, p.z[0]);
  // normal of the meridian tangent (dr radial + dz up) within the meridian plane
  const Vec3 normal = dz * radial - dr * Vec3::UnitZ();
  return Plane::through(point, normal);
}

Binet cylinder_binet(int samples, int count, double height_step, double angular_step) {
  const ProfileCurve p = cylinder_profile(samples, count, height_step, angular_step);
  // faces where the tangent planes of neighbouring meridians meet
  std::vector<double> fr, fz;
  for (int j = 0; j + 1 < samples; ++j) {
    fr.push_back(1.0 / std::cos(0.5 * angular_step));
    fz.push_back((j + 0.5) * height_step);
  }
  return revolution_principal_binet(p, fr, fz);
}

Binet cone_binet(int samples, int count, double r0, double dr, double dz, double angular_step) {
  const ProfileCurve p = cone_profile(samples, count, r0, dr, dz, angular_step);
  std::vector<double> fr, fz;
  for (std::size_t j = 0; j + 1 < p.r.size(); ++j) {
    fr.push_back(0.5 * (p.r[j] + p.r[j + 1]));
    fz.push_back(0.5 * (p.z[j] + p.z[j + 1]));
  }
  return revolution_principal_binet(p, fr, fz);
}

Binet sphere_binet(int samples, int count, double polar_start, double polar_step, double angular_step) {
  if (polar_start <= 0.0 || polar_start + (samples - 1) * polar_step >= 0.5 * std::numbers::pi)
    throw Error(ErrorKind::InvalidInput, "sphere rows must stay strictly inside the upper hemisphere");
  const ProfileCurve p = sphere_profile(samples, count, polar_start, polar_step, angular_step);
  return circular_conical_binet(generate_revolution_circular(p), profile_tangent_plane(p)).binet;
}

}  // namespace binets
