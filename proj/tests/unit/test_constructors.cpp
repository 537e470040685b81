#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

#include "binets/constructors.hpp"
#include "binets/lifts.hpp"
#include "binets/random.hpp"

using namespace binets;

namespace {

CauchyData planar_data(int m, int n) {
  CauchyData d{Window::grid(m, n), {0, 0}, Binet(padded(Window::grid(m, n)))};
  for (const auto& f : d.data.window().faces()) d.data.set(f, Vec3(f.r[0] + 0.5, f.r[1] + 0.5, 0.0));
  for (int i = 0; i < m; ++i) d.data.set(CellId::vertex(i, 0), Vec3(i, 0, 0));
  for (int j = 0; j < n; ++j) d.data.set(CellId::vertex(0, j), Vec3(0, j, 0));
  return d;
}

// A principal binet of revolution on a window one larger on every side,
// shifted so that its interior is [0, m-1] x [0, n-1].
Binet revolution_truth(int m, int n) {
  ProfileCurve p;
  p.count = m + 2;
  p.angular_step = 0.25;
  p.angle_offset = -0.25;
  std::vector<double> fr, fz;
  for (int j = 0; j < n + 2; ++j) {
    const double t = 0.4 + 0.12 * (j - 1);
    p.r.push_back(2.0 + std::cos(t));
    p.z.push_back(std::sin(t));
  }
  for (int j = 0; j + 1 < n + 2; ++j) {
    const double t = 0.4 + 0.12 * (j - 0.5);
    fr.push_back(2.0 + 1.3 * std::cos(t));
    fz.push_back(1.1 * std::sin(t) + 0.05);
  }
  const Binet raw = revolution_principal_binet(p, fr, fz);
  Binet out(padded(Window::grid(m, n)));
  raw.for_each([&](const CellId& c, const Vec3& x) {
    CellId s = c;
    s.r[0] -= 1;
    s.r[1] -= 1;
    if (out.window().contains(s)) out.set(s, x);
  });
  return out;
}

CauchyData cauchy_from(const Binet& truth, int m, int n) {
  CauchyData d{Window::grid(m, n), {0, 0}, Binet(truth.window())};
  for (const auto& f : truth.window().faces()) d.data.set(f, truth.at(f));
  for (int i = 0; i < m; ++i) d.data.set(CellId::vertex(i, 0), truth.at(CellId::vertex(i, 0)));
  for (int j = 0; j < n; ++j) d.data.set(CellId::vertex(0, j), truth.at(CellId::vertex(0, j)));
  return d;
}

double max_vertex_gap(const Binet& a, const Binet& b) {
  double worst = 0.0;
  for (const auto& v : a.window().vertices())
    if (a.has(v) && b.has(v)) worst = std::max(worst, (a.at(v) - b.at(v)).norm());
  return worst;
}

double circle_oracle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 o = oracle::circumcenter(a, b, c);
  const double r = (a - o).norm();
  const Vec3 n = (b - a).cross(c - a).normalized();
  return std::max(std::abs(n.dot(d - a)), std::abs((d - o).norm() - r));
}

double max_circularity(const Binet& g) {
  double worst = 0.0;
  for (const auto& f : g.window().faces()) {
    const auto c = face_vertices(f);
    if (!g.has(c[0]) || !g.has(c[1]) || !g.has(c[2]) || !g.has(c[3])) continue;
    worst = std::max(worst, circle_oracle(g.at(c[0]), g.at(c[1]), g.at(c[2]), g.at(c[3])));
  }
  return worst;
}

}  // namespace

TEST_SUITE("constructors") {

TEST_CASE("principal propagation") {
  const Binet grid = propagate_principal(planar_data(5, 4));
  for (const auto& v : grid.window().vertices()) CHECK((grid.at(v) - Vec3(v.r[0], v.r[1], 0)).norm() == 0.0);

  const Binet truth = revolution_truth(6, 5);
  const Binet rev = propagate_principal(cauchy_from(truth, 6, 5));
  CHECK(max_vertex_gap(rev, truth) < 1e-10);

  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const CauchyData d = random_cauchy_data(seed, 7, 6);
    const Binet b = propagate_principal(d);
    CHECK(check_conjugate(b, 1e-9).passed);
    CHECK(check_orthogonal(b, 1e-9).passed);
    CHECK(max_vertex_gap(b, propagate_principal(d, SweepOrder::ColumnMajor)) < 1e-10);
  }

  // all four faces at one point: the three planes cannot pin the vertex
  CauchyData bad = planar_data(3, 3);
  for (const auto& f : bad.data.window().faces()) bad.data.set(f, Vec3(0.5, 0.5, 0.0));
  CHECK_THROWS_AS(propagate_principal(bad), Error);
}

TEST_CASE("orthogonal propagation") {
  const CauchyData d = random_cauchy_data(5, 7, 7);
  const Binet principal = propagate_principal(d);
  const Binet via_freedom = propagate_orthogonal(d, conjugate_freedom);
  CHECK(max_vertex_gap(principal, via_freedom) < 1e-9);

  const Binet mid = propagate_orthogonal(planar_data(5, 5), CellField<double>(padded(Window::grid(5, 5))));
  const auto mr = check_orthogonal(mid);
  CHECK(mr.passed);
  CHECK(mr.max_residual == 0.0);

  Rng rng(9);
  CellField<double> f(padded(d.window));
  for (const auto& v : d.window.vertices()) f.set(v, rng.uniform(0.2, 0.8));
  const Binet wild = propagate_orthogonal(d, f);
  CHECK(check_orthogonal(wild, 1e-9).passed);
  const auto cr = check_conjugate(wild, 1e-9);
  CHECK_FALSE(cr.passed);
  CHECK(cr.max_residual > 1e-3);

  // one scalar per vertex: same map, same binet; another map, another binet
  CHECK(max_vertex_gap(wild, propagate_orthogonal(d, f)) == 0.0);
  CellField<double> g = f;
  g.set(CellId::vertex(3, 3), 0.5 * (f.at(CellId::vertex(3, 3)) + 0.5) + 0.05);
  const Binet other = propagate_orthogonal(d, g);
  CHECK(check_orthogonal(other, 1e-9).passed);
  CHECK(max_vertex_gap(wild, other) > 1e-6);
  CHECK((wild.at(CellId::vertex(2, 2)) - other.at(CellId::vertex(2, 2))).norm() == 0.0);
}

TEST_CASE("conjugate net generator") {
  const Binet flat = generate_conjugate_net(3, Window::grid(5, 5), 0.0);
  // affine image: every point is p00 + i a + j b
  const Vec3 o = flat.at(CellId::vertex(0, 0));
  const Vec3 a = flat.at(CellId::vertex(1, 0)) - o, b = flat.at(CellId::vertex(0, 1)) - o;
  for (const auto& v : flat.window().vertices()) CHECK((flat.at(v) - (o + v.r[0] * a + v.r[1] * b)).norm() < 1e-12);

  const Binet n7 = generate_conjugate_net(7, Window::grid(8, 8), 0.1);
  const auto r = check_conjugate(n7, 1e-12);
  CHECK(r.passed);
  CHECK(r.max_residual < 1e-12);
  double tetra = 0.0;
  for (const auto& f : n7.window().faces()) {
    const auto c = face_vertices(f);
    tetra = std::max(tetra, oracle::tetra_flatness(n7.at(c[0]), n7.at(c[1]), n7.at(c[2]), n7.at(c[3])));
  }
  CHECK(tetra < 1e-12);
  const Binet again = generate_conjugate_net(7, Window::grid(8, 8), 0.1);
  for (const auto& v : n7.window().vertices()) CHECK(again.at(v) == n7.at(v));
  CHECK(max_vertex_gap(n7, generate_conjugate_net(8, Window::grid(8, 8), 0.1)) > 1e-3);

  const Binet n3 = generate_conjugate_net_3d(4, Window::grid3(3, 3, 3), 0.1);
  CHECK(check_conjugate(n3, 1e-10).passed);
}

TEST_CASE("circular nets of revolution") {
  const Binet cyl = generate_revolution_circular(cylinder_profile(4, 6, 0.3, std::numbers::pi / 8));
  CHECK(max_circularity(cyl) < 1e-12);
  // congruent quads: equal diagonals everywhere
  const auto c0 = face_vertices(CellId::face(0, 0));
  const double diag = (cyl.at(c0[0]) - cyl.at(c0[2])).norm();
  for (const auto& f : cyl.window().faces()) {
    const auto c = face_vertices(f);
    CHECK((cyl.at(c[0]) - cyl.at(c[2])).norm() == doctest::Approx(diag).epsilon(1e-13));
    CHECK((cyl.at(c[1]) - cyl.at(c[3])).norm() == doctest::Approx(diag).epsilon(1e-13));
  }

  ProfileCurve sp;
  for (int j = 0; j < 5; ++j) {
    const double t = 0.3 + 0.2 * j;
    sp.r.push_back(std::sin(t));
    sp.z.push_back(std::cos(t));
  }
  sp.count = 7;
  const Binet sph = generate_revolution_circular(sp);
  CHECK(max_circularity(sph) < 1e-12);
  sph.for_each([](const CellId&, const Vec3& x) { CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-15)); });

  ProfileCurve cone;
  for (int j = 1; j <= 4; ++j) {
    cone.r.push_back(0.3 * j);
    cone.z.push_back(0.3 * j);
  }
  CHECK(max_circularity(generate_revolution_circular(cone)) < 1e-12);
  CHECK_THROWS_AS(generate_revolution_circular(ProfileCurve{}), Error);
}

TEST_CASE("circumcircles") {
  const std::vector<Vec3> sq{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  const CircleFit fit = circumcircle(sq);
  CHECK((fit.circle.center - Vec3(0.5, 0.5, 0)).norm() < 1e-15);
  CHECK(fit.circle.radius == doctest::Approx(std::sqrt(0.5)));
  CHECK(std::abs(std::abs(fit.circle.axis[2]) - 1.0) < 1e-15);
  CHECK(circumcircle_checked(sq).residual < 1e-15);

  const Binet sph = generate_revolution_circular(sphere_profile(4, 6));
  for (const auto& f : sph.window().faces()) {
    const auto c = face_vertices(f);
    const std::vector<Vec3> q{sph.at(c[0]), sph.at(c[1]), sph.at(c[2]), sph.at(c[3])};
    const Circle k = circumcircle_checked(q).circle;
    for (const auto& x : q) CHECK((x - k.center).norm() == doctest::Approx(k.radius).epsilon(1e-12));
    // the axis passes through the centre of the sphere
    CHECK(k.center.cross(k.axis).norm() < 1e-12);
  }

  std::vector<Vec3> bent = sq;
  bent[2] += Vec3(1e-3, 0, 0);
  CHECK(circumcircle(bent).residual > 1e-4);
  CHECK_THROWS_AS(circumcircle_checked(bent), Error);
  const std::vector<Vec3> line{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}};
  CHECK_THROWS_AS(circumcircle_checked(line), Error);
}

TEST_CASE("reflection constructions") {
  Binet grid(Window::grid(4, 4));
  for (const auto& v : grid.window().vertices()) grid.set(v, Vec3(v.r[0], v.r[1], 0));
  const Plane tilted = Plane::through(Vec3::Zero(), Vec3(0.2, -0.3, 1.0).normalized());
  const ConicalNet h = reflection_conical_from_circular(grid, tilted);
  CHECK(h.closure_residual < 1e-12);
  CHECK_FALSE(h.degenerate);
  for (const auto& f : grid.window().faces()) {
    std::vector<Plane> ps;
    for (const auto& v : face_vertices(f)) ps.push_back(h.planes.at(v));
    const PlaneMeet m = meet_planes(ps);
    CHECK(m.residual < 1e-12);
    // on the vertical axis through the face centre
    CHECK(std::hypot(m.point[0] - f.r[0] - 0.5, m.point[1] - f.r[1] - 0.5) < 1e-10);
  }

  const ConicalNet flat = reflection_conical_from_circular(grid, Plane{Vec3::UnitZ(), 0.0});
  CHECK(flat.degenerate);
  flat.planes.for_each([](const CellId&, const Plane& p) { CHECK(std::abs(p.normal[2]) == doctest::Approx(1.0)); });

  const ProfileCurve cp = cylinder_profile(4, 6);
  const Binet cyl = generate_revolution_circular(cp);
  const ConicalNet ch = reflection_conical_from_circular(cyl, profile_tangent_plane(cp));
  cyl.for_each([&](const CellId& v, const Vec3& x) {
    // tangent planes of the unit cylinder: horizontal normal, distance 1
    const Plane& p = ch.planes.at(v);
    CHECK(std::abs(p.normal[2]) < 1e-12);
    CHECK(std::abs(p.offset) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(p.signed_distance(x)) < 1e-12);
  });

  // round trip
  const ProfileCurve spp = sphere_profile(5, 6);
  const Binet g = generate_revolution_circular(spp);
  const ConicalNet hs = reflection_conical_from_circular(g, profile_tangent_plane(spp));
  const CircularNet back = reflection_circular_from_conical(hs.planes, g.at(CellId::vertex(0, 0)));
  CHECK(back.closure_residual < 1e-12);
  CHECK(max_vertex_gap(back.points, g) < 1e-10);

  // grid: reflecting a point across bisectors gives grid translates
  BiStarNet gh(Window::grid(3, 3));
  for (const auto& v : gh.window().vertices()) gh.set(v, h.planes.at(v));
  const CircularNet gg = reflection_circular_from_conical(gh, Vec3::Zero());
  for (const auto& v : gh.window().vertices()) CHECK((gg.points.at(v) - Vec3(v.r[0], v.r[1], 0)).norm() < 1e-12);

  Binet skew = grid;
  skew.set(CellId::vertex(2, 2), Vec3(2.1, 2.0, 0.05));
  CHECK_THROWS_AS(reflection_conical_from_circular(skew, tilted), Error);
}

TEST_CASE("canonical lifts of circular-conical binets") {
  const ProfileCurve p = sphere_profile(6, 7);
  const CircularConical cc = circular_conical_binet(generate_revolution_circular(p), profile_tangent_plane(p));
  CHECK(check_principal(cc.binet, 1e-9).passed());
  CHECK(cc.closure_residual < 1e-12);

  const double rho0 = point_sphere_anchor(cc.binet, CellId::vertex(0, 0));
  const MoebiusLift l = moebius_lift(cc.binet, rho0);
  for (const auto& v : cc.binet.window().vertices()) {
    const Vec x = l.points.at(v).normalized();
    CHECK(std::abs(oracle::moebius(x, x)) < 1e-9);
  }
  // faces around an interior vertex lie in the tangent hyperplane at its lift
  for (int i = 1; i + 1 < 7; ++i)
    for (int j = 1; j + 1 < 6; ++j) {
      const CellId v = CellId::vertex(i, j);
      const Vec xv = l.points.at(v).normalized();
      std::vector<Vec> rows{xv};
      for (const auto& f : incident_cells(cc.binet.window(), v).cells) {
        const Vec xf = l.points.at(f).normalized();
        CHECK(std::abs(oracle::moebius(xv, xf)) < 1e-9);
        rows.push_back(xf);
      }
      CHECK(oracle::rank(rows, 1e-8) == 3);
    }

  // the plane at v0 misses g(v0): still principal, but no canonical contact
  const Binet g = generate_revolution_circular(p);
  Plane off = profile_tangent_plane(p);
  off.offset += 0.05;
  const CircularConical loose = circular_conical_binet(g, off);
  CHECK(check_principal(loose.binet, 1e-9).passed());
  const LieLift ll = lie_lift(loose.binet, loose.planes, point_sphere_anchor(loose.binet, CellId::vertex(0, 0)), 1.0);
  double worst = 0.0;
  for (const auto& v : g.window().vertices())
    if (ll.lines.has(v)) worst = std::max(worst, std::abs(oracle::lie(ll.lines.at(v).p.normalized(), ll.lines.at(v).q.normalized())));
  CHECK(worst > 1e-3);
}

}  // TEST_SUITE
