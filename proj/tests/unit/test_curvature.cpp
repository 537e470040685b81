#include "doctest.h"
#include "oracles.hpp"

#include "binets/constructors.hpp"
#include "binets/curvature.hpp"
#include "binets/lifts.hpp"
#include "binets/random.hpp"

using namespace binets;

namespace {

Binet planar_grid(int m, int n) {
  Binet b(Window::grid(m, n));
  for (const auto& c : b.window().cells()) {
    const double h = c.is_face() ? 0.5 : 0.0;
    b.set(c, Vec3(c.r[0] + h, c.r[1] + h, 0.0));
  }
  return b;
}

MoebiusLift point_lift(const Binet& b) { return moebius_lift(b, point_sphere_anchor(b, CellId::vertex(0, 0))); }

Vec sphere_vector(const Sphere& s) { return moebius_point(s.center, 0.5 * (s.center.squaredNorm() - s.r_squared)); }

bool is_axis0(const CellEdge& e) { return e.first.r[1] == e.second.r[1]; }

CircularConical sphere_cc() {
  const ProfileCurve p = sphere_profile(6, 7);
  return circular_conical_binet(generate_revolution_circular(p), profile_tangent_plane(p));
}

}  // namespace

TEST_SUITE("curvature") {

TEST_CASE("normal bicongruence") {
  const NormalBicongruence flat = normal_bicongruence(planar_grid(4, 4));
  flat.lines.for_each([](const CellId&, const Line& l) { CHECK(std::abs(std::abs(l.direction[2]) - 1.0) < 1e-14); });
  REQUIRE_FALSE(flat.edges.empty());
  for (const auto& e : flat.edges) CHECK(e.parallel);

  const Binet cone = cone_binet(6, 7);
  const NormalBicongruence n = normal_bicongruence(cone);
  CHECK(n.max_skewness < 1e-9);
  n.lines.for_each([](const CellId&, const Line& l) { CHECK(oracle::line_axis_distance(l.point, l.direction) < 1e-9); });
  for (const auto& e : n.edges)
    if (!e.parallel) CHECK(oracle::axis_distance(e.point) < 1e-8);

  // conjugate but not orthogonal: two unrelated Q-nets on V and F
  const Binet qv = generate_conjugate_net(1, Window::grid(6, 6), 0.1);
  const Binet qf = faces_from_net(generate_conjugate_net(2, Window::grid(5, 5), 0.1));
  Binet mixed(Window::grid(6, 6));
  qv.for_each([&](const CellId& c, const Vec3& x) { mixed.set(c, x); });
  qf.for_each([&](const CellId& c, const Vec3& x) { mixed.set(c, x + Vec3(0.5, 0.5, 0.2)); });
  REQUIRE(check_conjugate(mixed, 1e-9).passed);
  CHECK_FALSE(check_orthogonal(mixed, 1e-9).passed);
  CHECK(normal_bicongruence(mixed).max_skewness > 1e-4);
}

TEST_CASE("focal binets") {
  const Binet cone = cone_binet(6, 7);
  // along the parallels the normals meet on the axis
  const FocalBinet along = focal_binet(cone, 0);
  CHECK(along.points.present_count() > 0);
  along.points.for_each([](const CellId&, const Vec3& x) { CHECK(oracle::axis_distance(x) < 1e-8); });

  const Binet sph = sphere_binet(6, 7);
  for (int axis : {0, 1}) {
    const FocalBinet fb = focal_binet(sph, axis);
    CHECK(fb.points.present_count() > 0);
    fb.points.for_each([](const CellId&, const Vec3& x) { CHECK(x.norm() < 1e-8); });
  }

  const Binet rnd = random_principal_binet(31, 7, 7);
  for (int axis : {0, 1}) {
    const FocalBinet fb = focal_binet(rnd, axis);
    CHECK(fb.at_infinity == 0);
    CHECK(check_conjugate(fb.points, 1e-8).passed);
  }
  CHECK(focal_binet(planar_grid(4, 4), 0).points.present_count() == 0);
}

TEST_CASE("cell circles") {
  const CircularConical cc = sphere_cc();
  const MoebiusLift l = point_lift(cc.binet);
  for (const auto& f : cc.binet.window().faces()) {
    const CellCircle c = cell_circle(l, cc.planes, f);
    const auto vs = face_vertices(f);
    const Vec3 o = oracle::circumcenter(cc.binet.at(vs[0]), cc.binet.at(vs[1]), cc.binet.at(vs[2]));
    CHECK((c.center - o).norm() < 1e-9);
    CHECK(c.r_squared == doctest::Approx((cc.binet.at(vs[0]) - o).squaredNorm()).epsilon(1e-9));
  }
  for (const auto& v : cc.binet.window().vertices()) {
    const CellCircle c = cell_circle(l, cc.planes, v);
    CHECK(std::abs(c.r_squared) < 1e-9);
    CHECK((c.center - cc.binet.at(v)).norm() < 1e-9);
  }

  // the centre is the foot of the normal line, the axis its direction
  const Binet rnd = random_principal_binet(8, 6, 6);
  const MoebiusLift rl = moebius_lift(rnd, 0.0);
  const BiStarNet planes = box_planes(rnd);
  const NormalBicongruence n = normal_bicongruence(rnd);
  planes.for_each([&](const CellId& d, const Plane& p) {
    const CellCircle c = cell_circle(rl, planes, d);
    CHECK(std::abs(p.signed_distance(c.center)) < 1e-9);
    CHECK(c.normal.cross(n.lines.at(d).direction).norm() < 1e-9);
    CHECK((n.lines.at(d).closest_point(c.center) - c.center).norm() < 1e-9);
  });
}

TEST_CASE("cell cones") {
  const CircularConical cc = sphere_cc();
  const LaguerreLift ll = laguerre_lift(cc.planes, 1.0);
  for (const auto& v : cc.binet.window().vertices()) {
    const CellCone k = cell_cone(cc.binet, ll, v);
    CHECK(k.flat());
    CHECK((k.apex - cc.binet.at(v)).norm() == 0.0);
  }
  for (const auto& f : cc.binet.window().faces()) {
    const CellCone k = cell_cone(cc.binet, ll, f);
    CHECK_FALSE(k.imaginary());
    for (const auto& v : face_vertices(f))
      CHECK(std::abs(std::abs(cc.planes.at(v).normal.dot(k.axis)) - std::abs(k.cos_normal_angle)) < 1e-9);
  }

  // cylinder: constant cone angle along each parallel
  const Binet cyl = cylinder_binet(5, 7);
  const LaguerreLift cl = laguerre_lift(box_planes(cyl), 1.0);
  for (int j = 0; j + 1 < 5; ++j) {
    const double first = cell_cone(cyl, cl, CellId::face(0, j)).cos_normal_angle;
    for (int i = 1; i + 1 < 7; ++i) CHECK(cell_cone(cyl, cl, CellId::face(i, j)).cos_normal_angle == doctest::Approx(first).epsilon(1e-12));
  }

  // coaxial with the cell circles
  const Binet rnd = random_principal_binet(12, 6, 6);
  const BiStarNet planes = box_planes(rnd);
  const MoebiusLift ml = moebius_lift(rnd, 0.0);
  const LaguerreLift rl = laguerre_lift(planes, 1.0);
  planes.for_each([&](const CellId& d, const Plane&) {
    const CellCone k = cell_cone(rnd, rl, d);
    CHECK(cell_circle(ml, planes, d).normal.cross(k.axis).norm() < 1e-9);
    CHECK((k.apex - rnd.at(d)).norm() == 0.0);
  });
}

TEST_CASE("curvature spheres: analytic families") {
  const Binet cyl = cylinder_binet(5, 7);
  const MoebiusLift cl = point_lift(cyl);
  const BiStarNet cp = box_planes(cyl);
  std::size_t round = 0, flat = 0;
  for (const auto& e : vertex_edges(cyl.window())) {
    if (!cp.has(e.first) || !cp.has(e.second)) continue;
    const CurvatureSphere s = curvature_sphere(cl, e);
    if (is_axis0(e)) {
      REQUIRE_FALSE(s.flat);
      CHECK(std::abs(s.sphere.r_squared - 1.0) < 1e-9);
      CHECK(oracle::axis_distance(s.sphere.center) < 1e-9);
      ++round;
    } else {
      CHECK(s.flat);
      ++flat;
    }
  }
  CHECK(round > 0);
  CHECK(flat > 0);

  const Binet sph = sphere_binet(6, 7);
  const MoebiusLift sl = point_lift(sph);
  const BiStarNet sp = box_planes(sph);
  std::size_t n = 0;
  for (const auto& edges : {vertex_edges(sph.window()), face_edges(sph.window())})
    for (const auto& e : edges) {
      if (!sp.has(e.first) || !sp.has(e.second)) continue;
      const CurvatureSphere s = curvature_sphere(sl, e);
      REQUIRE_FALSE(s.flat);
      CHECK(s.sphere.center.norm() < 1e-9);
      CHECK(std::abs(s.sphere.r_squared - 1.0) < 1e-9);
      ++n;
    }
  CHECK(n > 20);
}

TEST_CASE("curvature spheres: incidence properties") {
  const Binet b = random_principal_binet(17, 7, 7);
  const MoebiusLift l = moebius_lift(b, 0.0);
  const BiStarNet planes = box_planes(b);
  const NormalBicongruence nb = normal_bicongruence(b);
  std::size_t checked = 0;
  for (const auto& e : nb.edges) {
    if (!planes.has(e.a) || !planes.has(e.b)) continue;
    const CurvatureSphere s = curvature_sphere(l, {e.a, e.b});
    REQUIRE_FALSE(s.flat);
    const Vec x = sphere_vector(s.sphere).normalized();
    // orthogonal to the spheres of the cells around both ends
    for (const CellId& end : {e.a, e.b})
      for (const auto& d : incident_cells(b.window(), end).cells) {
        const Vec y = l.points.at(d).normalized();
        CHECK(std::abs(oracle::moebius(x, y)) < 1e-8);
      }
    // contains both cell circles
    for (const CellId& end : {e.a, e.b}) {
      const CellCircle c = cell_circle(l, planes, end);
      const double lhs = (c.center - s.sphere.center).squaredNorm() + c.r_squared;
      CHECK(std::abs(lhs - s.sphere.r_squared) < 1e-8 * std::max(1.0, std::abs(s.sphere.r_squared)));
      CHECK((c.center - s.sphere.center).cross(c.normal).norm() < 1e-8 * std::max(1.0, (c.center - s.sphere.center).norm()));
    }
    // centred where the normals meet
    CHECK((s.sphere.center - e.point).norm() < 1e-8 * std::max(1.0, e.point.norm()));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("Lie and Moebius routes agree") {
  for (std::uint64_t seed : {3u, 4u}) {
    const Binet b = random_principal_binet(seed, 7, 7);
    const double rho0 = point_sphere_anchor(b, CellId::vertex(0, 0));
    const LieLift lie = lie_lift(b, rho0, 1.0);
    for (const auto& edges : {vertex_edges(b.window()), face_edges(b.window())})
      for (const auto& e : edges) {
        if (!lie.lines.has(e.first) || !lie.lines.has(e.second)) continue;
        const CurvatureSphere m = curvature_sphere(lie.moebius, e);
        const LieCurvaturePoint p = lie_curvature_point(lie.lines, e);
        REQUIRE_FALSE(m.flat);
        CHECK(p.skewness < 1e-9);
        // near-flat edges carry huge spheres; compare relative to their size
        const double size = std::max(1.0, std::abs(m.sphere.r_squared));
        CHECK((m.sphere.center - p.sphere.center).norm() < 1e-8 * std::sqrt(size));
        CHECK(std::abs(m.sphere.r_squared - p.sphere.r_squared) < 1e-8 * size);
      }
  }

  // circular-conical: the common sphere of two contact elements
  const CircularConical cc = sphere_cc();
  const LieLift cl = lie_lift(cc.binet, cc.planes, point_sphere_anchor(cc.binet, CellId::vertex(0, 0)), 1.0);
  std::size_t n = 0;
  for (const auto& e : vertex_edges(cc.binet.window())) {
    const LieCurvaturePoint p = lie_curvature_point(cl.lines, e);
    CHECK(std::abs(oracle::lie(p.point, p.point)) < 1e-9);
    for (const CellId& v : {e.first, e.second}) {
      const Vec3 x = cc.binet.at(v);
      CHECK(std::abs((x - p.sphere.center).squaredNorm() - p.sphere.r_squared) < 1e-9);
      CHECK(std::abs(std::abs(cc.planes.at(v).signed_distance(p.sphere.center)) - std::sqrt(p.sphere.r_squared)) < 1e-9);
    }
    ++n;
  }
  CHECK(n > 0);
}

TEST_CASE("curvature spheres follow Moebius transformations") {
  const Binet b = random_principal_binet(23, 6, 6);
  const MoebiusLift l = moebius_lift(b, 0.0);
  const FormIsometry iso = random_form_isometry(QuadricForm::moebius(), 6, 0.2);
  MoebiusLift t = l;
  t.points = l.points.map<Vec>([&](const CellId&, const Vec& x) { return iso.transform.apply(x); });
  const BiStarNet planes = box_planes(b);
  std::size_t n = 0;
  for (const auto& e : vertex_edges(b.window())) {
    if (!planes.has(e.first) || !planes.has(e.second)) continue;
    const CurvatureSphere s = curvature_sphere(l, e);
    const CurvatureSphere ts = curvature_sphere(t, e);
    REQUIRE_FALSE(s.flat);
    REQUIRE_FALSE(ts.flat);
    const Sphere want = sphere_from_lift(iso.transform.apply(sphere_vector(s.sphere)));
    CHECK((ts.sphere.center - want.center).norm() < 1e-8 * std::max(1.0, want.center.norm()));
    CHECK(std::abs(ts.sphere.r_squared - want.r_squared) < 1e-8 * std::max(1.0, std::abs(want.r_squared)));
    ++n;
  }
  CHECK(n > 10);
}

}  // TEST_SUITE
