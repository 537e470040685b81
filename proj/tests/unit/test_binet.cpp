#include "doctest.h"
#include "oracles.hpp"

#include "binets/constructors.hpp"
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

// One interior V-edge V(0,1)-V(1,1) with dual faces F(0,0), F(0,1).
Binet single_cross(const Vec3& v, const Vec3& v2, const Vec3& f, const Vec3& f2) {
  Binet b(Window::grid(2, 3));
  b.set(CellId::vertex(0, 1), v);
  b.set(CellId::vertex(1, 1), v2);
  b.set(CellId::face(0, 0), f);
  b.set(CellId::face(0, 1), f2);
  return b;
}

Binet revolution() { return sphere_binet(6, 7); }

}  // namespace

TEST_SUITE("binet") {

TEST_CASE("conjugacy") {
  const auto grid = check_conjugate(planar_grid(4, 4));
  CHECK(grid.passed);
  CHECK(grid.max_residual < 1e-15);
  CHECK(grid.checked > 0);

  Binet skew(Window::grid(2, 2));
  skew.set(CellId::vertex(0, 0), Vec3(0, 0, 0));
  skew.set(CellId::vertex(1, 0), Vec3(1, 0, 0));
  skew.set(CellId::vertex(1, 1), Vec3(1, 1, 1));
  skew.set(CellId::vertex(0, 1), Vec3(0, 1, 0));
  skew.set(CellId::face(0, 0), Vec3(0.5, 0.5, 0.3));
  const auto r = check_conjugate(skew);
  CHECK_FALSE(r.passed);
  CHECK(r.max_residual > 0.1);
  CHECK(oracle::tetra_flatness(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 1), Vec3(0, 1, 0)) > 0.1);
  REQUIRE(r.worst);
  CHECK(r.worst->at == CellId::face(0, 0));

  // projective maps of RP^3 keep the status
  const Binet p = random_principal_binet(4, 6, 6);
  Eigen::Matrix4d t;
  t << 1.0, 0.2, -0.1, 0.3, 0.1, 0.9, 0.2, -0.2, -0.3, 0.1, 1.1, 0.1, 0.05, -0.04, 0.03, 1.0;
  Binet tp(p.window());
  p.for_each([&](const CellId& c, const Vec3& x) {
    const Eigen::Vector4d y = t * Eigen::Vector4d(x[0], x[1], x[2], 1.0);
    tp.set(c, y.head<3>() / y[3]);
  });
  CHECK(check_conjugate(p, 1e-9).passed);
  CHECK(check_conjugate(tp, 1e-9).passed);
}

TEST_CASE("orthogonality of crosses") {
  CHECK(check_orthogonal(single_cross({0, 0, 0}, {2, 0, 0}, {1, -1, 0}, {1, 1, 0})).max_residual == 0.0);
  CHECK(check_orthogonal(single_cross({0, 0, 0}, {2, 0, 0}, {1, -1, 0}, {1, 1, 1})).max_residual == 0.0);
  const auto r = check_orthogonal(single_cross({0, 0, 0}, {2, 0.1, 0}, {1, -1, 0}, {1, 1, 1}), 1e-9);
  // 0.2 / (|(2, 0.1, 0)| |(0, 2, 1)|)
  CHECK(r.max_residual == doctest::Approx(0.2 / (std::sqrt(4.01) * std::sqrt(5.0))).epsilon(1e-12));
  CHECK(r.max_residual == doctest::Approx(0.0446656).epsilon(1e-5));
  CHECK_FALSE(r.passed);
  CHECK(r.checked == 1);

  const auto g = check_orthogonal(planar_grid(5, 4));
  CHECK(g.passed);
  CHECK(g.max_residual == 0.0);
  CHECK(check_principal(planar_grid(3, 3)).passed());
}

TEST_CASE("orthogonality of bi*nets") {
  BiStarNet p(Window::grid(2, 3));
  p.set(CellId::vertex(0, 1), Plane{Vec3(1, 0, 0), 0.0});
  p.set(CellId::vertex(1, 1), Plane{Vec3(0, 1, 0), 0.0});
  p.set(CellId::face(0, 0), Plane{Vec3(1, 1, 0).normalized(), 0.0});
  p.set(CellId::face(0, 1), Plane{Vec3(0, 0, 1), 0.0});
  const auto r = check_bistar_orthogonal(p);
  CHECK(r.checked == 1);
  CHECK(r.max_residual < 1e-15);

  p.set(CellId::vertex(1, 1), Plane{Vec3(0, 1, 0.01).normalized(), 0.0});
  CHECK(check_bistar_orthogonal(p).max_residual > 1e-4);

  const Binet b = random_principal_binet(21, 7, 7);
  CHECK(check_bistar_orthogonal(box_planes(b), 1e-9).passed);
}

TEST_CASE("box planes and box-star points") {
  const BiStarNet flat = box_planes(planar_grid(4, 4));
  CHECK(flat.present_count() > 0);
  flat.for_each([](const CellId&, const Plane& p) {
    CHECK(std::abs(std::abs(p.normal[2]) - 1.0) < 1e-14);
    CHECK(std::abs(p.offset) < 1e-14);
  });

  const Binet b = revolution();
  const BiStarNet planes = box_planes(b);
  for (const auto& f : b.window().faces()) {
    REQUIRE(planes.has(f));
    for (const auto& v : face_vertices(f)) CHECK(std::abs(planes.at(f).signed_distance(b.at(v))) < 1e-10);
  }

  // a cone is developable: the two quad planes along a ruling coincide
  CHECK_THROWS_AS(box_star_points(box_planes(cone_binet(6, 7))), Error);

  const Binet back = box_star_points(planes);
  std::size_t compared = 0;
  back.for_each([&](const CellId& c, const Vec3& x) {
    CHECK((x - b.at(c)).norm() < 1e-9);
    ++compared;
  });
  CHECK(compared > 0);

  BiStarNet four(Window::grid(2, 2));
  four.set(CellId::vertex(0, 0), Plane{Vec3(1, 0, 0), 0.0});
  four.set(CellId::vertex(1, 0), Plane{Vec3(0, 1, 0), 0.0});
  four.set(CellId::vertex(1, 1), Plane{Vec3(0, 0, 1), 0.0});
  four.set(CellId::vertex(0, 1), Plane{Vec3(1, 1, 1).normalized(), 0.0});
  const Binet origin = box_star_points(four);
  REQUIRE(origin.has(CellId::face(0, 0)));
  CHECK(origin.at(CellId::face(0, 0)).norm() < 1e-14);

  // orientation: neighbours agree
  const auto tree = incidence_tree(planes.window(), [&](const CellId& c) { return planes.has(c); });
  for (const auto& [a, c] : tree.edges) CHECK(planes.at(a).normal.dot(planes.at(c).normal) > 0);
}

TEST_CASE("polar binets") {
  // planar grid lifted with rho(v) = |v|^2/2, rho(f) = |f|^2/2 - 1/4
  const Binet g = planar_grid(4, 4);
  HomField x(g.window());
  g.for_each([&](const CellId& c, const Vec3& p) {
    x.set(c, oracle::sphere_lift(p, 0.5 * p.squaredNorm() - (c.is_face() ? 0.25 : 0.0)));
  });
  const auto r = check_polar_binet(x, QuadricForm::moebius());
  CHECK(r.passed);
  CHECK(r.max_residual < 1e-15);

  // <n, n'> = 1 in the affine chart is polarity for the unit sphere form
  HomField n(Window::grid(2, 2));
  const Vec3 a(0.3, -0.2, 1.1);
  Vec3 q = a.cross(Vec3(1, 0, 0)).normalized();
  n.set(CellId::face(0, 0), (Vec(4) << a, 1.0).finished());
  for (int k = 0; k < 4; ++k) {
    const Vec3 nk = a / a.squaredNorm() + (0.5 + k) * q;  // <a, nk> = 1
    q = a.cross(q).normalized();
    n.set(face_vertices(CellId::face(0, 0))[static_cast<std::size_t>(k)], (Vec(4) << nk, 1.0).finished());
  }
  CHECK(check_polar_binet(n, QuadricForm::unit_sphere()).max_residual < 1e-14);

  Rng rng(1);
  HomField rnd(Window::grid(3, 3));
  for (const auto& c : rnd.window().cells()) rnd.set(c, rng.normal_vector(5));
  const auto bad = check_polar_binet(rnd, QuadricForm::moebius());
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_residual > 0.05);
}

}  // TEST_SUITE
