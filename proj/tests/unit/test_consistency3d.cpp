#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "binets/consistency3d.hpp"
#include "binets/constructors.hpp"
#include "binets/lifts.hpp"

using namespace binets;

namespace {

double point_gap(const Vec& a, const Vec& b) {
  const Vec x = a.normalized(), y = b.normalized();
  return std::min((x - y).norm(), (x + y).norm());
}

Binet principal_z3(std::uint64_t seed, int n, Z3Options opt = {}, std::array<int, 3> order = {2, 1, 0}) {
  const Window w = Window::grid3(n, n, n);
  return extend_principal_to_z3(project_initial_data(random_polar_initial_data(seed, w, opt)), 0.0, kDefaultTol, order).binet;
}

// A Q-net on the 12-faces of grid3(m, n, p).
Binet facenet12(std::uint64_t seed, int m, int n, int p, double noise) {
  const Binet net = generate_conjugate_net_3d(seed, Window::box3({0, 0, 0}, {m - 2, n - 2, p - 1}), noise);
  Binet g(Window::grid3(m, n, p));
  net.for_each([&](const CellId& c, const Vec3& x) { g.set(CellId::face(FacePlane::P12, c.r[0], c.r[1], c.r[2]), x); });
  return g;
}

// Planarity of every elementary quad of one face family, in all three
// lattice directions.
double family_flatness(const Binet& b, FacePlane plane) {
  double worst = 0.0;
  for (const auto& f : b.window().faces()) {
    if (f.plane != plane || !b.has(f)) continue;
    for (int a = 0; a < 3; ++a)
      for (int c = a + 1; c < 3; ++c) {
        const CellId f1 = f.shifted(a, 1), f2 = f.shifted(a, 1).shifted(c, 1), f3 = f.shifted(c, 1);
        if (!b.has(f1) || !b.has(f2) || !b.has(f3)) continue;
        worst = std::max(worst, oracle::tetra_flatness(b.at(f), b.at(f1), b.at(f2), b.at(f3)));
      }
  }
  return worst;
}

}  // namespace

TEST_SUITE("consistency3d") {

TEST_CASE("cube indexing") {
  const auto c = cube_face_corners(FacePlane::P12, false);
  CHECK(c == std::array<int, 4>{0, 1, 3, 2});
  const auto top = cube_face_corners(FacePlane::P12, true);
  for (int m : top) CHECK((m & 4) != 0);
  std::set<int> seen;
  for (auto p : {FacePlane::P12, FacePlane::P13, FacePlane::P23})
    for (bool t : {false, true}) seen.insert(cube_face_index(p, t));
  CHECK(seen.size() == 6);
}

TEST_CASE("hide and reconstruct a polar cube") {
  const QuadricForm q = QuadricForm::moebius();
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const PolarCubeSample s = random_polar_cube(seed);
    CHECK(cube_input_residual(s.truth, q) < 1e-9);
    CHECK_FALSE(s.data.vertices[7]);
    const CubeCompletion c = complete_polar_cube(s.data);
    CHECK(c.polarity_residual < 1e-9);
    CHECK(point_gap(*c.cube.vertices[7], *s.truth.vertices[7]) < 1e-9);
    for (std::size_t i = 0; i < 6; ++i) {
      REQUIRE(c.cube.faces[i]);
      CHECK(point_gap(*c.cube.faces[i], *s.truth.faces[i]) < 1e-9);
    }
    REQUIRE(c.cube.vertex_planes[7]);
    CHECK(same_subspace(*c.cube.vertex_planes[7], *s.truth.vertex_planes[7], 1e-9));
    // every incident pair of the completed cube is polar
    CHECK(cube_input_residual(c.cube, q) < 1e-9);
  }
}

TEST_CASE("cube completion does not depend on the axis labels") {
  const PolarCubeSample s = random_polar_cube(77);
  const Vec base = *complete_polar_cube(s.data).cube.vertices[7];
  for (const auto& perm : {std::array<int, 3>{1, 0, 2}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}})
    CHECK(point_gap(*complete_polar_cube_permuted(s.data, perm).cube.vertices[7], base) < 1e-10);
  // deterministic
  CHECK(*complete_polar_cube(s.data).cube.vertices[7] == base);
}

TEST_CASE("cube input gate") {
  PolarCubeSample s = random_polar_cube(5);
  Vec& v1 = *s.data.vertices[1];
  v1[0] += 0.05;
  try {
    complete_polar_cube(s.data);
    FAIL("corrupted cube accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
  CubeData empty;
  CHECK_THROWS_AS(complete_polar_cube(empty), Error);
}

TEST_CASE("extension of principal initial data to Z^3") {
  const Window w = Window::grid3(4, 4, 4);
  const PolarInitialData pd = random_polar_initial_data(3, w);
  const Z3InitialData init = project_initial_data(pd);
  init.points.for_each([&](const CellId& c, const Vec3&) { CHECK(on_initial_slice(w, c)); });
  const Z3Extension ext = extend_principal_to_z3(init);
  CHECK(ext.max_polarity_residual < 1e-9);

  const Binet& b = ext.binet;
  for (const auto& c : w.cells()) CHECK(b.has(c));
  init.points.for_each([&](const CellId& c, const Vec3& p) { CHECK((b.at(c) - p).norm() < 1e-9 * std::max(1.0, p.norm())); });

  const auto orth = check_orthogonal(b, 1e-8);
  CHECK(orth.passed);
  CHECK(orth.checked == crosses(w).size());
  // oracle: Euclidean cross products on every cross the lattice lists
  double worst = 0.0;
  for (const auto& c : crosses(w)) {
    const Vec3 dv = b.at(c.v2) - b.at(c.v), df = b.at(c.f2) - b.at(c.f);
    worst = std::max(worst, std::abs(dv.dot(df)) / (dv.norm() * df.norm()));
  }
  CHECK(worst < 1e-8);
  CHECK(check_conjugate(b, 1e-8).passed);

  // the lift projects back onto the binet
  ext.lift.for_each([&](const CellId& c, const Vec& x) { CHECK((project_moebius(x) - b.at(c)).norm() < 1e-9 * std::max(1.0, b.at(c).norm())); });
}

TEST_CASE("planar initial data stays planar") {
  const Binet b = principal_z3(8, 3, Z3Options{0.1, true});
  b.for_each([](const CellId&, const Vec3& p) { CHECK(std::abs(p[2]) < 1e-9); });
  CHECK(check_orthogonal(b, 1e-8).passed);
}

TEST_CASE("sweep order does not matter") {
  const Binet a = principal_z3(11, 4);
  for (const auto& order : {std::array<int, 3>{0, 1, 2}, {1, 2, 0}}) {
    const Binet b = principal_z3(11, 4, {}, order);
    double gap = 0.0;
    a.for_each([&](const CellId& c, const Vec3& p) { gap = std::max(gap, (p - b.at(c)).norm()); });
    CHECK(gap < 1e-9);
  }
}

TEST_CASE("conjugate face-net completion") {
  const Binet g = facenet12(4, 4, 4, 4, 0.1);
  const EuclideanFaceNet fn = facenet_completion(g);
  CHECK(fn.max_skewness < 1e-8);
  CHECK(fn.at_infinity == 0);
  std::size_t n13 = 0, n23 = 0;
  fn.faces.for_each([&](const CellId& c, const Vec3&) {
    n13 += c.plane == FacePlane::P13;
    n23 += c.plane == FacePlane::P23;
  });
  CHECK(n13 > 0);
  CHECK(n23 > 0);
  g.for_each([&](const CellId& c, const Vec3& p) { CHECK((fn.faces.at(c) - p).norm() == 0.0); });

  HomField h(fn.faces.window());
  fn.faces.for_each([&](const CellId& c, const Vec3& p) { h.set(c, (Vec(4) << p, 1.0).finished()); });
  const CheckReport r = check_facenet(h);
  CHECK(r.checked > 0);
  CHECK(r.max_residual < 1e-8);

  // each completed family is itself a conjugate net
  CHECK(family_flatness(fn.faces, FacePlane::P13) < 1e-8);
  CHECK(family_flatness(fn.faces, FacePlane::P23) < 1e-8);

  // affine data: the focal lines are parallel, so the new faces are at infinity
  const EuclideanFaceNet flat = facenet_completion(facenet12(4, 4, 4, 4, 0.0));
  CHECK(flat.at_infinity > 0);
  std::size_t finite = 0;
  flat.faces.for_each([&](const CellId& c, const Vec3&) { finite += c.plane != FacePlane::P12; });
  CHECK(finite == 0);

  // a bent quad makes the focal lines skew
  Binet bent = g;
  const CellId f = CellId::face(FacePlane::P12, 1, 1, 1);
  bent.set(f, g.at(f) + Vec3(0.0, 0.0, 0.05));
  CHECK_THROWS_AS(facenet_completion(bent), Error);
}

TEST_CASE("symmetric completion") {
  const Binet b = principal_z3(21, 4);
  const SymmetricCompletion s = check_symmetric_completion(restrict_to_pair(b));
  CHECK(s.c_report.passed());
  CHECK(s.c_prime_report.passed());
  CHECK(s.agree());
  // the completion reproduces the faces it started from
  s.c.for_each([&](const CellId& c, const Vec3& p) { CHECK((p - b.at(c)).norm() < 1e-8 * std::max(1.0, p.norm())); });

  const Binet g = generate_conjugate_net_3d(5, Window::grid3(4, 4, 4), 0.1);
  Binet h = generate_conjugate_net_3d(6, Window::box3({0, 0, 0}, {2, 2, 3}), 0.1);
  h = h.map<Vec3>([](const CellId&, const Vec3& x) { return x + Vec3(0.5, 0.5, 0.1); });
  const SymmetricCompletion bad = check_symmetric_completion(pair_from_nets(g, h));
  CHECK_FALSE(bad.c_report.passed());
  CHECK_FALSE(bad.c_prime_report.passed());
  CHECK(bad.agree());
  CHECK_THROWS_AS(pair_from_nets(g, g), Error);
}

}  // TEST_SUITE
