#include "binets/lifts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace binets {

// ---------------------------------------------------------------- Moebius

Vec moebius_e_inf() {
  Vec e = Vec::Zero(5);
  e[3] = 0.5;
  e[4] = 0.5;
  return e;
}

Vec moebius_e_zero() {
  Vec e = Vec::Zero(5);
  e[3] = -0.5;
  e[4] = 0.5;
  return e;
}

Vec moebius_point(const Vec3& c, double rho) {
  Vec x(5);
  x << c[0], c[1], c[2], rho - 0.5, rho + 0.5;
  return x;
}

namespace {

void require_connected(const SpanningTree& t, std::size_t present, const char* what) {
  if (t.reached != present)
    throw Error(ErrorKind::Regularity, std::string(what) + ": incidence graph of present cells is disconnected",
                t.reached ? t.root.str() : std::string{});
}

double mean_incident_distance(const Binet& b) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [v, f] : incidence_pairs(b.window())) {
    if (!b.has(v) || !b.has(f)) continue;
    sum += (b.at(v) - b.at(f)).norm();
    ++n;
  }
  return n && sum > 0 ? sum / static_cast<double>(n) : 1.0;
}

bool cross_present(const Cross& c, auto const& field) {
  return field.has(c.v) && field.has(c.v2) && field.has(c.f) && field.has(c.f2);
}

}  // namespace

AdditivePotential solve_additive_potential(const Binet& b, double rho0) {
  AdditivePotential out;
  out.rho = CellField<double>(b.window());
  const auto tree = incidence_tree(b.window(), [&](const CellId& c) { return b.has(c); });
  if (tree.reached == 0) throw Error(ErrorKind::InvalidInput, "empty binet");
  require_connected(tree, b.present_count(), "additive potential");
  out.rho.set(tree.root, rho0);
  for (const auto& [p, c] : tree.edges) out.rho.set(c, b.at(p).dot(b.at(c)) - out.rho.at(p));

  out.scale = mean_incident_distance(b);
  const double s2 = out.scale * out.scale;
  std::size_t n = 0;
  for (const auto& c : crosses(b.window())) {
    if (!cross_present(c, b)) continue;
    const double r = std::abs((b.at(c.v) - b.at(c.v2)).dot(b.at(c.f) - b.at(c.f2))) / s2;
    if (!out.worst || r > out.max_cycle_residual) {
      out.worst = c;
      out.max_cycle_residual = r;
    }
    out.mean_cycle_residual += r;
    ++n;
  }
  if (n) out.mean_cycle_residual /= static_cast<double>(n);
  for (const auto& [v, f] : incidence_pairs(b.window())) {
    if (!b.has(v) || !b.has(f)) continue;
    const double r = std::abs(b.at(v).dot(b.at(f)) - out.rho.at(v) - out.rho.at(f)) / s2;
    out.max_polar_residual = std::max(out.max_polar_residual, r);
  }
  return out;
}

double point_sphere_anchor(const Binet& b, const CellId& c) {
  if (!b.has(c)) throw Error(ErrorKind::InvalidInput, "anchor cell has no point", c.str());
  const AdditivePotential pot = solve_additive_potential(b, 0.0);
  const auto tree = incidence_tree(b.window(), [&](const CellId& x) { return b.has(x); });
  const double gap = 0.5 * b.at(c).squaredNorm() - pot.rho.at(c);
  return c.is_vertex() == tree.root.is_vertex() ? gap : -gap;
}

MoebiusLift moebius_lift_from_rho(const Binet& b, const CellField<double>& rho) {
  MoebiusLift l;
  l.base = b;
  l.rho = rho;
  l.points = HomField(b.window());
  b.for_each([&](const CellId& c, const Vec3& p) {
    if (!rho.has(c)) throw Error(ErrorKind::InvalidInput, "missing rho", c.str());
    l.points.set(c, moebius_point(p, rho.at(c)));
  });
  const double scale = mean_incident_distance(b);
  for (const auto& c : crosses(b.window())) {
    if (!cross_present(c, b)) continue;
    l.cycle_residual = std::max(l.cycle_residual, std::abs((b.at(c.v) - b.at(c.v2)).dot(b.at(c.f) - b.at(c.f2))) / (scale * scale));
  }
  const QuadricForm q = QuadricForm::moebius();
  for (const auto& [v, f] : incidence_pairs(b.window())) {
    if (!b.has(v) || !b.has(f)) continue;
    l.polar_residual = std::max(l.polar_residual, std::abs(q(l.points.at(v), l.points.at(f))) / (scale * scale));
  }
  return l;
}

MoebiusLift moebius_lift(const Binet& b, double rho0, double tol) {
  AdditivePotential pot = solve_additive_potential(b, rho0);
  if (pot.max_cycle_residual > tol) {
    const Cross& c = *pot.worst;
    throw Error(ErrorKind::NotOrthogonal,
                "cycle residual " + std::to_string(pot.max_cycle_residual) + " exceeds tolerance",
                c.v.str() + "-" + c.v2.str() + "|" + c.f.str() + "-" + c.f2.str());
  }
  MoebiusLift l = moebius_lift_from_rho(b, pot.rho);
  l.cycle_residual = pot.max_cycle_residual;
  return l;
}

Vec3 project_moebius(const Vec& x) {
  if (x.size() < 5) throw Error(ErrorKind::DimensionMismatch, "expected a point of RP^4 or RP^5");
  const double w = x[4] - x[3];
  if (std::abs(w) <= 1e-12 * x.norm()) throw Error(ErrorKind::PointAtInfinity, "point projects to infinity");
  return Vec3(x[0], x[1], x[2]) / w;
}

Sphere sphere_from_lift(const Vec& x) {
  if (x.size() != 5) throw Error(ErrorKind::DimensionMismatch, "expected a point of RP^4");
  const double w = x[4] - x[3];  // = -2 <x, e_inf>
  if (std::abs(w) <= 1e-12 * x.norm()) throw Error(ErrorKind::NotASphere, "point is polar to e_inf and describes a plane");
  Sphere s;
  s.center = Vec3(x[0], x[1], x[2]) / w;
  s.r_squared = QuadricForm::moebius()(x, x) / (w * w);
  return s;
}

Plane radical_plane(const Sphere& a, const Sphere& b) {
  const Vec3 n = 2.0 * (b.center - a.center);
  if (!(n.norm() > 0)) throw Error(ErrorKind::Degenerate, "concentric spheres have no radical plane");
  const double h = -((b.center.squaredNorm() - b.r_squared) - (a.center.squaredNorm() - a.r_squared));
  const double len = n.norm();
  return {n / len, h / len};
}

// ---------------------------------------------------------------- Laguerre

Vec laguerre_point(const Plane& p, double sigma) {
  Vec y(5);
  y << p.normal[0], p.normal[1], p.normal[2], sigma, p.offset;
  return y;
}

namespace {

// |log| of the ratio of the two sides of the cross identity; a negative ratio
// contributes pi like the imaginary part of a complex logarithm.
double log_cross_residual(double lhs, double rhs) {
  if (lhs == 0.0 || rhs == 0.0) return std::numeric_limits<double>::infinity();
  const double ratio = lhs / rhs;
  const double re = std::log(std::abs(ratio));
  return ratio > 0 ? std::abs(re) : std::hypot(re, std::numbers::pi);
}

}  // namespace

MultiplicativePotential solve_multiplicative_potential(const CellField<Vec3>& u, double sigma0) {
  if (sigma0 == 0.0) throw Error(ErrorKind::InvalidInput, "sigma anchor must be nonzero", "sigma0");
  MultiplicativePotential out;
  out.sigma = CellField<double>(u.window());
  const auto tree = incidence_tree(u.window(), [&](const CellId& c) { return u.has(c); });
  if (tree.reached == 0) throw Error(ErrorKind::InvalidInput, "empty plane field");
  require_connected(tree, u.present_count(), "multiplicative potential");
  out.sigma.set(tree.root, sigma0);
  for (const auto& [p, c] : tree.edges) {
    const double d = u.at(p).dot(u.at(c));
    if (std::abs(d) < 1e-12) throw Error(ErrorKind::Regularity, "orthogonal incident normals", p.str() + "|" + c.str());
    out.sigma.set(c, d / out.sigma.at(p));
  }
  std::size_t n = 0;
  for (const auto& c : crosses(u.window())) {
    if (!cross_present(c, u)) continue;
    const double lhs = u.at(c.v).dot(u.at(c.f)) * u.at(c.v2).dot(u.at(c.f2));
    const double rhs = u.at(c.v2).dot(u.at(c.f)) * u.at(c.v).dot(u.at(c.f2));
    const double r = log_cross_residual(lhs, rhs);
    if (!out.worst || r > out.max_cycle_residual) {
      out.worst = c;
      out.max_cycle_residual = r;
    }
    out.mean_cycle_residual += r;
    ++n;
  }
  if (n) out.mean_cycle_residual /= static_cast<double>(n);
  for (const auto& [v, f] : incidence_pairs(u.window())) {
    if (!u.has(v) || !u.has(f)) continue;
    out.max_polar_residual = std::max(out.max_polar_residual,
                                      std::abs(u.at(v).dot(u.at(f)) - out.sigma.at(v) * out.sigma.at(f)));
  }
  return out;
}

BiStarNet unit_normals(BiStarNet p) {
  p.for_each([&](const CellId& c, const Plane& pl) {
    const double n = pl.normal.norm();
    if (!(n > 0)) throw Error(ErrorKind::Degenerate, "plane with zero normal", c.str());
    p.at(c) = Plane{pl.normal / n, pl.offset / n};
  });
  orient_coherently(p);
  return p;
}

namespace {

CellField<Vec3> normals_of(const BiStarNet& p) {
  return p.map<Vec3>([](const CellId&, const Plane& pl) { return pl.normal; });
}

[[noreturn]] void throw_cross(ErrorKind k, const std::string& msg, const Cross& c) {
  throw Error(k, msg, c.v.str() + "-" + c.v2.str() + "|" + c.f.str() + "-" + c.f2.str());
}

}  // namespace

NormalBinet normal_binet(const BiStarNet& p, double sigma0, double tol) {
  const BiStarNet u = unit_normals(p);
  const auto pot = solve_multiplicative_potential(normals_of(u), sigma0);
  if (pot.max_cycle_residual > tol)
    throw_cross(ErrorKind::NotOrthogonal, "sigma cycle residual " + std::to_string(pot.max_cycle_residual) + " exceeds tolerance", *pot.worst);
  NormalBinet nb;
  nb.sigma = pot.sigma;
  nb.cycle_residual = pot.max_cycle_residual;
  nb.points = u.map<Vec3>([&](const CellId& c, const Plane& pl) { return Vec3(pl.normal / pot.sigma.at(c)); });
  nb.conjugacy = check_conjugate(nb.points, tol);
  return nb;
}

LaguerreLift laguerre_lift(const BiStarNet& p, double sigma0, double tol) {
  LaguerreLift l;
  l.base = unit_normals(p);
  const auto pot = solve_multiplicative_potential(normals_of(l.base), sigma0);
  if (pot.max_cycle_residual > tol)
    throw_cross(ErrorKind::NotOrthogonal, "sigma cycle residual " + std::to_string(pot.max_cycle_residual) + " exceeds tolerance", *pot.worst);
  l.sigma = pot.sigma;
  l.cycle_residual = pot.max_cycle_residual;
  l.polar_residual = pot.max_polar_residual;
  l.points = l.base.map<Vec>([&](const CellId& c, const Plane& pl) { return laguerre_point(pl, pot.sigma.at(c)); });
  return l;
}

// ---------------------------------------------------------------- Lie

Vec lie_e_inf() {
  Vec e = Vec::Zero(6);
  e[3] = 0.5;
  e[4] = 0.5;
  return e;
}

Vec lie_point_m() {
  Vec e = Vec::Zero(6);
  e[5] = 1.0;
  return e;
}

Vec lie_point_b() {
  Vec e = Vec::Zero(6);
  e[3] = 1.0;
  e[4] = 1.0;
  return e;
}

Vec embed_moebius_to_lie(const Vec& x) {
  if (x.size() != 5) throw Error(ErrorKind::DimensionMismatch, "expected a point of RP^4");
  Vec z = Vec::Zero(6);
  z.head(5) = x;
  return z;
}

Vec embed_laguerre_to_lie(const Vec& y) {
  if (y.size() != 5) throw Error(ErrorKind::DimensionMismatch, "expected a point of RP^4");
  Vec z(6);
  z << y[0], y[1], y[2], -y[4], -y[4], y[3];
  return z;
}

std::vector<CellEdge> adjacent_pairs(const Window& w) {
  auto out = vertex_edges(w);
  if (w.dims() == 2) {
    auto fe = face_edges(w);
    out.insert(out.end(), fe.begin(), fe.end());
  } else {
    for (const auto& c : crosses(w)) out.emplace_back(c.f, c.f2);
  }
  return out;
}

CheckReport check_line_polarity(const LineBicongruence& l, double tol) {
  CheckReport r;
  r.check = "line_polarity";
  r.tolerance = tol;
  const QuadricForm lie = QuadricForm::lie();
  for (const auto& [v, f] : incidence_pairs(l.window())) {
    if (!l.has(v) || !l.has(f)) continue;
    const LieLine& a = l.at(v);
    const LieLine& b = l.at(f);
    double worst = 0.0;
    for (const Vec* x : {&a.p, &a.q})
      for (const Vec* y : {&b.p, &b.q}) worst = std::max(worst, std::abs(lie(*x, *y)) / (x->norm() * y->norm()));
    r.add({f, v.str() + "|" + f.str(), worst, false});
  }
  r.finish();
  return r;
}

CheckReport check_line_intersection(const LineBicongruence& l, double tol) {
  CheckReport r;
  r.check = "line_intersection";
  r.tolerance = tol;
  for (const auto& [a, b] : adjacent_pairs(l.window())) {
    if (!l.has(a) || !l.has(b)) continue;
    Mat m(4, 6);
    m.row(0) = l.at(a).p.normalized().transpose();
    m.row(1) = l.at(a).q.normalized().transpose();
    m.row(2) = l.at(b).p.normalized().transpose();
    m.row(3) = l.at(b).q.normalized().transpose();
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    r.add({a, a.str() + "-" + b.str(), s[3] / s[0], s[2] / s[0] <= kRankTol});
  }
  r.finish();
  return r;
}

LieLift lie_lift(const Binet& b, double rho0, double sigma0, double tol) {
  return lie_lift(b, box_planes(b, tol), rho0, sigma0, tol);
}

LieLift lie_lift(const Binet& b, const BiStarNet& planes, double rho0, double sigma0, double tol) {
  if (!(b.window() == planes.window())) throw Error(ErrorKind::DimensionMismatch, "points and planes live on different windows");
  LieLift out;
  out.moebius = moebius_lift(b, rho0, tol);
  out.laguerre = laguerre_lift(planes, sigma0, tol);
  out.lines = LineBicongruence(b.window());
  b.for_each([&](const CellId& c, const Vec3&) {
    if (!out.laguerre.points.has(c)) return;
    out.lines.set(c, {embed_moebius_to_lie(out.moebius.points.at(c)), embed_laguerre_to_lie(out.laguerre.points.at(c))});
  });
  out.incident_polarity = check_line_polarity(out.lines, tol);
  out.adjacent_intersection = check_line_intersection(out.lines, tol);
  return out;
}

ProjectedLine project_lie_to_normal_line(const LieLine& l) {
  // Projection from B v M keeps (x1, x2, x3, x5 - x4) as a point of RP^3.
  auto proj = [](const Vec& x) { return std::pair<Vec3, double>{Vec3(x[0], x[1], x[2]), x[4] - x[3]}; };
  const auto [p, w] = proj(l.p);
  const auto [q, z] = proj(l.q);
  ProjectedLine out;
  const Vec3 dir = z * p - w * q;
  const double scale = std::max(p.norm() + std::abs(w), q.norm() + std::abs(z));
  if (dir.norm() <= 1e-12 * scale * scale || (std::abs(w) <= 1e-15 && std::abs(z) <= 1e-15)) {
    out.degenerate = true;
    return out;
  }
  out.line.point = std::abs(w) >= std::abs(z) ? Vec3(p / w) : Vec3(q / z);
  out.line.direction = dir.normalized();
  return out;
}

namespace {

// Point of the line annihilated by the linear functional ell.
Vec section_with(const LieLine& l, const Vec& ell) {
  const double a = ell.dot(l.p);
  const double c = ell.dot(l.q);
  Vec x = a * l.q - c * l.p;
  if (x.norm() <= 1e-14 * l.p.norm() * l.q.norm()) throw Error(ErrorKind::Degenerate, "line lies in the section hyperplane");
  return x;
}

}  // namespace

LieSection lie_section(const LieLine& l) {
  Vec ell_m = Vec::Zero(6);
  ell_m[5] = 1.0;
  Vec ell_b = Vec::Zero(6);
  ell_b[3] = 1.0;
  ell_b[4] = -1.0;
  const Vec x = section_with(l, ell_m);
  const Vec y = section_with(l, ell_b);
  LieSection s;
  const double w = x[4] - x[3];
  if (std::abs(w) <= 1e-12 * x.norm()) throw Error(ErrorKind::PointAtInfinity, "sphere section is a plane");
  s.point = Vec3(x[0], x[1], x[2]) / w;
  s.rho = 0.5 * (x[3] + x[4]) / w;
  const Vec3 u(y[0], y[1], y[2]);
  const double un = u.norm();
  if (!(un > 1e-12 * y.norm())) throw Error(ErrorKind::Degenerate, "plane section has no normal");
  s.plane = {u / un, -y[3] / un};
  s.sigma = y[5] / un;
  return s;
}

LineBicongruence transform_lines(const LineBicongruence& l, const ProjTransform& t) {
  return l.map<LieLine>([&](const CellId&, const LieLine& x) { return LieLine{t.apply(x.p), t.apply(x.q)}; });
}

SectionBinet sections(const LineBicongruence& l) {
  SectionBinet out{Binet(l.window()), BiStarNet(l.window()), CellField<double>(l.window()), CellField<double>(l.window())};
  l.for_each([&](const CellId& c, const LieLine& x) {
    const LieSection s = lie_section(x);
    out.points.set(c, s.point);
    out.rho.set(c, s.rho);
    out.planes.set(c, s.plane);
    out.sigma.set(c, s.sigma);
  });
  const BiStarNet before = out.planes;
  orient_coherently(out.planes);
  out.planes.for_each([&](const CellId& c, const Plane& p) {
    if (p.normal.dot(before.at(c).normal) < 0) out.sigma.at(c) = -out.sigma.at(c);
  });
  return out;
}

}  // namespace binets
