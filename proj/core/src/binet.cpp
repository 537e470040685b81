#include "binets/binet.hpp"

#include <algorithm>
#include <cmath>

namespace binets {

void CheckReport::add(ResidualEntry e) {
  ++checked;
  if (e.degenerate) ++degenerate;
  if (!worst || e.residual > worst->residual || (e.degenerate && !worst->degenerate)) worst = e;
  max_residual = std::max(max_residual, e.residual);
  mean_residual += e.residual;
  entries.push_back(std::move(e));
}

void CheckReport::finish() {
  if (checked > 0) mean_residual /= static_cast<double>(checked);
  passed = degenerate == 0 && max_residual <= tolerance;
}

namespace {

std::string cross_label(const Cross& c) {
  return c.v.str() + "-" + c.v2.str() + "|" + c.f.str() + "-" + c.f2.str();
}

double unit_inner(const QuadricForm& form, const Vec& x, const Vec& y) {
  return form(x, y) / (x.norm() * y.norm());
}

}  // namespace

CheckReport check_conjugate(const Binet& b, double tol) {
  CheckReport r;
  r.check = "conjugate";
  r.tolerance = tol;
  std::vector<Vec3> pts;
  b.for_each([&](const CellId& c, const Vec3&) {
    auto nb = full_neighbourhood(b, c);
    if (!nb) return;
    pts.clear();
    for (const auto& d : *nb) pts.push_back(b.at(d));
    ResidualEntry e{c, c.str(), coplanarity_residual(pts), false};
    e.degenerate = collinearity_residual(pts) <= kRankTol;
    r.add(std::move(e));
  });
  r.finish();
  return r;
}

CheckReport check_conjugate_projective(const HomField& x, double tol) {
  CheckReport r;
  r.check = "conjugate";
  r.tolerance = tol;
  x.for_each([&](const CellId& c, const Vec&) {
    auto nb = full_neighbourhood(x, c);
    if (!nb) return;
    Mat m(static_cast<Eigen::Index>(nb->size()), x.at(c).size());
    for (std::size_t i = 0; i < nb->size(); ++i) {
      const Vec& v = x.at((*nb)[i]);
      m.row(static_cast<Eigen::Index>(i)) = (v / v.norm()).transpose();
    }
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    // a plane of RP^n is a rank 3 subspace
    ResidualEntry e{c, c.str(), s.size() > 3 ? s[3] / s[0] : 0.0, false};
    e.degenerate = s[2] / s[0] <= kRankTol;
    r.add(std::move(e));
  });
  r.finish();
  return r;
}

CheckReport check_orthogonal(const Binet& b, double tol) {
  CheckReport r;
  r.check = "orthogonal";
  r.tolerance = tol;
  for (const auto& c : crosses(b.window())) {
    if (!b.has(c.v) || !b.has(c.v2) || !b.has(c.f) || !b.has(c.f2)) continue;
    const Vec3 dv = b.at(c.v) - b.at(c.v2);
    const Vec3 df = b.at(c.f) - b.at(c.f2);
    const double nv = dv.norm();
    const double nf = df.norm();
    if (!(nv > 0.0) || !(nf > 0.0)) throw Error(ErrorKind::Regularity, "zero length edge in cross", cross_label(c));
    r.add({c.v, cross_label(c), std::abs(dv.dot(df)) / (nv * nf), false});
  }
  r.finish();
  return r;
}

PrincipalReport check_principal(const Binet& b, double tol) {
  return {check_conjugate(b, tol), check_orthogonal(b, tol)};
}

CheckReport check_bistar_orthogonal(const BiStarNet& p, double tol) {
  CheckReport r;
  r.check = "bistar_orthogonal";
  r.tolerance = tol;
  for (const auto& c : crosses(p.window())) {
    if (!p.has(c.v) || !p.has(c.v2) || !p.has(c.f) || !p.has(c.f2)) continue;
    const Vec3 lv = p.at(c.v).normal.cross(p.at(c.v2).normal);
    const Vec3 lf = p.at(c.f).normal.cross(p.at(c.f2).normal);
    const double nv = lv.norm();
    const double nf = lf.norm();
    if (nv < 1e-12 || nf < 1e-12) throw Error(ErrorKind::Regularity, "parallel planes in cross", cross_label(c));
    r.add({c.v, cross_label(c), std::abs(lv.dot(lf)) / (nv * nf), false});
  }
  r.finish();
  return r;
}

CheckReport check_polar_binet(const HomField& x, const QuadricForm& form, double tol) {
  CheckReport r;
  r.check = "polar";
  r.tolerance = tol;
  for (const auto& [v, f] : incidence_pairs(x.window())) {
    if (!x.has(v) || !x.has(f)) continue;
    r.add({f, v.str() + "|" + f.str(), std::abs(unit_inner(form, x.at(v), x.at(f))), false});
  }
  r.finish();
  return r;
}

void orient_coherently(BiStarNet& p) {
  const auto tree = incidence_tree(p.window(), [&](const CellId& c) { return p.has(c); });
  if (tree.reached == 0) return;
  Plane& root = p.at(tree.root);
  Vec root_normal = root.normal;
  if (HomVector(root_normal).coords().dot(root_normal) < 0) root = root.flipped();
  for (const auto& [parent, child] : tree.edges) {
    const double d = p.at(parent).normal.dot(p.at(child).normal);
    if (std::abs(d) < 1e-12)
      throw Error(ErrorKind::Regularity, "orthogonal incident planes, orientation undefined", parent.str() + "|" + child.str());
    if (d < 0) p.at(child) = p.at(child).flipped();
  }
}

BiStarNet box_planes(const Binet& b, double tol) {
  BiStarNet out(b.window());
  std::vector<Vec3> pts;
  b.for_each([&](const CellId& c, const Vec3&) {
    auto nb = full_neighbourhood(b, c);
    if (!nb) return;
    pts.clear();
    for (const auto& d : *nb) pts.push_back(b.at(d));
    const double res = coplanarity_residual(pts);
    if (res > tol) throw Error(ErrorKind::NotConjugate, "incident points are not coplanar (residual " + std::to_string(res) + ")", c.str());
    out.set(c, fit_plane(pts));
  });
  orient_coherently(out);
  return out;
}

Binet box_star_points(const BiStarNet& p, double tol) {
  Binet out(p.window());
  std::vector<Plane> planes;
  for (const auto& c : p.window().cells()) {
    auto nb = full_neighbourhood(p, c);
    if (!nb) continue;
    planes.clear();
    for (const auto& d : *nb) planes.push_back(p.at(d));
    const PlaneMeet m = meet_planes(planes);
    if (m.condition <= kRankTol) throw Error(ErrorKind::Degenerate, "incident planes do not determine a point", c.str());
    if (m.residual > tol) throw Error(ErrorKind::NotConjugate, "incident planes are not concurrent (residual " + std::to_string(m.residual) + ")", c.str());
    out.set(c, m.point);
  }
  return out;
}

}  // namespace binets
