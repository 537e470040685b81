// binets: generate, check, lift, transform and export discrete surfaces.
//
// Exit codes: 0 success, 1 a residual gate failed, 2 usage or input error.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "binets/constructors.hpp"
#include "binets/curvature.hpp"
#include "binets/io.hpp"
#include "binets/random.hpp"

namespace {

using namespace binets;
using json = nlohmann::ordered_json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Options {
  std::string input;
  std::string out = "-";
  std::string family = "principal";
  std::string which = "lie";
  std::string form = "lie";
  std::string size;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  double noise = 0.1;
  double magnitude = 0.3;
  double rho0 = 0.0;
  double sigma0 = 1.0;
  bool edges = false;
  bool dual_edges = false;
  bool groups = false;
  bool point_anchor = false;
};

// rho0 from the options; with --point-anchor the first vertex lifts to a point
double anchor_rho(const Options& o, const Binet& b) {
  if (!o.point_anchor) return o.rho0;
  for (const auto& v : b.window().vertices())
    if (b.has(v)) return point_sphere_anchor(b, v);
  throw Error(ErrorKind::InvalidInput, "no vertex to anchor at");
}

void emit(const Options& o, const std::string& text) {
  if (o.out == "-") std::cout << text;
  else write_text(o.out, text);
}

std::string report_text(const json& j) { return j.dump(2) + "\n"; }

std::vector<int> parse_size(const std::string& s, std::vector<int> fallback) {
  if (s.empty()) return fallback;
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size() || v < 2) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "--size expects comma separated integers >= 2", s);
    }
  }
  if (out.size() == 1) out.resize(fallback.size(), out[0]);
  if (out.size() != fallback.size())
    throw Error(ErrorKind::InvalidInput, "--size expects " + std::to_string(fallback.size()) + " values", s);
  return out;
}

json check_json(const CheckReport& r) {
  json j = json::object();
  j["check"] = r.check;
  j["passed"] = r.passed;
  j["tolerance"] = r.tolerance;
  j["checked"] = r.checked;
  j["degenerate"] = r.degenerate;
  j["max_residual"] = r.max_residual;
  j["mean_residual"] = r.mean_residual;
  j["worst"] = r.worst ? json(r.worst->label) : json(nullptr);
  return j;
}

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

BinetDocument document_for(const Binet& b, const std::string& generator, const Options& o) {
  BinetDocument d;
  d.points = b;
  d.set_meta("generator", generator);
  d.set_meta("seed", static_cast<std::int64_t>(o.seed));
  if (!o.size.empty()) d.set_meta("size", o.size);
  return d;
}

// ---------------------------------------------------------------- generate

int cmd_generate(const Options& o) {
  const std::string& f = o.family;
  if (f == "cube") {
    CubeDocument c;
    c.cube = random_polar_cube(o.seed).data;
    emit(o, dump_cube(c));
    return kPass;
  }
  if (f == "z3") {
    const auto s = parse_size(o.size, {4, 4, 4});
    const Window w = Window::grid3(s[0], s[1], s[2]);
    const Z3InitialData init = project_initial_data(random_polar_initial_data(o.seed, w, {o.noise, false}));
    const Z3Extension ext = extend_principal_to_z3(init, 0.0, std::max(o.tol, 1e-8));
    BinetDocument d = document_for(ext.binet, "z3", o);
    d.set_meta("max_polarity_residual", ext.max_polarity_residual);
    emit(o, dump_document(d));
    return kPass;
  }
  const auto s = parse_size(o.size, {8, 8});
  const int m = s[0], n = s[1];
  BinetDocument d;
  if (f == "principal") {
    d = document_for(random_principal_binet(o.seed, m, n, o.noise), f, o);
  } else if (f == "orthogonal") {
    Rng rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
    const Binet b = propagate_orthogonal(random_cauchy_data(o.seed, m, n, o.noise),
                                         [&](const OrthogonalStep&) { return rng.uniform(0.3, 0.7); });
    d = document_for(b, f, o);
  } else if (f == "cylinder") {
    d = document_for(cylinder_binet(n, m), f, o);
  } else if (f == "sphere") {
    d = document_for(sphere_binet(n, m), f, o);
  } else if (f == "cone") {
    d = document_for(cone_binet(n, m), f, o);
  } else if (f == "circular-conical") {
    const ProfileCurve p = sphere_profile(n, m);
    const CircularConical cc = circular_conical_binet(generate_revolution_circular(p), profile_tangent_plane(p), o.tol);
    d = document_for(cc.binet, f, o);
    d.planes = cc.planes;
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown family '" + f + "'");
  }
  d.set_meta("noise", o.noise);
  emit(o, dump_document(d));
  return kPass;
}

// ---------------------------------------------------------------- check

int cmd_check(const Options& o) {
  const BinetDocument d = read_document(o.input);
  const PrincipalReport r = check_principal(d.points, o.tol);
  json j = json::object();
  j["passed"] = r.passed();
  j["conjugate"] = check_json(r.conjugate);
  j["orthogonal"] = check_json(r.orthogonal);
  emit(o, report_text(j));
  return r.passed() ? kPass : kFail;
}

// ---------------------------------------------------------------- lift

int cmd_lift(const Options& o) {
  BinetDocument d = read_document(o.input);
  json report = json::object();
  report["which"] = o.which;
  bool ok = true;
  const double rho0 = anchor_rho(o, d.points);
  if (o.which == "moebius") {
    const MoebiusLift l = moebius_lift(d.points, rho0, o.tol);
    d.rho = l.rho;
    report["cycle_residual"] = l.cycle_residual;
    report["polar_residual"] = l.polar_residual;
  } else if (o.which == "laguerre") {
    const BiStarNet planes = d.planes ? *d.planes : box_planes(d.points, o.tol);
    const LaguerreLift l = laguerre_lift(planes, o.sigma0, o.tol);
    d.planes = l.base;
    d.sigma = l.sigma;
    report["cycle_residual"] = l.cycle_residual;
    report["polar_residual"] = l.polar_residual;
  } else if (o.which == "lie") {
    const LieLift l = d.planes ? lie_lift(d.points, *d.planes, rho0, o.sigma0, o.tol)
                               : lie_lift(d.points, rho0, o.sigma0, o.tol);
    d.rho = l.moebius.rho;
    d.sigma = l.laguerre.sigma;
    d.planes = l.laguerre.base;
    d.lines = l.lines;
    report["incident_polarity"] = check_json(l.incident_polarity);
    report["adjacent_intersection"] = check_json(l.adjacent_intersection);
    ok = l.incident_polarity.passed && l.adjacent_intersection.passed;
  } else {
    throw Error(ErrorKind::InvalidInput, "--which must be moebius, laguerre or lie", o.which);
  }
  d.set_meta("anchor_rho", rho0);
  d.set_meta("anchor_sigma", o.sigma0);
  report["passed"] = ok;
  std::cerr << report_text(report);
  emit(o, dump_document(d));
  return ok ? kPass : kFail;
}

// ---------------------------------------------------------------- transform

int cmd_transform(const Options& o) {
  BinetDocument d = read_document(o.input);
  const FormKind kind = form_kind_from_string(o.form);
  BinetDocument out;
  out.metadata = d.metadata;
  const double rho0 = anchor_rho(o, d.points);
  if (kind == FormKind::Moebius) {
    const MoebiusLift l = moebius_lift(d.points, rho0, o.tol);
    const FormIsometry iso = random_form_isometry(QuadricForm::moebius(), o.seed, o.magnitude);
    Binet b(d.window());
    l.points.for_each([&](const CellId& c, const Vec& x) {
      try {
        b.set(c, project_moebius(iso.transform.apply(x)));
      } catch (const Error& e) {
        throw Error(e.kind(), e.what(), c.str());
      }
    });
    out.points = b;
    out.set_meta("magnitude_used", iso.magnitude_used);
  } else if (kind == FormKind::Blaschke || kind == FormKind::Lie) {
    const LieLift l = d.planes ? lie_lift(d.points, *d.planes, rho0, o.sigma0, o.tol)
                               : lie_lift(d.points, rho0, o.sigma0, o.tol);
    std::vector<Vec> fixed;
    if (kind == FormKind::Blaschke) fixed.push_back(lie_point_b());
    const FormIsometry iso = random_form_isometry(QuadricForm::lie(), o.seed, o.magnitude, fixed);
    const SectionBinet s = sections(transform_lines(l.lines, iso.transform));
    out.points = s.points;
    out.planes = s.planes;
    out.rho = s.rho;
    out.sigma = s.sigma;
    out.set_meta("magnitude_used", iso.magnitude_used);
  } else {
    throw Error(ErrorKind::InvalidInput, "--form must be moebius, laguerre or lie", o.form);
  }
  out.set_meta("transform", to_string(kind));
  out.set_meta("transform_seed", static_cast<std::int64_t>(o.seed));
  emit(o, dump_document(out));
  return kPass;
}

// ---------------------------------------------------------------- curvature

int cmd_curvature(const Options& o) {
  const BinetDocument d = read_document(o.input);
  const double rho0 = anchor_rho(o, d.points);
  const LieLift l = d.planes ? lie_lift(d.points, *d.planes, rho0, o.sigma0, o.tol)
                             : lie_lift(d.points, rho0, o.sigma0, o.tol);
  json rows = json::array();
  bool ok = true;
  for (const auto& e : adjacent_pairs(d.window())) {
    if (!l.lines.has(e.first) || !l.lines.has(e.second)) continue;
    json row = json::object();
    row["edge"] = e.first.str() + "-" + e.second.str();
    try {
      const LieCurvaturePoint p = lie_curvature_point(l.lines, e);
      row["center"] = vec_json(p.sphere.center);
      row["r_squared"] = p.sphere.r_squared;
      row["oriented_radius"] = p.oriented_radius;
      row["skewness"] = p.skewness;
      if (p.skewness > o.tol) ok = false;
    } catch (const Error& err) {
      // planes: the adjacent normals are parallel
      row["flat"] = true;
      row["note"] = err.what();
    }
    rows.push_back(row);
  }
  json report = json::object();
  report["passed"] = ok;
  report["anchor_rho"] = rho0;
  report["spheres"] = rows;
  emit(o, report_text(report));
  return ok ? kPass : kFail;
}

// ---------------------------------------------------------------- complete-cube

int cmd_complete_cube(const Options& o) {
  CubeDocument c = parse_cube(read_text(o.input));
  const double in = cube_input_residual(c.cube, QuadricForm::moebius());
  const CubeCompletion done = complete_polar_cube(c.cube, QuadricForm::moebius(), o.tol);
  c.cube = done.cube;
  c.residuals = {{"input", in}, {"polarity", done.polarity_residual}, {"meet", done.meet_residual}};
  emit(o, dump_cube(c));
  return done.polarity_residual <= o.tol && done.meet_residual <= o.tol ? kPass : kFail;
}

// ---------------------------------------------------------------- export

int cmd_export(const Options& o) {
  const BinetDocument d = read_document(o.input);
  emit(o, obj_text(d.points, {o.edges, o.dual_edges, !o.groups}));
  return kPass;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Schema:
    case ErrorKind::Io:
    case ErrorKind::InvalidInput:
    case ErrorKind::DimensionMismatch:
      return kUsage;
    default:
      return kFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binets: discrete surfaces on vertices and faces"};
  app.require_subcommand(1);
  Options o;

  auto add_tol = [&](CLI::App* c) { c->add_option("--tol", o.tol, "residual tolerance")->capture_default_str(); };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "output path, - for stdout")->capture_default_str(); };
  auto add_input = [&](CLI::App* c) { c->add_option("input", o.input, "input document")->required(); };
  auto add_anchors = [&](CLI::App* c) {
    auto* rho = c->add_option("--anchor-rho", o.rho0, "value of rho at the root cell")->capture_default_str();
    c->add_option("--anchor-sigma", o.sigma0, "value of sigma at the root cell")->capture_default_str();
    c->add_flag("--point-anchor", o.point_anchor, "choose rho so the first vertex lifts to a point sphere")
        ->excludes(rho);
    return rho;
  };

  auto* gen = app.add_subcommand("generate", "write a generated binet document");
  gen->add_option("family", o.family, "principal | orthogonal | cylinder | sphere | cone | circular-conical | z3 | cube")
      ->required();
  gen->add_option("--seed", o.seed)->capture_default_str();
  gen->add_option("--size", o.size, "vertices per axis, e.g. 8,8 or 4,4,4");
  gen->add_option("--noise", o.noise)->capture_default_str();
  add_tol(gen);
  add_out(gen);

  auto* chk = app.add_subcommand("check", "check a document for principal binet conditions");
  add_input(chk);
  add_tol(chk);
  add_out(chk);

  auto* lift = app.add_subcommand("lift", "add a Moebius, Laguerre or Lie lift to a document");
  add_input(lift);
  lift->add_option("--which", o.which, "moebius | laguerre | lie")->capture_default_str();
  add_anchors(lift);
  add_tol(lift);
  add_out(lift);

  auto* tr = app.add_subcommand("transform", "apply a random transformation through the lift");
  add_input(tr);
  tr->add_option("--form", o.form, "moebius | laguerre | lie")->capture_default_str();
  tr->add_option("--seed", o.seed)->capture_default_str();
  tr->add_option("--magnitude", o.magnitude)->capture_default_str();
  add_anchors(tr);
  add_tol(tr);
  add_out(tr);

  auto* cur = app.add_subcommand("curvature", "curvature spheres of adjacent cells");
  add_input(cur);
  auto* cur_rho = add_anchors(cur);
  add_tol(cur);
  add_out(cur);

  auto* cube = app.add_subcommand("complete-cube", "complete a polar cube in RP^4");
  add_input(cube);
  add_tol(cube);
  add_out(cube);

  auto* exp = app.add_subcommand("export", "write an OBJ mesh");
  add_input(exp);
  exp->add_flag("--edges", o.edges, "add vertex edges as line elements");
  exp->add_flag("--dual-edges", o.dual_edges, "add face edges as line elements");
  exp->add_flag("--groups", o.groups, "one object with groups instead of one object per net");
  add_out(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*gen) return cmd_generate(o);
    if (*chk) return cmd_check(o);
    if (*lift) return cmd_lift(o);
    if (*tr) return cmd_transform(o);
    if (*cur) {
      // spheres through the vertices unless an explicit anchor was given
      if (cur_rho->count() == 0) o.point_anchor = true;
      return cmd_curvature(o);
    }
    if (*cube) return cmd_complete_cube(o);
    if (*exp) return cmd_export(o);
  } catch (const Error& e) {
    json j = json::object();
    j["error"] = to_string(e.kind());
    j["message"] = e.what();
    j["where"] = e.where();
    std::cerr << j.dump() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    json j = json::object();
    j["error"] = "internal";
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return kFail;
  }
  return kUsage;
}
