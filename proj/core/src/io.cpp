#include "binets/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace binets {

using json = nlohmann::ordered_json;

const MetaValue* BinetDocument::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return &v;
  return nullptr;
}

void BinetDocument::set_meta(const std::string& key, MetaValue v) {
  for (auto& [k, old] : metadata)
    if (k == key) {
      old = std::move(v);
      return;
    }
  metadata.emplace_back(key, std::move(v));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open for reading", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open for writing", path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed", path);
}

namespace {

// ---------------------------------------------------------------- emitter

const char* kNonFinite = "\x01non-finite";

void emit_number(double x, const std::string& path, std::string& out) {
  if (!std::isfinite(x)) throw Error(ErrorKind::Schema, "non-finite number", path);
  if (x == 0.0) x = 0.0;  // drop the sign of zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

bool scalar(const json& j) { return !j.is_array() && !j.is_object(); }

void emit(const json& j, int indent, const std::string& path, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += inner + json(it.key()).dump() + ": ";
      emit(it.value(), indent + 2, path + "." + it.key(), out);
    }
    out += "\n" + pad + "}";
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), scalar);
    if (j.empty()) {
      out += "[]";
    } else if (flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        emit(j[i], indent, path + "[" + std::to_string(i) + "]", out);
      }
      out += "]";
    } else {
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        emit(j[i], indent + 2, path + "[" + std::to_string(i) + "]", out);
      }
      out += "\n" + pad + "]";
    }
  } else if (j.is_number_float()) {
    emit_number(j.get<double>(), path, out);
  } else {
    out += j.dump();
  }
}

std::string emit(const json& j) {
  std::string out;
  emit(j, 0, "$", out);
  out += "\n";
  return out;
}

// Bare NaN / Infinity tokens are not JSON; mark them so the reader can name
// the offending field instead of failing on a byte offset.
std::string mark_non_finite(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      out += c;
      if (c == '\\' && i + 1 < text.size()) out += text[++i];
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') {
      in_string = true;
      out += c;
      continue;
    }
    bool matched = false;
    for (const char* tok : {"-Infinity", "Infinity", "NaN", "-NaN", "nan", "-nan", "inf", "-inf"}) {
      const std::string t(tok);
      if (text.compare(i, t.size(), t) == 0) {
        out += "\"";
        out += "\\u0001non-finite";  // decodes to kNonFinite
        out += "\"";
        i += t.size() - 1;
        matched = true;
        break;
      }
    }
    if (!matched) out += c;
  }
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(mark_non_finite(text));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Schema, std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------- reader helpers

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw Error(ErrorKind::Schema, "expected an object", path);
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::Schema, "missing field", path + "." + key);
  return *it;
}

double number(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == kNonFinite) throw Error(ErrorKind::Schema, "non-finite number", path);
  if (!j.is_number()) throw Error(ErrorKind::Schema, "expected a number", path);
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorKind::Schema, "non-finite number", path);
  return x;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw Error(ErrorKind::Schema, "expected an integer", path);
  return j.get<int>();
}

const json& array(const json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) throw Error(ErrorKind::Schema, "expected an array", path);
  if (size && j.size() != *size)
    throw Error(ErrorKind::Schema, "expected " + std::to_string(*size) + " entries, found " + std::to_string(j.size()), path);
  return j;
}

Vec numbers(const json& j, const std::string& path, std::size_t size) {
  array(j, path, size);
  Vec v(static_cast<Eigen::Index>(size));
  for (std::size_t i = 0; i < size; ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::string plane_key(FacePlane p) { return to_string(p); }

// ---------------------------------------------------------------- cell arrays

template <class T, class F>
json cells_json(const CellField<T>& f, const std::vector<CellId>& cells, F&& to_json) {
  json a = json::array();
  for (const auto& c : cells) a.push_back(f.has(c) ? to_json(f.at(c)) : json(nullptr));
  return a;
}

// {"vertices": [...], "faces": [...] or {"12": [...], ...}}
template <class T, class F>
json field_json(const CellField<T>& f, F&& to_json) {
  const Window& w = f.window();
  json o = json::object();
  o["vertices"] = cells_json(f, w.vertices(), to_json);
  if (w.dims() == 2) {
    o["faces"] = cells_json(f, w.faces(), to_json);
  } else {
    json faces = json::object();
    for (auto p : w.planes()) {
      std::vector<CellId> cs;
      for (const auto& c : w.faces())
        if (c.plane == p) cs.push_back(c);
      faces[plane_key(p)] = cells_json(f, cs, to_json);
    }
    o["faces"] = faces;
  }
  return o;
}

template <class T, class F>
void read_cells(const json& a, const std::vector<CellId>& cells, const std::string& path, CellField<T>& out, F&& from_json) {
  array(a, path, cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (a[i].is_null()) continue;
    out.set(cells[i], from_json(a[i], path + "[" + std::to_string(i) + "]"));
  }
}

template <class T, class F>
CellField<T> read_field(const json& o, const Window& w, const std::string& path, F&& from_json) {
  CellField<T> out(w);
  read_cells(field(o, "vertices", path), w.vertices(), path + ".vertices", out, from_json);
  const json& faces = field(o, "faces", path);
  if (w.dims() == 2) {
    read_cells(faces, w.faces(), path + ".faces", out, from_json);
  } else {
    for (auto p : w.planes()) {
      std::vector<CellId> cs;
      for (const auto& c : w.faces())
        if (c.plane == p) cs.push_back(c);
      const std::string key = plane_key(p);
      read_cells(field(faces, key, path + ".faces"), cs, path + ".faces." + key, out, from_json);
    }
  }
  return out;
}

json window_json(const Window& w) {
  json lo = json::array(), hi = json::array();
  for (int a = 0; a < w.dims(); ++a) {
    lo.push_back(w.lo(a));
    hi.push_back(w.hi(a));
  }
  json o = json::object();
  o["dims"] = w.dims();
  o["lo"] = lo;
  o["hi"] = hi;
  return o;
}

Window read_window(const json& o, const std::string& path) {
  const int dims = integer(field(o, "dims", path), path + ".dims");
  if (dims != 2 && dims != 3) throw Error(ErrorKind::Schema, "dims must be 2 or 3", path + ".dims");
  const json& lo = array(field(o, "lo", path), path + ".lo", static_cast<std::size_t>(dims));
  const json& hi = array(field(o, "hi", path), path + ".hi", static_cast<std::size_t>(dims));
  std::array<int, 3> l{}, h{};
  for (std::size_t a = 0; a < static_cast<std::size_t>(dims); ++a) {
    l[a] = integer(lo[a], path + ".lo[" + std::to_string(a) + "]");
    h[a] = integer(hi[a], path + ".hi[" + std::to_string(a) + "]");
    if (h[a] < l[a]) throw Error(ErrorKind::Schema, "hi below lo", path + ".hi[" + std::to_string(a) + "]");
  }
  return dims == 2 ? Window::box({l[0], l[1]}, {h[0], h[1]}) : Window::box3(l, h);
}

json meta_json(const MetaValue& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

MetaValue read_meta(const json& j, const std::string& path) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number()) return number(j, path);
  if (j.is_string()) {
    if (j.get<std::string>() == kNonFinite) throw Error(ErrorKind::Schema, "non-finite number", path);
    return j.get<std::string>();
  }
  throw Error(ErrorKind::Schema, "metadata values must be scalars", path);
}

void check_schema(const json& root, const std::string& expected) {
  const json& s = field(root, "schema", "$");
  if (!s.is_string()) throw Error(ErrorKind::Schema, "expected a string", "$.schema");
  const std::string v = s.get<std::string>();
  if (v != expected) throw Error(ErrorKind::Schema, "unsupported schema version '" + v + "', expected '" + expected + "'", "$.schema");
}

}  // namespace

// ---------------------------------------------------------------- documents

std::string dump_document(const BinetDocument& d) {
  const Window& w = d.window();
  json root = json::object();
  root["schema"] = d.schema;
  root["window"] = window_json(w);
  const json pts = field_json(d.points, [](const Vec3& p) { return vec_json(p); });
  root["vertices"] = pts["vertices"];
  root["faces"] = pts["faces"];
  auto scalar_json = [](double x) { return json(x); };
  if (d.rho) root["rho"] = field_json(*d.rho, scalar_json);
  if (d.sigma) root["sigma"] = field_json(*d.sigma, scalar_json);
  if (d.planes)
    root["planes"] = field_json(*d.planes, [](const Plane& p) {
      Vec v(4);
      v << p.normal, p.offset;
      return vec_json(v);
    });
  if (d.lines)
    root["lines"] = field_json(*d.lines, [](const LieLine& l) {
      Vec v(12);
      v << l.p, l.q;
      return vec_json(v);
    });
  json meta = json::object();
  for (const auto& [k, v] : d.metadata) meta[k] = meta_json(v);
  root["metadata"] = meta;
  return emit(root);
}

BinetDocument parse_document(const std::string& text) {
  const json root = parse_json(text);
  check_schema(root, kDocumentSchema);
  BinetDocument d;
  const Window w = read_window(field(root, "window", "$"), "$.window");
  json pts = json::object();
  pts["vertices"] = field(root, "vertices", "$");
  pts["faces"] = field(root, "faces", "$");
  d.points = read_field<Vec3>(pts, w, "$", [](const json& j, const std::string& p) { return Vec3(numbers(j, p, 3)); });
  auto scalar = [](const json& j, const std::string& p) { return number(j, p); };
  if (root.contains("rho")) d.rho = read_field<double>(root["rho"], w, "$.rho", scalar);
  if (root.contains("sigma")) d.sigma = read_field<double>(root["sigma"], w, "$.sigma", scalar);
  if (root.contains("planes"))
    d.planes = read_field<Plane>(root["planes"], w, "$.planes", [](const json& j, const std::string& p) {
      const Vec v = numbers(j, p, 4);
      const Vec3 n = v.head<3>();
      if (!(n.norm() > 0)) throw Error(ErrorKind::Schema, "plane normal is zero", p);
      return Plane{n, v[3]};
    });
  if (root.contains("lines"))
    d.lines = read_field<LieLine>(root["lines"], w, "$.lines", [](const json& j, const std::string& p) {
      const Vec v = numbers(j, p, 12);
      return LieLine{v.head(6), v.tail(6)};
    });
  if (root.contains("metadata")) {
    const json& m = root["metadata"];
    if (!m.is_object()) throw Error(ErrorKind::Schema, "expected an object", "$.metadata");
    for (auto it = m.begin(); it != m.end(); ++it) d.metadata.emplace_back(it.key(), read_meta(it.value(), "$.metadata." + it.key()));
  }
  return d;
}

void write_document(const BinetDocument& d, const std::string& path) { write_text(path, dump_document(d)); }

BinetDocument read_document(const std::string& path) {
  try {
    return parse_document(read_text(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema && e.where().empty()) throw Error(e.kind(), e.what(), path);
    throw;
  }
}

// ---------------------------------------------------------------- cubes

std::string dump_cube(const CubeDocument& d) {
  json root = json::object();
  root["schema"] = d.schema;
  root["form"] = to_string(d.form);
  auto opt_vec = [](const std::optional<Vec>& v) { return v ? vec_json(*v) : json(nullptr); };
  auto opt_plane = [](const std::optional<ProjSubspace>& s) {
    if (!s) return json(nullptr);
    json rows = json::array();
    for (Eigen::Index i = 0; i < s->basis().rows(); ++i) rows.push_back(vec_json(s->basis().row(i).transpose()));
    return rows;
  };
  json vs = json::array(), vps = json::array(), fs = json::array(), fps = json::array();
  for (std::size_t i = 0; i < 8; ++i) {
    vs.push_back(opt_vec(d.cube.vertices[i]));
    vps.push_back(opt_plane(d.cube.vertex_planes[i]));
  }
  for (std::size_t i = 0; i < 6; ++i) {
    fs.push_back(opt_vec(d.cube.faces[i]));
    fps.push_back(opt_plane(d.cube.face_planes[i]));
  }
  root["vertices"] = vs;
  root["vertex_planes"] = vps;
  root["faces"] = fs;
  root["face_planes"] = fps;
  if (!d.residuals.empty()) {
    json r = json::object();
    for (const auto& [k, v] : d.residuals) r[k] = v;
    root["residuals"] = r;
  }
  return emit(root);
}

CubeDocument parse_cube(const std::string& text) {
  const json root = parse_json(text);
  check_schema(root, kCubeSchema);
  CubeDocument d;
  const json& form = field(root, "form", "$");
  if (!form.is_string()) throw Error(ErrorKind::Schema, "expected a string", "$.form");
  try {
    d.form = form_kind_from_string(form.get<std::string>());
  } catch (const Error&) {
    throw Error(ErrorKind::Schema, "unknown form '" + form.get<std::string>() + "'", "$.form");
  }
  if (d.form != FormKind::Moebius) throw Error(ErrorKind::Schema, "cube completion is defined for the moebius form", "$.form");
  auto read_vec = [](const json& j, const std::string& p) -> std::optional<Vec> {
    if (j.is_null()) return std::nullopt;
    return numbers(j, p, 5);
  };
  auto read_plane = [](const json& j, const std::string& p) -> std::optional<ProjSubspace> {
    if (j.is_null()) return std::nullopt;
    array(j, p, 3);
    Mat m(3, 5);
    for (std::size_t i = 0; i < 3; ++i) m.row(static_cast<Eigen::Index>(i)) = numbers(j[i], p + "[" + std::to_string(i) + "]", 5).transpose();
    // written bases are orthonormal; keep them verbatim so dumps are stable
    if ((m * m.transpose() - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-9) return ProjSubspace::from_orthonormal(m);
    ProjSubspace s = ProjSubspace::span(m);
    if (s.dim() != 2) throw Error(ErrorKind::Schema, "plane rows are not independent", p);
    return s;
  };
  const json& vs = array(field(root, "vertices", "$"), "$.vertices", 8);
  const json& vps = array(field(root, "vertex_planes", "$"), "$.vertex_planes", 8);
  const json& fs = array(field(root, "faces", "$"), "$.faces", 6);
  const json& fps = array(field(root, "face_planes", "$"), "$.face_planes", 6);
  for (std::size_t i = 0; i < 8; ++i) {
    d.cube.vertices[i] = read_vec(vs[i], "$.vertices[" + std::to_string(i) + "]");
    d.cube.vertex_planes[i] = read_plane(vps[i], "$.vertex_planes[" + std::to_string(i) + "]");
  }
  for (std::size_t i = 0; i < 6; ++i) {
    d.cube.faces[i] = read_vec(fs[i], "$.faces[" + std::to_string(i) + "]");
    d.cube.face_planes[i] = read_plane(fps[i], "$.face_planes[" + std::to_string(i) + "]");
  }
  if (root.contains("residuals")) {
    const json& r = root["residuals"];
    if (!r.is_object()) throw Error(ErrorKind::Schema, "expected an object", "$.residuals");
    for (auto it = r.begin(); it != r.end(); ++it) d.residuals.emplace_back(it.key(), number(it.value(), "$.residuals." + it.key()));
  }
  return d;
}

void write_cube(const CubeDocument& d, const std::string& path) { write_text(path, dump_cube(d)); }
CubeDocument read_cube(const std::string& path) { return parse_cube(read_text(path)); }

// ---------------------------------------------------------------- OBJ

std::string obj_text(const Binet& b, const ObjOptions& opt) {
  const Window& w = b.window();
  if (w.dims() != 2) throw Error(ErrorKind::InvalidInput, "mesh export supports Z^2 binets");
  std::vector<long> id(w.cell_count(), 0);
  std::string out = "# binet: " + std::to_string(w.extent(0)) + " x " + std::to_string(w.extent(1)) + " vertices\n";
  long next = 1;
  char buf[96];
  for (std::size_t i = 0; i < w.cell_count(); ++i) {
    const CellId c = w.cell(i);
    if (!b.has(c)) continue;
    const Vec3& p = b.at(c);
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p[0], p[1], p[2]);
    out += buf;
    id[i] = next++;
  }
  auto ref = [&](const CellId& c) { return b.has(c) ? id[w.index(c)] : 0L; };
  auto section = [&](const std::string& name) {
    out += opt.split_nets ? "o " + name + "\n" : "g " + name + "\n";
  };
  auto quad = [&](const std::array<CellId, 4>& cs) {
    std::string line = "f";
    for (const auto& c : cs) {
      const long r = ref(c);
      if (!r) return;
      line += " " + std::to_string(r);
    }
    out += line + "\n";
  };
  if (!opt.split_nets) out += "o binet\n";
  section("vertex_net");
  for (const auto& f : w.faces()) quad(face_vertices(f));
  section("face_net");
  for (const auto& v : w.vertices()) {
    const int i = v.r[0], j = v.r[1];
    quad({CellId::face(i - 1, j - 1), CellId::face(i, j - 1), CellId::face(i, j), CellId::face(i - 1, j)});
  }
  auto edges = [&](const std::string& name, const std::vector<CellEdge>& es) {
    section(name);
    for (const auto& [a, c] : es)
      if (ref(a) && ref(c)) out += "l " + std::to_string(ref(a)) + " " + std::to_string(ref(c)) + "\n";
  };
  if (opt.show_edges) edges("vertex_edges", vertex_edges(w));
  if (opt.show_dual_edges) edges("face_edges", face_edges(w));
  return out;
}

void export_obj(const Binet& b, const std::string& path, const ObjOptions& opt) { write_text(path, obj_text(b, opt)); }

}  // namespace binets
