#include "binets/lattice.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace binets {

std::array<int, 2> plane_axes(FacePlane p) {
  switch (p) {
    case FacePlane::P12: return {0, 1};
    case FacePlane::P13: return {0, 2};
    case FacePlane::P23: return {1, 2};
  }
  return {0, 1};
}

FacePlane plane_of_axes(int a, int b) {
  if (a > b) std::swap(a, b);
  if (a == 0 && b == 1) return FacePlane::P12;
  if (a == 0 && b == 2) return FacePlane::P13;
  if (a == 1 && b == 2) return FacePlane::P23;
  throw Error(ErrorKind::InvalidInput, "no coordinate plane for these axes");
}

std::string to_string(FacePlane p) {
  switch (p) {
    case FacePlane::P12: return "12";
    case FacePlane::P13: return "13";
    case FacePlane::P23: return "23";
  }
  return "12";
}

std::string CellId::str() const {
  std::ostringstream os;
  if (is_vertex()) os << "V(";
  else os << "F" << to_string(plane) << "(";
  os << r[0] << "," << r[1] << "," << r[2] << ")";
  return os.str();
}

Window Window::grid(int m, int n) { return box({0, 0}, {m - 1, n - 1}); }

Window Window::box(std::array<int, 2> lo, std::array<int, 2> hi) {
  if (hi[0] < lo[0] || hi[1] < lo[1]) throw Error(ErrorKind::InvalidInput, "window must contain a vertex");
  Window w;
  w.dims_ = 2;
  w.lo_ = {lo[0], lo[1], 0};
  w.hi_ = {hi[0], hi[1], 0};
  return w;
}

Window Window::grid3(int m, int n, int p) { return box3({0, 0, 0}, {m - 1, n - 1, p - 1}); }

Window Window::box3(std::array<int, 3> lo, std::array<int, 3> hi) {
  for (int a = 0; a < 3; ++a)
    if (hi[static_cast<std::size_t>(a)] < lo[static_cast<std::size_t>(a)])
      throw Error(ErrorKind::InvalidInput, "window must contain a vertex");
  Window w;
  w.dims_ = 3;
  w.lo_ = lo;
  w.hi_ = hi;
  return w;
}

std::vector<FacePlane> Window::planes() const {
  if (dims_ == 2) return {FacePlane::P12};
  return {FacePlane::P12, FacePlane::P13, FacePlane::P23};
}

std::array<int, 3> Window::face_extent(FacePlane p) const {
  std::array<int, 3> e{extent(0), extent(1), dims_ == 3 ? extent(2) : 1};
  for (int a : plane_axes(p)) e[static_cast<std::size_t>(a)] -= 1;
  for (int& x : e) x = std::max(x, 0);
  return e;
}

bool Window::contains(const CellId& c) const {
  if (dims_ == 2 && (c.r[2] != 0 || c.plane != FacePlane::P12)) return false;
  std::array<int, 3> top = hi_;
  if (c.is_face())
    for (int a : plane_axes(c.plane)) top[static_cast<std::size_t>(a)] -= 1;
  for (int a = 0; a < dims_; ++a) {
    const auto s = static_cast<std::size_t>(a);
    if (c.r[s] < lo_[s] || c.r[s] > top[s]) return false;
  }
  return true;
}

std::size_t Window::vertex_count() const {
  std::size_t n = 1;
  for (int a = 0; a < dims_; ++a) n *= static_cast<std::size_t>(extent(a));
  return n;
}

std::size_t Window::face_count(FacePlane p) const {
  if (dims_ == 2 && p != FacePlane::P12) return 0;
  const auto e = face_extent(p);
  return static_cast<std::size_t>(e[0]) * static_cast<std::size_t>(e[1]) * static_cast<std::size_t>(e[2]);
}

std::size_t Window::face_count() const {
  std::size_t n = 0;
  for (auto p : planes()) n += face_count(p);
  return n;
}

std::size_t Window::face_offset(FacePlane p) const {
  std::size_t off = vertex_count();
  for (auto q : planes()) {
    if (q == p) return off;
    off += face_count(q);
  }
  return off;
}

std::size_t Window::index(const CellId& c) const {
  if (!contains(c)) throw Error(ErrorKind::InvalidInput, "cell outside window", c.str());
  std::array<int, 3> e{extent(0), extent(1), dims_ == 3 ? extent(2) : 1};
  std::size_t base = 0;
  if (c.is_face()) {
    e = face_extent(c.plane);
    base = face_offset(c.plane);
  }
  const std::size_t i = static_cast<std::size_t>(c.r[0] - lo_[0]);
  const std::size_t j = static_cast<std::size_t>(c.r[1] - lo_[1]);
  const std::size_t k = static_cast<std::size_t>(c.r[2] - lo_[2]);
  return base + (k * static_cast<std::size_t>(e[1]) + j) * static_cast<std::size_t>(e[0]) + i;
}

CellId Window::cell(std::size_t index) const {
  CellId c;
  std::array<int, 3> e{extent(0), extent(1), dims_ == 3 ? extent(2) : 1};
  std::size_t rem = index;
  if (index >= vertex_count()) {
    rem -= vertex_count();
    bool found = false;
    for (auto p : planes()) {
      const std::size_t n = face_count(p);
      if (rem < n) {
        c.kind = CellKind::Face;
        c.plane = p;
        e = face_extent(p);
        found = true;
        break;
      }
      rem -= n;
    }
    if (!found) throw Error(ErrorKind::InvalidInput, "cell index out of range");
  }
  const auto ex = static_cast<std::size_t>(e[0]);
  const auto ey = static_cast<std::size_t>(e[1]);
  c.r[0] = lo_[0] + static_cast<int>(rem % ex);
  c.r[1] = lo_[1] + static_cast<int>((rem / ex) % ey);
  c.r[2] = lo_[2] + static_cast<int>(rem / (ex * ey));
  return c;
}

std::vector<CellId> Window::vertices() const {
  std::vector<CellId> out;
  out.reserve(vertex_count());
  for (std::size_t i = 0; i < vertex_count(); ++i) out.push_back(cell(i));
  return out;
}

std::vector<CellId> Window::faces() const {
  std::vector<CellId> out;
  out.reserve(face_count());
  for (std::size_t i = vertex_count(); i < cell_count(); ++i) out.push_back(cell(i));
  return out;
}

std::vector<CellId> Window::cells() const {
  std::vector<CellId> out;
  out.reserve(cell_count());
  for (std::size_t i = 0; i < cell_count(); ++i) out.push_back(cell(i));
  return out;
}

std::array<CellId, 4> face_vertices(const CellId& f) {
  if (!f.is_face()) throw Error(ErrorKind::InvalidInput, "not a face", f.str());
  const auto [a, b] = plane_axes(f.plane);
  CellId v = CellId::vertex(f.r[0], f.r[1], f.r[2]);
  return {v, v.shifted(a, 1), v.shifted(a, 1).shifted(b, 1), v.shifted(b, 1)};
}

bool incident(const CellId& x, const CellId& y) {
  if (x.kind == y.kind) return false;
  const CellId& f = x.is_face() ? x : y;
  const CellId& v = x.is_face() ? y : x;
  const auto corners = face_vertices(f);
  return std::find(corners.begin(), corners.end(), v) != corners.end();
}

namespace {

// Faces around v in the whole lattice, ordered by plane then
// (v - ea - eb, v - eb, v - ea, v).
std::vector<CellId> lattice_faces_at(const Window& w, const CellId& v) {
  std::vector<CellId> out;
  for (auto p : w.planes()) {
    const auto [a, b] = plane_axes(p);
    CellId base = CellId::face(p, v.r[0], v.r[1], v.r[2]);
    out.push_back(base.shifted(a, -1).shifted(b, -1));
    out.push_back(base.shifted(b, -1));
    out.push_back(base.shifted(a, -1));
    out.push_back(base);
  }
  return out;
}

}  // namespace

Neighborhood incident_cells(const Window& w, const CellId& c) {
  Neighborhood n;
  const std::vector<CellId> all = [&] {
    if (c.is_face()) {
      auto fv = face_vertices(c);
      return std::vector<CellId>(fv.begin(), fv.end());
    }
    return lattice_faces_at(w, c);
  }();
  for (const auto& x : all) {
    if (w.contains(x)) n.cells.push_back(x);
    else n.truncated = true;
  }
  return n;
}

std::vector<CellEdge> vertex_edges(const Window& w) {
  std::vector<CellEdge> out;
  for (const auto& v : w.vertices())
    for (int a = 0; a < w.dims(); ++a) {
      CellId u = v.shifted(a, 1);
      if (w.contains(u)) out.emplace_back(v, u);
    }
  return out;
}

std::vector<CellEdge> face_edges(const Window& w) {
  if (w.dims() != 2) throw Error(ErrorKind::InvalidInput, "face edges are defined on Z^2 windows");
  std::vector<CellEdge> out;
  for (const auto& f : w.faces())
    for (int a = 0; a < 2; ++a) {
      CellId g = f.shifted(a, 1);
      if (w.contains(g)) out.emplace_back(f, g);
    }
  return out;
}

std::optional<CellEdge> dual_edge(const Window& w, const CellEdge& e) {
  if (w.dims() != 2) throw Error(ErrorKind::InvalidInput, "edge duality is defined on Z^2 windows");
  const auto& [x, y] = e;
  if (x.kind != y.kind) throw Error(ErrorKind::InvalidInput, "not an edge", x.str() + "-" + y.str());
  int axis = -1;
  for (int a = 0; a < 2; ++a)
    if (y.r[static_cast<std::size_t>(a)] - x.r[static_cast<std::size_t>(a)] == 1 &&
        y.r[static_cast<std::size_t>(1 - a)] == x.r[static_cast<std::size_t>(1 - a)])
      axis = a;
  if (axis < 0) throw Error(ErrorKind::InvalidInput, "cells are not lattice neighbours", x.str() + "-" + y.str());
  const int other = 1 - axis;
  CellEdge d;
  if (x.is_vertex()) {
    // ((i,j),(i+1,j)) <-> (Face(i,j-1), Face(i,j)); ((i,j),(i,j+1)) <-> (Face(i-1,j), Face(i,j))
    CellId f = CellId::face(x.r[0], x.r[1]);
    d = {f.shifted(other, -1), f};
  } else {
    // inverse of the rule above
    CellId v = CellId::vertex(y.r[0], y.r[1]);
    d = {v, v.shifted(other, 1)};
  }
  if (!w.contains(d.first) || !w.contains(d.second)) return std::nullopt;
  return d;
}

std::vector<Cross> crosses(const Window& w) {
  std::vector<Cross> out;
  for (const auto& [v, v2] : vertex_edges(w)) {
    int a = 0;
    while (v2.r[static_cast<std::size_t>(a)] == v.r[static_cast<std::size_t>(a)]) ++a;
    std::vector<CellId> fs;
    for (int b = 0; b < w.dims(); ++b) {
      if (b == a) continue;
      CellId f = CellId::face(plane_of_axes(a, b), v.r[0], v.r[1], v.r[2]);
      CellId below = f.shifted(b, -1);
      if (w.contains(below)) fs.push_back(below);
      if (w.contains(f)) fs.push_back(f);
    }
    for (std::size_t p = 0; p < fs.size(); ++p)
      for (std::size_t q = p + 1; q < fs.size(); ++q) out.push_back({v, fs[p], v2, fs[q]});
  }
  return out;
}

std::vector<CellEdge> incidence_pairs(const Window& w) {
  std::vector<CellEdge> out;
  for (const auto& f : w.faces())
    for (const auto& v : face_vertices(f)) out.emplace_back(v, f);
  return out;
}

SpanningTree incidence_tree(const Window& w, const std::function<bool(const CellId&)>& present) {
  SpanningTree t;
  const std::size_t n = w.cell_count();
  std::vector<char> seen(n, 0);
  std::size_t root = n;
  for (std::size_t i = 0; i < n; ++i) {
    // index order agrees with CellId order
    if (present(w.cell(i))) {
      root = i;
      break;
    }
  }
  if (root == n) return t;
  t.root = w.cell(root);
  std::deque<CellId> queue{t.root};
  seen[root] = 1;
  t.reached = 1;
  while (!queue.empty()) {
    CellId c = queue.front();
    queue.pop_front();
    for (const auto& d : incident_cells(w, c).cells) {
      const std::size_t i = w.index(d);
      if (seen[i] || !present(d)) continue;
      seen[i] = 1;
      ++t.reached;
      t.edges.emplace_back(c, d);
      queue.push_back(d);
    }
  }
  return t;
}

}  // namespace binets
