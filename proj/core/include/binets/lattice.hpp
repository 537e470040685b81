#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binets/error.hpp"

namespace binets {

enum class CellKind : std::uint8_t { Vertex, Face };

// Coordinate plane of a face, by the two axes it spans.
enum class FacePlane : std::uint8_t { P12 = 0, P13 = 1, P23 = 2 };

std::array<int, 2> plane_axes(FacePlane p);
FacePlane plane_of_axes(int a, int b);
std::string to_string(FacePlane p);

// A vertex r of Z^N, or the unit square [r, r + e_a + e_b] in plane (a, b).
// Z^2 cells have r[2] == 0 and faces in P12.
struct CellId {
  CellKind kind = CellKind::Vertex;
  FacePlane plane = FacePlane::P12;
  std::array<int, 3> r{0, 0, 0};

  static CellId vertex(int i, int j, int k = 0) { return {CellKind::Vertex, FacePlane::P12, {i, j, k}}; }
  static CellId face(int i, int j) { return {CellKind::Face, FacePlane::P12, {i, j, 0}}; }
  static CellId face(FacePlane p, int i, int j, int k) { return {CellKind::Face, p, {i, j, k}}; }

  bool is_vertex() const { return kind == CellKind::Vertex; }
  bool is_face() const { return kind == CellKind::Face; }
  CellId shifted(int axis, int by) const {
    CellId c = *this;
    c.r[static_cast<std::size_t>(axis)] += by;
    return c;
  }
  std::string str() const;

  // kind, plane, then r lexicographic in (k, j, i): agrees with Window::index
  std::strong_ordering operator<=>(const CellId& o) const {
    if (auto c = kind <=> o.kind; c != 0) return c;
    if (auto c = plane <=> o.plane; c != 0) return c;
    if (auto c = r[2] <=> o.r[2]; c != 0) return c;
    if (auto c = r[1] <=> o.r[1]; c != 0) return c;
    return r[0] <=> o.r[0];
  }
  bool operator==(const CellId& o) const = default;
};

// Inclusive vertex ranges lo..hi per axis. dims is 2 or 3.
class Window {
 public:
  Window() = default;
  static Window grid(int m, int n);  // vertices [0, m-1] x [0, n-1]
  static Window box(std::array<int, 2> lo, std::array<int, 2> hi);
  static Window grid3(int m, int n, int p);
  static Window box3(std::array<int, 3> lo, std::array<int, 3> hi);

  int dims() const noexcept { return dims_; }
  int lo(int axis) const { return lo_[static_cast<std::size_t>(axis)]; }
  int hi(int axis) const { return hi_[static_cast<std::size_t>(axis)]; }
  int extent(int axis) const { return hi(axis) - lo(axis) + 1; }
  std::vector<FacePlane> planes() const;

  bool contains(const CellId& c) const;
  std::size_t vertex_count() const;
  std::size_t face_count(FacePlane p) const;
  std::size_t face_count() const;
  std::size_t cell_count() const { return vertex_count() + face_count(); }

  // Dense row-major index (axis 0 fastest): vertices, then faces by plane.
  std::size_t index(const CellId& c) const;
  CellId cell(std::size_t index) const;
  std::vector<CellId> vertices() const;
  std::vector<CellId> faces() const;
  std::vector<CellId> cells() const;

  bool operator==(const Window&) const = default;

 private:
  int dims_ = 2;
  std::array<int, 3> lo_{0, 0, 0};
  std::array<int, 3> hi_{0, 0, 0};
  std::array<int, 3> face_extent(FacePlane p) const;
  std::size_t face_offset(FacePlane p) const;
};

bool incident(const CellId& a, const CellId& b);
std::array<CellId, 4> face_vertices(const CellId& f);

struct Neighborhood {
  std::vector<CellId> cells;
  bool truncated = false;  // some lattice neighbours fall outside the window
};
// Faces around a vertex (4 in Z^2, 12 in Z^3) or the 4 corners of a face.
Neighborhood incident_cells(const Window& w, const CellId& c);

// Cross (v, f, v2, f2): the V-edge (v, v2) and a pair of faces (f, f2) that
// both contain it. Z^2 has one per interior edge, Z^3 has six.
struct Cross {
  CellId v, f, v2, f2;
};
std::vector<Cross> crosses(const Window& w);

using CellEdge = std::pair<CellId, CellId>;
// Lattice edges between vertices, and between faces sharing an edge (Z^2).
std::vector<CellEdge> vertex_edges(const Window& w);
std::vector<CellEdge> face_edges(const Window& w);
// Z^2 duality between V-edges and F-edges; nullopt when the dual leaves w.
std::optional<CellEdge> dual_edge(const Window& w, const CellEdge& e);
std::vector<CellEdge> incidence_pairs(const Window& w);

// Breadth first tree of the incidence graph restricted to cells where
// `present` holds, rooted at the smallest such cell. Edges are (parent, child).
struct SpanningTree {
  CellId root;
  std::vector<CellEdge> edges;
  std::size_t reached = 0;
};
SpanningTree incidence_tree(const Window& w, const std::function<bool(const CellId&)>& present);

// Values on the cells of a window; cells may be absent.
template <class T>
class CellField {
 public:
  CellField() = default;
  explicit CellField(Window w) : w_(w), values_(w.cell_count()), present_(w.cell_count(), 0) {}

  const Window& window() const noexcept { return w_; }
  bool has(const CellId& c) const { return w_.contains(c) && present_[w_.index(c)]; }
  const T& at(const CellId& c) const {
    if (!has(c)) throw Error(ErrorKind::InvalidInput, "no value", c.str());
    return values_[w_.index(c)];
  }
  T& at(const CellId& c) {
    if (!has(c)) throw Error(ErrorKind::InvalidInput, "no value", c.str());
    return values_[w_.index(c)];
  }
  std::optional<T> get(const CellId& c) const {
    if (!has(c)) return std::nullopt;
    return values_[w_.index(c)];
  }
  void set(const CellId& c, T v) {
    if (!w_.contains(c)) throw Error(ErrorKind::InvalidInput, "cell outside window", c.str());
    const auto i = w_.index(c);
    values_[i] = std::move(v);
    present_[i] = 1;
  }
  void erase(const CellId& c) {
    if (w_.contains(c)) present_[w_.index(c)] = 0;
  }
  std::size_t present_count() const {
    std::size_t n = 0;
    for (char p : present_) n += p ? 1 : 0;
    return n;
  }
  bool complete() const { return present_count() == present_.size(); }
  // f(CellId, const T&) over present cells in index order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (present_[i]) f(w_.cell(i), values_[i]);
  }
  template <class U, class F>
  CellField<U> map(F&& f) const {
    CellField<U> out(w_);
    for_each([&](const CellId& c, const T& v) { out.set(c, f(c, v)); });
    return out;
  }

 private:
  Window w_;
  std::vector<T> values_;
  std::vector<char> present_;
};

}  // namespace binets
