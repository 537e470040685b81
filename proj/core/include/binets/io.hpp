#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "binets/consistency3d.hpp"

namespace binets {

inline constexpr const char* kDocumentSchema = "binets/1";
inline constexpr const char* kCubeSchema = "binets-cube/1";

using MetaValue = std::variant<bool, std::int64_t, double, std::string>;
using Metadata = std::vector<std::pair<std::string, MetaValue>>;

// One document per binet: points on cells, optionally potentials, planes and
// Lie lines. Absent cells are null in every array. Cell arrays follow
// Window::index order; Z^3 faces are split by plane.
struct BinetDocument {
  std::string schema = kDocumentSchema;
  Binet points;
  std::optional<CellField<double>> rho;
  std::optional<CellField<double>> sigma;
  std::optional<BiStarNet> planes;
  std::optional<LineBicongruence> lines;
  Metadata metadata;

  const Window& window() const { return points.window(); }
  const MetaValue* meta(const std::string& key) const;
  void set_meta(const std::string& key, MetaValue v);
};

// Numbers are written with 17 significant digits, so write(read(write(d)))
// reproduces the bytes of write(d). Non-finite numbers are rejected with
// their field path; schema errors throw ErrorKind::Schema.
std::string dump_document(const BinetDocument& d);
BinetDocument parse_document(const std::string& text);
void write_document(const BinetDocument& d, const std::string& path);
BinetDocument read_document(const std::string& path);

struct CubeDocument {
  std::string schema = kCubeSchema;
  FormKind form = FormKind::Moebius;
  CubeData cube;
  std::vector<std::pair<std::string, double>> residuals;
};
std::string dump_cube(const CubeDocument& d);
CubeDocument parse_cube(const std::string& text);
void write_cube(const CubeDocument& d, const std::string& path);
CubeDocument read_cube(const std::string& path);

struct ObjOptions {
  bool show_edges = false;       // vertex edges as line elements
  bool show_dual_edges = false;  // face edges as line elements
  bool split_nets = true;        // one object per net instead of groups in one object
};
// Z^2 only. Every present cell becomes a `v` record in index order; V-quads
// and F-quads (around interior vertices) go to separate objects or groups.
std::string obj_text(const Binet& b, const ObjOptions& opt = {});
void export_obj(const Binet& b, const std::string& path, const ObjOptions& opt = {});

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace binets
