#include "gts/mesh_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gts/errors.hpp"

namespace gts {
namespace {

// Insertion order is the canonical field order of the documents.
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& where, const std::string& message) {
  fail(errc::parse_error, where + ": " + message);
}

ordered_json parse_text(const std::string& text, const std::string& doc) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(doc, e.what());  // the library message carries line and column
  }
}

const ordered_json& member(const ordered_json& obj, const char* key,
                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing required field '") + key + "'");
  return *it;
}

void check_keys(const ordered_json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) bad(where + "/" + it.key(), "unknown field");
  }
}

int get_int(const ordered_json& value, const std::string& where) {
  if (!value.is_number_integer()) bad(where, "expected an integer");
  return value.get<int>();
}

double get_double(const ordered_json& value, const std::string& where) {
  if (!value.is_number()) bad(where, "expected a number");
  return value.get<double>();
}

std::vector<Cell> get_cells(const ordered_json& value, const std::string& where) {
  if (!value.is_array()) bad(where, "expected an array of [x1,x2,y1,y2] quadruples");
  std::vector<Cell> cells;
  cells.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    const ordered_json& entry = value[i];
    std::string at = where + "/" + std::to_string(i);
    if (!entry.is_array() || entry.size() != 4) bad(at, "expected four integers");
    Cell c;
    c.x1 = get_int(entry[0], at + "/0");
    c.x2 = get_int(entry[1], at + "/1");
    c.y1 = get_int(entry[2], at + "/2");
    c.y2 = get_int(entry[3], at + "/3");
    cells.push_back(c);
  }
  return cells;
}

std::vector<double> get_numbers(const ordered_json& value, const std::string& where) {
  if (!value.is_array()) bad(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(get_double(value[i], where + "/" + std::to_string(i)));
  return out;
}

SectionCore get_core(const ordered_json& value, const std::string& where) {
  if (!value.is_object()) bad(where, "expected a {kind, omega?} object");
  check_keys(value, {"kind", "omega"}, where);
  const ordered_json& kind_value = member(value, "kind", where);
  if (!kind_value.is_string()) bad(where + "/kind", "expected a string");
  std::string kind = kind_value.get<std::string>();
  if (kind == core_kind_name(CoreKind::polynomial)) {
    if (value.contains("omega"))
      bad(where + "/omega", "not meaningful for polynomial cores");
    return polynomial_core();
  }
  CoreKind ck;
  if (kind == core_kind_name(CoreKind::trigonometric)) {
    ck = CoreKind::trigonometric;
  } else if (kind == core_kind_name(CoreKind::hyperbolic)) {
    ck = CoreKind::hyperbolic;
  } else {
    bad(where + "/kind", "unknown section-core kind '" + kind + "'");
  }
  auto it = value.find("omega");
  if (it == value.end()) bad(where, "field 'omega' is required for kind '" + kind + "'");
  return {ck, get_double(*it, where + "/omega")};
}

std::vector<SectionCore> get_cores(const ordered_json& value, const std::string& where) {
  if (!value.is_array()) bad(where, "expected an array of section-core objects");
  std::vector<SectionCore> cores;
  cores.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i)
    cores.push_back(get_core(value[i], where + "/" + std::to_string(i)));
  return cores;
}

void check_count(std::size_t got, int want, const std::string& where) {
  if (static_cast<int>(got) != want)
    bad(where, "expected " + std::to_string(want) + " entries for this mesh, got " +
                   std::to_string(got));
}

ordered_json core_to_json(const SectionCore& core) {
  ordered_json j;
  j["kind"] = core_kind_name(core.kind);
  if (core.kind != CoreKind::polynomial) j["omega"] = core.omega;
  return j;
}

const char* junction_dir_name(JunctionDir dir) {
  switch (dir) {
    case JunctionDir::left:
      return "left";
    case JunctionDir::right:
      return "right";
    case JunctionDir::up:
      return "up";
    case JunctionDir::down:
      return "down";
  }
  return "?";
}

}  // namespace

TMeshSpace parse_mesh(const std::string& text) {
  const std::string doc = "mesh document";
  ordered_json j = parse_text(text, doc);
  if (!j.is_object()) bad(doc, "expected a JSON object");
  check_keys(j, {"p", "q", "mu", "nu", "cells", "knots_s", "knots_t", "cores_s", "cores_t"},
             doc);
  int p = get_int(member(j, "p", doc), doc + "/p");
  int q = get_int(member(j, "q", doc), doc + "/q");
  int mu = get_int(member(j, "mu", doc), doc + "/mu");
  int nu = get_int(member(j, "nu", doc), doc + "/nu");
  std::vector<Cell> cells = get_cells(member(j, "cells", doc), doc + "/cells");
  IndexTMesh mesh = IndexTMesh::build(p, q, mu, nu, std::move(cells));

  std::vector<double> knots_s, knots_t;
  if (auto it = j.find("knots_s"); it != j.end()) {
    knots_s = get_numbers(*it, doc + "/knots_s");
    check_count(knots_s.size(), mesh.xmax() - mesh.xmin() + 1, doc + "/knots_s");
  } else {
    for (int i = mesh.xmin(); i <= mesh.xmax(); ++i) knots_s.push_back(i);
  }
  if (auto it = j.find("knots_t"); it != j.end()) {
    knots_t = get_numbers(*it, doc + "/knots_t");
    check_count(knots_t.size(), mesh.ymax() - mesh.ymin() + 1, doc + "/knots_t");
  } else {
    for (int i = mesh.ymin(); i <= mesh.ymax(); ++i) knots_t.push_back(i);
  }

  std::vector<SectionCore> cores_s, cores_t;
  if (auto it = j.find("cores_s"); it != j.end()) {
    cores_s = get_cores(*it, doc + "/cores_s");
    check_count(cores_s.size(), mesh.xmax() - mesh.xmin(), doc + "/cores_s");
  } else {
    cores_s.assign(mesh.xmax() - mesh.xmin(), polynomial_core());
  }
  if (auto it = j.find("cores_t"); it != j.end()) {
    cores_t = get_cores(*it, doc + "/cores_t");
    check_count(cores_t.size(), mesh.ymax() - mesh.ymin(), doc + "/cores_t");
  } else {
    cores_t.assign(mesh.ymax() - mesh.ymin(), polynomial_core());
  }

  return TMeshSpace::build(std::move(mesh), std::move(knots_s), std::move(knots_t),
                           std::move(cores_s), std::move(cores_t));
}

std::string mesh_to_json(const TMeshSpace& space) {
  const IndexTMesh& mesh = space.mesh();
  ordered_json j;
  j["p"] = mesh.p();
  j["q"] = mesh.q();
  j["mu"] = mesh.mu();
  j["nu"] = mesh.nu();
  ordered_json cells = ordered_json::array();
  for (const Cell& c : mesh.cells()) cells.push_back({c.x1, c.x2, c.y1, c.y2});
  j["cells"] = std::move(cells);
  j["knots_s"] = space.line_s().values();
  j["knots_t"] = space.line_t().values();
  ordered_json cores_s = ordered_json::array();
  for (const SectionCore& core : space.cores_s()) cores_s.push_back(core_to_json(core));
  j["cores_s"] = std::move(cores_s);
  ordered_json cores_t = ordered_json::array();
  for (const SectionCore& core : space.cores_t()) cores_t.push_back(core_to_json(core));
  j["cores_t"] = std::move(cores_t);
  return j.dump(2) + "\n";
}

std::string report_to_json(const ClassificationReport& report) {
  ordered_json j;
  j["admissible"] = report.admissible;
  j["ad_plus"] = report.ad_plus;
  j["analysis_suitable"] = report.analysis_suitable;
  j["dual_compatible"] = report.dual_compatible;
  ordered_json types = ordered_json::array();
  for (WdcType type : report.weakly_dc_types) types.push_back(wdc_type_name(type));
  j["weakly_dc_types"] = std::move(types);
  j["vmcr"] = report.vmcr;
  j["anchors_count"] = report.anchors_count;
  ordered_json extensions = ordered_json::array();
  for (const Extension& e : report.extensions) {
    ordered_json je;
    je["junction"] = {{"x", e.owner.x},
                      {"y", e.owner.y},
                      {"missing", junction_dir_name(e.owner.missing)}};
    je["horizontal"] = e.horizontal;
    je["line"] = e.line;
    je["face"] = {e.face_lo, e.face_hi};
    je["edge"] = {e.edge_lo, e.edge_hi};
    extensions.push_back(std::move(je));
  }
  j["extensions"] = std::move(extensions);
  return j.dump(2) + "\n";
}

ControlNet parse_net(const std::string& text) {
  const std::string doc = "net document";
  ordered_json j = parse_text(text, doc);
  if (!j.is_object()) bad(doc, "expected a JSON object");
  check_keys(j, {"points", "weights"}, doc);
  const ordered_json& points = member(j, "points", doc);
  if (!points.is_array()) bad(doc + "/points", "expected an array of [x,y,z] triples");
  ControlNet net;
  net.points.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ordered_json& entry = points[i];
    std::string at = doc + "/points/" + std::to_string(i);
    if (!entry.is_array() || entry.size() != 3) bad(at, "expected three coordinates");
    net.points.emplace_back(get_double(entry[0], at + "/0"),
                            get_double(entry[1], at + "/1"),
                            get_double(entry[2], at + "/2"));
  }
  if (auto it = j.find("weights"); it != j.end()) {
    net.weights = get_numbers(*it, doc + "/weights");
    if (net.weights.size() != net.points.size())
      bad(doc + "/weights", "expected one weight per point, got " +
                                std::to_string(net.weights.size()) + " for " +
                                std::to_string(net.points.size()) + " points");
  } else {
    net.weights.assign(net.points.size(), 1.0);
  }
  return net;
}

std::string net_to_json(const ControlNet& net) {
  ordered_json j;
  ordered_json points = ordered_json::array();
  for (const Eigen::Vector3d& point : net.points)
    points.push_back({point.x(), point.y(), point.z()});
  j["points"] = std::move(points);
  j["weights"] = net.weights;
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(errc::io_error, "read failure: " + path);
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::io_error, "cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) fail(errc::io_error, "write failure: " + path);
}

namespace {

// Prepend the file name to structural diagnostics; domain errors pass through.
template <typename Fn>
auto with_path(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == errc::parse_error) bad(path, e.what());
    throw;
  }
}

}  // namespace

TMeshSpace read_mesh_file(const std::string& path) {
  std::string text = read_text_file(path);
  return with_path(path, [&] { return parse_mesh(text); });
}

void write_mesh_file(const std::string& path, const TMeshSpace& space) {
  write_text_file(path, mesh_to_json(space));
}

ControlNet read_net_file(const std::string& path) {
  std::string text = read_text_file(path);
  return with_path(path, [&] { return parse_net(text); });
}

}  // namespace gts
