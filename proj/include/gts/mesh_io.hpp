#pragma once

#include <string>

#include "gts/classify.hpp"
#include "gts/surface.hpp"
#include "gts/tmesh.hpp"

namespace gts {

/// JSON mesh document: fields p, q, mu, nu, cells ([x1,x2,y1,y2] quadruples,
/// canonically sorted), knots_s / knots_t (values per index, multiplicities
/// by repetition) and cores_s / cores_t (one {kind, omega?} object per unit
/// interval). Each knot and core field may be omitted; the defaults are
/// uniform knots (value = index) and polynomial cores, which every mesh
/// admits. Structural problems throw parse_error with a position (line and
/// column for malformed JSON, a /field/index path otherwise); semantic
/// problems propagate the domain error codes of the mesh builders.
TMeshSpace parse_mesh(const std::string& text);

/// Canonical serialization: fixed field order, sorted cells, two-space
/// indentation, shortest round-trip number formatting. Byte-stable: equal
/// spaces serialize to equal strings, and parse_mesh(mesh_to_json(x))
/// reproduces x exactly.
std::string mesh_to_json(const TMeshSpace& space);

/// Classification report with fields admissible, ad_plus,
/// analysis_suitable, dual_compatible, weakly_dc_types, vmcr,
/// anchors_count, extensions. Deterministic for a given report.
std::string report_to_json(const ClassificationReport& report);

/// JSON control net: field points ([x,y,z] triples) and optional field
/// weights (defaults to 1 for every point).
ControlNet parse_net(const std::string& text);
std::string net_to_json(const ControlNet& net);

/// Whole-file helpers; unreadable or unwritable paths throw io_error.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

TMeshSpace read_mesh_file(const std::string& path);
void write_mesh_file(const std::string& path, const TMeshSpace& space);
ControlNet read_net_file(const std::string& path);

}  // namespace gts
