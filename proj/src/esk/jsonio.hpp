#pragma once

#include <string>

#include <json.hpp>

#include "esk/geometry.hpp"
#include "esk/realize.hpp"

namespace esk {

// Point-set exchange format:
// {"n": int, "mode": "points"|"edges",
//  "points": [{"x": "decimal", "y": "decimal", "color": int|null}, ...],
//  "edge_colors": [[a, b, color], ...]}        (edge mode only)
// Coordinates travel as decimal strings to keep arbitrary precision intact.
nlohmann::json point_set_to_json(const point_set& ps, const edge_coloring* edges);
point_set point_set_from_json(const nlohmann::json& j, edge_coloring* edges_out);

point_set load_point_set(const std::string& path, edge_coloring* edges_out);
void save_point_set(const std::string& path, const point_set& ps, const edge_coloring* edges);

nlohmann::json report_to_json(const verify_report& rep);
nlohmann::json certificate_to_json(const realization_certificate& cert);

// Deterministic SVG rendering: points colored by class, optional hulls.
std::string render_svg(const point_set& ps, const edge_coloring* edges);

}  // namespace esk
