#include "esk/jsonio.hpp"

#include <fstream>
#include <sstream>

#include "esk/errors.hpp"
#include "esk/signotope.hpp"

namespace esk {

using nlohmann::json;

json point_set_to_json(const point_set& ps, const edge_coloring* edges) {
  json j;
  j["n"] = ps.n();
  j["mode"] = edges ? "edges" : "points";
  json pts = json::array();
  for (const auto& p : ps.pts) {
    json e;
    e["x"] = to_string(p.x);
    e["y"] = to_string(p.y);
    if (p.color >= 0)
      e["color"] = p.color;
    else
      e["color"] = nullptr;
    pts.push_back(e);
  }
  j["points"] = pts;
  if (edges) {
    json ec = json::array();
    for (int a = 0; a < edges->n; ++a)
      for (int b = a + 1; b < edges->n; ++b) ec.push_back({a, b, edges->get(a, b)});
    j["edge_colors"] = ec;
  }
  return j;
}

point_set point_set_from_json(const json& j, edge_coloring* edges_out) {
  if (!j.contains("points") || !j["points"].is_array()) throw parse_error("missing points array");
  point_set ps;
  for (const auto& e : j["points"]) {
    point p;
    if (e["x"].is_string())
      p.x = bigint_from_string(e["x"].get<std::string>());
    else
      p.x = bigint(e["x"].get<long>());
    if (e["y"].is_string())
      p.y = bigint_from_string(e["y"].get<std::string>());
    else
      p.y = bigint(e["y"].get<long>());
    if (e.contains("color") && !e["color"].is_null()) p.color = e["color"].get<int>();
    ps.pts.push_back(std::move(p));
  }
  if (j.contains("n") && j["n"].get<int>() != ps.n())
    throw parse_error("n field disagrees with the points array");
  if (edges_out) {
    *edges_out = edge_coloring();
    if (j.contains("edge_colors")) {
      edge_coloring ec(ps.n());
      for (const auto& t : j["edge_colors"]) {
        if (!t.is_array() || t.size() != 3) throw parse_error("edge color entries are [a,b,c]");
        ec.set(t[0].get<int>(), t[1].get<int>(), t[2].get<int>());
      }
      *edges_out = std::move(ec);
    }
  }
  return ps;
}

point_set load_point_set(const std::string& path, edge_coloring* edges_out) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw parse_error(std::string("bad JSON in '") + path + "': " + e.what());
  }
  return point_set_from_json(j, edges_out);
}

void save_point_set(const std::string& path, const point_set& ps, const edge_coloring* edges) {
  std::ofstream out(path);
  out << point_set_to_json(ps, edges).dump(1) << "\n";
}

json report_to_json(const verify_report& rep) {
  json j;
  j["valid"] = rep.valid;
  j["general_position"] = rep.general_position;
  json viols = json::array();
  for (const auto& v : rep.violations) {
    json e;
    e["kind"] = kind_name(v.kind);
    e["vertices"] = v.vertices;
    e["color"] = v.color;
    e["interior_count"] = v.interior_count;
    viols.push_back(e);
  }
  j["violations"] = viols;
  json census = json::object();
  for (auto& [k, c] : rep.census) census[std::to_string(k)] = c;
  j["census"] = census;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

json certificate_to_json(const realization_certificate& cert) {
  json j;
  j["points"] = point_set_to_json(cert.points, cert.edges ? &*cert.edges : nullptr);
  j["signotope"] = to_text(cert.sig);
  j["grid_base"] = cert.grid.base;
  j["signotope_checked"] = cert.signotope_checked;
  j["report"] = report_to_json(cert.report);
  return j;
}

std::string render_svg(const point_set& ps, const edge_coloring* edges) {
  static const char* palette[] = {"#1f6fb2", "#d1495b", "#3d9a44", "#ebab34", "#7d55c7",
                                  "#41b0a6", "#9a6324"};
  // scale the bounding box into a fixed canvas using double precision; the
  // rendering is presentation only, all checking stays exact
  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  bool first = true;
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : ps.pts) {
    double x = mpz_get_d(p.x.get_mpz_t());
    double y = mpz_get_d(p.y.get_mpz_t());
    xy.emplace_back(x, y);
    if (first || x < minx) minx = x;
    if (first || x > maxx) maxx = x;
    if (first || y < miny) miny = y;
    if (first || y > maxy) maxy = y;
    first = false;
  }
  double w = maxx - minx, h = maxy - miny;
  if (w <= 0) w = 1;
  if (h <= 0) h = 1;
  const double canvas = 640.0, margin = 24.0;
  auto sx = [&](double x) { return margin + (x - minx) / w * (canvas - 2 * margin); };
  auto sy = [&](double y) { return canvas - margin - (y - miny) / h * (canvas - 2 * margin); };
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas << "\" height=\"" << canvas
     << "\" viewBox=\"0 0 " << canvas << " " << canvas << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (edges) {
    for (int a = 0; a < ps.n(); ++a)
      for (int b = a + 1; b < ps.n(); ++b) {
        int c = edges->get(a, b);
        os << "<line x1=\"" << sx(xy[a].first) << "\" y1=\"" << sy(xy[a].second) << "\" x2=\""
           << sx(xy[b].first) << "\" y2=\"" << sy(xy[b].second) << "\" stroke=\""
           << palette[(c < 0 ? 0 : c) % 7] << "\" stroke-width=\"1\"/>\n";
      }
  }
  for (int i = 0; i < ps.n(); ++i) {
    int c = ps[i].color;
    os << "<circle cx=\"" << sx(xy[i].first) << "\" cy=\"" << sy(xy[i].second)
       << "\" r=\"5\" fill=\"" << palette[(c < 0 ? 0 : c) % 7] << "\"/>\n";
    os << "<text x=\"" << sx(xy[i].first) + 7 << "\" y=\"" << sy(xy[i].second) - 7
       << "\" font-size=\"10\" fill=\"#333\">" << i << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace esk
