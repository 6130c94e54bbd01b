#include "aif/emit.hpp"

#include <array>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace aif {

namespace {
const std::array<const char*, 10> kPalette = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                              "#66a61e", "#e6ab02", "#a6761d", "#666666",
                                              "#1f78b4", "#b2df8a"};
}

void emit_dot(std::ostream& os, const CubeComplex& c) {
  os << "graph cubing {\n  node [shape=point];\n";
  for (std::size_t i = 0; i < c.vertex_masks.size(); ++i)
    os << "  v" << i << " [label=\"" << c.vertex_masks[i] << "\"];\n";
  for (const auto& e : c.edges)
    os << "  v" << e.a << " -- v" << e.b << " [color=\""
       << kPalette[static_cast<std::size_t>(e.wall) % kPalette.size()] << "\" label=\"h" << e.wall
       << "\"];\n";
  os << "}\n";
}

void emit_dot(std::ostream& os, const BipartiteGraphOfGroups& g) {
  os << "graph regnbhd {\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    os << "  v" << i << " [shape=" << (g.vertices[i].v0 ? "box" : "circle") << " label=\""
       << g.vertices[i].label << "\"];\n";
  for (const auto& e : g.edges)
    os << "  v" << e.a << " -- v" << e.b << " [label=\"" << e.label << "\"];\n";
  os << "}\n";
}

void emit_dot(std::ostream& os, const TreeBall& t) {
  os << "graph tree {\n";
  const auto& gog = t.gog();
  for (std::size_t i = 0; i < t.verts().size(); ++i) {
    const auto& v = t.verts()[i];
    os << "  v" << i << " [shape=ellipse label=\""
       << gog.vertices()[static_cast<std::size_t>(v.orbit)].name << ":"
       << gog.ambient().str(v.g) << "\"];\n";
  }
  for (std::size_t i = 0; i < t.verts().size(); ++i)
    if (t.verts()[i].parent >= 0) os << "  v" << t.verts()[i].parent << " -- v" << i << ";\n";
  os << "}\n";
}

std::string ultrafilters_json(const Wallspace& ws, const std::vector<std::uint32_t>& masks) {
  nlohmann::json j;
  j["walls"] = nlohmann::json::array();
  for (const auto& w : ws.walls) j["walls"].push_back(w.label);
  j["ultrafilters"] = nlohmann::json::array();
  for (auto m : masks) {
    nlohmann::json sides = nlohmann::json::array();
    for (std::size_t p = 0; p < ws.size(); ++p) sides.push_back((m >> p) & 1 ? "+" : "-");
    j["ultrafilters"].push_back(sides);
  }
  return j.dump(2);
}

}  // namespace aif
