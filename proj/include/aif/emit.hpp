#pragma once

#include <iosfwd>

#include "aif/regnbhd.hpp"
#include "aif/system.hpp"

namespace aif {

// DOT exporters. V0 vertices draw as boxes, V1 as circles; vertex order is
// stable across runs.
void emit_dot(std::ostream& os, const CubeComplex& c);
void emit_dot(std::ostream& os, const BipartiteGraphOfGroups& g);
void emit_dot(std::ostream& os, const TreeBall& t);

std::string ultrafilters_json(const Wallspace& ws, const std::vector<std::uint32_t>& masks);

}  // namespace aif
