#pragma once

#include "aif/ball.hpp"

namespace aif {

// Quotient of a Cayley ball by the left action of a subgroup: vertices are
// canonical coset representatives, edges are labelled generator moves.
struct SchreierGraph {
  SubgroupPtr subgroup;
  int radius = 0;
  std::vector<Word> vertices;  // deterministic (discovery in shortlex ball order)
  struct Edge {
    int from;
    int gen;
    int to;
  };
  std::vector<Edge> edges;

  int find_vertex(const Word& rep) const;
  // Connected components of the vertex set after removing `removed`;
  // components are numbered by their least vertex index.
  std::vector<int> components_without(const std::vector<char>& removed) const;
};

SchreierGraph schreier_ball(SubgroupPtr sub, int radius, const Budget& budget);

}  // namespace aif
