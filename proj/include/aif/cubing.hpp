#pragma once

#include <array>
#include <optional>

#include "aif/wallspace.hpp"

namespace aif {

// All consistent orientations (mask bit p = 1 picks side0 of wall p).
std::vector<std::uint32_t> enumerate_ultrafilters(const Wallspace& ws, const Budget& budget,
                                                  bool parallel = true);
// Independent axiom re-check straight from the membership tables.
bool check_ultrafilter_axioms(const Wallspace& ws, std::uint32_t mask, std::size_t ball_prefix);

// Basic vertex V_g: sides containing g. Throws when some wall cannot
// decide g (outside the ball tables).
std::uint32_t basic_vertex_mask(const Context& ctx, const Wallspace& ws, const Word& g);

class CubeComplex {
 public:
  std::shared_ptr<const Wallspace> walls;
  std::vector<std::uint32_t> vertex_masks;  // basic component, ascending
  std::unordered_map<std::uint32_t, int> vertex_index;
  struct Edge {
    int a, b;   // vertex ids, a < b
    int wall;   // flipped wall pair = hyperplane id
  };
  std::vector<Edge> edges;
  std::vector<std::array<int, 4>> squares;      // vertex ids, canonical order
  std::vector<std::array<int, 2>> square_walls;  // the two hyperplanes of each square
  std::size_t cube3_count = 0;

  int find_vertex(std::uint32_t mask) const {
    auto it = vertex_index.find(mask);
    return it == vertex_index.end() ? -1 : it->second;
  }
  std::vector<std::vector<int>> adjacency() const;
  // Graph distance between vertices (BFS); -1 when disconnected.
  int distance(int a, int b) const;
};

CubeComplex build_complex(const Context& ctx, std::shared_ptr<const Wallspace> ws);

struct RecoverResult {
  bool hyperplane_separates = false;
  bool matches = false;  // recovered set equals the wall side on the ball
  std::size_t mismatches = 0;
};
// Recover wall `wi` from the complex: side of the hyperplane reached from
// vertices containing side0, compared against the membership table.
RecoverResult recover_set(const Context& ctx, const CubeComplex& c, int wi);

struct FixedVertexResult {
  std::optional<std::uint32_t> vertex;
  bool invariance_verified = false;
  std::optional<Word> reflection_witness;
  std::string note;
};
// V(S) = the side of every wall that almost contains S; none with a
// reflection witness when some wall is inverted by S.
FixedVertexResult fixed_vertex_search(const Context& ctx, const Wallspace& ws,
                                      const SubgroupPtr& s);

// Cut vertices of the 1-skeleton.
std::vector<int> separating_vertices(const CubeComplex& c);

}  // namespace aif
