#pragma once

#include "aif/cubing.hpp"

namespace aif {

// Cross-connected components of a wallspace: classes of wall pairs under
// the relation generated by crossing, tagged with crossing-strength
// uniformity.
struct CCC {
  enum class Type { Isolated, AllStrong, AllWeak, Mixed };
  std::vector<int> wall_ids;
  Type type = Type::Isolated;
};

std::string to_string(CCC::Type t);

struct CCCSet {
  std::shared_ptr<const Wallspace> walls;
  std::vector<CCC> cccs;
  std::vector<int> ccc_of_wall;
  // pairwise crossing matrix over walls (symmetric by construction gate)
  std::vector<std::vector<char>> crosses;
  std::vector<std::vector<char>> strong;  // ordered: strong[i][j] = wall i crosses wall j strongly
};

CCCSet compute_cccs(const Context& ctx, std::shared_ptr<const Wallspace> ws);

// Pretree of CCCs with betweenness through representative inclusions.
class Pretree {
 public:
  explicit Pretree(std::shared_ptr<const CCCSet> cccs) : cccs_(std::move(cccs)) {}
  const CCCSet& cccs() const { return *cccs_; }
  std::shared_ptr<const CCCSet> cccs_ptr() const { return cccs_; }
  std::size_t size() const { return cccs_->cccs.size(); }
  // y strictly between x and z: representatives X c Y c Z on the ball.
  bool between(int x, int y, int z) const;
  std::vector<int> between_set(int x, int z) const;
  bool adjacent(int x, int y) const;

 private:
  std::shared_ptr<const CCCSet> cccs_;
};

struct PretreeReport {
  bool t0 = true, t1 = true, t2 = true, t3 = true;
  std::string witness;
  Verdict discrete;
  int max_between = 0;  // largest between-set over pairs
  std::string max_between_pair;
};

// Axioms over all budgeted triples/quadruples; discreteness refuted when
// the maximal between-count grew against the smaller reference pretree.
PretreeReport pretree_check(const Pretree& p, const Pretree* smaller_budget,
                            std::size_t triple_cap = 2000000);

struct StarTree {
  std::vector<std::vector<int>> stars;  // maximal mutually-adjacent CCC sets
  bool is_tree = false;                 // connected and acyclic on the ball data
};

StarTree star_construction(const Pretree& p);

// Finite bipartite graph of groups: V0 boxes, V1 circles, labelled
// vertices and edges, parallel edges allowed.
struct BipartiteGraphOfGroups {
  struct Vertex {
    bool v0 = true;
    std::string label;
    bool isolated_tag = false;
  };
  struct Edge {
    int a = 0, b = 0;
    std::string label;
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  int degree(int v) const;
  std::vector<int> neighbors(int v) const;
  std::string canonical_string() const;  // exact for small graphs
};

bool isomorphic_labelled(const BipartiteGraphOfGroups& a, const BipartiteGraphOfGroups& b);

struct RnOptions {
  bool apply_invertible_subdivision = true;
};

struct RnResult {
  BipartiteGraphOfGroups graph;
  Verdict rn_ready;          // corner symmetry + isolated nestedness
  Verdict discrete;          // pretree discreteness probe
  std::string notes;
  std::shared_ptr<const CCCSet> cccs;
};

// The pretree/star route. Throws OracleError when RN-ready fails hard or
// the pretree is refuted non-discrete.
RnResult build_regular_neighbourhood(const Context& ctx, const std::vector<AISetPtr>& family,
                                     const std::vector<Word>& translates,
                                     const RnOptions& opts = {});

// The very-good-position cubing route (components after removing
// separating vertices vs the separating vertices).
RnResult rn_via_cubing(const Context& ctx, const std::vector<AISetPtr>& family,
                       const std::vector<Word>& translates, const RnOptions& opts = {});

BipartiteGraphOfGroups reduce(const BipartiteGraphOfGroups& g);

struct RnChecklist {
  bool family_enclosed = false;       // every member in some V0 orbit
  bool v0_cover = false;              // every V0 vertex encloses some member
  bool minimal_proxy = false;         // no valence-1 vertex absorbing its edge
  bool isolated_bijection = false;    // isolated orbits <-> isolated V0 vertices
  std::string detail;
  bool all() const { return family_enclosed && v0_cover && minimal_proxy && isolated_bijection; }
};

RnChecklist verify_rn_properties(const RnResult& rn, std::size_t family_size);

}  // namespace aif
