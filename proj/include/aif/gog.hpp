#pragma once

#include "aif/ball.hpp"

namespace aif {

// Graph of groups realized inside a catalog ambient group: vertex and edge
// groups are subgroup oracles of the ambient, and each edge carries the
// traversal element (identity for an amalgam edge, the stable letter for
// an HNN loop). The w-side copy of the edge group is letter^-1 C letter.
struct GogVertex {
  std::string name;
  SubgroupPtr group;
};

struct GogEdge {
  std::string name;
  int v = 0;
  int w = 0;
  SubgroupPtr side_v;  // edge group embedded on the v side
  SubgroupPtr side_w;  // letter^-1 side_v letter, embedded on the w side
  Word letter;
};

class GraphOfGroups {
 public:
  GraphOfGroups(GroupPtr ambient, std::vector<GogVertex> vertices, std::vector<GogEdge> edges,
                int base_vertex);

  const GroupOracle& ambient() const { return *ambient_; }
  GroupPtr ambient_ptr() const { return ambient_; }
  const std::vector<GogVertex>& vertices() const { return vertices_; }
  const std::vector<GogEdge>& edges() const { return edges_; }
  int base_vertex() const { return base_; }

  // Checks edge-group containment in both endpoint vertex groups on
  // generators and connectivity; throws OracleError on failure.
  void validate() const;

 private:
  GroupPtr ambient_;
  std::vector<GogVertex> vertices_;
  std::vector<GogEdge> edges_;
  int base_ = 0;
};

// Ball of the Bass-Serre tree around the coset (base vertex, identity).
// Tree vertices are cosets g * G_v; the parent links carry the edge orbit
// and the edge coset label.
class TreeBall {
 public:
  struct Vertex {
    int orbit;          // index into gog vertices
    Word g;             // coset label g * G_orbit
    int parent;         // -1 for the root
    int parent_edge;    // edge orbit index, -1 for root
    Word edge_coset;    // label of the connecting edge coset
    int depth;
    std::vector<int> children;
  };

  const GraphOfGroups& gog() const { return *gog_; }
  const std::vector<Vertex>& verts() const { return verts_; }
  int radius() const { return radius_; }
  // Locate the tree vertex equal to the coset g * G_orbit; -1 if outside.
  int locate(int orbit, const Word& g) const;
  bool is_descendant(int node, int ancestor) const;
  // Stabilizer description of a tree vertex / edge (conjugated oracle).
  SubgroupPtr vertex_stabilizer(int node) const;
  SubgroupPtr edge_stabilizer(int node) const;  // edge from node to its parent
  // True when every incident edge of `node` at the next depth was
  // enumerated without hitting the transversal cap.
  bool saturated(int node) const { return saturated_[static_cast<std::size_t>(node)] != 0; }

  friend TreeBall bass_serre_ball(std::shared_ptr<const GraphOfGroups> gog, int radius,
                                  const Budget& budget, int transversal_radius);

 private:
  std::shared_ptr<const GraphOfGroups> gog_;
  int radius_ = 0;
  std::vector<Vertex> verts_;
  std::vector<char> saturated_;
};

TreeBall bass_serre_ball(std::shared_ptr<const GraphOfGroups> gog, int radius,
                         const Budget& budget, int transversal_radius = 6);

// Side test for the halfspace of an oriented tree edge: returns the
// predicate "g * (basepoint coset) lies on the terminal side of the edge
// from child_node to its parent". to_parent orients the edge towards the
// parent. Throws OracleError when the translated basepoint leaves the
// computed ball.
struct TreeSideRule {
  std::shared_ptr<const TreeBall> ball;
  int child_node = 0;
  bool to_parent = false;  // false: terminal vertex is the child side
  int basepoint = 0;       // tree vertex id of w

  bool contains(const Word& g) const;
};

// Composite group for standard extensions: the fundamental group of a
// star of amalgams, center group G amalgamated with companion A_i over
// S_i. Letters are the center generators followed by each companion's.
struct StarCompanion {
  GroupPtr group;               // companion with its own alphabet
  SubgroupPtr edge_in_center;   // S_i inside the center group
  SubgroupPtr edge_in_companion;  // the matching copy inside the companion
};

class AmalgamStarGroup : public GroupOracle {
 public:
  AmalgamStarGroup(std::string name, GroupPtr center, std::vector<StarCompanion> companions);
  std::string kind() const override { return "amalgam-star"; }

  const GroupOracle& center() const { return *center_; }
  const std::vector<StarCompanion>& companions() const { return companions_; }

  // Alphabet embeddings.
  Word embed_center(const Word& w) const;           // center word -> composite word
  Word embed_companion(int i, const Word& w) const;  // companion word -> composite word
  // Center part of a normalized composite word that lies in the center
  // subgroup; nullopt otherwise.
  std::optional<Word> restrict_to_center(const Word& w) const;
  // Leading syllable view of a normalized word: if the word is not in the
  // center, the first departure determines a cone coset (g S_i) with g in
  // the center; returns (companion index, g). nullopt for center words.
  std::optional<std::pair<int, Word>> first_departure(const Word& w) const;

 protected:
  Word normalize_impl(const Word& w) const override;

 private:
  int vertex_of_letter(Letter l) const;  // 0 = center, i+1 = companion i
  Word to_local(int vid, const Word& w) const;
  Word to_global(int vid, const Word& w) const;
  // Map an edge-group member across the edge (center <-> companion i).
  Word across(int companion, bool from_center, const Word& local) const;

  GroupPtr center_;
  std::vector<StarCompanion> companions_;
  std::vector<int> offset_;  // generator offsets: center, then companions
};

}  // namespace aif
