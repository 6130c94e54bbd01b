#pragma once

#include "aif/aiset.hpp"

namespace aif {

// Group system: a group with a finite family of subgroups (repetitions
// allowed) and a finite relative generating set.
struct GroupSystem {
  GroupPtr group;
  std::vector<SubgroupPtr> family;
  std::vector<Word> relative_generators;  // defaults to the group generators

  std::vector<Word> rel_gens() const;
};

// Finite piece of the relative Cayley graph: plain vertices within angle
// distance R of the identity, cone vertices for the cosets they meet.
struct RelativeCayleyBall {
  int radius = 0;
  std::vector<Word> plain;                      // sorted by (angle distance, shortlex)
  std::vector<long long> angle_dist;            // per plain vertex
  std::vector<std::pair<int, Word>> cones;      // (family index, left coset rep)
  std::vector<std::pair<int, int>> plain_edges; // indices into plain
  std::vector<std::pair<int, int>> cone_edges;  // (plain index, cone index)

  int find_plain(const Word& w) const;
  int find_cone(int family_index, const Word& rep) const;
};

RelativeCayleyBall relative_ball(const GroupSystem& sys, int radius, const Budget& budget);

// Exact angle distance, or nullopt when above the budget.
std::optional<long long> angle_distance(const GroupSystem& sys, const Word& g, const Word& h,
                                        long long budget);

struct AdaptReport {
  Verdict verdict;
  std::vector<Word> mixed_cosets;         // left coset reps meeting both sides
  std::vector<Word> mixed_double_cosets;  // deduplicated H g S representatives
  bool mixed_count_stabilized = false;
};

// Adaptedness of X to S via the H-finite intersection criterion.
AdaptReport adaptedness(const Context& ctx, const AISetPtr& x, const SubgroupPtr& s);

AdaptReport mixed_cone_cosets(const Context& ctx, const AISetPtr& x, const SubgroupPtr& s);

struct Enlargement {
  // (family index, left coset rep) -> in/out of the enlargement
  std::vector<std::tuple<int, Word, bool>> cone_assignment;
  bool canonical = true;
  Verdict coboundary_h_finite;
};

Enlargement canonical_enlargement(const Context& ctx, const AISetPtr& x, const GroupSystem& sys);

struct Augmentation {
  std::vector<std::tuple<int, Word, bool>> cone_assignment;  // the enlargement Y
  std::vector<Word> added_points;                            // fringe absorbed into G
  AISetPtr augmented_core;                                   // X-hat intersected with G
  bool boundary_in_g = false;                                // no cone point on the boundary
};

Augmentation standard_augmentation(const Context& ctx, const AISetPtr& x, const GroupSystem& sys);

// Standard extension: composite group amalgamating the system's group with
// a finitely generated companion over each family member, the extension
// X-bar of X, and the star graph of groups with its tree ball.
struct StandardExtension {
  std::shared_ptr<const AmalgamStarGroup> composite;
  std::function<bool(const Word&)> xbar;  // membership over the composite
  std::shared_ptr<const GraphOfGroups> star;
  std::shared_ptr<const TreeBall> tree;
};

StandardExtension standard_extension(const Context& ctx, const AISetPtr& x, const GroupSystem& sys,
                                     const std::vector<StarCompanion>& companions,
                                     int tree_radius = 1);

}  // namespace aif
