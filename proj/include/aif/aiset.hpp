#pragma once

#include <functional>
#include <memory>

#include "aif/gog.hpp"
#include "aif/kernels.hpp"
#include "aif/schreier.hpp"

namespace aif {

// Three-valued verdict with a stabilization certificate. Properties that
// quantify over the whole group are checked on balls; Yes/No verdicts say
// what the evidence supports and `stabilized` records whether the evidence
// was unchanged over the last two radii.
enum class Truth { Yes, No, Inconclusive };

struct Verdict {
  Truth value = Truth::Inconclusive;
  int at_radius = 0;
  bool stabilized = false;
  std::string witness;

  bool yes() const { return value == Truth::Yes; }
  bool no() const { return value == Truth::No; }
};

std::string to_string(Truth t);

// An H-invariant subset of the ambient group given by a membership rule.
class AISet {
 public:
  AISet(std::string name, GroupPtr ambient, SubgroupPtr stabilizer)
      : name_(std::move(name)), ambient_(std::move(ambient)), stab_(std::move(stabilizer)) {}
  virtual ~AISet() = default;

  const std::string& name() const { return name_; }
  const GroupOracle& ambient() const { return *ambient_; }
  GroupPtr ambient_ptr() const { return ambient_; }
  SubgroupPtr stabilizer() const { return stab_; }
  virtual bool contains(const Word& g) const = 0;
  virtual bool thread_safe() const { return false; }

 private:
  std::string name_;
  GroupPtr ambient_;
  SubgroupPtr stab_;
};

using AISetPtr = std::shared_ptr<const AISet>;

// Rule constructors.
AISetPtr rule_set(std::string name, GroupPtr ambient, SubgroupPtr stab,
                  std::function<bool(const Word&)> pred, bool thread_safe = false);
AISetPtr whole_group_set(GroupPtr ambient);
AISetPtr empty_set(GroupPtr ambient);
AISetPtr complement_set(const AISetPtr& x);
AISetPtr translate_set(const AISetPtr& x, const Word& g);  // gX
AISetPtr union_set(const AISetPtr& a, const AISetPtr& b, SubgroupPtr stab);
AISetPtr intersect_set(const AISetPtr& a, const AISetPtr& b, SubgroupPtr stab);
// {g : functional . exponents(g) >= threshold} in a free abelian group.
AISetPtr linear_halfspace(std::string name, GroupPtr ambient, std::vector<long long> functional,
                          long long threshold, SubgroupPtr stab);
// Halfspace of an oriented Bass-Serre tree edge.
AISetPtr tree_halfspace(std::string name, TreeSideRule rule, SubgroupPtr stab);
// Finite union of right cosets H g.
AISetPtr coset_fringe(std::string name, SubgroupPtr h, std::vector<Word> elements);
// Schreier-seed rule: explicit cosets plus a side assignment for the
// components of the complement of the seed in the Schreier ball.
AISetPtr schreier_seed_set(std::string name, std::shared_ptr<const SchreierGraph> graph,
                           std::vector<Word> seed_in, std::vector<std::pair<Word, bool>> component_sides,
                           SubgroupPtr stab);

// Shared evidence region: one ball per ambient group plus caches of
// membership tables and coset tables. Construction is single-threaded;
// lookups afterwards are read-only.
class Context {
 public:
  Context(GroupPtr group, const Budget& budget);

  const Budget& budget() const { return budget_; }
  const BallIndex& ball() const { return ball_; }
  const GroupOracle& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }

  const BitVec& table(const AISetPtr& s) const;
  const CosetTable& cosets(const SubgroupPtr& h) const;

 private:
  GroupPtr group_;
  Budget budget_;
  BallIndex ball_;
  mutable std::unordered_map<const AISet*, BitVec> tables_;
  mutable std::unordered_map<const SubgroupOracle*, CosetTable> coset_tables_;
};

// Coset-count growth of a set of ball elements under a subgroup, by radius.
std::vector<int> coset_growth(const Context& ctx, const BitVec& set, const SubgroupPtr& h);

enum class SizeClass { Empty, Small, Large, Inconclusive };
std::string to_string(SizeClass c);
// Empty: no elements. Small: count unchanged over the last two radii.
// Large: strictly increasing over the last three radii. Else inconclusive.
SizeClass classify_growth(const std::vector<int>& counts);

struct CoboundaryReport {
  // Edges (i, gen) of the ball graph with exactly one endpoint inside.
  std::vector<std::pair<int, int>> edges;
  int orbit_count = 0;  // orbits under the left stabilizer action
  bool stabilized = false;
};

CoboundaryReport coboundary(const Context& ctx, const AISetPtr& x, int radius);

Verdict triviality(const Context& ctx, const AISetPtr& x);
Verdict equivalent(const Context& ctx, const AISetPtr& x, const AISetPtr& y);
std::optional<Word> invertibility_search(const Context& ctx, const AISetPtr& x);

struct EnclosingReport {
  Verdict verdict;
  bool orbits_saturated = true;
  std::string violating_edge;
};
EnclosingReport strict_enclosing_check(const Context& ctx, const AISetPtr& a, const TreeBall& tree,
                                       int v_node, int w_node);

// Same check, with the set living over a different group than the tree's
// ambient (used for extensions): a membership predicate is supplied.
EnclosingReport strict_enclosing_check_pred(const Context& ctx,
                                            const std::function<bool(const Word&)>& a,
                                            const TreeBall& tree, int v_node, int w_node);

}  // namespace aif
