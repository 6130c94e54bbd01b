#pragma once

#include "aif/aiset.hpp"

namespace aif {

// The four corners of a pair (X, Y) in order X&Y, X&Y*, X*&Y, X*&Y*.
// Each corner is classified under both stabilizers; `cls` is the class
// under the stabilizer of Y (the definition of small), `cls_h` under the
// stabilizer of X.
struct CornerInfo {
  SizeClass cls = SizeClass::Inconclusive;
  SizeClass cls_h = SizeClass::Inconclusive;
  std::size_t cardinality = 0;
  std::vector<int> k_counts, h_counts;
  bool stabilized() const { return cls != SizeClass::Inconclusive; }
};

struct CornerReport {
  CornerInfo corner[4];
  static int slot(bool x_side, bool y_side) { return (x_side ? 0 : 2) + (y_side ? 0 : 1); }
};

CornerReport corners(const Context& ctx, const AISetPtr& x, const AISetPtr& y);

enum class CrossStrength { Strong, Weak, NoCross, Unknown };
std::string to_string(CrossStrength s);

struct CrossingResult {
  Verdict verdict;  // does X cross Y
  CrossStrength strength = CrossStrength::Unknown;
  CornerReport report;
};

CrossingResult crossing(const Context& ctx, const AISetPtr& x, const AISetPtr& y);

// U <= V: the corner U & V* is empty, or small while no other corner of
// the pair is small.
Verdict almost_inclusion(const Context& ctx, const AISetPtr& u, const AISetPtr& v);

enum class PositionTier { VeryGood, Good, Neither };
std::string to_string(PositionTier t);

struct PositionReport {
  PositionTier tier = PositionTier::Neither;
  bool decided = true;  // false when some pair was inconclusive
  std::string witness;  // violating pair for Good / Neither
};

// Classify the family of all translate pairs (by the given translate
// words; pass {identity} for the plain family).
PositionReport position_check(const Context& ctx, const std::vector<AISetPtr>& family,
                              const std::vector<Word>& translates);

struct IntersectionNumber {
  int count = 0;
  bool exact = false;  // stable across the last two translate budgets
  std::vector<Word> double_coset_reps;
};

IntersectionNumber intersection_number(const Context& ctx, const AISetPtr& x, const AISetPtr& y,
                                       int translate_budget);

struct SandwichResult {
  Verdict verdict;
  std::string upper, lower;  // witnesses when bounded
  bool all_crossing = false;
};

SandwichResult sandwich_check(const Context& ctx, const AISetPtr& xj, const AISetPtr& xk,
                              int translate_budget);

Verdict corner_symmetry_check(const Context& ctx, const std::vector<AISetPtr>& family,
                              const std::vector<Word>& translates);

}  // namespace aif
