#include "aif/crossing.hpp"

#include <algorithm>
#include <set>

namespace aif {

std::string to_string(CrossStrength s) {
  switch (s) {
    case CrossStrength::Strong: return "strong";
    case CrossStrength::Weak: return "weak";
    case CrossStrength::NoCross: return "no-cross";
    default: return "unknown";
  }
}

std::string to_string(PositionTier t) {
  switch (t) {
    case PositionTier::VeryGood: return "very-good";
    case PositionTier::Good: return "good";
    default: return "neither";
  }
}

CornerReport corners(const Context& ctx, const AISetPtr& x, const AISetPtr& y) {
  const BitVec& tx = ctx.table(x);
  const BitVec& ty = ctx.table(y);
  CornerReport rep;
  for (int xs = 0; xs < 2; ++xs)
    for (int ys = 0; ys < 2; ++ys) {
      BitVec cx = xs == 0 ? tx : ~tx;
      BitVec cy = ys == 0 ? ty : ~ty;
      BitVec corner = cx & cy;
      auto& info = rep.corner[CornerReport::slot(xs == 0, ys == 0)];
      info.cardinality = corner.count();
      info.k_counts = coset_growth(ctx, corner, y->stabilizer());
      info.h_counts = coset_growth(ctx, corner, x->stabilizer());
      info.cls = classify_growth(info.k_counts);
      info.cls_h = classify_growth(info.h_counts);
    }
  return rep;
}

CrossingResult crossing(const Context& ctx, const AISetPtr& x, const AISetPtr& y) {
  CrossingResult res;
  res.report = corners(ctx, x, y);
  res.verdict.at_radius = ctx.budget().radius;
  int large = 0, small_or_empty = 0, undecided = 0;
  for (const auto& c : res.report.corner) {
    if (c.cls == SizeClass::Large)
      ++large;
    else if (c.cls == SizeClass::Empty || c.cls == SizeClass::Small)
      ++small_or_empty;
    else
      ++undecided;
  }
  if (large == 4) {
    res.verdict.value = Truth::Yes;
    res.verdict.stabilized = true;
    res.verdict.witness = "all four corners large";
  } else if (small_or_empty > 0) {
    res.verdict.value = Truth::No;
    res.verdict.stabilized = true;
    res.verdict.witness = "a corner is small";
    res.strength = CrossStrength::NoCross;
    return res;
  } else {
    res.verdict.value = Truth::Inconclusive;
    return res;
  }
  // Strength: H & Y and H & Y* both K-infinite, H the stabilizer of X.
  const auto& ball = ctx.ball();
  BitVec h_elems(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i)
    h_elems.set(i, x->stabilizer()->member(ball.word(i)));
  const BitVec& ty = ctx.table(y);
  auto c1 = classify_growth(coset_growth(ctx, h_elems & ty, y->stabilizer()));
  auto c2 = classify_growth(coset_growth(ctx, h_elems & ~ty, y->stabilizer()));
  if (c1 == SizeClass::Large && c2 == SizeClass::Large)
    res.strength = CrossStrength::Strong;
  else if (c1 == SizeClass::Small || c1 == SizeClass::Empty || c2 == SizeClass::Small ||
           c2 == SizeClass::Empty)
    res.strength = CrossStrength::Weak;
  else
    res.strength = CrossStrength::Unknown;
  return res;
}

namespace {
bool smallish(SizeClass c) { return c == SizeClass::Empty || c == SizeClass::Small; }
}  // namespace

Verdict almost_inclusion(const Context& ctx, const AISetPtr& u, const AISetPtr& v) {
  CornerReport rep = corners(ctx, u, v);
  Verdict out;
  out.at_radius = ctx.budget().radius;
  const auto& uvstar = rep.corner[CornerReport::slot(true, false)];
  if (uvstar.cls == SizeClass::Empty) {
    out.value = Truth::Yes;
    out.stabilized = true;
    out.witness = "U & V* empty on the ball";
    return out;
  }
  if (uvstar.cls == SizeClass::Small) {
    bool other_small = false, other_undecided = false;
    for (int s = 0; s < 4; ++s) {
      if (s == CornerReport::slot(true, false)) continue;
      if (rep.corner[s].cls == SizeClass::Small) other_small = true;
      if (rep.corner[s].cls == SizeClass::Inconclusive) other_undecided = true;
    }
    if (!other_small && !other_undecided) {
      out.value = Truth::Yes;
      out.stabilized = true;
      out.witness = "U & V* is the only small corner";
      return out;
    }
    if (other_small) {
      out.value = Truth::No;
      out.stabilized = true;
      out.witness = "two small corners: almost-inclusion refused outside good position";
      return out;
    }
    out.value = Truth::Inconclusive;
    return out;
  }
  if (uvstar.cls == SizeClass::Large) {
    out.value = Truth::No;
    out.stabilized = true;
    out.witness = "U & V* large";
    return out;
  }
  out.value = Truth::Inconclusive;
  return out;
}

namespace {

struct WallSide {
  AISetPtr set;
  std::string label;
};

// Deduplicated oriented translate list for a family.
std::vector<WallSide> translate_closure(const Context& ctx, const std::vector<AISetPtr>& family,
                                        const std::vector<Word>& translates) {
  std::vector<WallSide> sides;
  std::unordered_map<std::uint64_t, std::vector<int>> by_hash;
  auto add = [&](const AISetPtr& s, const std::string& label) {
    const BitVec& t = ctx.table(s);
    auto& bucket = by_hash[t.hash()];
    for (int idx : bucket)
      if (ctx.table(sides[static_cast<std::size_t>(idx)].set) == t) return;
    bucket.push_back(static_cast<int>(sides.size()));
    sides.push_back({s, label});
  };
  for (const auto& x : family)
    for (const auto& g : translates) {
      auto tx = translate_set(x, g);
      add(tx, tx->name());
    }
  return sides;
}

}  // namespace

PositionReport position_check(const Context& ctx, const std::vector<AISetPtr>& family,
                              const std::vector<Word>& translates) {
  auto sides = translate_closure(ctx, family, translates);
  PositionReport rep;
  rep.tier = PositionTier::VeryGood;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    for (std::size_t j = i + 1; j < sides.size(); ++j) {
      // skip complementary pairs
      if ((ctx.table(sides[i].set) & ctx.table(sides[j].set)).none() &&
          (~ctx.table(sides[i].set) & ~ctx.table(sides[j].set)).none())
        continue;
      CornerReport cr = corners(ctx, sides[i].set, sides[j].set);
      bool has_empty = false, undecided = false;
      int small_nonempty = 0, smallish_count = 0;
      for (const auto& c : cr.corner) {
        if (c.cls == SizeClass::Empty) has_empty = true;
        if (c.cls == SizeClass::Small) ++small_nonempty;
        if (smallish(c.cls)) ++smallish_count;
        if (c.cls == SizeClass::Inconclusive) undecided = true;
      }
      if (undecided) rep.decided = false;
      std::string pair_name = sides[i].label + " vs " + sides[j].label;
      if (smallish_count >= 2 && !has_empty) {
        rep.tier = PositionTier::Neither;
        rep.witness = pair_name + ": two small corners, none empty";
        return rep;
      }
      if (small_nonempty >= 1 && !has_empty && rep.tier == PositionTier::VeryGood) {
        rep.tier = PositionTier::Good;
        rep.witness = pair_name + ": small corner without an empty one";
      }
    }
  }
  return rep;
}

IntersectionNumber intersection_number(const Context& ctx, const AISetPtr& x, const AISetPtr& y,
                                       int translate_budget) {
  const auto& g = ctx.group();
  IntersectionNumber out;
  auto run = [&](int budget_r) {
    std::vector<Word> reps;
    auto h_elems = x->stabilizer()->members_within(static_cast<long long>(budget_r) + 2);
    auto k_elems = y->stabilizer()->members_within(static_cast<long long>(budget_r) + 2);
    h_elems.push_back(Word{});
    k_elems.push_back(Word{});
    for (const auto& t : ball(g, budget_r, ctx.budget())) {
      auto gx = translate_set(x, t);
      auto res = crossing(ctx, gx, y);
      if (res.verdict.value != Truth::Yes) continue;
      // canonical double coset representative of K t H
      Word best = g.normalize(t);
      for (const auto& k : k_elems)
        for (const auto& h : h_elems) {
          Word cand = g.mul(g.mul(k, t), h);
          if (shortlex_less(cand, best)) best = cand;
        }
      if (std::find(reps.begin(), reps.end(), best) == reps.end()) reps.push_back(best);
    }
    std::sort(reps.begin(), reps.end(), shortlex_less);
    return reps;
  };
  auto reps = run(translate_budget);
  auto reps_prev = translate_budget >= 1 ? run(translate_budget - 1) : std::vector<Word>{};
  out.count = static_cast<int>(reps.size());
  out.exact = reps == reps_prev;
  out.double_coset_reps = reps;
  return out;
}

SandwichResult sandwich_check(const Context& ctx, const AISetPtr& xj, const AISetPtr& xk,
                              int translate_budget) {
  const auto& g = ctx.group();
  SandwichResult out;
  out.verdict.at_radius = ctx.budget().radius;
  bool all_cross = true;
  std::optional<std::string> upper, lower;
  for (const auto& t : ball(g, translate_budget, ctx.budget())) {
    for (bool comp : {false, true}) {
      AISetPtr u = translate_set(xk, t);
      if (comp) u = complement_set(u);
      auto cr = crossing(ctx, xj, u);
      if (cr.verdict.value != Truth::Yes) all_cross = false;
      if (!upper && almost_inclusion(ctx, xj, u).yes()) upper = u->name();
      if (!lower && almost_inclusion(ctx, u, xj).yes()) lower = u->name();
    }
    if (upper && lower) break;
  }
  if (upper && lower) {
    out.verdict.value = Truth::Yes;
    out.verdict.stabilized = true;
    out.upper = *upper;
    out.lower = *lower;
    out.verdict.witness = "bounded: " + *lower + " <= set <= " + *upper;
    return out;
  }
  if (all_cross) {
    out.verdict.value = Truth::Yes;
    out.verdict.stabilized = true;
    out.all_crossing = true;
    out.verdict.witness = "crosses every tested translate";
    return out;
  }
  out.verdict.value = Truth::No;
  out.verdict.stabilized = true;
  out.verdict.witness = std::string("not sandwiched within budget: ") +
                        (upper ? "no lower bound found" : "no upper bound found");
  if (upper) out.upper = *upper;
  if (lower) out.lower = *lower;
  return out;
}

Verdict corner_symmetry_check(const Context& ctx, const std::vector<AISetPtr>& family,
                              const std::vector<Word>& translates) {
  auto sides = translate_closure(ctx, family, translates);
  Verdict out;
  out.at_radius = ctx.budget().radius;
  bool undecided = false;
  for (std::size_t i = 0; i < sides.size(); ++i)
    for (std::size_t j = i + 1; j < sides.size(); ++j) {
      CornerReport cr = corners(ctx, sides[i].set, sides[j].set);
      for (const auto& c : cr.corner) {
        if (c.cls == SizeClass::Inconclusive || c.cls_h == SizeClass::Inconclusive) {
          undecided = true;
          continue;
        }
        if (smallish(c.cls) != smallish(c.cls_h)) {
          out.value = Truth::No;
          out.stabilized = true;
          out.witness = sides[i].label + " vs " + sides[j].label + ": corner small for one stabilizer only";
          return out;
        }
      }
    }
  out.value = undecided ? Truth::Inconclusive : Truth::Yes;
  out.stabilized = !undecided;
  if (out.value == Truth::Yes) out.witness = "all small classifications agree across stabilizers";
  return out;
}

}  // namespace aif
