#include "aif/aiset.hpp"

#include <algorithm>
#include <set>

namespace aif {

std::string to_string(Truth t) {
  switch (t) {
    case Truth::Yes: return "yes";
    case Truth::No: return "no";
    default: return "inconclusive";
  }
}

std::string to_string(SizeClass c) {
  switch (c) {
    case SizeClass::Empty: return "empty";
    case SizeClass::Small: return "small";
    case SizeClass::Large: return "large";
    default: return "inconclusive";
  }
}

namespace {

class FnSet : public AISet {
 public:
  FnSet(std::string name, GroupPtr ambient, SubgroupPtr stab, std::function<bool(const Word&)> pred,
        bool ts)
      : AISet(std::move(name), std::move(ambient), std::move(stab)), pred_(std::move(pred)), ts_(ts) {}
  bool contains(const Word& g) const override { return pred_(g); }
  bool thread_safe() const override { return ts_; }

 private:
  std::function<bool(const Word&)> pred_;
  bool ts_;
};

}  // namespace

AISetPtr rule_set(std::string name, GroupPtr ambient, SubgroupPtr stab,
                  std::function<bool(const Word&)> pred, bool thread_safe) {
  return std::make_shared<FnSet>(std::move(name), std::move(ambient), std::move(stab),
                                 std::move(pred), thread_safe);
}

AISetPtr whole_group_set(GroupPtr ambient) {
  auto stab = std::make_shared<WholeGroup>("G", ambient);
  return rule_set("G", ambient, stab, [](const Word&) { return true; }, true);
}

AISetPtr empty_set(GroupPtr ambient) {
  auto stab = std::make_shared<WholeGroup>("G", ambient);
  return rule_set("empty", ambient, stab, [](const Word&) { return false; }, true);
}

AISetPtr complement_set(const AISetPtr& x) {
  return rule_set(x->name() + "*", x->ambient_ptr(), x->stabilizer(),
                  [x](const Word& g) { return !x->contains(g); }, x->thread_safe());
}

AISetPtr translate_set(const AISetPtr& x, const Word& g) {
  const auto& amb = x->ambient();
  Word ng = amb.normalize(g);
  if (ng.empty()) return x;
  Word ginv = amb.inv(ng);
  SubgroupPtr stab = std::make_shared<ConjugateSubgroup>(
      amb.str(ng) + " " + x->stabilizer()->name(), x->stabilizer(), ng);
  return rule_set(amb.str(ng) + "." + x->name(), x->ambient_ptr(), stab,
                  [x, ginv, &amb](const Word& h) { return x->contains(amb.mul(ginv, h)); },
                  x->thread_safe());
}

AISetPtr union_set(const AISetPtr& a, const AISetPtr& b, SubgroupPtr stab) {
  return rule_set(a->name() + "+" + b->name(), a->ambient_ptr(), std::move(stab),
                  [a, b](const Word& g) { return a->contains(g) || b->contains(g); },
                  a->thread_safe() && b->thread_safe());
}

AISetPtr intersect_set(const AISetPtr& a, const AISetPtr& b, SubgroupPtr stab) {
  return rule_set(a->name() + "&" + b->name(), a->ambient_ptr(), std::move(stab),
                  [a, b](const Word& g) { return a->contains(g) && b->contains(g); },
                  a->thread_safe() && b->thread_safe());
}

AISetPtr linear_halfspace(std::string name, GroupPtr ambient, std::vector<long long> functional,
                          long long threshold, SubgroupPtr stab) {
  auto fa = std::dynamic_pointer_cast<const FreeAbelian>(ambient);
  if (!fa) throw OracleError("linear halfspace needs a free abelian ambient");
  return rule_set(std::move(name), ambient, std::move(stab),
                  [fa, functional, threshold](const Word& g) {
                    auto e = fa->exponents(g);
                    long long v = 0;
                    for (std::size_t i = 0; i < e.size(); ++i) v += functional[i] * e[i];
                    return v >= threshold;
                  },
                  true);
}

AISetPtr tree_halfspace(std::string name, TreeSideRule rule, SubgroupPtr stab) {
  GroupPtr amb = rule.ball->gog().ambient_ptr();
  return rule_set(std::move(name), amb, std::move(stab),
                  [rule](const Word& g) { return rule.contains(g); }, false);
}

AISetPtr coset_fringe(std::string name, SubgroupPtr h, std::vector<Word> elements) {
  std::vector<Word> reps;
  for (const auto& e : elements) reps.push_back(h->coset_rep(e));
  return rule_set(std::move(name), h->ambient_ptr(), h,
                  [h, reps](const Word& g) {
                    Word r = h->coset_rep(g);
                    return std::find(reps.begin(), reps.end(), r) != reps.end();
                  },
                  false);
}

AISetPtr schreier_seed_set(std::string name, std::shared_ptr<const SchreierGraph> graph,
                           std::vector<Word> seed_in,
                           std::vector<std::pair<Word, bool>> component_sides, SubgroupPtr stab) {
  // Resolve seeds and component anchors to vertex ids once.
  std::vector<char> in_seed(graph->vertices.size(), 0);
  for (const auto& w : seed_in) {
    int v = graph->find_vertex(stab->coset_rep(w));
    if (v < 0) throw OracleError("schreier seed vertex outside the graph");
    in_seed[static_cast<std::size_t>(v)] = 1;
  }
  auto comp = graph->components_without(in_seed);
  std::unordered_map<int, bool> side_of_comp;
  for (const auto& [anchor, side] : component_sides) {
    int v = graph->find_vertex(stab->coset_rep(anchor));
    if (v < 0) throw OracleError("schreier component anchor outside the graph");
    if (comp[static_cast<std::size_t>(v)] < 0) throw OracleError("component anchor lies in the seed");
    side_of_comp[comp[static_cast<std::size_t>(v)]] = side;
  }
  return rule_set(std::move(name), stab->ambient_ptr(), stab,
                  [graph, stab, in_seed, comp, side_of_comp](const Word& g) {
                    int v = graph->find_vertex(stab->coset_rep(g));
                    if (v < 0) throw OracleError("schreier seed rule: element outside graph");
                    if (in_seed[static_cast<std::size_t>(v)]) return true;
                    auto it = side_of_comp.find(comp[static_cast<std::size_t>(v)]);
                    if (it == side_of_comp.end())
                      throw OracleError("schreier seed rule: unassigned component");
                    return it->second;
                  },
                  false);
}

Context::Context(GroupPtr group, const Budget& budget)
    : group_(group), budget_(budget), ball_(BallIndex::build(group, budget.radius, budget)) {}

const BitVec& Context::table(const AISetPtr& s) const {
  auto it = tables_.find(s.get());
  if (it != tables_.end()) return it->second;
  auto pred = [&s](const Word& g) { return s->contains(g); };
  BitVec t = s->thread_safe() ? fill_table_parallel(ball_, pred) : fill_table_serial(ball_, pred);
  return tables_.emplace(s.get(), std::move(t)).first->second;
}

const CosetTable& Context::cosets(const SubgroupPtr& h) const {
  auto it = coset_tables_.find(h.get());
  if (it != coset_tables_.end()) return it->second;
  return coset_tables_.emplace(h.get(), CosetTable(ball_, *h)).first->second;
}

std::vector<int> coset_growth(const Context& ctx, const BitVec& set, const SubgroupPtr& h) {
  const auto& ct = ctx.cosets(h);
  std::vector<int> counts;
  for (int r = 0; r <= ctx.budget().radius; ++r)
    counts.push_back(ct.cosets_hit(set, ctx.ball().size_at(r)));
  return counts;
}

SizeClass classify_growth(const std::vector<int>& counts) {
  if (counts.empty()) return SizeClass::Inconclusive;
  if (counts.back() == 0) return SizeClass::Empty;
  std::size_t n = counts.size();
  if (n >= 2 && counts[n - 1] == counts[n - 2]) return SizeClass::Small;
  if (n >= 3 && counts[n - 1] > counts[n - 2] && counts[n - 2] > counts[n - 3])
    return SizeClass::Large;
  return SizeClass::Inconclusive;
}

CoboundaryReport coboundary(const Context& ctx, const AISetPtr& x, int radius) {
  if (radius > ctx.budget().radius) throw BudgetExceeded("coboundary radius above context radius");
  const auto& ball = ctx.ball();
  const auto& tab = ctx.table(x);
  const auto& g = ctx.group();
  CoboundaryReport out;
  std::set<std::pair<Word, int>> orbits_r, orbits_r1;
  std::size_t n = ball.size_at(radius);
  std::size_t n1 = radius >= 1 ? ball.size_at(radius - 1) : 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int s = 0; s < g.rank(); ++s) {
      int j = ball.find(g.mul(ball.word(i), g.gen(s)));
      if (j < 0 || static_cast<std::size_t>(j) >= n) continue;
      if (tab.get(i) == tab.get(static_cast<std::size_t>(j))) continue;
      // involution generators traverse the same undirected edge twice
      bool canonical = !(g.gen(s, 2).empty() && static_cast<std::size_t>(j) < i);
      if (!canonical) continue;
      out.edges.emplace_back(static_cast<int>(i), s);
      Word key = x->stabilizer()->coset_rep(ball.word(i));
      orbits_r.emplace(key, s);
      if (i < n1 && static_cast<std::size_t>(j) < n1) orbits_r1.emplace(key, s);
    }
  }
  out.orbit_count = static_cast<int>(orbits_r.size());
  out.stabilized = radius >= 1 && orbits_r.size() == orbits_r1.size();
  return out;
}

Verdict triviality(const Context& ctx, const AISetPtr& x) {
  auto counts_in = coset_growth(ctx, ctx.table(x), x->stabilizer());
  auto counts_out = coset_growth(ctx, ~ctx.table(x), x->stabilizer());
  Verdict v;
  v.at_radius = ctx.budget().radius;
  std::size_t n = counts_in.size();
  auto growing = [&](const std::vector<int>& c) {
    return n >= 2 && c[n - 1] > c[n - 2] && c[n - 1] >= 2;
  };
  auto stabilized = [&](const std::vector<int>& c) { return n >= 2 && c[n - 1] == c[n - 2]; };
  if (growing(counts_in) && growing(counts_out)) {
    v.value = Truth::Yes;
    v.stabilized = true;
    v.witness = "both sides show coset growth " + std::to_string(counts_in[n - 2]) + "->" +
                std::to_string(counts_in[n - 1]) + " / " + std::to_string(counts_out[n - 2]) +
                "->" + std::to_string(counts_out[n - 1]);
  } else if (stabilized(counts_in) || stabilized(counts_out)) {
    v.value = Truth::No;
    v.stabilized = true;
    v.witness = stabilized(counts_in) ? "the set is covered by " + std::to_string(counts_in[n - 1]) +
                                            " stabilizer cosets"
                                      : "the complement is covered by " +
                                            std::to_string(counts_out[n - 1]) + " stabilizer cosets";
  } else {
    v.value = Truth::Inconclusive;
  }
  return v;
}

Verdict equivalent(const Context& ctx, const AISetPtr& x, const AISetPtr& y) {
  const auto& tx = ctx.table(x);
  const auto& ty = ctx.table(y);
  BitVec diff = (tx & ~ty) | (~tx & ty);
  auto counts = coset_growth(ctx, diff, x->stabilizer());
  Verdict v;
  v.at_radius = ctx.budget().radius;
  SizeClass c = classify_growth(counts);
  if (c == SizeClass::Empty) {
    v.value = Truth::Yes;
    v.stabilized = true;
    v.witness = "sets agree on the ball";
  } else if (c == SizeClass::Small) {
    v.value = Truth::Yes;
    v.stabilized = true;
    v.witness = "difference covered by " + std::to_string(counts.back()) + " stabilizer cosets";
  } else if (c == SizeClass::Large) {
    v.value = Truth::No;  // growth heuristic
    v.stabilized = false;
    v.witness = "difference coset count keeps growing (heuristic refutation)";
  }
  return v;
}

std::optional<Word> invertibility_search(const Context& ctx, const AISetPtr& x) {
  const auto& g = ctx.group();
  int sr = std::min(ctx.budget().search_radius, ctx.budget().radius);
  auto candidates = ball(g, sr, ctx.budget());
  int eval_radius = ctx.budget().radius - sr;
  std::size_t n = ctx.ball().size_at(std::max(eval_radius, 1));
  for (const auto& cand : candidates) {
    if (cand.empty()) continue;
    Word cinv = g.inv(cand);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const Word& h = ctx.ball().word(i);
      if (x->contains(g.mul(cinv, h)) != !x->contains(h)) ok = false;
    }
    if (ok) return cand;
  }
  return std::nullopt;
}

EnclosingReport strict_enclosing_check_pred(const Context& ctx,
                                            const std::function<bool(const Word&)>& a,
                                            const TreeBall& tree, int v_node, int w_node) {
  EnclosingReport rep;
  rep.verdict.at_radius = ctx.budget().radius;
  rep.orbits_saturated = tree.saturated(v_node);
  const auto& verts = tree.verts();
  // Incident edges of v within the ball: the parent edge (if any) and the
  // child edges. For each, the initial-side set of the edge oriented
  // towards v must be contained in A or in A*.
  std::vector<std::pair<int, bool>> incident;  // (child node, v side is parent?)
  if (verts[static_cast<std::size_t>(v_node)].parent >= 0) incident.emplace_back(v_node, false);
  for (int c : verts[static_cast<std::size_t>(v_node)].children) incident.emplace_back(c, true);
  if (incident.empty()) {
    rep.verdict.value = Truth::Inconclusive;
    rep.verdict.witness = "no incident edges visible in the tree ball";
    return rep;
  }
  std::size_t n = ctx.ball().size();
  for (auto [child, v_is_parent] : incident) {
    // Edge between child and its parent. Oriented towards v:
    //   v parent: terminal side is everything not under child; the initial
    //     side Y_s^* is the subtree under child.
    //   v == child: terminal side is the subtree under child; initial side
    //     is the complement.
    TreeSideRule initial_side{std::shared_ptr<const TreeBall>(&tree, [](const TreeBall*) {}), child,
                              /*to_parent=*/v_is_parent ? false : true, w_node};
    // initial_side.contains(g) == g lies in phi^-1(Y_s^*)
    bool all_in = true, all_out = true;
    for (std::size_t i = 0; i < n; ++i) {
      const Word& h = ctx.ball().word(i);
      bool in_zs;
      try {
        in_zs = initial_side.contains(h);
      } catch (const OracleError&) {
        rep.verdict.value = Truth::Inconclusive;
        rep.verdict.witness = "tree ball too small to evaluate an incident halfspace";
        return rep;
      }
      if (!in_zs) continue;
      if (a(h))
        all_out = false;
      else
        all_in = false;
      if (!all_in && !all_out) break;
    }
    if (!all_in && !all_out) {
      rep.verdict.value = Truth::No;
      rep.verdict.stabilized = true;
      rep.violating_edge = "edge to tree vertex #" + std::to_string(child);
      rep.verdict.witness = "initial side of " + rep.violating_edge + " meets both sides";
      return rep;
    }
  }
  rep.verdict.value = Truth::Yes;
  rep.verdict.stabilized = rep.orbits_saturated;
  rep.verdict.witness = "all incident initial sides lie in the set or its complement";
  return rep;
}

EnclosingReport strict_enclosing_check(const Context& ctx, const AISetPtr& a, const TreeBall& tree,
                                       int v_node, int w_node) {
  return strict_enclosing_check_pred(
      ctx, [&a](const Word& g) { return a->contains(g); }, tree, v_node, w_node);
}

}  // namespace aif
