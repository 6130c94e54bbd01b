#include "aif/system.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace aif {

std::vector<Word> GroupSystem::rel_gens() const {
  if (!relative_generators.empty()) return relative_generators;
  std::vector<Word> out;
  for (int i = 0; i < group->rank(); ++i) out.push_back(group->gen(i));
  return out;
}

int RelativeCayleyBall::find_plain(const Word& w) const {
  for (std::size_t i = 0; i < plain.size(); ++i)
    if (plain[i] == w) return static_cast<int>(i);
  return -1;
}

int RelativeCayleyBall::find_cone(int family_index, const Word& rep) const {
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (cones[i].first == family_index && cones[i].second == rep) return static_cast<int>(i);
  return -1;
}

namespace {

// Weighted moves through a family member: nontrivial subgroup elements s
// with their angle weight d_j(s).
std::vector<std::pair<Word, long long>> subgroup_moves(const SubgroupOracle& s, long long cap) {
  std::vector<std::pair<Word, long long>> moves;
  for (const auto& m : s.members_within(cap)) {
    auto wl = s.weighted_length(m, cap);
    if (wl && *wl >= 1) moves.emplace_back(m, *wl);
  }
  return moves;
}

struct AngleSearch {
  std::vector<Word> elems;
  std::vector<long long> dist;
};

AngleSearch angle_dijkstra(const GroupSystem& sys, long long budget, std::size_t max_nodes) {
  const auto& g = *sys.group;
  std::vector<std::vector<std::pair<Word, long long>>> moves;
  for (const auto& s : sys.family) moves.push_back(subgroup_moves(*s, budget));
  auto gens = sys.rel_gens();
  std::map<Word, long long, bool (*)(const Word&, const Word&)> dist(shortlex_less);
  using QItem = std::pair<long long, Word>;
  auto cmp = [](const QItem& a, const QItem& b) {
    return a.first != b.first ? a.first > b.first : shortlex_less(b.second, a.second);
  };
  std::priority_queue<QItem, std::vector<QItem>, decltype(cmp)> pq(cmp);
  dist[Word{}] = 0;
  pq.push({0, Word{}});
  while (!pq.empty()) {
    auto [d, w] = pq.top();
    pq.pop();
    auto it = dist.find(w);
    if (it != dist.end() && it->second < d) continue;
    auto relax = [&](const Word& nxt, long long nd) {
      if (nd > budget) return;
      auto jt = dist.find(nxt);
      if (jt == dist.end() || nd < jt->second) {
        if (jt == dist.end() && dist.size() >= max_nodes)
          throw BudgetExceeded("relative ball size");
        dist[nxt] = nd;
        pq.push({nd, nxt});
      }
    };
    for (const auto& a : gens) {
      relax(g.mul(w, a), d + 1);
      relax(g.mul(w, g.inv(a)), d + 1);
    }
    for (const auto& fam : moves)
      for (const auto& [s, wt] : fam) relax(g.mul(w, s), d + wt);
  }
  AngleSearch out;
  std::vector<std::pair<long long, Word>> sorted;
  for (const auto& [w, d] : dist) sorted.emplace_back(d, w);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : shortlex_less(a.second, b.second);
  });
  for (const auto& [d, w] : sorted) {
    out.elems.push_back(w);
    out.dist.push_back(d);
  }
  return out;
}

}  // namespace

RelativeCayleyBall relative_ball(const GroupSystem& sys, int radius, const Budget& budget) {
  RelativeCayleyBall out;
  out.radius = radius;
  auto search = angle_dijkstra(sys, radius, budget.max_ball);
  out.plain = search.elems;
  out.angle_dist = search.dist;
  const auto& g = *sys.group;
  // plain edges along relative generators
  for (std::size_t i = 0; i < out.plain.size(); ++i)
    for (const auto& a : sys.rel_gens()) {
      int j = out.find_plain(g.mul(out.plain[i], a));
      if (j >= 0) out.plain_edges.emplace_back(static_cast<int>(i), j);
    }
  // cone vertices, deduplicated by the coset oracle
  for (std::size_t i = 0; i < out.plain.size(); ++i)
    for (std::size_t f = 0; f < sys.family.size(); ++f) {
      Word rep = sys.family[f]->left_coset_rep(out.plain[i]);
      int c = out.find_cone(static_cast<int>(f), rep);
      if (c < 0) {
        c = static_cast<int>(out.cones.size());
        out.cones.emplace_back(static_cast<int>(f), rep);
      }
      out.cone_edges.emplace_back(static_cast<int>(i), c);
    }
  return out;
}

std::optional<long long> angle_distance(const GroupSystem& sys, const Word& g, const Word& h,
                                        long long budget) {
  // left-invariance: d(g, h) = d(1, g^-1 h)
  Word target = sys.group->mul(sys.group->inv(g), h);
  Budget b;
  auto search = angle_dijkstra(sys, budget, b.max_ball);
  for (std::size_t i = 0; i < search.elems.size(); ++i)
    if (search.elems[i] == target) return search.dist[i];
  return std::nullopt;
}

namespace {

// Left-coset decomposition of the ball under a family member.
struct LeftCosets {
  std::vector<int> id;          // per ball element
  std::vector<Word> reps;
};

LeftCosets left_cosets(const Context& ctx, const SubgroupOracle& s) {
  LeftCosets out;
  out.id.resize(ctx.ball().size());
  std::unordered_map<Word, int, WordHash> index;
  for (std::size_t i = 0; i < ctx.ball().size(); ++i) {
    Word rep = s.left_coset_rep(ctx.ball().word(i));
    auto it = index.find(rep);
    if (it == index.end()) {
      index.emplace(rep, static_cast<int>(out.reps.size()));
      out.id[i] = static_cast<int>(out.reps.size());
      out.reps.push_back(rep);
    } else {
      out.id[i] = it->second;
    }
  }
  return out;
}

Word double_coset_key(const Context& ctx, const SubgroupPtr& h, const SubgroupPtr& s,
                      const Word& g) {
  Word best = ctx.group().normalize(g);
  auto hs = h->members_within(ctx.budget().search_radius + 2);
  auto ss = s->members_within(ctx.budget().search_radius + 2);
  hs.push_back(Word{});
  ss.push_back(Word{});
  for (const auto& a : hs)
    for (const auto& b : ss) {
      Word cand = ctx.group().mul(ctx.group().mul(a, g), b);
      if (shortlex_less(cand, best)) best = cand;
    }
  return best;
}

}  // namespace

AdaptReport adaptedness(const Context& ctx, const AISetPtr& x, const SubgroupPtr& s) {
  AdaptReport out;
  out.verdict.at_radius = ctx.budget().radius;
  auto lc = left_cosets(ctx, *s);
  const auto& tab = ctx.table(x);
  auto h = x->stabilizer();
  bool all_ok = true, undecided = false;
  std::set<Word> mixed_prev;
  for (std::size_t c = 0; c < lc.reps.size(); ++c) {
    BitVec members(ctx.ball().size());
    for (std::size_t i = 0; i < ctx.ball().size(); ++i)
      members.set(i, lc.id[i] == static_cast<int>(c));
    BitVec in = members & tab;
    BitVec outb = members & ~tab;
    if (!in.none() && !outb.none()) {
      out.mixed_cosets.push_back(lc.reps[c]);
      // was this coset already mixed one radius earlier?
      std::size_t prev = ctx.ball().size_at(std::max(0, ctx.budget().radius - 1));
      if (!in.none_prefix(prev) && !outb.none_prefix(prev)) mixed_prev.insert(lc.reps[c]);
    }
    auto cls_in = classify_growth(coset_growth(ctx, in, h));
    auto cls_out = classify_growth(coset_growth(ctx, outb, h));
    bool in_small = cls_in == SizeClass::Empty || cls_in == SizeClass::Small;
    bool out_small = cls_out == SizeClass::Empty || cls_out == SizeClass::Small;
    if (in_small || out_small) continue;
    if (cls_in == SizeClass::Large && cls_out == SizeClass::Large) {
      all_ok = false;
      out.verdict.witness = "coset " + ctx.group().str(lc.reps[c]) +
                            " meets both sides with growing stabilizer-coset counts";
    } else {
      undecided = true;
    }
  }
  // deduplicate mixed cosets by double coset H g S
  std::set<Word> dkeys;
  for (const auto& rep : out.mixed_cosets) dkeys.insert(double_coset_key(ctx, h, s, rep));
  out.mixed_double_cosets.assign(dkeys.begin(), dkeys.end());
  std::set<Word> dkeys_prev;
  for (const auto& rep : mixed_prev) dkeys_prev.insert(double_coset_key(ctx, h, s, rep));
  out.mixed_count_stabilized = dkeys.size() == dkeys_prev.size();
  if (!all_ok) {
    out.verdict.value = Truth::No;
    out.verdict.stabilized = true;
  } else if (undecided) {
    out.verdict.value = Truth::Inconclusive;
  } else {
    out.verdict.value = Truth::Yes;
    out.verdict.stabilized = out.mixed_count_stabilized;
    out.verdict.witness = "every coset has a stabilizer-finite side; " +
                          std::to_string(out.mixed_double_cosets.size()) + " mixed double cosets";
  }
  return out;
}

AdaptReport mixed_cone_cosets(const Context& ctx, const AISetPtr& x, const SubgroupPtr& s) {
  return adaptedness(ctx, x, s);
}

Enlargement canonical_enlargement(const Context& ctx, const AISetPtr& x, const GroupSystem& sys) {
  Enlargement out;
  out.coboundary_h_finite.at_radius = ctx.budget().radius;
  auto h = x->stabilizer();
  const auto& tab = ctx.table(x);
  bool any_mixed = false;
  for (std::size_t f = 0; f < sys.family.size(); ++f) {
    auto lc = left_cosets(ctx, *sys.family[f]);
    for (std::size_t c = 0; c < lc.reps.size(); ++c) {
      BitVec members(ctx.ball().size());
      for (std::size_t i = 0; i < ctx.ball().size(); ++i)
        members.set(i, lc.id[i] == static_cast<int>(c));
      BitVec in = members & tab;
      BitVec outb = members & ~tab;
      auto cls_in = classify_growth(coset_growth(ctx, in, h));
      auto cls_out = classify_growth(coset_growth(ctx, outb, h));
      auto cls_all = classify_growth(coset_growth(ctx, members, h));
      bool coset_h_finite = cls_all == SizeClass::Small || cls_all == SizeClass::Empty;
      bool assign;
      if (outb.none())
        assign = true;  // contained in X
      else if (in.none())
        assign = false;
      else {
        any_mixed = true;
        if (coset_h_finite)
          throw OracleError("canonical enlargement is ambiguous: coset " +
                            ctx.group().str(lc.reps[c]) + " is stabilizer-finite and mixed");
        bool in_large = cls_in == SizeClass::Large;
        bool out_large = cls_out == SizeClass::Large;
        if (in_large && out_large)
          throw OracleError("no enlargement with stabilizer-finite coboundary: set not adapted to " +
                            sys.family[f]->name());
        if (!in_large && !out_large)
          throw OracleError("canonical enlargement undecided at this budget for coset " +
                            ctx.group().str(lc.reps[c]));
        assign = in_large;
      }
      if (!coset_h_finite && !outb.none() && !in.none()) {
        // assignment forced by the infinite side
      } else if (coset_h_finite) {
        out.canonical = false;  // unmixed stabilizer-finite cone: containment side chosen
      }
      out.cone_assignment.emplace_back(static_cast<int>(f), lc.reps[c], assign);
    }
  }
  (void)any_mixed;
  // coboundary of the enlargement: plain coboundary orbits plus cone edges
  // from elements disagreeing with their cone, counted per H-orbit.
  auto cob = coboundary(ctx, x, ctx.budget().radius);
  std::set<std::pair<Word, int>> cone_orbits, cone_orbits_prev;
  std::map<std::pair<int, Word>, bool> assign_map;
  for (const auto& [f, rep, a] : out.cone_assignment) assign_map[{f, rep}] = a;
  std::size_t full = ctx.ball().size();
  std::size_t prev = ctx.ball().size_at(std::max(0, ctx.budget().radius - 1));
  for (std::size_t f = 0; f < sys.family.size(); ++f) {
    for (std::size_t i = 0; i < full; ++i) {
      Word rep = sys.family[f]->left_coset_rep(ctx.ball().word(i));
      auto it = assign_map.find({static_cast<int>(f), rep});
      if (it == assign_map.end()) continue;
      if (tab.get(i) == it->second) continue;
      auto key = std::make_pair(h->coset_rep(ctx.ball().word(i)), static_cast<int>(f));
      cone_orbits.insert(key);
      if (i < prev) cone_orbits_prev.insert(key);
    }
  }
  bool stable = cob.stabilized && cone_orbits.size() == cone_orbits_prev.size();
  out.coboundary_h_finite.value = stable ? Truth::Yes : Truth::Inconclusive;
  out.coboundary_h_finite.stabilized = stable;
  out.coboundary_h_finite.witness =
      std::to_string(cob.orbit_count) + " plain edge orbits, " +
      std::to_string(cone_orbits.size()) + " cone edge orbits";
  return out;
}

Augmentation standard_augmentation(const Context& ctx, const AISetPtr& x, const GroupSystem& sys) {
  Augmentation out;
  const auto& tab = ctx.table(x);
  auto h = x->stabilizer();
  std::map<std::pair<int, Word>, bool> assign_map;
  for (std::size_t f = 0; f < sys.family.size(); ++f) {
    auto lc = left_cosets(ctx, *sys.family[f]);
    for (std::size_t c = 0; c < lc.reps.size(); ++c) {
      BitVec members(ctx.ball().size());
      for (std::size_t i = 0; i < ctx.ball().size(); ++i)
        members.set(i, lc.id[i] == static_cast<int>(c));
      BitVec in = members & tab;
      BitVec outb = members & ~tab;
      auto cls_out = classify_growth(coset_growth(ctx, outb, h));
      // cone in Y iff the coset meets X and the outside part is H-finite
      bool y_in = !in.none() && (cls_out == SizeClass::Empty || cls_out == SizeClass::Small);
      out.cone_assignment.emplace_back(static_cast<int>(f), lc.reps[c], y_in);
      assign_map[{static_cast<int>(f), lc.reps[c]}] = y_in;
      if (y_in) {
        // fringe: points of the coset outside X join X-hat
        for (std::size_t i = 0; i < ctx.ball().size(); ++i)
          if (members.get(i) && !tab.get(i)) out.added_points.push_back(ctx.ball().word(i));
      }
    }
  }
  std::sort(out.added_points.begin(), out.added_points.end(), shortlex_less);
  out.added_points.erase(std::unique(out.added_points.begin(), out.added_points.end()),
                         out.added_points.end());
  auto fams = sys.family;
  out.augmented_core = rule_set(
      x->name() + "^", x->ambient_ptr(), x->stabilizer(),
      [x, fams, assign_map](const Word& g) {
        if (x->contains(g)) return true;
        for (std::size_t f = 0; f < fams.size(); ++f) {
          auto it = assign_map.find({static_cast<int>(f), fams[f]->left_coset_rep(g)});
          if (it != assign_map.end() && it->second) return true;
        }
        return false;
      },
      false);
  // boundary check: every in-cone's visible members lie in the core
  out.boundary_in_g = true;
  const auto& core_tab = ctx.table(out.augmented_core);
  for (std::size_t f = 0; f < sys.family.size(); ++f)
    for (std::size_t i = 0; i < ctx.ball().size(); ++i) {
      auto it = assign_map.find({static_cast<int>(f), sys.family[f]->left_coset_rep(ctx.ball().word(i))});
      if (it != assign_map.end() && it->second && !core_tab.get(i)) out.boundary_in_g = false;
    }
  return out;
}

namespace {

// A factor of an amalgam star, as a subgroup of the composite.
class CompositeFactorSubgroup : public SubgroupOracle {
 public:
  CompositeFactorSubgroup(std::string name, std::shared_ptr<const AmalgamStarGroup> comp, int vid,
                          GroupPtr comp_as_group)
      : SubgroupOracle(std::move(name), std::move(comp_as_group)), comp_(std::move(comp)),
        vid_(vid) {}
  std::string kind() const override { return "composite-factor"; }
  bool member(const Word& g) const override {
    Word n = ambient().normalize(g);
    int lo = vid_ == 0 ? 0 : comp_->center().rank();
    int hi = comp_->center().rank();
    for (int i = 0; i + 1 <= vid_ - 1; ++i) lo += comp_->companions()[static_cast<std::size_t>(i)].group->rank();
    if (vid_ > 0) hi = lo + comp_->companions()[static_cast<std::size_t>(vid_ - 1)].group->rank();
    else lo = 0;
    for (Letter l : n) {
      int gidx = letter_gen(l);
      if (gidx < lo || gidx >= hi) return false;
    }
    return true;
  }
  std::vector<Word> generators() const override {
    std::vector<Word> out;
    if (vid_ == 0) {
      for (int i = 0; i < comp_->center().rank(); ++i)
        out.push_back(comp_->embed_center(comp_->center().gen(i)));
    } else {
      const auto& c = *comp_->companions()[static_cast<std::size_t>(vid_ - 1)].group;
      for (int i = 0; i < c.rank(); ++i) out.push_back(comp_->embed_companion(vid_ - 1, c.gen(i)));
    }
    return out;
  }

 private:
  std::shared_ptr<const AmalgamStarGroup> comp_;
  int vid_;
};

// The edge group S_i of the star, as a subgroup of the composite.
class CompositeEdgeSubgroup : public SubgroupOracle {
 public:
  CompositeEdgeSubgroup(std::string name, std::shared_ptr<const AmalgamStarGroup> comp, int idx,
                        SubgroupPtr center_side, GroupPtr comp_as_group)
      : SubgroupOracle(std::move(name), std::move(comp_as_group)), comp_(std::move(comp)),
        idx_(idx), center_side_(std::move(center_side)) {}
  std::string kind() const override { return "composite-edge"; }
  bool member(const Word& g) const override {
    auto center = comp_->restrict_to_center(g);
    return center && center_side_->member(*center);
  }
  std::vector<Word> generators() const override {
    std::vector<Word> out;
    for (const auto& w : center_side_->generators()) out.push_back(comp_->embed_center(w));
    return out;
  }
  std::string describe() const override { return center_side_->describe(); }

 private:
  std::shared_ptr<const AmalgamStarGroup> comp_;
  int idx_;
  SubgroupPtr center_side_;
};

}  // namespace

StandardExtension standard_extension(const Context& ctx, const AISetPtr& x, const GroupSystem& sys,
                                     const std::vector<StarCompanion>& companions,
                                     int tree_radius) {
  if (companions.size() != sys.family.size())
    throw OracleError("standard extension needs one companion per family member");
  for (std::size_t i = 0; i < companions.size(); ++i) {
    if (companions[i].edge_in_center->ambient_ptr().get() != sys.group.get())
      throw OracleError("companion edge group must live in the system group");
    if (companions[i].edge_in_companion->ambient_ptr().get() != companions[i].group.get())
      throw OracleError("companion does not contain the family subgroup");
  }
  StandardExtension out;
  out.composite = std::make_shared<AmalgamStarGroup>(sys.group->name() + "_bar", sys.group,
                                                     companions);
  // Cone side assignment computed on demand from the center context.
  auto h = x->stabilizer();
  auto family = sys.family;
  auto ctxp = &ctx;
  auto assignment = std::make_shared<std::map<std::pair<int, Word>, bool>>();
  auto side_of_cone = [ctxp, x, h, family, assignment](int f, const Word& g0) {
    Word rep = family[static_cast<std::size_t>(f)]->left_coset_rep(g0);
    auto key = std::make_pair(f, rep);
    auto it = assignment->find(key);
    if (it != assignment->end()) return it->second;
    const auto& tab = ctxp->table(x);
    BitVec members(ctxp->ball().size());
    for (std::size_t i = 0; i < ctxp->ball().size(); ++i)
      members.set(i, family[static_cast<std::size_t>(f)]->left_coset_rep(ctxp->ball().word(i)) == rep);
    BitVec in = members & tab;
    BitVec outb = members & ~tab;
    bool side;
    if (outb.none() && !in.none())
      side = true;
    else if (in.none())
      side = false;
    else {
      auto cls_in = classify_growth(coset_growth(*ctxp, in, h));
      auto cls_out = classify_growth(coset_growth(*ctxp, outb, h));
      if (cls_in == SizeClass::Large && (cls_out == SizeClass::Small || cls_out == SizeClass::Empty))
        side = true;
      else if (cls_out == SizeClass::Large && (cls_in == SizeClass::Small || cls_in == SizeClass::Empty))
        side = false;
      else
        throw OracleError("extension: cone side undecided for a mixed coset");
    }
    (*assignment)[key] = side;
    return side;
  };
  auto composite = out.composite;
  out.xbar = [composite, x, side_of_cone](const Word& gbar) {
    auto center = composite->restrict_to_center(gbar);
    if (center) return x->contains(*center);
    auto dep = composite->first_departure(gbar);
    return side_of_cone(dep->first, dep->second);
  };
  // Star graph of groups over the composite for the enclosing check.
  GroupPtr comp_group = out.composite;
  std::vector<GogVertex> verts;
  verts.push_back({"center", std::make_shared<CompositeFactorSubgroup>("G", out.composite, 0, comp_group)});
  for (std::size_t i = 0; i < companions.size(); ++i)
    verts.push_back({"companion" + std::to_string(i),
                     std::make_shared<CompositeFactorSubgroup>("A" + std::to_string(i), out.composite,
                                                               static_cast<int>(i) + 1, comp_group)});
  std::vector<GogEdge> edges;
  for (std::size_t i = 0; i < companions.size(); ++i) {
    auto edge_sub = std::make_shared<CompositeEdgeSubgroup>(
        "S" + std::to_string(i), out.composite, static_cast<int>(i), companions[i].edge_in_center,
        comp_group);
    edges.push_back({"e" + std::to_string(i), 0, static_cast<int>(i) + 1, edge_sub, edge_sub, Word{}});
  }
  auto star = std::make_shared<GraphOfGroups>(comp_group, std::move(verts), std::move(edges), 0);
  out.star = star;
  out.tree = std::make_shared<TreeBall>(
      bass_serre_ball(star, tree_radius, ctx.budget(), ctx.budget().search_radius));
  return out;
}

}  // namespace aif
