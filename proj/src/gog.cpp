#include "aif/gog.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace aif {

GraphOfGroups::GraphOfGroups(GroupPtr ambient, std::vector<GogVertex> vertices,
                             std::vector<GogEdge> edges, int base_vertex)
    : ambient_(std::move(ambient)), vertices_(std::move(vertices)), edges_(std::move(edges)),
      base_(base_vertex) {
  for (auto& e : edges_)
    if (!e.side_w)
      e.side_w = std::make_shared<ConjugateSubgroup>(e.name + "_w", e.side_v,
                                                     ambient_->inv(e.letter));
}

void GraphOfGroups::validate() const {
  for (const auto& e : edges_) {
    for (const auto& g : e.side_v->generators())
      if (!vertices_[static_cast<std::size_t>(e.v)].group->member(g))
        throw OracleError("edge group " + e.name + " not contained in vertex group " +
                          vertices_[static_cast<std::size_t>(e.v)].name);
    for (const auto& g : e.side_w->generators())
      if (!vertices_[static_cast<std::size_t>(e.w)].group->member(g))
        throw OracleError("edge group " + e.name + " not contained in vertex group " +
                          vertices_[static_cast<std::size_t>(e.w)].name);
  }
  // connectivity
  std::vector<int> uf(vertices_.size());
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& e : edges_) uf[static_cast<std::size_t>(find(e.v))] = find(e.w);
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (find(static_cast<int>(i)) != find(base_)) throw OracleError("underlying graph not connected");
}

namespace {

// Elements of a subgroup within a plain word-length radius over its
// generator list, identity included, deterministic order.
std::vector<Word> subgroup_elements(const GroupOracle& amb, const SubgroupOracle& v, int radius) {
  std::vector<Word> out{Word{}};
  std::unordered_map<Word, char, WordHash> seen{{Word{}, 1}};
  std::vector<Word> layer{Word{}};
  auto gens = v.generators();
  for (int r = 0; r < radius; ++r) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (const auto& g : gens)
        for (int s : {1, -1}) {
          Word cand = amb.mul(w, s > 0 ? g : amb.inv(g));
          if (!seen.count(cand)) {
            seen.emplace(cand, 1);
            next.push_back(cand);
          }
        }
    std::sort(next.begin(), next.end(), shortlex_less);
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
    if (layer.empty()) break;
  }
  return out;
}

struct Transversal {
  std::vector<Word> reps;
  bool complete = false;
};

Transversal transversal_of(const GroupOracle& amb, const SubgroupOracle& v,
                           const SubgroupOracle& c, int radius) {
  auto dedupe = [&](int r) {
    std::vector<Word> reps;
    std::unordered_map<Word, char, WordHash> seen;
    for (const auto& e : subgroup_elements(amb, v, r)) {
      Word rep = c.left_coset_rep(e);
      if (!seen.count(rep)) {
        seen.emplace(rep, 1);
        reps.push_back(rep);
      }
    }
    std::sort(reps.begin(), reps.end(), shortlex_less);
    return reps;
  };
  Transversal t;
  t.reps = dedupe(radius);
  t.complete = (t.reps == dedupe(radius + 1));
  return t;
}

}  // namespace

int TreeBall::locate(int orbit, const Word& g) const {
  const auto& amb = gog_->ambient();
  const auto& grp = *gog_->vertices()[static_cast<std::size_t>(orbit)].group;
  Word ng = amb.normalize(g);
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    if (verts_[i].orbit != orbit) continue;
    if (grp.member(amb.mul(amb.inv(verts_[i].g), ng))) return static_cast<int>(i);
  }
  return -1;
}

bool TreeBall::is_descendant(int node, int ancestor) const {
  while (node >= 0) {
    if (node == ancestor) return true;
    node = verts_[static_cast<std::size_t>(node)].parent;
  }
  return false;
}

SubgroupPtr TreeBall::vertex_stabilizer(int node) const {
  const auto& v = verts_[static_cast<std::size_t>(node)];
  auto base = gog_->vertices()[static_cast<std::size_t>(v.orbit)].group;
  if (v.g.empty()) return base;
  return std::make_shared<ConjugateSubgroup>("stab", base, v.g);
}

SubgroupPtr TreeBall::edge_stabilizer(int node) const {
  const auto& v = verts_[static_cast<std::size_t>(node)];
  if (v.parent_edge < 0) throw OracleError("root has no parent edge");
  auto base = gog_->edges()[static_cast<std::size_t>(v.parent_edge)].side_v;
  if (v.edge_coset.empty()) return base;
  return std::make_shared<ConjugateSubgroup>("estab", base, v.edge_coset);
}

TreeBall bass_serre_ball(std::shared_ptr<const GraphOfGroups> gog, int radius,
                         const Budget& budget, int transversal_radius) {
  gog->validate();
  const auto& amb = gog->ambient();
  TreeBall tb;
  tb.gog_ = gog;
  tb.radius_ = radius;
  tb.verts_.push_back({gog->base_vertex(), Word{}, -1, -1, Word{}, 0, {}});
  tb.saturated_.push_back(0);

  // Cache transversals per (edge, direction).
  std::vector<Transversal> fwd(gog->edges().size()), bwd(gog->edges().size());
  std::vector<char> have_fwd(gog->edges().size(), 0), have_bwd(gog->edges().size(), 0);
  auto get_fwd = [&](std::size_t ei) -> const Transversal& {
    if (!have_fwd[ei]) {
      const auto& e = gog->edges()[ei];
      fwd[ei] = transversal_of(amb, *gog->vertices()[static_cast<std::size_t>(e.v)].group,
                               *e.side_v, transversal_radius);
      have_fwd[ei] = 1;
    }
    return fwd[ei];
  };
  auto get_bwd = [&](std::size_t ei) -> const Transversal& {
    if (!have_bwd[ei]) {
      const auto& e = gog->edges()[ei];
      bwd[ei] = transversal_of(amb, *gog->vertices()[static_cast<std::size_t>(e.w)].group,
                               *e.side_w, transversal_radius);
      have_bwd[ei] = 1;
    }
    return bwd[ei];
  };

  std::deque<int> queue{0};
  while (!queue.empty()) {
    int vi = queue.front();
    queue.pop_front();
    TreeBall::Vertex cur = tb.verts_[static_cast<std::size_t>(vi)];
    if (cur.depth >= radius) continue;
    bool all_complete = true;
    for (std::size_t ei = 0; ei < gog->edges().size(); ++ei) {
      const auto& e = gog->edges()[ei];
      // forward traversal: from the v-side across to w
      if (e.v == cur.orbit) {
        const auto& tr = get_fwd(ei);
        all_complete = all_complete && tr.complete;
        for (const auto& r : tr.reps) {
          Word edge_g = amb.mul(cur.g, r);
          Word ng = amb.mul(edge_g, e.letter);
          int existing = tb.locate(e.w, ng);
          if (existing == vi) continue;
          if (existing == cur.parent && cur.parent >= 0) continue;
          if (existing >= 0) continue;  // translate of an edge already in the ball
          if (tb.verts_.size() >= budget.max_tree_vertices) throw BudgetExceeded("tree ball size");
          tb.verts_.push_back({e.w, ng, vi, static_cast<int>(ei), edge_g, cur.depth + 1, {}});
          tb.saturated_.push_back(0);
          tb.verts_[static_cast<std::size_t>(vi)].children.push_back(static_cast<int>(tb.verts_.size()) - 1);
          queue.push_back(static_cast<int>(tb.verts_.size()) - 1);
        }
      }
      // backward traversal: from the w-side across to v
      if (e.w == cur.orbit) {
        const auto& tr = get_bwd(ei);
        all_complete = all_complete && tr.complete;
        for (const auto& r : tr.reps) {
          Word edge_g = amb.mul(amb.mul(cur.g, r), amb.inv(e.letter));
          Word ng = edge_g;
          int existing = tb.locate(e.v, ng);
          if (existing == vi) continue;
          if (existing == cur.parent && cur.parent >= 0) continue;
          if (existing >= 0) continue;
          if (tb.verts_.size() >= budget.max_tree_vertices) throw BudgetExceeded("tree ball size");
          tb.verts_.push_back({e.v, ng, vi, static_cast<int>(ei), edge_g, cur.depth + 1, {}});
          tb.saturated_.push_back(0);
          tb.verts_[static_cast<std::size_t>(vi)].children.push_back(static_cast<int>(tb.verts_.size()) - 1);
          queue.push_back(static_cast<int>(tb.verts_.size()) - 1);
        }
      }
    }
    tb.saturated_[static_cast<std::size_t>(vi)] = all_complete ? 1 : 0;
  }
  return tb;
}

bool TreeSideRule::contains(const Word& g) const {
  const auto& gog = ball->gog();
  const auto& amb = gog.ambient();
  const auto& base = ball->verts()[static_cast<std::size_t>(basepoint)];
  Word target = amb.mul(g, base.g);
  int node = ball->locate(base.orbit, target);
  if (node < 0) throw OracleError("translated basepoint leaves the computed tree ball");
  bool below = ball->is_descendant(node, child_node);
  return below != to_parent;
}

namespace {
std::vector<std::string> star_names(const GroupPtr& center, const std::vector<StarCompanion>& comps) {
  std::vector<std::string> names = center->generator_names();
  for (const auto& c : comps)
    for (const auto& n : c.group->generator_names()) names.push_back(n);
  return names;
}
}  // namespace

AmalgamStarGroup::AmalgamStarGroup(std::string name, GroupPtr center,
                                   std::vector<StarCompanion> companions)
    : GroupOracle(std::move(name), star_names(center, companions)), center_(std::move(center)),
      companions_(std::move(companions)) {
  offset_.push_back(0);
  int off = center_->rank();
  for (const auto& c : companions_) {
    offset_.push_back(off);
    off += c.group->rank();
    if (c.edge_in_center->generators().size() != c.edge_in_companion->generators().size())
      throw OracleError("edge group generator lists must correspond");
  }
}

int AmalgamStarGroup::vertex_of_letter(Letter l) const {
  int g = letter_gen(l);
  for (int i = static_cast<int>(offset_.size()) - 1; i >= 0; --i)
    if (g >= offset_[static_cast<std::size_t>(i)]) return i;
  throw OracleError("letter outside alphabet");
}

Word AmalgamStarGroup::to_local(int vid, const Word& w) const {
  Word out;
  int off = offset_[static_cast<std::size_t>(vid)];
  for (Letter l : w) out.push_back(make_letter(letter_gen(l) - off, l > 0));
  return out;
}

Word AmalgamStarGroup::to_global(int vid, const Word& w) const {
  Word out;
  int off = offset_[static_cast<std::size_t>(vid)];
  for (Letter l : w) out.push_back(make_letter(letter_gen(l) + off, l > 0));
  return out;
}

Word AmalgamStarGroup::embed_center(const Word& w) const { return normalize(to_global(0, w)); }

Word AmalgamStarGroup::embed_companion(int i, const Word& w) const {
  return normalize(to_global(i + 1, w));
}

Word AmalgamStarGroup::across(int companion, bool from_center, const Word& local) const {
  const auto& c = companions_[static_cast<std::size_t>(companion)];
  const SubgroupOracle& from = from_center ? *c.edge_in_center : *c.edge_in_companion;
  const SubgroupOracle& to = from_center ? *c.edge_in_companion : *c.edge_in_center;
  auto expr = from.express(local);
  if (!expr) throw OracleError("edge-group element not expressible: " + from.ambient().str(local));
  auto gens = to.generators();
  Word out;
  for (Letter l : *expr) {
    Word piece = gens[static_cast<std::size_t>(letter_gen(l))];
    if (l < 0) piece = to.ambient().inv(piece);
    out = to.ambient().mul(out, piece);
  }
  return out;
}

Word AmalgamStarGroup::normalize_impl(const Word& w) const {
  struct Syll {
    int vid;
    Word local;
  };
  auto group_of = [&](int vid) -> const GroupOracle& {
    return vid == 0 ? *center_ : *companions_[static_cast<std::size_t>(vid - 1)].group;
  };
  // Stage 1: runs -> normalized syllables, merging across dissolved ones.
  std::vector<Syll> st;
  auto push = [&](int vid, Word local) {
    for (;;) {
      local = group_of(vid).normalize(local);
      if (!st.empty() && st.back().vid == vid) {
        local = group_of(vid).mul(st.back().local, local);
        st.pop_back();
        continue;
      }
      if (local.empty()) return;
      st.push_back({vid, std::move(local)});
      return;
    }
  };
  {
    int run_vid = -1;
    Word run;
    for (Letter l : w) {
      int vid = vertex_of_letter(l);
      if (vid != run_vid && run_vid >= 0) {
        push(run_vid, run);
        run.clear();
      }
      run_vid = vid;
      run.push_back(make_letter(letter_gen(l) - offset_[static_cast<std::size_t>(vid)], l > 0));
    }
    if (run_vid >= 0) push(run_vid, run);
  }
  // Stage 2: enforce strict alternation center, companion, center, ...
  std::vector<Syll> alt;
  alt.push_back({0, Word{}});
  for (auto& s : st) {
    if (s.vid == 0 && alt.back().vid == 0)
      alt.back().local = center_->mul(alt.back().local, s.local);
    else if (s.vid != 0 && alt.back().vid != 0) {
      alt.push_back({0, Word{}});
      alt.push_back(std::move(s));
    } else
      alt.push_back(std::move(s));
  }
  // Stage 3: left-coset canonicalization with carries flowing right.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < alt.size(); ++i) {
      int comp = alt[i].vid == 0 ? alt[i + 1].vid - 1 : alt[i].vid - 1;
      bool from_center = alt[i].vid == 0;
      const auto& c = companions_[static_cast<std::size_t>(comp)];
      const SubgroupOracle& S = from_center ? *c.edge_in_center : *c.edge_in_companion;
      Word y = S.left_coset_rep(alt[i].local);
      if (y != alt[i].local) {
        Word s = group_of(alt[i].vid).mul(group_of(alt[i].vid).inv(y), alt[i].local);
        Word carry = across(comp, from_center, s);
        alt[i].local = y;
        alt[i + 1].local = group_of(alt[i + 1].vid).mul(carry, alt[i + 1].local);
      }
      if (alt[i].local.empty() && i > 0) {
        bool splice = false;
        if (alt[i].vid != 0) {
          splice = true;  // companion syllable dissolved between two center ones
        } else if (alt[i - 1].vid == alt[i + 1].vid) {
          splice = true;  // empty center between same-companion syllables
        }
        if (splice) {
          alt[i - 1].local = group_of(alt[i - 1].vid).mul(alt[i - 1].local, alt[i + 1].local);
          alt.erase(alt.begin() + static_cast<long>(i), alt.begin() + static_cast<long>(i) + 2);
          changed = true;
          break;
        }
      }
    }
    // drop a trailing empty companion syllable (cannot occur) or empty
    // trailing center syllable beyond position 0
    while (alt.size() > 1 && alt.back().local.empty() && alt.back().vid == 0) {
      alt.pop_back();
      changed = true;
    }
  }
  Word out;
  for (const auto& s : alt) {
    Word g = to_global(s.vid, s.local);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

std::optional<Word> AmalgamStarGroup::restrict_to_center(const Word& w) const {
  Word n = normalize(w);
  for (Letter l : n)
    if (vertex_of_letter(l) != 0) return std::nullopt;
  return to_local(0, n);
}

std::optional<std::pair<int, Word>> AmalgamStarGroup::first_departure(const Word& w) const {
  Word n = normalize(w);
  Word prefix;
  for (Letter l : n) {
    int vid = vertex_of_letter(l);
    if (vid != 0) return std::make_pair(vid - 1, center_->normalize(to_local(0, prefix)));
    prefix.push_back(l);
  }
  return std::nullopt;
}

}  // namespace aif
