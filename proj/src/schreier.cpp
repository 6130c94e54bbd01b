#include "aif/schreier.hpp"

#include <algorithm>

namespace aif {

int SchreierGraph::find_vertex(const Word& rep) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == rep) return static_cast<int>(i);
  return -1;
}

std::vector<int> SchreierGraph::components_without(const std::vector<char>& removed) const {
  std::vector<int> comp(vertices.size(), -1);
  for (std::size_t s = 0; s < vertices.size(); ++s) {
    if (comp[s] >= 0 || (s < removed.size() && removed[s])) continue;
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = static_cast<int>(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& e : edges) {
        int nb = -1;
        if (e.from == v) nb = e.to;
        if (e.to == v) nb = e.from;
        if (nb < 0 || comp[static_cast<std::size_t>(nb)] >= 0) continue;
        if (static_cast<std::size_t>(nb) < removed.size() && removed[static_cast<std::size_t>(nb)]) continue;
        comp[static_cast<std::size_t>(nb)] = static_cast<int>(s);
        stack.push_back(nb);
      }
    }
  }
  return comp;
}

SchreierGraph schreier_ball(SubgroupPtr sub_ptr, int radius, const Budget& budget) {
  const SubgroupOracle& sub = *sub_ptr;
  const GroupOracle& g = sub.ambient();
  SchreierGraph out;
  out.subgroup = sub_ptr;
  out.radius = radius;
  auto elements = ball(g, radius, budget);
  std::unordered_map<Word, int, WordHash> vert_ids;
  for (const auto& w : elements) {
    Word rep = sub.coset_rep(w);
    if (!vert_ids.count(rep)) {
      vert_ids.emplace(rep, static_cast<int>(out.vertices.size()));
      out.vertices.push_back(rep);
    }
  }
  // Every generator edge between vertices of the ball image.
  std::vector<std::tuple<int, int, int>> seen;
  for (int v = 0; v < static_cast<int>(out.vertices.size()); ++v) {
    for (int i = 0; i < g.rank(); ++i) {
      Word target = sub.coset_rep(g.mul(out.vertices[static_cast<std::size_t>(v)], g.gen(i)));
      auto it = vert_ids.find(target);
      if (it == vert_ids.end()) continue;
      seen.emplace_back(v, i, it->second);
    }
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (auto [f, i, t] : seen) out.edges.push_back({f, i, t});
  return out;
}

}  // namespace aif
