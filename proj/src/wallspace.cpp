#include "aif/wallspace.hpp"

namespace aif {

std::vector<Implication> Wallspace::implications() const {
  std::vector<Implication> imps;
  int n = static_cast<int>(walls.size());
  for (int i = 0; i < n; ++i)
    for (int oi = 0; oi < 2; ++oi)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int oj = 0; oj < 2; ++oj)
          if (side_le(i, oi, j, oj))
            // choosing side (i, oi) forces (j, oj); mask bit = 1 picks side0
            imps.push_back({i, oi == 0 ? 1 : 0, j, oj == 0 ? 1 : 0});
      }
  return imps;
}

Wallspace collect_walls(const Context& ctx, const std::vector<AISetPtr>& family,
                        const std::vector<Word>& translates) {
  Wallspace ws;
  std::unordered_map<std::uint64_t, std::vector<int>> by_hash;
  auto lookup = [&](const BitVec& t) -> int {
    auto it = by_hash.find(t.hash());
    if (it == by_hash.end()) return -1;
    for (int idx : it->second)
      if (ws.walls[static_cast<std::size_t>(idx)].table == t) return idx;
    return -1;
  };
  std::size_t ball_size = ctx.ball().size();
  for (std::size_t fi = 0; fi < family.size(); ++fi) {
    for (const auto& g : translates) {
      auto set = translate_set(family[fi], g);
      const BitVec& t = ctx.table(set);
      if (t.none() || (~t).none()) continue;  // defining data outside the certified region
      BitVec tc = ~t;
      if (lookup(t) >= 0 || lookup(tc) >= 0) continue;  // pair already present
      if (ws.walls.size() >= ctx.budget().max_walls) throw BudgetExceeded("wall count");
      Wall w;
      w.side0 = set;
      w.label = set->name();
      w.family_index = static_cast<int>(fi);
      w.translate = ctx.group().normalize(g);
      w.table = t;
      by_hash[t.hash()].push_back(static_cast<int>(ws.walls.size()));
      ws.walls.push_back(std::move(w));
    }
  }
  // Inclusion order on oriented sides via the pairwise corner kernel.
  int n = static_cast<int>(ws.walls.size());
  std::vector<BitVec> sides;
  sides.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    sides.push_back(ws.walls[static_cast<std::size_t>(i)].table);
    sides.push_back(~ws.walls[static_cast<std::size_t>(i)].table);
  }
  auto counts = kernels_parallel_enabled() ? corner_scan_parallel(sides, ball_size)
                                           : corner_scan_serial(sides, ball_size);
  ws.le.assign(static_cast<std::size_t>(2 * n), std::vector<char>(static_cast<std::size_t>(2 * n), 0));
  auto slot = [&](std::size_t i, std::size_t j) { return i * sides.size() - i * (i + 1) / 2 + (j - i - 1); };
  for (std::size_t a = 0; a < sides.size(); ++a) {
    ws.le[a][a] = 1;
    for (std::size_t b = a + 1; b < sides.size(); ++b) {
      if (a / 2 == b / 2) continue;  // same wall
      const auto& c = counts[slot(a, b)];
      if (c.uvc == 0) ws.le[a][b] = 1;  // a & ~b empty
      if (c.ucv == 0) ws.le[b][a] = 1;  // b & ~a empty
      if (c.uvc == 0 && c.ucv == 0)
        throw OracleError("wallspace order not antisymmetric: distinct walls equal on ball");
    }
  }
  return ws;
}

Wallspace collect_walls_ball(const Context& ctx, const std::vector<AISetPtr>& family,
                             int translate_radius) {
  return collect_walls(ctx, family, ball(ctx.group(), translate_radius, ctx.budget()));
}

}  // namespace aif
