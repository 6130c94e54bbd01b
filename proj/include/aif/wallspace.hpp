#pragma once

#include "aif/crossing.hpp"

namespace aif {

// A finite involution-closed family of halfspaces with the inclusion order
// certified on the ball: side a <= side b iff a & ~b is empty there.
struct Wall {
  AISetPtr side0;  // orientation true; the complement is orientation false
  std::string label;
  int family_index = 0;
  Word translate;
  BitVec table;  // membership of side0 over the context ball
};

class Wallspace {
 public:
  std::vector<Wall> walls;
  // le[2*i+o][2*j+p]: oriented side (i, o) included in (j, p) on the ball.
  // Orientation o = 0 means side0, o = 1 the complement.
  std::vector<std::vector<char>> le;

  std::size_t size() const { return walls.size(); }
  bool side_le(int wi, int oi, int wj, int oj) const {
    return le[static_cast<std::size_t>(2 * wi + oi)][static_cast<std::size_t>(2 * wj + oj)] != 0;
  }
  BitVec side_table(int wi, int oi) const {
    return oi == 0 ? walls[static_cast<std::size_t>(wi)].table
                   : ~walls[static_cast<std::size_t>(wi)].table;
  }
  AISetPtr side_set(int wi, int oi) const {
    return oi == 0 ? walls[static_cast<std::size_t>(wi)].side0
                   : complement_set(walls[static_cast<std::size_t>(wi)].side0);
  }
  std::vector<Implication> implications() const;
};

// Build the deduplicated wallspace from family members translated by the
// given words. Trivial-on-ball translates (one side empty in the ball) are
// dropped: their defining data leaves the certified region.
Wallspace collect_walls(const Context& ctx, const std::vector<AISetPtr>& family,
                        const std::vector<Word>& translates);

// Convenience: translates = ball of the given radius.
Wallspace collect_walls_ball(const Context& ctx, const std::vector<AISetPtr>& family,
                             int translate_radius);

}  // namespace aif
