#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aif {

// Every verdict in this library is relative to an explicit budget; there
// is no silent truncation anywhere. Operations throw BudgetExceeded when
// a cap is hit.
struct Budget {
  int radius = 4;             // Cayley/angle ball radius for membership evidence
  int translate_radius = 2;   // radius of the translate set used to build wallspaces
  int search_radius = 4;      // witness searches (invertibility, double cosets, ...)
  std::size_t max_ball = 500000;   // cap on enumerated ball size
  std::size_t max_walls = 128;     // cap on deduplicated wall pairs
  int orientation_bits = 22;       // cap on wall pairs for ultrafilter enumeration
  std::size_t max_tree_vertices = 20000;  // cap on Bass-Serre tree balls

  Budget with_radius(int r) const {
    Budget b = *this;
    b.radius = r;
    return b;
  }
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error("budget exceeded: " + what) {}
};

class OracleError : public std::runtime_error {
 public:
  explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aif
