#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aif/ball.hpp"

namespace aif {

// Data-parallel inner loops. Each kernel has a serial reference
// implementation and an OpenMP version with a deterministic merge; the
// test suite checks they agree and bench_kernels compares them.

// Evaluate a pure predicate on every ball element. The parallel variant
// requires the predicate to be safe to call concurrently.
BitVec fill_table_serial(const BallIndex& ball, const std::function<bool(const Word&)>& pred);
BitVec fill_table_parallel(const BallIndex& ball, const std::function<bool(const Word&)>& pred);

// Corner cardinalities for every unordered pair of tables, restricted to
// the first `prefix` ball elements. Output index: pair (i, j), i < j,
// at position i * n - i * (i + 1) / 2 + (j - i - 1).
struct PairCornerCounts {
  std::size_t uv = 0;    // |U  & V |
  std::size_t uvc = 0;   // |U  & V*|
  std::size_t ucv = 0;   // |U* & V |
  std::size_t ucvc = 0;  // |U* & V*|
};
std::vector<PairCornerCounts> corner_scan_serial(const std::vector<BitVec>& tables,
                                                 std::size_t prefix);
std::vector<PairCornerCounts> corner_scan_parallel(const std::vector<BitVec>& tables,
                                                   std::size_t prefix);

// Orientations of n wall pairs (bit p = 1 picks side 1 of pair p) that
// satisfy the ultrafilter axioms for the given order implications:
// choosing (pair_from, side_from) forces (pair_to, side_to). Brute force
// over all 2^n masks; ascending mask order.
struct Implication {
  int pair_from;
  int side_from;
  int pair_to;
  int side_to;
};
std::vector<std::uint32_t> orientation_scan_serial(int n, const std::vector<Implication>& imps);
std::vector<std::uint32_t> orientation_scan_parallel(int n, const std::vector<Implication>& imps);

bool kernels_parallel_enabled();

}  // namespace aif
