#include "aif/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aif {

bool kernels_parallel_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

BitVec fill_table_serial(const BallIndex& ball, const std::function<bool(const Word&)>& pred) {
  BitVec out(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) out.set(i, pred(ball.word(i)));
  return out;
}

BitVec fill_table_parallel(const BallIndex& ball, const std::function<bool(const Word&)>& pred) {
  std::vector<char> vals(ball.size(), 0);
  const long long n = static_cast<long long>(ball.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (long long i = 0; i < n; ++i)
    vals[static_cast<std::size_t>(i)] = pred(ball.word(static_cast<std::size_t>(i))) ? 1 : 0;
  BitVec out(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) out.set(i, vals[i] != 0);
  return out;
}

namespace {
inline std::size_t pair_slot(std::size_t i, std::size_t j, std::size_t n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

PairCornerCounts one_pair(const BitVec& u, const BitVec& v, std::size_t prefix) {
  PairCornerCounts c;
  BitVec vc = ~v;
  BitVec uc = ~u;
  c.uv = (u & v).count_prefix(prefix);
  c.uvc = (u & vc).count_prefix(prefix);
  c.ucv = (uc & v).count_prefix(prefix);
  c.ucvc = (uc & vc).count_prefix(prefix);
  return c;
}
}  // namespace

std::vector<PairCornerCounts> corner_scan_serial(const std::vector<BitVec>& tables,
                                                 std::size_t prefix) {
  std::size_t n = tables.size();
  std::vector<PairCornerCounts> out(n < 2 ? 0 : n * (n - 1) / 2);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out[pair_slot(i, j, n)] = one_pair(tables[i], tables[j], prefix);
  return out;
}

std::vector<PairCornerCounts> corner_scan_parallel(const std::vector<BitVec>& tables,
                                                   std::size_t prefix) {
  std::size_t n = tables.size();
  std::vector<PairCornerCounts> out(n < 2 ? 0 : n * (n - 1) / 2);
  const long long total = static_cast<long long>(out.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (long long s = 0; s < total; ++s) {
    // invert pair_slot
    std::size_t i = 0, acc = 0;
    while (acc + (n - i - 1) <= static_cast<std::size_t>(s)) {
      acc += n - i - 1;
      ++i;
    }
    std::size_t j = i + 1 + (static_cast<std::size_t>(s) - acc);
    out[static_cast<std::size_t>(s)] = one_pair(tables[i], tables[j], prefix);
  }
  return out;
}

namespace {
bool mask_consistent(std::uint32_t mask, const std::vector<Implication>& imps) {
  for (const auto& imp : imps) {
    int from = (mask >> imp.pair_from) & 1;
    if (from != imp.side_from) continue;
    int to = (mask >> imp.pair_to) & 1;
    if (to != imp.side_to) return false;
  }
  return true;
}
}  // namespace

std::vector<std::uint32_t> orientation_scan_serial(int n, const std::vector<Implication>& imps) {
  std::vector<std::uint32_t> out;
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t m = 0; m < total; ++m)
    if (mask_consistent(static_cast<std::uint32_t>(m), imps)) out.push_back(static_cast<std::uint32_t>(m));
  return out;
}

std::vector<std::uint32_t> orientation_scan_parallel(int n, const std::vector<Implication>& imps) {
  const std::uint64_t total = 1ull << n;
  const std::uint64_t chunk = 1ull << (n > 12 ? n - 8 : 0);
  const std::uint64_t nchunks = (total + chunk - 1) / chunk;
  std::vector<std::vector<std::uint32_t>> parts(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
    std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
    std::uint64_t hi = std::min(total, lo + chunk);
    auto& part = parts[static_cast<std::size_t>(c)];
    for (std::uint64_t m = lo; m < hi; ++m)
      if (mask_consistent(static_cast<std::uint32_t>(m), imps)) part.push_back(static_cast<std::uint32_t>(m));
  }
  std::vector<std::uint32_t> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace aif
