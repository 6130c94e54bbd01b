// Benchmark comparing the serial reference kernels against the OpenMP
// versions on synthetic wallspaces over Z^2 and F2.
#include <chrono>
#include <iomanip>
#include <iostream>

#include "aif/crossing.hpp"
#include "aif/cubing.hpp"

using namespace aif;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class F>
double time_best_of(int reps, F&& f) {
  double best = 1e18;
  for (int i = 0; i < reps; ++i) {
    auto t0 = Clock::now();
    f();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

void row(const std::string& name, double serial, double parallel, bool equal) {
  std::cout << std::left << std::setw(28) << name << std::right << std::fixed
            << std::setprecision(2) << std::setw(10) << serial << " ms" << std::setw(10)
            << parallel << " ms" << std::setw(8) << std::setprecision(2)
            << (parallel > 0 ? serial / parallel : 0.0) << "x   " << (equal ? "match" : "MISMATCH")
            << "\n";
}

}  // namespace

int main() {
  std::cout << "kernel benchmark (OpenMP " << (kernels_parallel_enabled() ? "on" : "off") << ")\n";
  std::cout << std::left << std::setw(28) << "kernel" << std::right << std::setw(13) << "serial"
            << std::setw(13) << "parallel" << std::setw(9) << "speedup" << "\n";

  Budget budget;
  budget.radius = 7;
  budget.max_ball = 2000000;
  auto z2 = std::make_shared<FreeAbelian>("Z2", std::vector<std::string>{"x", "y"});
  Context ctx(z2, budget);

  // membership table fill over a moderately expensive pure predicate
  auto fa = std::dynamic_pointer_cast<const FreeAbelian>(z2);
  auto pred = [fa](const Word& w) {
    auto e = fa->exponents(w);
    long long v = 0;
    for (std::size_t i = 0; i < e.size(); ++i) v += (i + 1) * e[i] * e[i] * ((e[i] % 3) - 1);
    return v >= 0;
  };
  BitVec t_serial, t_par;
  double s1 = time_best_of(3, [&] { t_serial = fill_table_serial(ctx.ball(), pred); });
  double p1 = time_best_of(3, [&] { t_par = fill_table_parallel(ctx.ball(), pred); });
  row("fill_table", s1, p1, t_serial == t_par);

  // pairwise corner scan over many halfspace tables
  std::vector<BitVec> tables;
  for (int k = -6; k <= 6; ++k) {
    auto hx = linear_halfspace("hx" + std::to_string(k), z2, {1, 0}, k,
                               std::make_shared<CyclicSubgroup>("Sy", z2, z2->parse("y")));
    auto hy = linear_halfspace("hy" + std::to_string(k), z2, {0, 1}, k,
                               std::make_shared<CyclicSubgroup>("Sx", z2, z2->parse("x")));
    tables.push_back(ctx.table(hx));
    tables.push_back(ctx.table(hy));
  }
  std::vector<PairCornerCounts> c_serial, c_par;
  double s2 = time_best_of(3, [&] { c_serial = corner_scan_serial(tables, ctx.ball().size()); });
  double p2 = time_best_of(3, [&] { c_par = corner_scan_parallel(tables, ctx.ball().size()); });
  bool eq2 = c_serial.size() == c_par.size();
  for (std::size_t i = 0; eq2 && i < c_serial.size(); ++i)
    eq2 = c_serial[i].uv == c_par[i].uv && c_serial[i].uvc == c_par[i].uvc &&
          c_serial[i].ucv == c_par[i].ucv && c_serial[i].ucvc == c_par[i].ucvc;
  row("corner_scan", s2, p2, eq2);

  // orientation scan over a synthetic chain-plus-crossings order
  int n = 22;
  std::vector<Implication> imps;
  for (int i = 0; i + 1 < n / 2; ++i) {
    imps.push_back({i, 1, i + 1, 1});
    imps.push_back({i + 1, 0, i, 0});
  }
  std::vector<std::uint32_t> o_serial, o_par;
  double s3 = time_best_of(3, [&] { o_serial = orientation_scan_serial(n, imps); });
  double p3 = time_best_of(3, [&] { o_par = orientation_scan_parallel(n, imps); });
  row("orientation_scan", s3, p3, o_serial == o_par);

  std::cout << "consistent orientations found: " << o_serial.size() << "\n";
  return 0;
}
