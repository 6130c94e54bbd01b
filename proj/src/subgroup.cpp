#include "aif/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace aif {

Word SubgroupOracle::coset_rep(const Word& g) const { return generic_coset_rep(g); }

Word SubgroupOracle::generic_coset_rep(const Word& g) const {
  Word ng = ambient().normalize(g);
  auto it = rep_cache_.find(ng);
  if (it != rep_cache_.end()) return it->second;
  // Walk the ball in shortlex order; g itself bounds the search depth.
  Word ginv = ambient().inv(ng);
  Word best = ng;
  int depth = static_cast<int>(ng.size());
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> layer{Word{}};
  seen.insert(Word{});
  bool found = ambient().is_identity(ng) || member(ginv);
  if (found) best = Word{};
  std::vector<Letter> alphabet;
  for (int i = 0; i < ambient().rank(); ++i) {
    alphabet.push_back(make_letter(i, true));
    alphabet.push_back(make_letter(i, false));
  }
  for (int r = 1; r <= depth && !found; ++r) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (Letter l : alphabet) {
        Word cand = w;
        cand.push_back(l);
        cand = ambient().normalize(cand);
        if (seen.insert(cand).second) next.push_back(cand);
      }
    std::sort(next.begin(), next.end(), shortlex_less);
    for (const Word& h : next)
      if (member(ambient().mul(h, ginv))) {
        best = h;
        found = true;
        break;
      }
    layer = std::move(next);
  }
  rep_cache_.emplace(ng, best);
  return best;
}

std::optional<long long> SubgroupOracle::weighted_length(const Word& g, long long cap) const {
  Word ng = ambient().normalize(g);
  if (ng.empty()) return 0;
  // Dijkstra over subgroup elements by weighted generator length.
  auto gens = generators();
  struct Node {
    long long d;
    Word w;
  };
  auto cmp = [](const Node& a, const Node& b) { return a.d > b.d; };
  std::vector<Node> heap{{0, Word{}}};
  std::unordered_map<Word, long long, WordHash> dist{{Word{}, 0}};
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), cmp);
    Node cur = heap.back();
    heap.pop_back();
    if (cur.w == ng) return cur.d;
    auto dit = dist.find(cur.w);
    if (dit != dist.end() && dit->second < cur.d) continue;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      long long w = static_cast<long long>(i) + 1;
      if (cur.d + w > cap) continue;
      for (int sgn : {+1, -1}) {
        Word nxt = ambient().mul(cur.w, sgn > 0 ? gens[i] : ambient().inv(gens[i]));
        long long nd = cur.d + w;
        auto it = dist.find(nxt);
        if (it == dist.end() || nd < it->second) {
          dist[nxt] = nd;
          heap.push_back({nd, nxt});
          std::push_heap(heap.begin(), heap.end(), cmp);
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<Word> SubgroupOracle::members_within(long long cap) const {
  auto gens = generators();
  std::unordered_map<Word, long long, WordHash> dist{{Word{}, 0}};
  std::deque<Word> queue{Word{}};
  while (!queue.empty()) {
    Word cur = queue.front();
    queue.pop_front();
    long long d = dist[cur];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      long long w = static_cast<long long>(i) + 1;
      if (d + w > cap) continue;
      for (int sgn : {+1, -1}) {
        Word nxt = ambient().mul(cur, sgn > 0 ? gens[i] : ambient().inv(gens[i]));
        auto it = dist.find(nxt);
        if (it == dist.end() || d + w < it->second) {
          dist[nxt] = d + w;
          queue.push_back(nxt);
        }
      }
    }
  }
  std::vector<Word> out;
  for (const auto& [w, d] : dist)
    if (!w.empty()) out.push_back(w);
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

CyclicSubgroup::CyclicSubgroup(std::string name, GroupPtr ambient, Word w, long long max_power)
    : SubgroupOracle(std::move(name), std::move(ambient)), max_power_(max_power) {
  w_ = this->ambient().normalize(w);
  powers_[Word{}] = 0;
  if (w_.empty()) finite_order_ = true, order_ = 1;
}

void CyclicSubgroup::grow(long long upto) const {
  if (finite_order_ || grown_ >= upto) return;
  Word pos = this->ambient().normalize(word_pow(w_, grown_));
  Word neg = this->ambient().inv(pos);
  for (long long k = grown_ + 1; k <= upto; ++k) {
    pos = this->ambient().mul(pos, w_);
    neg = this->ambient().inv(pos);
    if (pos.empty()) {
      finite_order_ = true;
      order_ = k;
      return;
    }
    powers_.emplace(pos, k);
    powers_.emplace(neg, -k);
  }
  grown_ = upto;
}

std::optional<long long> CyclicSubgroup::find_power(const Word& g) const {
  Word ng = ambient().normalize(g);
  if (ng.empty()) return 0;
  if (finite_order_) {
    Word acc;
    for (long long k = 1; k < order_; ++k) {
      acc = ambient().mul(acc, w_);
      if (acc == ng) return k;
    }
    return std::nullopt;
  }
  auto it = powers_.find(ng);
  if (it != powers_.end()) return it->second;
  // Grow in chunks until found or capped.
  long long step = 64;
  while (grown_ < max_power_) {
    long long target = std::min(max_power_, grown_ + step);
    grow(target);
    if (finite_order_) return find_power(ng);
    it = powers_.find(ng);
    if (it != powers_.end()) return it->second;
    step *= 2;
  }
  return std::nullopt;
}

std::vector<Word> CyclicSubgroup::members_within(long long cap) const {
  std::vector<Word> out;
  if (finite_order_ || w_.empty()) {
    grow(1);
    Word acc;
    for (long long k = 1; k < (finite_order_ ? order_ : 1); ++k) {
      acc = ambient().mul(acc, w_);
      out.push_back(acc);
    }
    return out;
  }
  // weight of w^k is |k| (n-th generator = w^n with weight n).
  for (long long k = 1; k <= cap; ++k) {
    Word p = ambient().normalize(word_pow(w_, k));
    if (p.empty()) break;
    out.push_back(p);
    out.push_back(ambient().inv(p));
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<long long> CyclicSubgroup::weighted_length(const Word& g, long long cap) const {
  auto k = find_power(g);
  if (!k) return std::nullopt;
  long long d = *k >= 0 ? *k : -*k;
  if (finite_order_) d = std::min(d, order_ - d);
  if (d > cap) return std::nullopt;
  return d;
}

std::optional<Word> CyclicSubgroup::express(const Word& g) const {
  auto k = find_power(g);
  if (!k) return std::nullopt;
  Word out;
  Letter l = make_letter(0, *k > 0);
  long long n = *k > 0 ? *k : -*k;
  for (long long i = 0; i < n; ++i) out.push_back(l);
  return out;
}

std::string CyclicSubgroup::describe() const { return "<" + ambient().str(w_) + ">"; }

KernelSubgroup::KernelSubgroup(std::string name, GroupPtr ambient, std::vector<long long> weights,
                               Word unit)
    : SubgroupOracle(std::move(name), std::move(ambient)), weights_(std::move(weights)) {
  unit_ = this->ambient().normalize(unit);
  if (static_cast<int>(weights_.size()) != this->ambient().rank())
    throw OracleError("kernel weights must match generator count");
  if (value(unit_) != 1) throw OracleError("kernel unit must have value 1");
}

long long KernelSubgroup::value(const Word& g) const {
  long long v = 0;
  for (Letter l : g) v += (l > 0 ? 1 : -1) * weights_[static_cast<std::size_t>(letter_gen(l))];
  return v;
}

Word KernelSubgroup::coset_rep(const Word& g) const {
  return ambient().normalize(word_pow(unit_, value(ambient().normalize(g))));
}

std::vector<Word> KernelSubgroup::generators() const {
  // Weight-zero generators plus commutator-style balanced pairs; enough
  // for ball-scale H-invariance checks.
  std::vector<Word> out;
  for (int i = 0; i < ambient().rank(); ++i)
    if (weights_[static_cast<std::size_t>(i)] == 0) out.push_back(ambient().gen(i));
  for (int k = -3; k <= 3; ++k) {
    for (int i = 0; i < ambient().rank(); ++i) {
      if (weights_[static_cast<std::size_t>(i)] != 0) continue;
      Word u = ambient().normalize(word_pow(unit_, k));
      Word w = ambient().mul(ambient().mul(u, ambient().gen(i)), ambient().inv(u));
      if (!w.empty()) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string KernelSubgroup::describe() const { return "ker(" + name() + ")"; }

namespace {
// Row-style Hermite reduction for small integer matrices.
std::vector<std::vector<long long>> hermite(std::vector<std::vector<long long>> rows, std::size_t dim) {
  std::vector<std::vector<long long>> out;
  std::size_t col = 0;
  while (col < dim && !rows.empty()) {
    // find row with nonzero entry in col minimizing |entry|
    int pick = -1;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i][col] != 0 && (pick < 0 || std::abs(rows[i][col]) < std::abs(rows[static_cast<std::size_t>(pick)][col])))
        pick = static_cast<int>(i);
    if (pick < 0) {
      ++col;
      continue;
    }
    bool reduced = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == pick || rows[i][col] == 0) continue;
      long long q = rows[i][col] / rows[static_cast<std::size_t>(pick)][col];
      for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[static_cast<std::size_t>(pick)][j];
      if (rows[i][col] != 0) reduced = false;
    }
    if (!reduced) continue;
    auto pivot = rows[static_cast<std::size_t>(pick)];
    if (pivot[col] < 0)
      for (auto& x : pivot) x = -x;
    out.push_back(pivot);
    rows.erase(rows.begin() + pick);
    // drop all-zero rows
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const std::vector<long long>& r) {
                                return std::all_of(r.begin(), r.end(), [](long long x) { return x == 0; });
                              }),
               rows.end());
    ++col;
  }
  return out;
}
}  // namespace

LatticeSubgroup::LatticeSubgroup(std::string name, GroupPtr ambient,
                                 std::vector<std::vector<long long>> basis)
    : SubgroupOracle(std::move(name), std::move(ambient)) {
  fa_ = dynamic_cast<const FreeAbelian*>(&this->ambient());
  if (!fa_) throw OracleError("lattice subgroup needs a free abelian ambient");
  std::size_t dim = static_cast<std::size_t>(fa_->rank());
  for (auto& v : basis) {
    if (v.size() != dim) throw OracleError("lattice vector size mismatch");
    gen_words_.push_back(fa_->from_exponents(v));
  }
  hnf_ = hermite(basis, dim);
}

std::vector<long long> LatticeSubgroup::reduce(std::vector<long long> v) const {
  for (const auto& row : hnf_) {
    std::size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (p == row.size()) continue;
    long long r = v[p] % row[p];
    if (r < 0) r += row[p];  // pivots are positive
    long long q = (v[p] - r) / row[p];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * row[j];
  }
  return v;
}

bool LatticeSubgroup::member(const Word& g) const {
  auto v = reduce(fa_->exponents(g));
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

Word LatticeSubgroup::coset_rep(const Word& g) const {
  return fa_->from_exponents(reduce(fa_->exponents(g)));
}

std::vector<Word> LatticeSubgroup::generators() const { return gen_words_; }

std::string LatticeSubgroup::describe() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < gen_words_.size(); ++i) {
    if (i) os << ", ";
    os << ambient().str(gen_words_[i]);
  }
  os << ">";
  return os.str();
}

FoldedFreeSubgroup::FoldedFreeSubgroup(std::string name, GroupPtr ambient, std::vector<Word> gens)
    : SubgroupOracle(std::move(name), std::move(ambient)), gens_(std::move(gens)) {
  if (this->ambient().kind() != "free") throw OracleError("folded subgroup needs a free ambient");
  int rank = this->ambient().rank();
  auto slot = [](Letter l) { return letter_gen(l) * 2 + (l > 0 ? 0 : 1); };
  // Wedge of loops as an edge list (positive letters only), then fold.
  struct Edge {
    int u;
    Letter l;
    int v;
  };
  std::vector<Edge> edges;
  int states = 1;  // state 0 = base
  for (const auto& g : gens_) {
    Word w = this->ambient().normalize(g);
    int cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int nxt = (i + 1 == w.size()) ? 0 : states++;
      Letter l = w[i];
      if (l > 0)
        edges.push_back({cur, l, nxt});
      else
        edges.push_back({nxt, -l, cur});
      cur = nxt;
    }
  }
  std::vector<int> uf(static_cast<std::size_t>(states));
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) uf[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return a != b;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    // Two edges with the same label and same source (or same target) fold.
    std::unordered_map<long long, int> out_to, in_from;
    out_to.clear();
    in_from.clear();
    for (const auto& e : edges) {
      long long ko = static_cast<long long>(find(e.u)) * (rank + 1) + e.l;
      long long ki = static_cast<long long>(find(e.v)) * (rank + 1) + e.l;
      auto ito = out_to.find(ko);
      if (ito == out_to.end())
        out_to[ko] = find(e.v);
      else if (unite(ito->second, find(e.v)))
        changed = true;
      auto iti = in_from.find(ki);
      if (iti == in_from.end())
        in_from[ki] = find(e.u);
      else if (unite(iti->second, find(e.u)))
        changed = true;
    }
  }
  std::vector<int> remap(static_cast<std::size_t>(states), -1);
  int count = 0;
  for (int i = 0; i < states; ++i)
    if (find(i) == i) remap[static_cast<std::size_t>(i)] = count++;
  delta_.assign(static_cast<std::size_t>(count), std::vector<int>(static_cast<std::size_t>(rank * 2), -1));
  for (const auto& e : edges) {
    int u = remap[static_cast<std::size_t>(find(e.u))];
    int v = remap[static_cast<std::size_t>(find(e.v))];
    delta_[static_cast<std::size_t>(u)][static_cast<std::size_t>(slot(e.l))] = v;
    delta_[static_cast<std::size_t>(v)][static_cast<std::size_t>(slot(-e.l))] = u;
  }
  base_ = remap[static_cast<std::size_t>(find(0))];
}

bool FoldedFreeSubgroup::member(const Word& g) const {
  Word w = ambient().normalize(g);
  int rank = ambient().rank();
  auto slot = [rank](Letter l) { return letter_gen(l) * 2 + (l > 0 ? 0 : 1); };
  int cur = base_;
  for (Letter l : w) {
    cur = delta_[static_cast<std::size_t>(cur)][static_cast<std::size_t>(slot(l))];
    if (cur < 0) return false;
  }
  return cur == base_;
}

std::string FoldedFreeSubgroup::describe() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) os << ", ";
    os << ambient().str(gens_[i]);
  }
  os << ">";
  return os.str();
}

GuirardelPositive::GuirardelPositive(std::string name, GroupPtr ambient, int a_index, int b_index,
                                     int generator_window)
    : SubgroupOracle(std::move(name), std::move(ambient)), a_(a_index), b_(b_index),
      window_(generator_window) {
  if (this->ambient().kind() != "free" || this->ambient().rank() < 2)
    throw OracleError("guirardel subgroup needs a free ambient of rank >= 2");
}

std::optional<std::vector<std::pair<long long, int>>> GuirardelPositive::x_word(const Word& g) const {
  Word w = ambient().normalize(g);
  long long h = 0;
  std::vector<std::pair<long long, int>> xs;
  for (Letter l : w) {
    if (letter_gen(l) == b_) {
      h += l > 0 ? 1 : -1;
    } else if (letter_gen(l) == a_) {
      std::pair<long long, int> nxt{h, l > 0 ? 1 : -1};
      if (!xs.empty() && xs.back().first == nxt.first && xs.back().second == -nxt.second)
        xs.pop_back();
      else
        xs.push_back(nxt);
    } else {
      return std::nullopt;
    }
  }
  if (h != 0) return std::nullopt;
  return xs;
}

Word GuirardelPositive::x_to_ambient(const std::vector<std::pair<long long, int>>& xs) const {
  Word out;
  for (auto [k, s] : xs) {
    Word piece = word_pow(Word{make_letter(b_, true)}, k);
    piece.push_back(make_letter(a_, s > 0));
    Word back = word_pow(Word{make_letter(b_, true)}, -k);
    piece.insert(piece.end(), back.begin(), back.end());
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return ambient().normalize(out);
}

bool GuirardelPositive::member(const Word& g) const {
  auto xs = x_word(g);
  if (!xs) return false;
  for (auto [k, s] : *xs)
    if (k < 0) return false;
  return true;
}

Word GuirardelPositive::coset_rep(const Word& g) const {
  Word w = ambient().normalize(g);
  long long f = 0;
  for (Letter l : w)
    if (letter_gen(l) == b_) f += l > 0 ? 1 : -1;
  Word u = ambient().mul(w, word_pow(Word{make_letter(b_, true)}, -f));
  auto xs = x_word(u);
  if (!xs) throw OracleError("guirardel coset_rep: element outside <a,b>");
  // Strip the maximal prefix with indices >= 0; the suffix starting with a
  // negative-index letter (or empty) is the canonical coset key.
  std::size_t i = 0;
  while (i < xs->size() && (*xs)[i].first >= 0) ++i;
  std::vector<std::pair<long long, int>> suffix(xs->begin() + static_cast<long>(i), xs->end());
  Word rep = x_to_ambient(suffix);
  return ambient().mul(rep, word_pow(Word{make_letter(b_, true)}, f));
}

std::vector<Word> GuirardelPositive::generators() const {
  std::vector<Word> out;
  for (int k = 0; k <= window_; ++k)
    out.push_back(x_to_ambient({{k, 1}}));
  return out;
}

std::string GuirardelPositive::describe() const { return "<b^k a b^-k : k >= 0>"; }

std::optional<long long> GuirardelPositive::weighted_length(const Word& g, long long cap) const {
  auto xs = x_word(g);
  if (!xs) return std::nullopt;
  long long total = 0;
  for (auto [k, s] : *xs) {
    if (k < 0) return std::nullopt;
    total += k + 1;
    if (total > cap) return std::nullopt;
  }
  return total;
}

std::vector<Word> GuirardelPositive::members_within(long long cap) const {
  // Reduced x-words of weighted length <= cap, indices in [0, cap).
  std::vector<std::vector<std::pair<long long, int>>> frontier{{}};
  std::vector<Word> out;
  for (long long step = 0; step < cap; ++step) {
    std::vector<std::vector<std::pair<long long, int>>> next;
    for (auto& xs : frontier) {
      long long used = 0;
      for (auto [k, s] : xs) used += k + 1;
      for (long long k = 0; k + 1 + used <= cap; ++k)
        for (int s : {1, -1}) {
          if (!xs.empty() && xs.back().first == k && xs.back().second == -s) continue;
          auto cand = xs;
          cand.emplace_back(k, s);
          next.push_back(cand);
          out.push_back(x_to_ambient(cand));
        }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConjugateSubgroup::ConjugateSubgroup(std::string name, SubgroupPtr base, Word g)
    : SubgroupOracle(std::move(name), base->ambient_ptr()), base_(std::move(base)) {
  g_ = ambient().normalize(g);
  ginv_ = ambient().inv(g_);
}

bool ConjugateSubgroup::member(const Word& x) const {
  return base_->member(ambient().mul(ambient().mul(ginv_, x), g_));
}

Word ConjugateSubgroup::coset_rep(const Word& x) const {
  // (gHg^-1)x = g(H(g^-1 x)); conjugate the base representative back.
  Word rep = base_->coset_rep(ambient().mul(ginv_, x));
  return ambient().mul(g_, rep);
}

std::vector<Word> ConjugateSubgroup::generators() const {
  std::vector<Word> out;
  for (const auto& h : base_->generators()) out.push_back(ambient().conj(g_, h));
  return out;
}

std::string ConjugateSubgroup::describe() const {
  return ambient().str(g_) + " " + base_->describe() + " " + ambient().str(ginv_);
}

std::optional<long long> ConjugateSubgroup::weighted_length(const Word& x, long long cap) const {
  return base_->weighted_length(ambient().mul(ambient().mul(ginv_, x), g_), cap);
}

std::vector<Word> ConjugateSubgroup::members_within(long long cap) const {
  std::vector<Word> out;
  for (const auto& h : base_->members_within(cap)) out.push_back(ambient().conj(g_, h));
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::optional<long long> cyclic_index(const GroupOracle& g, const Word& u, const Word& v,
                                      long long cap) {
  Word nu = g.normalize(u);
  if (nu.empty()) return std::nullopt;
  Word acc;
  for (long long k = 1; k <= cap; ++k) {
    acc = g.mul(acc, v);
    if (acc == nu) return k;
    if (acc == g.inv(nu)) return k;
    if (acc.empty()) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace aif
