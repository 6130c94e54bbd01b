#include "aif/ball.hpp"

#include <algorithm>
#include <bit>

namespace aif {

BallIndex BallIndex::build(GroupPtr group, int radius, const Budget& budget) {
  BallIndex b;
  b.group_ = std::move(group);
  b.radius_ = radius;
  std::unordered_map<Word, int, WordHash> seen;
  std::vector<Word> layer{Word{}};
  b.elements_.push_back(Word{});
  seen.emplace(Word{}, 0);
  b.layer_end_.push_back(1);
  std::vector<Letter> alphabet;
  for (int i = 0; i < b.group_->rank(); ++i) {
    alphabet.push_back(make_letter(i, true));
    alphabet.push_back(make_letter(i, false));
  }
  for (int r = 1; r <= radius; ++r) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (Letter l : alphabet) {
        Word cand = w;
        cand.push_back(l);
        cand = b.group_->normalize(cand);
        if (!seen.count(cand)) {
          seen.emplace(cand, 0);
          next.push_back(cand);
          if (seen.size() > budget.max_ball) throw BudgetExceeded("ball size");
        }
      }
    std::sort(next.begin(), next.end(), shortlex_less);
    b.elements_.insert(b.elements_.end(), next.begin(), next.end());
    b.layer_end_.push_back(b.elements_.size());
    layer = std::move(next);
  }
  while (b.layer_end_.size() <= static_cast<std::size_t>(radius)) b.layer_end_.push_back(b.elements_.size());
  for (std::size_t i = 0; i < b.elements_.size(); ++i) b.index_[b.elements_[i]] = static_cast<int>(i);
  return b;
}

int BallIndex::find(const Word& g) const {
  auto it = index_.find(group_->normalize(g));
  return it == index_.end() ? -1 : it->second;
}

std::size_t BitVec::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BitVec::count_prefix(std::size_t n) const {
  n = std::min(n, n_);
  std::size_t full = n >> 6, c = 0;
  for (std::size_t i = 0; i < full; ++i) c += static_cast<std::size_t>(std::popcount(bits_[i]));
  std::size_t rem = n & 63;
  if (rem) c += static_cast<std::size_t>(std::popcount(bits_[full] & ((1ull << rem) - 1)));
  return c;
}

bool BitVec::none() const {
  for (auto w : bits_)
    if (w) return false;
  return true;
}

bool BitVec::none_prefix(std::size_t n) const { return count_prefix(n) == 0; }

BitVec BitVec::operator&(const BitVec& o) const {
  BitVec r(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_[i];
  return r;
}

BitVec BitVec::operator|(const BitVec& o) const {
  BitVec r(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | o.bits_[i];
  return r;
}

BitVec BitVec::operator~() const {
  BitVec r(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = ~bits_[i];
  std::size_t rem = n_ & 63;
  if (rem && !r.bits_.empty()) r.bits_.back() &= (1ull << rem) - 1;
  return r;
}

std::uint64_t BitVec::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto w : bits_) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return h;
}

CosetTable::CosetTable(const BallIndex& ball, const SubgroupOracle& sub) {
  ids_.resize(ball.size());
  std::unordered_map<Word, int, WordHash> rep_ids;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    Word rep = sub.coset_rep(ball.word(i));
    auto it = rep_ids.find(rep);
    if (it == rep_ids.end()) {
      int id = static_cast<int>(reps_.size());
      reps_.push_back(rep);
      rep_ids.emplace(rep, id);
      ids_[i] = id;
    } else {
      ids_[i] = it->second;
    }
  }
}

int CosetTable::cosets_hit(const BitVec& set, std::size_t n) const {
  std::vector<char> seen(reps_.size(), 0);
  int c = 0;
  n = std::min(n, ids_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (set.get(i) && !seen[static_cast<std::size_t>(ids_[i])]) {
      seen[static_cast<std::size_t>(ids_[i])] = 1;
      ++c;
    }
  return c;
}

}  // namespace aif
