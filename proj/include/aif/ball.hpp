#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "aif/subgroup.hpp"

namespace aif {

// Enumerated ball with an index, the shared evidence region for all
// set-level verdicts. elements are in breadth-first shortlex order and
// layer_end[r] is the number of elements of word length <= r.
class BallIndex {
 public:
  static BallIndex build(GroupPtr group, int radius, const Budget& budget);

  const GroupOracle& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }
  int radius() const { return radius_; }
  const std::vector<Word>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t size_at(int r) const { return layer_end_.at(static_cast<std::size_t>(r)); }
  int find(const Word& g) const;  // -1 when not in the ball
  const Word& word(std::size_t i) const { return elements_[i]; }

 private:
  GroupPtr group_;
  int radius_ = 0;
  std::vector<Word> elements_;
  std::vector<std::size_t> layer_end_;
  std::unordered_map<Word, int, WordHash> index_;
};

// Dense bit set over a ball.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), bits_((n + 63) / 64, 0) {}
  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v) {
    if (v)
      bits_[i >> 6] |= (1ull << (i & 63));
    else
      bits_[i >> 6] &= ~(1ull << (i & 63));
  }
  std::size_t count() const;
  std::size_t count_prefix(std::size_t n) const;  // bits set among first n
  bool none() const;
  bool none_prefix(std::size_t n) const;
  BitVec operator&(const BitVec& o) const;
  BitVec operator|(const BitVec& o) const;
  BitVec operator~() const;
  bool operator==(const BitVec& o) const { return n_ == o.n_ && bits_ == o.bits_; }
  std::uint64_t hash() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Coset ids of ball elements under a subgroup; built serially once and
// shared read-only afterwards.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(const BallIndex& ball, const SubgroupOracle& sub);
  int coset_of(std::size_t i) const { return ids_[i]; }
  int num_cosets() const { return static_cast<int>(reps_.size()); }
  const std::vector<Word>& reps() const { return reps_; }
  // Number of distinct cosets hit by the set within the first n elements.
  int cosets_hit(const BitVec& set, std::size_t n) const;

 private:
  std::vector<int> ids_;
  std::vector<Word> reps_;
};

}  // namespace aif
