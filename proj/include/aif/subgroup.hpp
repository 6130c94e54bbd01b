#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "aif/group.hpp"

namespace aif {

// A subgroup H of a catalog group with a membership test and a canonical
// representative for right cosets Hg. coset_rep is constant on cosets and
// member(g) holds iff coset_rep(g) == coset_rep(identity).
class SubgroupOracle {
 public:
  SubgroupOracle(std::string name, GroupPtr ambient)
      : name_(std::move(name)), ambient_(std::move(ambient)) {}
  virtual ~SubgroupOracle() = default;

  const std::string& name() const { return name_; }
  const GroupOracle& ambient() const { return *ambient_; }
  GroupPtr ambient_ptr() const { return ambient_; }
  virtual std::string kind() const = 0;

  virtual bool member(const Word& g) const = 0;
  // Canonical representative of Hg. The default walks the ambient ball in
  // shortlex order and returns the first element of the coset; overrides
  // give closed forms. Results are memoized.
  virtual Word coset_rep(const Word& g) const;
  // Canonical representative of the left coset gH.
  Word left_coset_rep(const Word& g) const {
    return ambient().inv(coset_rep(ambient().inv(g)));
  }
  // Finite generator list; described-infinite subgroups return a budget
  // truncation (enough for ball-scale work).
  virtual std::vector<Word> generators() const = 0;
  virtual std::string describe() const { return name_; }

  // Express a member as a word in generators() indices (letters index the
  // generator list). nullopt when unsupported or not a member.
  virtual std::optional<Word> express(const Word& g) const { return std::nullopt; }

  // Weighted word length of a member where the i-th generator (0-based)
  // has length i+1; used by the angle metric. Returns nullopt if g is not
  // a member or the value exceeds the cap.
  virtual std::optional<long long> weighted_length(const Word& g, long long cap) const;

  // Members with weighted length <= cap, identity excluded. Deterministic.
  virtual std::vector<Word> members_within(long long cap) const;

 protected:
  Word generic_coset_rep(const Word& g) const;

 private:
  std::string name_;
  GroupPtr ambient_;
  mutable std::unordered_map<Word, Word, WordHash> rep_cache_;
};

using SubgroupPtr = std::shared_ptr<const SubgroupOracle>;

class TrivialSubgroup : public SubgroupOracle {
 public:
  TrivialSubgroup(std::string name, GroupPtr ambient)
      : SubgroupOracle(std::move(name), std::move(ambient)) {}
  std::string kind() const override { return "trivial"; }
  bool member(const Word& g) const override { return ambient().is_identity(g); }
  Word coset_rep(const Word& g) const override { return ambient().normalize(g); }
  std::vector<Word> generators() const override { return {}; }
  std::string describe() const override { return "1"; }
};

class WholeGroup : public SubgroupOracle {
 public:
  WholeGroup(std::string name, GroupPtr ambient)
      : SubgroupOracle(std::move(name), std::move(ambient)) {}
  std::string kind() const override { return "whole"; }
  bool member(const Word&) const override { return true; }
  Word coset_rep(const Word&) const override { return Word{}; }
  std::vector<Word> generators() const override {
    std::vector<Word> gens;
    for (int i = 0; i < ambient().rank(); ++i) gens.push_back(ambient().gen(i));
    return gens;
  }
};

// <w>, with membership via a lazily grown power table.
class CyclicSubgroup : public SubgroupOracle {
 public:
  CyclicSubgroup(std::string name, GroupPtr ambient, Word w, long long max_power = 4096);
  std::string kind() const override { return "cyclic"; }
  bool member(const Word& g) const override { return find_power(g).has_value(); }
  std::optional<long long> find_power(const Word& g) const;
  std::vector<Word> generators() const override { return {w_}; }
  std::string describe() const override;
  std::optional<Word> express(const Word& g) const override;
  std::optional<long long> weighted_length(const Word& g, long long cap) const override;
  std::vector<Word> members_within(long long cap) const override;
  const Word& generator_word() const { return w_; }

 private:
  void grow(long long upto) const;
  Word w_;
  long long max_power_;
  mutable long long grown_ = 0;
  mutable std::unordered_map<Word, long long, WordHash> powers_;
  mutable bool finite_order_ = false;
  mutable long long order_ = 0;
};

// Kernel of a homomorphism G -> Z given by integer generator weights.
// coset_rep(g) = unit^f(g) for a designated unit word with weight 1.
class KernelSubgroup : public SubgroupOracle {
 public:
  KernelSubgroup(std::string name, GroupPtr ambient, std::vector<long long> weights, Word unit);
  std::string kind() const override { return "kernel"; }
  long long value(const Word& g) const;
  bool member(const Word& g) const override { return value(g) == 0; }
  Word coset_rep(const Word& g) const override;
  std::vector<Word> generators() const override;
  std::string describe() const override;

 private:
  std::vector<long long> weights_;
  Word unit_;
};

// Sublattice of a free abelian group spanned by integer vectors; exact
// membership and canonical residues via Hermite normal form.
class LatticeSubgroup : public SubgroupOracle {
 public:
  LatticeSubgroup(std::string name, GroupPtr ambient, std::vector<std::vector<long long>> basis);
  std::string kind() const override { return "lattice"; }
  bool member(const Word& g) const override;
  Word coset_rep(const Word& g) const override;
  std::vector<Word> generators() const override;
  std::string describe() const override;

 private:
  std::vector<long long> reduce(std::vector<long long> v) const;
  const FreeAbelian* fa_;
  std::vector<std::vector<long long>> hnf_;  // row-style upper triangular basis
  std::vector<Word> gen_words_;
};

// Finitely generated subgroup of a free group, with membership via a
// folded core graph.
class FoldedFreeSubgroup : public SubgroupOracle {
 public:
  FoldedFreeSubgroup(std::string name, GroupPtr ambient, std::vector<Word> gens);
  std::string kind() const override { return "free-gens"; }
  bool member(const Word& g) const override;
  std::vector<Word> generators() const override { return gens_; }
  std::string describe() const override;

 private:
  std::vector<Word> gens_;
  // delta_[state][letter-slot] -> state or -1
  std::vector<std::vector<int>> delta_;
  int base_ = 0;
};

// The positive-index half of the kernel of F2 = <a,b> -> Z, b -> 1:
// the subgroup generated by x_k = b^k a b^-k for k >= 0. Membership:
// b-exponent 0 and the reduced word in the x-basis uses only k >= 0.
class GuirardelPositive : public SubgroupOracle {
 public:
  GuirardelPositive(std::string name, GroupPtr ambient, int a_index = 0, int b_index = 1,
                    int generator_window = 8);
  std::string kind() const override { return "guirardel-positive"; }
  bool member(const Word& g) const override;
  Word coset_rep(const Word& g) const override;
  std::vector<Word> generators() const override;
  std::string describe() const override;
  std::optional<long long> weighted_length(const Word& g, long long cap) const override;
  std::vector<Word> members_within(long long cap) const override;

  // Reduced word in the x_k basis as (k, sign) pairs; nullopt if the
  // b-exponent sum is nonzero.
  std::optional<std::vector<std::pair<long long, int>>> x_word(const Word& g) const;
  Word x_to_ambient(const std::vector<std::pair<long long, int>>& xs) const;

 private:
  int a_, b_;
  int window_;
};

// Conjugate g H g^-1 of another subgroup oracle.
class ConjugateSubgroup : public SubgroupOracle {
 public:
  ConjugateSubgroup(std::string name, SubgroupPtr base, Word g);
  std::string kind() const override { return "conjugate"; }
  bool member(const Word& x) const override;
  Word coset_rep(const Word& x) const override;
  std::vector<Word> generators() const override;
  std::string describe() const override;
  std::optional<long long> weighted_length(const Word& x, long long cap) const override;
  std::vector<Word> members_within(long long cap) const override;

 private:
  SubgroupPtr base_;
  Word g_, ginv_;
};

// Index of <u> in <v> when u is a power of v: returns |k| with v^k = u.
std::optional<long long> cyclic_index(const GroupOracle& g, const Word& u, const Word& v,
                                      long long cap = 4096);

}  // namespace aif
