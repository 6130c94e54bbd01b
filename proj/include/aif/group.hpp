#pragma once

#include <memory>
#include <string>
#include <vector>

#include "aif/budget.hpp"
#include "aif/word.hpp"

namespace aif {

// A group presented by generators with a solved word problem: normalize
// maps any word over the alphabet to a canonical form, and two words are
// equal in the group iff their canonical forms coincide. Only catalog
// groups are supported; arbitrary presentations are rejected.
class GroupOracle {
 public:
  GroupOracle(std::string name, std::vector<std::string> gen_names)
      : name_(std::move(name)), gen_names_(std::move(gen_names)) {}
  virtual ~GroupOracle() = default;

  const std::string& name() const { return name_; }
  int rank() const { return static_cast<int>(gen_names_.size()); }
  const std::vector<std::string>& generator_names() const { return gen_names_; }
  virtual std::string kind() const = 0;

  Word normalize(const Word& w) const;
  Word mul(const Word& a, const Word& b) const { return normalize(word_concat(a, b)); }
  Word inv(const Word& a) const { return normalize(word_inverse(a)); }
  Word conj(const Word& g, const Word& x) const {  // g x g^-1
    return normalize(word_concat(word_concat(g, x), word_inverse(g)));
  }
  Word gen(int i, int exp = 1) const { return normalize(word_pow(Word{make_letter(i, true)}, exp)); }
  bool is_identity(const Word& w) const { return normalize(w).empty(); }
  bool equal(const Word& a, const Word& b) const { return normalize(a) == normalize(b); }

  std::string str(const Word& w) const { return word_to_string(w, gen_names_); }
  Word parse(const std::string& s) const { return parse_word(s, gen_names_); }

 protected:
  virtual Word normalize_impl(const Word& w) const = 0;

 private:
  std::string name_;
  std::vector<std::string> gen_names_;
};

using GroupPtr = std::shared_ptr<const GroupOracle>;

class FreeGroup : public GroupOracle {
 public:
  FreeGroup(std::string name, std::vector<std::string> gens)
      : GroupOracle(std::move(name), std::move(gens)) {}
  std::string kind() const override { return "free"; }

 protected:
  Word normalize_impl(const Word& w) const override { return free_reduce(w); }
};

class FreeAbelian : public GroupOracle {
 public:
  FreeAbelian(std::string name, std::vector<std::string> gens)
      : GroupOracle(std::move(name), std::move(gens)) {}
  std::string kind() const override { return "free-abelian"; }

  // Exponent vector of a (not necessarily normalized) word.
  std::vector<long long> exponents(const Word& w) const;
  Word from_exponents(const std::vector<long long>& e) const;

 protected:
  Word normalize_impl(const Word& w) const override;
};

class FiniteCyclic : public GroupOracle {
 public:
  FiniteCyclic(std::string name, std::string gen, long long order)
      : GroupOracle(std::move(name), {std::move(gen)}), order_(order) {
    if (order_ < 1) throw OracleError("finite cyclic order must be >= 1");
  }
  std::string kind() const override { return "finite-cyclic"; }
  long long order() const { return order_; }

 protected:
  Word normalize_impl(const Word& w) const override;

 private:
  long long order_;
};

// Free product of catalog groups; generators are the factor generators in
// factor order. Normal form: alternating nontrivial factor syllables, each
// in its factor's normal form.
class FreeProduct : public GroupOracle {
 public:
  FreeProduct(std::string name, std::vector<GroupPtr> factors);
  std::string kind() const override { return "free-product"; }
  const std::vector<GroupPtr>& factors() const { return factors_; }
  int factor_of_letter(Letter l) const;
  // Translate a global-alphabet word that lies in one factor to that
  // factor's local alphabet, and back.
  Word to_local(int factor, const Word& w) const;
  Word to_global(int factor, const Word& w) const;

 protected:
  Word normalize_impl(const Word& w) const override;

 private:
  std::vector<GroupPtr> factors_;
  std::vector<int> offset_;  // generator index offset per factor
};

class DirectProduct : public GroupOracle {
 public:
  DirectProduct(std::string name, std::vector<GroupPtr> factors);
  std::string kind() const override { return "direct-product"; }
  const std::vector<GroupPtr>& factors() const { return factors_; }
  int factor_of_letter(Letter l) const;
  Word to_local(int factor, const Word& w) const;
  Word to_global(int factor, const Word& w) const;

 protected:
  Word normalize_impl(const Word& w) const override;

 private:
  std::vector<GroupPtr> factors_;
  std::vector<int> offset_;
};

// One-relator Baumslag-Solitar group <a, t | t^-1 a^m t = a^n>, normalized
// to the Bass-Serre normal form with right transversals {a^r : 0 <= r < m}
// across t and {a^r : 0 <= r < n} across t^-1.
class BaumslagSolitar : public GroupOracle {
 public:
  BaumslagSolitar(std::string name, std::string a, std::string t, long long m, long long n)
      : GroupOracle(std::move(name), {std::move(a), std::move(t)}), m_(m), n_(n) {
    if (m_ < 1 || n_ < 1) throw OracleError("bs parameters must be positive");
  }
  std::string kind() const override { return "bs"; }
  long long m() const { return m_; }
  long long n() const { return n_; }

 protected:
  Word normalize_impl(const Word& w) const override;

 private:
  long long m_, n_;
};

// Enumerate the ball of radius R around the identity, in shortlex order
// (breadth-first layers, each layer sorted). Deterministic.
std::vector<Word> ball(const GroupOracle& g, int radius, const Budget& budget);

}  // namespace aif
