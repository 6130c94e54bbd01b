#include "aif/group.hpp"

#include <algorithm>
#include <unordered_set>

namespace aif {

Word GroupOracle::normalize(const Word& w) const {
  for (Letter l : w) {
    int g = letter_gen(l);
    if (l == 0 || g < 0 || g >= rank())
      throw OracleError("unknown generator symbol in word for group " + name());
  }
  return normalize_impl(w);
}

std::vector<long long> FreeAbelian::exponents(const Word& w) const {
  std::vector<long long> e(static_cast<std::size_t>(rank()), 0);
  for (Letter l : w) e[static_cast<std::size_t>(letter_gen(l))] += l > 0 ? 1 : -1;
  return e;
}

Word FreeAbelian::from_exponents(const std::vector<long long>& e) const {
  Word out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    Letter l = make_letter(static_cast<int>(i), e[i] > 0);
    long long n = e[i] > 0 ? e[i] : -e[i];
    for (long long k = 0; k < n; ++k) out.push_back(l);
  }
  return out;
}

Word FreeAbelian::normalize_impl(const Word& w) const { return from_exponents(exponents(w)); }

Word FiniteCyclic::normalize_impl(const Word& w) const {
  long long e = 0;
  for (Letter l : w) e += l > 0 ? 1 : -1;
  e %= order_;
  if (e < 0) e += order_;
  Word out;
  for (long long k = 0; k < e; ++k) out.push_back(make_letter(0, true));
  return out;
}

namespace {
std::vector<std::string> collect_names(const std::vector<GroupPtr>& factors) {
  std::vector<std::string> names;
  for (const auto& f : factors)
    for (const auto& n : f->generator_names()) names.push_back(n);
  return names;
}
}  // namespace

FreeProduct::FreeProduct(std::string name, std::vector<GroupPtr> factors)
    : GroupOracle(std::move(name), collect_names(factors)), factors_(std::move(factors)) {
  int off = 0;
  for (const auto& f : factors_) {
    offset_.push_back(off);
    off += f->rank();
  }
}

int FreeProduct::factor_of_letter(Letter l) const {
  int g = letter_gen(l);
  for (int i = static_cast<int>(factors_.size()) - 1; i >= 0; --i)
    if (g >= offset_[static_cast<std::size_t>(i)]) return i;
  throw OracleError("letter outside alphabet");
}

Word FreeProduct::to_local(int factor, const Word& w) const {
  Word out;
  int off = offset_[static_cast<std::size_t>(factor)];
  for (Letter l : w) {
    if (factor_of_letter(l) != factor) throw OracleError("word not in factor " + std::to_string(factor));
    out.push_back(make_letter(letter_gen(l) - off, l > 0));
  }
  return out;
}

Word FreeProduct::to_global(int factor, const Word& w) const {
  Word out;
  int off = offset_[static_cast<std::size_t>(factor)];
  for (Letter l : w) out.push_back(make_letter(letter_gen(l) + off, l > 0));
  return out;
}

Word FreeProduct::normalize_impl(const Word& w) const {
  // Split into factor syllables, normalize each, drop trivial ones and
  // merge neighbours until stable.
  struct Syll {
    int factor;
    Word local;
  };
  std::vector<Syll> sylls;
  for (Letter l : w) {
    int f = factor_of_letter(l);
    Letter local = make_letter(letter_gen(l) - offset_[static_cast<std::size_t>(f)], l > 0);
    if (!sylls.empty() && sylls.back().factor == f) {
      sylls.back().local.push_back(local);
    } else {
      sylls.push_back({f, Word{local}});
    }
  }
  std::vector<Syll> stack;
  for (auto& s : sylls) {
    Word cur = s.local;
    int f = s.factor;
    for (;;) {
      Word nf = factors_[static_cast<std::size_t>(f)]->normalize(
          stack.empty() || stack.back().factor != f ? cur
                                                    : word_concat(stack.back().local, cur));
      if (!stack.empty() && stack.back().factor == f) stack.pop_back();
      if (nf.empty()) {
        if (stack.empty()) { cur.clear(); break; }
        // trivial syllable: neighbours may now merge; pop and retry
        Syll prev = stack.back();
        stack.pop_back();
        cur = prev.local;
        f = prev.factor;
        continue;
      }
      stack.push_back({f, nf});
      break;
    }
  }
  Word out;
  for (const auto& s : stack)
    for (Letter l : s.local) out.push_back(make_letter(letter_gen(l) + offset_[static_cast<std::size_t>(s.factor)], l > 0));
  return out;
}

DirectProduct::DirectProduct(std::string name, std::vector<GroupPtr> factors)
    : GroupOracle(std::move(name), collect_names(factors)), factors_(std::move(factors)) {
  int off = 0;
  for (const auto& f : factors_) {
    offset_.push_back(off);
    off += f->rank();
  }
}

int DirectProduct::factor_of_letter(Letter l) const {
  int g = letter_gen(l);
  for (int i = static_cast<int>(factors_.size()) - 1; i >= 0; --i)
    if (g >= offset_[static_cast<std::size_t>(i)]) return i;
  throw OracleError("letter outside alphabet");
}

Word DirectProduct::to_local(int factor, const Word& w) const {
  Word out;
  int off = offset_[static_cast<std::size_t>(factor)];
  for (Letter l : w) {
    if (factor_of_letter(l) != factor) throw OracleError("word not in factor");
    out.push_back(make_letter(letter_gen(l) - off, l > 0));
  }
  return out;
}

Word DirectProduct::to_global(int factor, const Word& w) const {
  Word out;
  int off = offset_[static_cast<std::size_t>(factor)];
  for (Letter l : w) out.push_back(make_letter(letter_gen(l) + off, l > 0));
  return out;
}

Word DirectProduct::normalize_impl(const Word& w) const {
  Word out;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    Word local;
    for (Letter l : w)
      if (factor_of_letter(l) == static_cast<int>(f))
        local.push_back(make_letter(letter_gen(l) - offset_[f], l > 0));
    Word nf = factors_[f]->normalize(local);
    for (Letter l : nf) out.push_back(make_letter(letter_gen(l) + offset_[f], l > 0));
  }
  return out;
}

namespace {
long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
constexpr long long kExpCap = 1ll << 40;
}  // namespace

Word BaumslagSolitar::normalize_impl(const Word& w) const {
  // Syllable stack: blocks "a^{apow} t^{tsign}" plus a trailing a-power.
  // Residues satisfy 0 <= apow < m before t and 0 <= apow < n before t^-1.
  struct Syll {
    long long apow;
    int tsign;
  };
  std::vector<Syll> stack;
  long long tail = 0;
  auto append_t = [&](int sign) {
    if (sign > 0) {
      long long q = floor_div(tail, m_);
      long long r = tail - q * m_;
      if (r == 0 && !stack.empty() && stack.back().tsign == -1) {
        long long p = stack.back().apow;
        stack.pop_back();
        tail = p + q * n_;
      } else {
        stack.push_back({r, +1});
        tail = q * n_;
      }
    } else {
      long long q = floor_div(tail, n_);
      long long r = tail - q * n_;
      if (r == 0 && !stack.empty() && stack.back().tsign == +1) {
        long long p = stack.back().apow;
        stack.pop_back();
        tail = p + q * m_;
      } else {
        stack.push_back({r, -1});
        tail = q * m_;
      }
    }
    if (std::abs(tail) > kExpCap) throw BudgetExceeded("bs exponent growth");
  };
  for (Letter l : w) {
    if (letter_gen(l) == 0)
      tail += l > 0 ? 1 : -1;
    else
      append_t(l > 0 ? +1 : -1);
    if (std::abs(tail) > kExpCap) throw BudgetExceeded("bs exponent growth");
  }
  Word out;
  auto emit_a = [&out](long long e) {
    Letter l = make_letter(0, e > 0);
    long long k = e > 0 ? e : -e;
    for (long long i = 0; i < k; ++i) out.push_back(l);
  };
  for (const auto& s : stack) {
    emit_a(s.apow);
    out.push_back(make_letter(1, s.tsign > 0));
  }
  emit_a(tail);
  return out;
}

std::vector<Word> ball(const GroupOracle& g, int radius, const Budget& budget) {
  if (radius < 0) throw OracleError("ball radius must be >= 0");
  std::vector<Word> out;
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> layer{Word{}};
  seen.insert(Word{});
  out.push_back(Word{});
  std::vector<Letter> alphabet;
  for (int i = 0; i < g.rank(); ++i) {
    alphabet.push_back(make_letter(i, true));
    alphabet.push_back(make_letter(i, false));
  }
  for (int r = 1; r <= radius; ++r) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (Letter l : alphabet) {
        Word cand = w;
        cand.push_back(l);
        cand = g.normalize(cand);
        if (seen.insert(cand).second) {
          next.push_back(cand);
          if (seen.size() > budget.max_ball) throw BudgetExceeded("ball size");
        }
      }
    }
    std::sort(next.begin(), next.end(), shortlex_less);
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
    if (layer.empty()) break;
  }
  return out;
}

}  // namespace aif
