#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace aif {

// A letter is a signed generator reference: +(i+1) for generator i,
// -(i+1) for its inverse. Words are letter sequences; the empty word
// is the identity.
using Letter = std::int32_t;
using Word = std::vector<Letter>;

inline int letter_gen(Letter l) { return std::abs(l) - 1; }
inline bool letter_positive(Letter l) { return l > 0; }
inline Letter letter_inverse(Letter l) { return -l; }
inline Letter make_letter(int gen, bool positive) {
  return positive ? Letter(gen + 1) : Letter(-(gen + 1));
}

Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);
Word word_pow(const Word& w, long long k);

// Freely reduce (cancel adjacent x x^-1). Used by several normal forms.
Word free_reduce(const Word& w);

// Shortlex order: length first, then letter-by-letter with
// a < a^-1 < b < b^-1 < ...
bool shortlex_less(const Word& a, const Word& b);

// Rendering and parsing against a generator name list. Words print as
// space-separated factors with ^ for exponents, e.g. "a b^-2"; the
// identity prints as "1".
std::string word_to_string(const Word& w, const std::vector<std::string>& names);
Word parse_word(const std::string& text, const std::vector<std::string>& names);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter l : w) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace aif
