#include "aif/word.hpp"

#include <sstream>
#include <stdexcept>

namespace aif {

Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

Word word_concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word word_pow(const Word& w, long long k) {
  Word base = k >= 0 ? w : word_inverse(w);
  long long n = k >= 0 ? k : -k;
  Word out;
  out.reserve(base.size() * static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

namespace {
// Letter sort key: generator index major, positive before negative.
inline int letter_key(Letter l) { return 2 * letter_gen(l) + (l < 0 ? 1 : 0); }
}  // namespace

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int ka = letter_key(a[i]), kb = letter_key(b[i]);
    if (ka != kb) return ka < kb;
  }
  return false;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    long long exp = static_cast<long long>(j - i) * (w[i] > 0 ? 1 : -1);
    if (!first) os << ' ';
    first = false;
    os << names.at(static_cast<std::size_t>(letter_gen(w[i])));
    if (exp != 1) os << '^' << exp;
    i = j;
  }
  return os.str();
}

Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  Word out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "1" || tok == "e") continue;
    std::string name = tok;
    long long exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      exp = std::stoll(tok.substr(caret + 1));
    }
    int gen = -1;
    for (std::size_t g = 0; g < names.size(); ++g)
      if (names[g] == name) { gen = static_cast<int>(g); break; }
    if (gen < 0) throw std::runtime_error("unknown generator symbol: " + name);
    Letter l = make_letter(gen, exp > 0);
    long long n = exp > 0 ? exp : -exp;
    for (long long i = 0; i < n; ++i) out.push_back(l);
  }
  return out;
}

}  // namespace aif
