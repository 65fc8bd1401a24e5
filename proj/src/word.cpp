#include "qfzeta/word.hpp"

#include <algorithm>
#include <sstream>

#include "qfzeta/errors.hpp"

namespace qfzeta {

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& x : out) x = inverse_letter(x);
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back() == inverse_letter(x)) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

bool is_freely_reduced(const Word& w) noexcept {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == inverse_letter(w[i - 1])) return false;
  }
  return true;
}

bool is_cyclically_reduced(const Word& w) noexcept {
  if (!is_freely_reduced(w)) return false;
  return w.size() < 2 || w.front() != inverse_letter(w.back());
}

Word cyclically_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == inverse_letter(r[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi));
}

Word rotate(const Word& w, std::size_t shift) {
  if (w.empty()) return w;
  shift %= w.size();
  Word out(w.begin() + static_cast<long>(shift), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(shift));
  return out;
}

Word least_rotation(const Word& w) {
  const std::size_t n = w.size();
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      const Letter x = w[(s + k) % n];
      const Letter y = w[(best + k) % n];
      if (x != y) {
        if (x < y) best = s;
        break;
      }
    }
  }
  return rotate(w, best);
}

std::size_t primitive_period(const Word& w) noexcept {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return p;
  }
  return n;
}

std::vector<MoebiusMap> letter_maps(const GroupDefinition& group) {
  std::vector<MoebiusMap> maps;
  maps.reserve(2 * group.generator_count());
  for (const auto& g : group.generators()) {
    maps.push_back(g.map);
    maps.push_back(g.map.inverse());
  }
  return maps;
}

MoebiusMap evaluate(const Word& w, const std::vector<MoebiusMap>& maps) {
  MoebiusMap m;
  for (Letter x : w) m = m * maps[x];
  return m;
}

std::string format_word(const Word& w, const GroupDefinition& group) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += group.generators()[generator_of(w[i])].name;
    if (is_inverse_letter(w[i])) out += "^-1";
  }
  return out;
}

Word parse_word(const std::string& text, const GroupDefinition& group) {
  std::istringstream in(text);
  std::string token;
  Word w;
  while (in >> token) {
    if (token == "e") continue;
    bool inv = false;
    if (token.size() > 3 && token.compare(token.size() - 3, 3, "^-1") == 0) {
      inv = true;
      token.resize(token.size() - 3);
    }
    const auto& gens = group.generators();
    auto it = std::find_if(gens.begin(), gens.end(), [&](const auto& g) { return g.name == token; });
    if (it == gens.end()) throw group_error("BadWord", "unknown generator '" + token + "'");
    w.push_back(make_letter(static_cast<int>(it - gens.begin()), inv));
  }
  return w;
}

}  // namespace qfzeta
