#include "qfzeta/conjugacy.hpp"

#include <algorithm>
#include <set>

#include "qfzeta/errors.hpp"

namespace qfzeta {

ClassCanonicalizer::ClassCanonicalizer(const GroupDefinition& group) {
  if (group.kind() == GroupKind::surface) relator_.emplace(group);
}

ClassCanonicalizer::Exploration ClassCanonicalizer::explore(const Word& u,
                                                            const Word* stop_below) const {
  Exploration ex;
  std::set<Word> seen{u};
  std::vector<Word> queue{u};
  const std::size_t n = u.size();
  bool stop = false;
  for (std::size_t head = 0; head < queue.size() && !stop; ++head) {
    const Word w = queue[head];
    relator_->for_each_chain_move(w, [&](const Word& v, int) {
      if (stop) return;
      Word r = relator_->cyclic_dehn_reduce(v);
      if (r.size() < n) {
        ex.shorter = std::move(r);
        stop = true;
        return;
      }
      Word c = least_rotation(r);
      if (stop_below && c < *stop_below) {
        ex.members.push_back(std::move(c));
        stop = true;
        return;
      }
      if (seen.insert(c).second) queue.push_back(std::move(c));
    });
  }
  if (!stop) ex.members.assign(seen.begin(), seen.end());
  return ex;
}

Word ClassCanonicalizer::canonical(const Word& w) const {
  if (!relator_) return least_rotation(cyclically_reduce(w));
  Word cur = relator_->cyclic_dehn_reduce(w);
  while (!cur.empty()) {
    Exploration ex = explore(least_rotation(cur), nullptr);
    if (!ex.shorter) return ex.members.front();  // std::set order: least first
    cur = std::move(*ex.shorter);
  }
  return cur;
}

bool ClassCanonicalizer::is_canonical_necklace(const Word& u) const {
  if (!relator_) return true;
  return is_canonical_necklace(u, relator_->max_cyclic_run(u));
}

bool ClassCanonicalizer::is_canonical_necklace(const Word& u, std::size_t max_cyclic_run) const {
  if (!relator_) return true;
  // A strip move of length change <= 0 needs a run of 2g letters, or runs of
  // exactly 2g - 1 tiling the whole cyclic word.
  const std::size_t half = relator_->relator_length() / 2;
  if (max_cyclic_run + 1 < half) return true;
  if (max_cyclic_run + 1 == half && u.size() % (half - 1) != 0) return true;
  Exploration ex = explore(u, &u);
  return !ex.shorter &&
         std::none_of(ex.members.begin(), ex.members.end(), [&](const Word& m) { return m < u; });
}

namespace {

// Plain 2x2 product; det drifts from 1 only by rounding over <= L factors and
// MoebiusMap renormalises once at the leaf.
struct Mat2 {
  Complex a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};
  Mat2 operator*(const MoebiusMap& r) const {
    return {a * r.a() + b * r.c(), a * r.b() + b * r.d(), c * r.a() + d * r.c(),
            c * r.b() + d * r.d()};
  }
};

struct NecklaceWalker {
  const ClassCanonicalizer& canon;
  const std::vector<MoebiusMap>& maps;
  const std::function<void(const ConjugacyClass&)>& sink;
  const Tolerances& tol;
  const SurfaceRelator* rel;
  int letters;
  std::size_t n = 0;
  std::size_t half = 0;
  Word a{};
  std::vector<Mat2> prefix{};
  std::vector<std::uint8_t> run0{}, run1{};
  std::vector<std::uint8_t> longest{};  // longest run inside a[1..t]
  Word u{};

  // Longest run of a[1..n] read cyclically, from the linear data plus the
  // run through the seam.
  std::size_t cyclic_run() const {
    std::size_t best = longest[n];
    for (int side = 0; side < 2; ++side) {
      if (!rel->follows(side, a[n], a[1])) continue;
      const auto& run = side == 0 ? run0 : run1;
      std::size_t head = 1;
      while (head < n && run[head + 1] == head + 1) ++head;
      best = std::max(best, std::min<std::size_t>(n, run[n] + head));
    }
    return best;
  }

  void leaf(std::size_t p) {
    if (n % p) return;
    if (n > 1 && a[n] == inverse_letter(a[1])) return;
    u.assign(a.begin() + 1, a.end());
    if (rel) {
      const std::size_t r = n > 1 ? cyclic_run() : 1;
      if (r > half || !canon.is_canonical_necklace(u, r)) return;
    }
    ConjugacyClass c;
    const Mat2& m = prefix[n];
    c.representative = MoebiusMap(m.a, m.b, m.c, m.d);
    c.multiplier = multiplier(c.representative, tol);
    c.primitive = p == n;
    c.word_length = static_cast<int>(n);
    c.canonical_word = u;
    sink(c);
  }

  void gen(std::size_t t, std::size_t p) {
    if (t > n) {
      leaf(p);
      return;
    }
    for (int xi = a[t - p]; xi < letters; ++xi) {
      const Letter x = static_cast<Letter>(xi);
      if (t > 1 && a[t - 1] == inverse_letter(x)) continue;
      if (rel) {
        run0[t] = static_cast<std::uint8_t>(t > 1 && rel->follows(0, a[t - 1], x) ? run0[t - 1] + 1 : 1);
        run1[t] = static_cast<std::uint8_t>(t > 1 && rel->follows(1, a[t - 1], x) ? run1[t - 1] + 1 : 1);
        if (run0[t] > half || run1[t] > half) continue;
        longest[t] = std::max({longest[t - 1], run0[t], run1[t]});
      }
      a[t] = x;
      prefix[t] = prefix[t - 1] * maps[x];
      gen(t + 1, x == a[t - p] ? p : t);
    }
  }
};

}  // namespace

void for_each_conjugacy_class(const GroupDefinition& group, int max_length,
                              const std::function<void(const ConjugacyClass&)>& sink,
                              const Tolerances& tol) {
  if (max_length < 0) throw group_error("BadLength", "word length budget must be >= 0");
  const ClassCanonicalizer canon(group);
  const auto maps = letter_maps(group);
  NecklaceWalker walker{canon, maps, sink, tol, canon.relator(), static_cast<int>(maps.size())};
  if (walker.rel) walker.half = walker.rel->relator_length() / 2;
  for (int len = 1; len <= max_length; ++len) {
    walker.n = static_cast<std::size_t>(len);
    walker.a.assign(walker.n + 1, 0);
    walker.prefix.assign(walker.n + 1, Mat2{});
    walker.run0.assign(walker.n + 1, 0);
    walker.run1.assign(walker.n + 1, 0);
    walker.longest.assign(walker.n + 1, 0);
    walker.gen(1, 1);
  }
}

std::vector<ConjugacyClass> conjugacy_classes(const GroupDefinition& group, int max_length,
                                              const ClassOptions& options) {
  std::vector<ConjugacyClass> out;
  for_each_conjugacy_class(
      group, max_length,
      [&](const ConjugacyClass& c) {
        if (out.size() >= options.class_cap) {
          throw group_error("LimitExceeded", "conjugacy class list passed the cap of " +
                                                 std::to_string(options.class_cap));
        }
        out.push_back(c);
      },
      options.tolerances);
  return out;
}

Word canonical_class_word(const GroupDefinition& group, const Word& w) {
  Word c = ClassCanonicalizer(group).canonical(w);
  if (c.empty()) throw group_error("BadWord", "the identity has no conjugacy class here");
  return c;
}

bool is_primitive(const ConjugacyClass& c) {
  return primitive_period(c.canonical_word) == c.canonical_word.size();
}

}  // namespace qfzeta
