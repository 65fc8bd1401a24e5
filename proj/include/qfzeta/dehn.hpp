#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "qfzeta/word.hpp"

namespace qfzeta {

/// Dehn's algorithm for the standard surface relator prod [a_i, b_i].
///
/// Every letter occurs exactly once in R and once in R^{-1}, so "y follows x
/// inside a cyclic rotation of R" is the single table lookup next_[0][x] == y
/// (next_[1] for R^{-1}). Requires genus >= 2, where pieces have length one.
class SurfaceRelator {
 public:
  explicit SurfaceRelator(const GroupDefinition& group);

  int genus() const noexcept { return genus_; }
  std::size_t relator_length() const noexcept { return 4 * static_cast<std::size_t>(genus_); }

  /// The relator as a word, a_1 b_1 a_1^-1 b_1^-1 ... in marked order.
  const Word& relator() const noexcept { return relator_; }

  /// Successor of x in the cyclic word R (side 0) or R^{-1} (side 1).
  Letter next(int side, Letter x) const noexcept { return next_[side][x]; }
  Letter prev(int side, Letter x) const noexcept { return prev_[side][x]; }
  bool follows(int side, Letter x, Letter y) const noexcept { return next_[side][x] == y; }

  /// Rewrites subwords longer than half a relator until none remain, freely
  /// reducing throughout. Length drops by two per rewrite, so this halts.
  Word dehn_reduce(const Word& w) const;

  /// Same, but treating w as a cyclic word; the result is cyclically freely
  /// reduced with no cyclic subword longer than half a relator.
  Word cyclic_dehn_reduce(const Word& w) const;

  /// Word problem: w == 1 in the group.
  bool is_identity(const Word& w) const { return dehn_reduce(w).empty(); }

  /// Longest run of w (read linearly) inside a rotation of R^{+-1}.
  std::size_t max_run(const Word& w) const noexcept;
  /// Longest run of w read cyclically (capped at |w|).
  std::size_t max_cyclic_run(const Word& w) const noexcept;

  /// The 2g - 1 letters completing the run ending in x on the given side,
  /// inverted: the replacement for a (2g + 1)-run ending in x.
  void complement_inverse(int side, Letter last, std::size_t run_length, Word& out) const;

  /// Rewrites of the cyclic word u that replace a chain of relator runs
  /// s_1 ... s_k by the opposite boundary t_1 ... t_k of a strip of relator
  /// discs, consecutive discs sharing one edge. Open chains give an equal
  /// element, closed chains (the strip wraps around) a conjugate. Only
  /// rewrites with length change delta <= 0 and runs of at most 2g on both
  /// sides are reported; sink(v, delta) receives v as a cyclic word.
  ///
  /// Between cyclically Dehn-reduced words, conjugacy is witnessed by an
  /// annulus of such strips, so iterating these moves reaches every shortest
  /// cyclic word of a conjugacy class.
  template <class Sink>
  void for_each_chain_move(const Word& u, Sink&& sink) const;

 private:
  int genus_;
  Word relator_;
  std::array<std::vector<Letter>, 2> next_;
  std::array<std::vector<Letter>, 2> prev_;

  struct ChainState;
  template <class Sink>
  void chain_step(ChainState& st, std::size_t pos, std::size_t covered, int in_edge, Letter e_in,
                  int delta, Sink& sink) const;
};

struct SurfaceRelator::ChainState {
  const Word* u = nullptr;
  std::size_t n = 0;
  std::size_t start = 0;
  bool closed = false;     // looking for a strip that wraps around
  int first_side = 0;
  Letter first_in = 0;     // edge entering the first disc of a closed strip
  std::array<std::array<std::uint8_t, 64>, 2> run{};  // forward run lengths
  Word replacement;
  Word scratch;
};

template <class Sink>
void SurfaceRelator::chain_step(ChainState& st, std::size_t pos, std::size_t covered, int in_edge,
                                Letter e_in, int delta, Sink& sink) const {
  const Word& u = *st.u;
  const std::size_t n = st.n;
  const std::size_t half = 2 * static_cast<std::size_t>(genus_);
  const std::size_t full = 2 * half;
  for (int side = 0; side < 2; ++side) {
    if (in_edge && prev_[side][u[pos]] != inverse_letter(e_in)) continue;
    if (st.closed && covered == 0 && side != st.first_side) continue;
    const std::size_t max_len = std::min<std::size_t>({st.run[side][pos], half, n - covered});
    for (std::size_t len = 1; len <= max_len; ++len) {
      const Letter z = u[(pos + len - 1) % n];
      const std::size_t done = covered + len;
      const std::size_t mark = st.replacement.size();

      // Disc ends the strip here: no outgoing edge.
      if (!st.closed) {
        const std::size_t edges = static_cast<std::size_t>(in_edge);
        if (len + edges >= half) {
          const std::size_t tlen = full - len - edges;
          complement_inverse(side, z, full - tlen, st.scratch);
          const int d = delta + static_cast<int>(tlen) - static_cast<int>(len);
          if (d <= 0) {
            Word v = st.replacement;
            v.insert(v.end(), st.scratch.begin(), st.scratch.end());
            for (std::size_t k = done; k < n; ++k) v.push_back(u[(st.start + k) % n]);
            sink(v, d);
          }
        }
      }

      // Disc hands an edge to the next one.
      const std::size_t edges = static_cast<std::size_t>(in_edge) + 1;
      if (len + edges < half) continue;
      const Letter e = next_[side][z];
      const std::size_t tlen = full - len - edges;
      // t^{-1} is read after z and e; complement_inverse skips from e.
      complement_inverse(side, e, full - tlen, st.scratch);
      const int d = delta + static_cast<int>(tlen) - static_cast<int>(len);
      if (st.closed && done == n) {
        if (e == st.first_in && d <= 0) {
          Word v = st.replacement;
          v.insert(v.end(), st.scratch.begin(), st.scratch.end());
          sink(v, d);
        }
        continue;
      }
      if (done >= n) continue;
      st.replacement.insert(st.replacement.end(), st.scratch.begin(), st.scratch.end());
      chain_step(st, (pos + len) % n, done, 1, e, d, sink);
      st.replacement.resize(mark);
    }
  }
}

template <class Sink>
void SurfaceRelator::for_each_chain_move(const Word& u, Sink&& sink) const {
  const std::size_t n = u.size();
  if (n == 0 || n > 64) return;
  ChainState st;
  st.u = &u;
  st.n = n;
  for (int side = 0; side < 2; ++side) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 1;
      while (r < n && next_[side][u[(i + r - 1) % n]] == u[(i + r) % n]) ++r;
      st.run[side][i] = static_cast<std::uint8_t>(r);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    st.start = a;
    st.closed = false;
    chain_step(st, a, 0, 0, 0, 0, sink);
    st.closed = true;
    for (int side = 0; side < 2; ++side) {
      st.first_side = side;
      st.first_in = inverse_letter(prev_[side][u[a]]);
      chain_step(st, a, 0, 1, st.first_in, 0, sink);
    }
  }
}

}  // namespace qfzeta
