#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qfzeta/dehn.hpp"
#include "qfzeta/word.hpp"

namespace qfzeta {

struct ConjugacyClass {
  Word canonical_word;
  MoebiusMap representative;  ///< matrix of canonical_word
  Multiplier multiplier;
  bool primitive = true;
  int word_length = 0;
};

struct ClassOptions {
  std::size_t class_cap = 5'000'000;  ///< materialised lists only; streaming is unbounded
  Tolerances tolerances{};
};

/// Canonical cyclic words for one group.
///
/// Free groups: the least rotation of the cyclic reduction. Surface groups:
/// cyclically Dehn-reduce, shorten with strip moves while possible, then take
/// the least rotation over every shortest cyclic word of the class (all are
/// reachable by length-preserving strip moves).
class ClassCanonicalizer {
 public:
  explicit ClassCanonicalizer(const GroupDefinition& group);

  Word canonical(const Word& w) const;

  /// For u cyclically reduced, least among its rotations, and (surface)
  /// without cyclic runs above 2g: true iff u is the canonical word of its class.
  bool is_canonical_necklace(const Word& u) const;
  /// Same, with the longest cyclic relator run of u already known.
  bool is_canonical_necklace(const Word& u, std::size_t max_cyclic_run) const;

  const SurfaceRelator* relator() const noexcept { return relator_ ? &*relator_ : nullptr; }

 private:
  // Shortest class members reachable from u, or the first shorter word met.
  struct Exploration {
    std::vector<Word> members;
    std::optional<Word> shorter;
  };
  Exploration explore(const Word& u, const Word* stop_below) const;

  std::optional<SurfaceRelator> relator_;
};

/// Streams every conjugacy class whose shortest cyclic representative has
/// length <= L, ordered by (length, canonical word). Throws
/// moebius.NotLoxodromic if an enumerated class is not loxodromic.
void for_each_conjugacy_class(const GroupDefinition& group, int max_length,
                              const std::function<void(const ConjugacyClass&)>& sink,
                              const Tolerances& tol = {});

/// Materialised form. Throws group.LimitExceeded past options.class_cap.
std::vector<ConjugacyClass> conjugacy_classes(const GroupDefinition& group, int max_length,
                                              const ClassOptions& options = {});

/// Canonical word of the class of w (w nonempty and not the identity).
Word canonical_class_word(const GroupDefinition& group, const Word& w);

/// True iff the canonical word is not a k-fold repetition, k >= 2.
bool is_primitive(const ConjugacyClass& c);

}  // namespace qfzeta
