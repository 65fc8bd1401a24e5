#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qfzeta/dehn.hpp"
#include "qfzeta/word.hpp"

namespace qfzeta {

struct EnumerationOptions {
  std::size_t element_cap = 5'000'000;
};

/// Group elements of word length <= L, one per element, in shortlex order of
/// their normal forms. Index 0 is the identity. Words are stored as parent
/// pointers; word(i) rebuilds them.
class ElementList {
 public:
  std::size_t size() const noexcept { return maps_.size(); }
  int max_length() const noexcept { return static_cast<int>(level_begin_.size()) - 2; }

  const MoebiusMap& map(std::size_t i) const noexcept { return maps_[i]; }
  int length(std::size_t i) const noexcept { return length_[i]; }
  Word word(std::size_t i) const;

  /// Elements of length l occupy [level_begin(l), level_begin(l + 1)).
  std::size_t level_begin(int l) const noexcept { return level_begin_[static_cast<std::size_t>(l)]; }

  /// Same words, matrices entrywise conjugated.
  ElementList conjugated() const;

 private:
  friend ElementList enumerate_elements(const GroupDefinition&, int, const EnumerationOptions&);
  std::vector<MoebiusMap> maps_;
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> last_;
  std::vector<std::uint8_t> length_;
  std::vector<std::size_t> level_begin_;
};

/// Free groups: every freely reduced word. Surface groups: the shortlex least
/// geodesic word of every element, duplicates found by a spatial hash on
/// g(j) in upper half-space and confirmed exactly with Dehn's algorithm.
/// Throws group.LimitExceeded past options.element_cap, group.BadLength for L < 0.
ElementList enumerate_elements(const GroupDefinition& group, int max_length,
                               const EnumerationOptions& options = {});

/// Streams the nonempty normal forms of length <= L in shortlex order.
void enumerate_words(const GroupDefinition& group, int max_length,
                     const std::function<void(const Word&)>& sink,
                     const EnumerationOptions& options = {});

}  // namespace qfzeta
