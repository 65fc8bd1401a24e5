#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfzeta/group_definition.hpp"

namespace qfzeta {

/// Letter code 2*g + e: generator index g, e = 1 for the inverse. Numeric
/// order is the canonical letter order: declared generator order, each
/// generator before its inverse.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

constexpr Letter make_letter(int generator, bool inverse) noexcept {
  return static_cast<Letter>(2 * generator + (inverse ? 1 : 0));
}
constexpr Letter inverse_letter(Letter x) noexcept { return static_cast<Letter>(x ^ 1U); }
constexpr int generator_of(Letter x) noexcept { return x >> 1; }
constexpr bool is_inverse_letter(Letter x) noexcept { return (x & 1U) != 0; }

Word inverse(const Word& w);
Word free_reduce(const Word& w);
bool is_freely_reduced(const Word& w) noexcept;
bool is_cyclically_reduced(const Word& w) noexcept;
/// Strips x ... x^{-1} pairs from the ends after free reduction.
Word cyclically_reduce(const Word& w);

Word rotate(const Word& w, std::size_t shift);
/// Lexicographically least rotation (Booth-free quadratic scan; words are short).
Word least_rotation(const Word& w);
/// Smallest period p dividing |w| with w = (w[0..p))^{|w|/p}.
std::size_t primitive_period(const Word& w) noexcept;

/// Matrices for each letter code of a group (generator, inverse, ...).
std::vector<MoebiusMap> letter_maps(const GroupDefinition& group);
MoebiusMap evaluate(const Word& w, const std::vector<MoebiusMap>& maps);

/// Space separated generator names, inverses written name^-1; "e" if empty.
std::string format_word(const Word& w, const GroupDefinition& group);
/// Inverse of format_word. Throws group.BadWord.
Word parse_word(const std::string& text, const GroupDefinition& group);

}  // namespace qfzeta
