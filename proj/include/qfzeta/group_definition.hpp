#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "qfzeta/moebius.hpp"

namespace qfzeta {

enum class GroupKind { free, surface };

struct NamedGenerator {
  std::string name;
  MoebiusMap map;
};

/// Generators a_1, b_1, ..., a_g, b_g as indices into the generator list,
/// stored in the interleaved order a_1 b_1 a_2 b_2 ... used by group files.
/// For free groups the list simply orders the generators.
struct Marking {
  std::vector<int> order;
};

/// Generators plus combinatorial type. Surface groups of genus g carry the
/// standard relator prod [a_i, b_i]; free groups of rank r carry none.
class GroupDefinition {
 public:
  GroupDefinition(GroupKind kind, int rank_or_genus, std::vector<NamedGenerator> generators,
                  std::optional<Marking> marking = std::nullopt);

  GroupKind kind() const noexcept { return kind_; }
  /// Free rank r, or surface genus g.
  int rank_or_genus() const noexcept { return rank_or_genus_; }
  int genus() const noexcept { return kind_ == GroupKind::surface ? rank_or_genus_ : 0; }

  const std::vector<NamedGenerator>& generators() const noexcept { return generators_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  const std::optional<Marking>& marking() const noexcept { return marking_; }

  /// Generator indices in relator order a_1 b_1 ... a_g b_g: the marking when
  /// present, the declaration order otherwise.
  std::vector<int> relator_order() const;

  /// Index of the marked generator a_i (1-based i).
  int marked_a(int i) const;

  /// Evaluates prod [a_i, b_i] (surface groups only).
  MoebiusMap relator_value() const;

  /// Checks the relator and that every generator is loxodromic.
  /// Throws moebius.InvalidGroup / moebius.NotLoxodromic.
  void validate(const Tolerances& tol = {}) const;

  /// h G h^{-1}.
  GroupDefinition conjugated_by(const MoebiusMap& h) const;

  /// True when every generator has real entries up to the overall sign.
  bool is_real(double tol = 1e-12) const;

 private:
  GroupKind kind_;
  int rank_or_genus_;
  std::vector<NamedGenerator> generators_;
  std::optional<Marking> marking_;
};

/// Entrywise complex conjugation of every generator.
GroupDefinition conjugate_group(const GroupDefinition& group);

struct Normalization {
  GroupDefinition group;  ///< h G h^{-1}
  MoebiusMap conjugator;  ///< h
};

/// Conjugates so that the attracting fixed points of a_1, a_2 are 0, 1 and the
/// repelling fixed point of a_1 is infinity. Throws moebius.DegenerateMarking.
Normalization normalize_marked_group(const GroupDefinition& group, const Tolerances& tol = {});

/// Group file reader. Format:
///   # comment
///   type surface 2          (or: type free 2)
///   gen a1 = (re,im re,im re,im re,im)     row-major a b c d
///   marking a1 b1 a2 b2     (optional)
/// Throws moebius.ParseError with the offending line number.
GroupDefinition parse_group(std::istream& in, const std::string& source = "<input>");
GroupDefinition read_group_file(const std::string& path);

std::string format_group(const GroupDefinition& group);

}  // namespace qfzeta
