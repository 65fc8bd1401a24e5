#include "qfzeta/enumeration.hpp"

#include <cmath>
#include <optional>
#include <unordered_map>

#include "qfzeta/errors.hpp"

namespace qfzeta {

namespace {

// Cell size in the chart (x/t, y/t, log t) of upper half-space. Distinct orbit
// points of j are a translation length apart, far more than this.
constexpr double kCell = 1.0 / 64.0;

struct CellKey {
  std::int64_t u, v, w;
  bool operator==(const CellKey& o) const noexcept { return u == o.u && v == o.v && w == o.w; }
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.u) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(k.v) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.w) + 0x94D049BB133111EBULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

CellKey cell_of(const MoebiusMap& m) {
  double x, y, t;
  m.upper_space_point(x, y, t);
  // |y| keeps the key symmetric under conjugation of the whole group.
  return {static_cast<std::int64_t>(std::floor(x / t / kCell)),
          static_cast<std::int64_t>(std::floor(std::abs(y) / t / kCell)),
          static_cast<std::int64_t>(std::floor(std::log(t) / kCell))};
}

void check_length(int max_length) {
  if (max_length < 0) throw group_error("BadLength", "word length budget must be >= 0");
}

[[noreturn]] void limit_exceeded(std::size_t cap) {
  throw group_error("LimitExceeded",
                    "enumeration passed the element cap of " + std::to_string(cap));
}

}  // namespace

Word ElementList::word(std::size_t i) const {
  Word w(length_[i]);
  for (std::size_t k = w.size(); k > 0; --k) {
    w[k - 1] = last_[i];
    i = parent_[i];
  }
  return w;
}

ElementList ElementList::conjugated() const {
  ElementList out = *this;
  for (auto& m : out.maps_) m = m.conj();
  return out;
}

ElementList enumerate_elements(const GroupDefinition& group, int max_length,
                               const EnumerationOptions& options) {
  check_length(max_length);
  const auto maps = letter_maps(group);
  const int letters = static_cast<int>(maps.size());
  const bool surface = group.kind() == GroupKind::surface;

  ElementList out;
  out.maps_.emplace_back();
  out.parent_.push_back(0);
  out.last_.push_back(0);
  out.length_.push_back(0);
  out.level_begin_ = {0, 1};

  std::optional<SurfaceRelator> relator;
  std::unordered_multimap<CellKey, std::uint32_t, CellHash> cells;
  std::vector<std::uint8_t> run0{0}, run1{0};
  std::size_t limit = 0;
  if (surface) {
    relator.emplace(group);
    limit = 2 * static_cast<std::size_t>(relator->genus()) + 1;
    cells.emplace(cell_of(out.maps_[0]), 0);
  }

  auto is_duplicate = [&](const MoebiusMap& m, std::size_t parent, Letter x) {
    const CellKey c = cell_of(m);
    Word w;
    bool have_word = false;
    for (std::int64_t du = -1; du <= 1; ++du) {
      for (std::int64_t dv = -1; dv <= 1; ++dv) {
        for (std::int64_t dw = -1; dw <= 1; ++dw) {
          auto [lo, hi] = cells.equal_range({c.u + du, c.v + dv, c.w + dw});
          for (auto it = lo; it != hi; ++it) {
            if (!have_word) {
              w = out.word(parent);
              w.push_back(x);
              have_word = true;
            }
            Word probe = w;
            const Word other = inverse(out.word(it->second));
            probe.insert(probe.end(), other.begin(), other.end());
            if (relator->is_identity(probe)) return true;
          }
        }
      }
    }
    return false;
  };

  for (int l = 1; l <= max_length; ++l) {
    const std::size_t begin = out.level_begin_[static_cast<std::size_t>(l - 1)];
    const std::size_t end = out.level_begin_[static_cast<std::size_t>(l)];
    for (std::size_t p = begin; p < end; ++p) {
      for (int xi = 0; xi < letters; ++xi) {
        const Letter x = static_cast<Letter>(xi);
        if (l > 1 && out.last_[p] == inverse_letter(x)) continue;
        std::uint8_t r0 = 1, r1 = 1;
        if (surface && l > 1) {
          if (relator->follows(0, out.last_[p], x)) r0 = static_cast<std::uint8_t>(run0[p] + 1);
          if (relator->follows(1, out.last_[p], x)) r1 = static_cast<std::uint8_t>(run1[p] + 1);
          if (r0 >= limit || r1 >= limit) continue;  // Dehn shortens it
        }
        MoebiusMap m = out.maps_[p] * maps[x];
        if (surface && is_duplicate(m, p, x)) continue;
        if (out.maps_.size() >= options.element_cap) limit_exceeded(options.element_cap);
        const auto idx = static_cast<std::uint32_t>(out.maps_.size());
        if (surface) {
          cells.emplace(cell_of(m), idx);
          run0.push_back(r0);
          run1.push_back(r1);
        }
        out.maps_.push_back(m);
        out.parent_.push_back(static_cast<std::uint32_t>(p));
        out.last_.push_back(x);
        out.length_.push_back(static_cast<std::uint8_t>(l));
      }
    }
    out.level_begin_.push_back(out.maps_.size());
  }
  return out;
}

void enumerate_words(const GroupDefinition& group, int max_length,
                     const std::function<void(const Word&)>& sink,
                     const EnumerationOptions& options) {
  check_length(max_length);
  if (group.kind() == GroupKind::surface) {
    const ElementList list = enumerate_elements(group, max_length, options);
    for (std::size_t i = 1; i < list.size(); ++i) sink(list.word(i));
    return;
  }
  // Free groups: depth-first per length keeps memory at O(L).
  const int letters = 2 * static_cast<int>(group.generator_count());
  std::size_t emitted = 0;
  Word w;
  std::function<void(int)> extend = [&](int remaining) {
    if (remaining == 0) {
      if (++emitted > options.element_cap) limit_exceeded(options.element_cap);
      sink(w);
      return;
    }
    for (int xi = 0; xi < letters; ++xi) {
      const Letter x = static_cast<Letter>(xi);
      if (!w.empty() && w.back() == inverse_letter(x)) continue;
      w.push_back(x);
      extend(remaining - 1);
      w.pop_back();
    }
  };
  for (int l = 1; l <= max_length; ++l) extend(l);
}

}  // namespace qfzeta
