#include "qfzeta/dehn.hpp"

#include <algorithm>

#include "qfzeta/errors.hpp"

namespace qfzeta {

SurfaceRelator::SurfaceRelator(const GroupDefinition& group) : genus_(group.genus()) {
  if (group.kind() != GroupKind::surface || genus_ < 2) {
    throw group_error("NotSurface", "Dehn reduction needs a surface group of genus >= 2");
  }
  const auto order = group.relator_order();
  for (int i = 0; i < genus_; ++i) {
    const int a = order[2 * i], b = order[2 * i + 1];
    relator_.push_back(make_letter(a, false));
    relator_.push_back(make_letter(b, false));
    relator_.push_back(make_letter(a, true));
    relator_.push_back(make_letter(b, true));
  }
  const std::size_t n = relator_.size();
  const Word inv = inverse(relator_);
  next_[0].assign(n, 0);
  next_[1].assign(n, 0);
  prev_[0].assign(n, 0);
  prev_[1].assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    next_[0][relator_[i]] = relator_[(i + 1) % n];
    next_[1][inv[i]] = inv[(i + 1) % n];
    prev_[0][relator_[(i + 1) % n]] = relator_[i];
    prev_[1][inv[(i + 1) % n]] = inv[i];
  }
}

void SurfaceRelator::complement_inverse(int side, Letter last, std::size_t run_length,
                                        Word& out) const {
  // u v is a rotation of the relator, so u = v^{-1}.
  const std::size_t m = relator_length() - run_length;
  Word v(m);
  Letter x = last;
  for (std::size_t i = 0; i < m; ++i) {
    x = next_[side][x];
    v[i] = x;
  }
  out.clear();
  for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(inverse_letter(*it));
}

Word SurfaceRelator::dehn_reduce(const Word& w) const {
  const std::size_t limit = 2 * static_cast<std::size_t>(genus_) + 1;
  Word out;
  std::vector<std::uint8_t> run0, run1;
  out.reserve(w.size());
  run0.reserve(w.size());
  run1.reserve(w.size());
  Word pending(w.rbegin(), w.rend());
  Word replacement;

  while (!pending.empty()) {
    const Letter y = pending.back();
    pending.pop_back();
    if (!out.empty() && out.back() == inverse_letter(y)) {
      out.pop_back();
      run0.pop_back();
      run1.pop_back();
      continue;
    }
    std::uint8_t r0 = 1, r1 = 1;
    if (!out.empty()) {
      if (next_[0][out.back()] == y) r0 = static_cast<std::uint8_t>(run0.back() + 1);
      if (next_[1][out.back()] == y) r1 = static_cast<std::uint8_t>(run1.back() + 1);
    }
    out.push_back(y);
    run0.push_back(r0);
    run1.push_back(r1);

    const int side = r0 >= limit ? 0 : (r1 >= limit ? 1 : -1);
    if (side < 0) continue;
    complement_inverse(side, y, limit, replacement);
    out.resize(out.size() - limit);
    run0.resize(out.size());
    run1.resize(out.size());
    pending.insert(pending.end(), replacement.rbegin(), replacement.rend());
  }
  return out;
}

Word SurfaceRelator::cyclic_dehn_reduce(const Word& w) const {
  const std::size_t limit = 2 * static_cast<std::size_t>(genus_) + 1;
  Word cur = cyclically_reduce(dehn_reduce(w));
  for (;;) {
    const std::size_t n = cur.size();
    if (n < limit) return cur;
    // Look for a run of length `limit` in the doubled word; it is a genuine
    // cyclic subword because limit <= n.
    std::size_t start = n;
    for (int side = 0; side < 2 && start == n; ++side) {
      std::size_t run = 1;
      for (std::size_t j = 1; j < 2 * n; ++j) {
        run = next_[side][cur[(j - 1) % n]] == cur[j % n] ? run + 1 : 1;
        if (run >= limit) {
          start = (j + 1 - limit) % n;
          break;
        }
      }
    }
    if (start == n) return cur;
    cur = cyclically_reduce(dehn_reduce(rotate(cur, start)));
  }
}

std::size_t SurfaceRelator::max_run(const Word& w) const noexcept {
  std::size_t best = w.empty() ? 0 : 1;
  for (int side = 0; side < 2; ++side) {
    std::size_t run = 1;
    for (std::size_t j = 1; j < w.size(); ++j) {
      run = next_[side][w[j - 1]] == w[j] ? run + 1 : 1;
      best = std::max(best, run);
    }
  }
  return best;
}

std::size_t SurfaceRelator::max_cyclic_run(const Word& w) const noexcept {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  std::size_t best = 1;
  for (int side = 0; side < 2; ++side) {
    std::size_t run = 1;
    for (std::size_t j = 1; j < 2 * n; ++j) {
      run = next_[side][w[(j - 1) % n]] == w[j % n] ? run + 1 : 1;
      best = std::max(best, run);
    }
  }
  return std::min(best, n);
}

}  // namespace qfzeta
