#pragma once

#include <vector>

#include "qfzeta/conjugacy.hpp"

namespace qfzeta {

struct SeriesValue {
  Complex value{0.0, 0.0};
  int truncation_length = 0;
  double tail_estimate = 0.0;  ///< heuristic; +inf when the increments do not decay
  std::size_t terms_used = 0;
  std::vector<double> increments;  ///< contribution of each word length 1..L
};

struct ProductValue {
  Complex log_value{0.0, 0.0};
  Complex value{1.0, 0.0};
  int L = 0;
  int M = 0;
  double tail_estimate = 0.0;  ///< estimate of |value - limit|, heuristic in L
  double log_tail = 0.0;       ///< same, on the log scale
  double m_tail = 0.0;         ///< rigorous part of log_tail from the m truncation
  std::size_t n_classes = 0;
  std::size_t n_primitive = 0;
  std::size_t factors = 0;
  std::vector<double> increments;  ///< sum of |log factor| per word length
};

struct ZetaOptions {
  int m_trunc = 64;          ///< largest m in prod_m (1 - lambda^(n+m))
  double m_cutoff = 1e-18;   ///< stop once |lambda^(n+m)| drops below this
  Tolerances tolerances{};
  double fuchsian_tolerance = 1e-8;  ///< allowed |Im lambda| / |lambda| for Z(s)
};

/// Lengths below which no L-tail is extrapolated (the estimate is +inf):
/// the first few lengths are dominated by the generators themselves.
inline constexpr int kMinTailLength = 4;

/// Tail of a series from its per-length increments: twice the geometric
/// extrapolation with the largest of the last one- and two-step ratios.
/// +inf for fewer than kMinTailLength increments or non-decaying ones.
double geometric_tail(const std::vector<double>& increments);

/// sum over all classes with length <= L of |lambda|^n. Throws zeta.DomainError for n < 2.
SeriesValue multiplier_series(const GroupDefinition& group, int n, int max_length,
                              const ZetaOptions& options = {});
SeriesValue multiplier_series(const std::vector<ConjugacyClass>& classes, int n, int max_length);

/// log F(n) = sum over primitive classes, m = 0..M, of log(1 - lambda^(n+m)).
/// Throws zeta.DomainError for n < 2 or |lambda^n| >= 1.
ProductValue F_function(const GroupDefinition& group, int n, int max_length,
                        const ZetaOptions& options = {});
ProductValue F_function(const std::vector<ConjugacyClass>& classes, int n, int max_length,
                        const ZetaOptions& options = {});

/// Z(s) with real s > 1 on a Fuchsian group. Integer s uses exactly the
/// arithmetic of F_function. Throws zeta.NotFuchsian, zeta.DomainError.
ProductValue selberg_Z(const GroupDefinition& group, double s, int max_length,
                       const ZetaOptions& options = {});
ProductValue selberg_Z(const std::vector<ConjugacyClass>& classes, double s, int max_length,
                       const ZetaOptions& options = {});

/// Every truncation L = 1..max_length from one pass over the classes.
/// Entry L-1 equals the corresponding single-truncation call bit for bit.
struct ZetaLadder {
  std::vector<SeriesValue> series;  ///< multiplier series at n
  std::vector<ProductValue> F;      ///< F(n)
  std::vector<ProductValue> Z;      ///< Z(n); empty unless requested
  /// max |Re(F factor) - Z factor| over all factors, when Z is requested.
  double max_factor_difference = 0.0;
};
ZetaLadder zeta_ladder(const GroupDefinition& group, int n, int max_length, bool with_Z,
                       const ZetaOptions& options = {});

}  // namespace qfzeta
