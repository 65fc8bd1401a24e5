#include "qfzeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfzeta/errors.hpp"

namespace qfzeta {

double geometric_tail(const std::vector<double>& inc) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t L = inc.size();
  if (L < static_cast<std::size_t>(kMinTailLength)) return inf;
  const double a = inc[L - 3], b = inc[L - 2], c = inc[L - 1];
  if (b == 0.0 && c == 0.0) return a == 0.0 ? 0.0 : inf;
  if (a <= 0.0 || b <= 0.0) return inf;
  // Parity effects make one-step ratios oscillate; the two-step ratio smooths
  // them, the one-step ratios guard against a late upturn.
  const double r = std::max({std::sqrt(c / a), c / b, b / a});
  if (!(r < 1.0)) return inf;
  return 2.0 * std::max(c, b * r) * r / (1.0 - r);
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_n(int n) {
  if (n < 2) throw zeta_error("DomainError", "n must be an integer >= 2, got " + std::to_string(n));
}

void check_s(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) throw zeta_error("DomainError", "Z(s) needs real s > 1");
}

void check_length(int L) {
  if (L < 0) throw group_error("BadLength", "word length budget must be >= 0");
}

std::vector<double> prefix(const std::vector<double>& v, int L) {
  return {v.begin(), v.begin() + std::min<std::ptrdiff_t>(L, static_cast<std::ptrdiff_t>(v.size()))};
}

class SeriesAccumulator {
 public:
  SeriesAccumulator(int n, int L) : n_(n), inc_(static_cast<std::size_t>(L), 0.0) {}

  void add(const ConjugacyClass& c) {
    const double t = std::pow(std::abs(c.multiplier.lambda), n_);
    value_ += t;
    inc_[static_cast<std::size_t>(c.word_length) - 1] += t;
    ++terms_;
  }

  SeriesValue snapshot(int L) const {
    SeriesValue v;
    v.value = value_;
    v.truncation_length = L;
    v.terms_used = terms_;
    v.increments = prefix(inc_, L);
    v.tail_estimate = geometric_tail(v.increments) + 4.0 * kEps * value_;
    return v;
  }

 private:
  int n_;
  double value_ = 0.0;
  std::size_t terms_ = 0;
  std::vector<double> inc_;
};

// Running sum of log prod_m (1 - lambda^(s+m)) over primitive classes.
class ProductAccumulator {
 public:
  ProductAccumulator(int L, const ZetaOptions& opt) : opt_(opt), inc_(static_cast<std::size_t>(L), 0.0) {}

  // lambda^s is supplied by the caller; later powers multiply by `step`.
  // on_factor(log factor) sees every factor in summation order.
  template <class OnFactor>
  void add(const ConjugacyClass& c, Complex first_power, Complex step, OnFactor&& on_factor) {
    ++classes_;
    if (!c.primitive) return;
    ++primitive_;
    Complex p = first_power;
    if (!(std::abs(p) < 1.0)) {
      throw zeta_error("DomainError", "|lambda^n| >= 1 for a class of length " +
                                          std::to_string(c.word_length));
    }
    Complex sum{0.0, 0.0};
    double abs_sum = 0.0;
    for (int m = 0; m <= opt_.m_trunc; ++m) {
      if (std::norm(p) < opt_.m_cutoff * opt_.m_cutoff) break;
      const Complex t = std::log(1.0 - p);
      on_factor(t);
      sum += t;
      abs_sum += std::abs(t);
      ++factors_;
      p *= step;
    }
    // Omitted factors: |log(1 - z)| <= |z| / (1 - |z|), geometric in m.
    const double ap = std::abs(p);
    const double omitted = ap / ((1.0 - std::abs(step)) * (1.0 - ap));
    m_tail_ += omitted;
    log_value_ += sum;
    inc_[static_cast<std::size_t>(c.word_length) - 1] += abs_sum + omitted;
  }
  void add(const ConjugacyClass& c, Complex first_power, Complex step) {
    add(c, first_power, step, [](Complex) {});
  }

  // real: Z(s) is real by definition, so the rounding-level imaginary part is dropped.
  ProductValue snapshot(int L, bool real) const {
    ProductValue v;
    v.log_value = real ? Complex(log_value_.real(), 0.0) : log_value_;
    v.value = std::exp(v.log_value);
    v.L = L;
    v.M = opt_.m_trunc;
    v.m_tail = m_tail_;
    v.n_classes = classes_;
    v.n_primitive = primitive_;
    v.factors = factors_;
    v.increments = prefix(inc_, L);
    v.log_tail = m_tail_ + geometric_tail(v.increments);
    v.tail_estimate = std::abs(v.value) * (std::expm1(v.log_tail) + 4.0 * kEps);
    if (std::isnan(v.tail_estimate)) v.tail_estimate = std::numeric_limits<double>::infinity();
    return v;
  }

 private:
  const ZetaOptions& opt_;
  Complex log_value_{0.0, 0.0};
  double m_tail_ = 0.0;
  std::size_t classes_ = 0, primitive_ = 0, factors_ = 0;
  std::vector<double> inc_;
};

bool integral(double s) { return std::floor(s) == s && std::abs(s) < 1e6; }

// Multiplier of a Fuchsian class; real and positive up to the tolerance.
double fuchsian_lambda(const ConjugacyClass& c, const ZetaOptions& opt) {
  const Complex lam = c.multiplier.lambda;
  if (std::abs(lam.imag()) > opt.fuchsian_tolerance * std::abs(lam) || lam.real() <= 0.0) {
    throw zeta_error("NotFuchsian", "multiplier of a class of length " +
                                        std::to_string(c.word_length) + " is not real and positive");
  }
  return lam.real();
}

// Integer s reuses the complex arithmetic of F, so Z(n) and F(n) agree
// factor by factor on real multipliers.
Complex z_first_power(double lam, double s) {
  if (integral(s)) return ipow(Complex(lam, 0.0), static_cast<int>(s));
  return {std::pow(lam, s), 0.0};
}

template <class Visit>
void for_each_up_to(const std::vector<ConjugacyClass>& classes, int L, Visit&& visit) {
  for (const auto& c : classes) {
    if (c.word_length >= 1 && c.word_length <= L) visit(c);
  }
}

}  // namespace

SeriesValue multiplier_series(const std::vector<ConjugacyClass>& classes, int n, int max_length) {
  check_n(n);
  check_length(max_length);
  SeriesAccumulator acc(n, max_length);
  for_each_up_to(classes, max_length, [&](const ConjugacyClass& c) { acc.add(c); });
  return acc.snapshot(max_length);
}

SeriesValue multiplier_series(const GroupDefinition& group, int n, int max_length,
                              const ZetaOptions& options) {
  check_n(n);
  check_length(max_length);
  SeriesAccumulator acc(n, max_length);
  for_each_conjugacy_class(
      group, max_length, [&](const ConjugacyClass& c) { acc.add(c); }, options.tolerances);
  return acc.snapshot(max_length);
}

ProductValue F_function(const std::vector<ConjugacyClass>& classes, int n, int max_length,
                        const ZetaOptions& options) {
  check_n(n);
  check_length(max_length);
  ProductAccumulator acc(max_length, options);
  for_each_up_to(classes, max_length, [&](const ConjugacyClass& c) {
    acc.add(c, ipow(c.multiplier.lambda, n), c.multiplier.lambda);
  });
  return acc.snapshot(max_length, false);
}

ProductValue F_function(const GroupDefinition& group, int n, int max_length,
                        const ZetaOptions& options) {
  check_n(n);
  check_length(max_length);
  ProductAccumulator acc(max_length, options);
  for_each_conjugacy_class(
      group, max_length,
      [&](const ConjugacyClass& c) { acc.add(c, ipow(c.multiplier.lambda, n), c.multiplier.lambda); },
      options.tolerances);
  return acc.snapshot(max_length, false);
}

ProductValue selberg_Z(const std::vector<ConjugacyClass>& classes, double s, int max_length,
                       const ZetaOptions& options) {
  check_s(s);
  check_length(max_length);
  ProductAccumulator acc(max_length, options);
  for_each_up_to(classes, max_length, [&](const ConjugacyClass& c) {
    const double lam = fuchsian_lambda(c, options);
    acc.add(c, z_first_power(lam, s), Complex(lam, 0.0));
  });
  return acc.snapshot(max_length, true);
}

ProductValue selberg_Z(const GroupDefinition& group, double s, int max_length,
                       const ZetaOptions& options) {
  check_s(s);
  check_length(max_length);
  ProductAccumulator acc(max_length, options);
  for_each_conjugacy_class(
      group, max_length,
      [&](const ConjugacyClass& c) {
        const double lam = fuchsian_lambda(c, options);
        acc.add(c, z_first_power(lam, s), Complex(lam, 0.0));
      },
      options.tolerances);
  return acc.snapshot(max_length, true);
}

ZetaLadder zeta_ladder(const GroupDefinition& group, int n, int max_length, bool with_Z,
                       const ZetaOptions& options) {
  check_n(n);
  check_length(max_length);
  SeriesAccumulator series(n, max_length);
  ProductAccumulator f(max_length, options), z(max_length, options);
  ZetaLadder out;
  int done = 0;  // truncations already recorded
  auto record_until = [&](int L) {
    for (; done < L; ++done) {
      out.series.push_back(series.snapshot(done + 1));
      out.F.push_back(f.snapshot(done + 1, false));
      if (with_Z) out.Z.push_back(z.snapshot(done + 1, true));
    }
  };
  std::vector<Complex> factors;
  for_each_conjugacy_class(
      group, max_length,
      [&](const ConjugacyClass& c) {
        record_until(c.word_length - 1);
        series.add(c);
        factors.clear();
        f.add(c, ipow(c.multiplier.lambda, n), c.multiplier.lambda,
              [&](Complex t) { factors.push_back(t); });
        if (!with_Z) return;
        const double lam = fuchsian_lambda(c, options);
        std::size_t k = 0;
        z.add(c, z_first_power(lam, n), Complex(lam, 0.0), [&](Complex t) {
          const double d = k < factors.size() ? std::abs(factors[k].real() - t.real())
                                               : std::numeric_limits<double>::infinity();
          out.max_factor_difference = std::max(out.max_factor_difference, d);
          ++k;
        });
        if (k != factors.size()) out.max_factor_difference = std::numeric_limits<double>::infinity();
      },
      options.tolerances);
  record_until(max_length);
  return out;
}

}  // namespace qfzeta
