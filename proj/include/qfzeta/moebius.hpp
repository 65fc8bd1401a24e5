#pragma once

#include <complex>
#include <iosfwd>
#include <string>

namespace qfzeta {

using Complex = std::complex<double>;

/// Numerical thresholds shared across the library. Defaults follow the
/// behaviour documented in the README; every field can be overridden.
struct Tolerances {
  double identity = 1e-10;         ///< entrywise test for +-Id
  double relator = 1e-8;           ///< relator evaluation in group files
  double loxodromic_band = 1e-12;  ///< real band around [0,4] rejected as non-loxodromic
  double determinant = 1e-12;      ///< |det - 1| after normalisation
};

/// A point of the Riemann sphere.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(Complex z) : z_(z) {}  // NOLINT: implicit from finite values is intended
  static SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinity() const noexcept { return infinite_; }
  Complex value() const noexcept { return z_; }

  /// Chordal distance on the unit sphere; well defined at infinity.
  double chordal_distance(const SpherePoint& other) const;

 private:
  Complex z_{0.0, 0.0};
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const SpherePoint& p);

/// Projective 2x2 complex matrix z -> (az+b)/(cz+d), stored with ad - bc = 1.
/// The matrix and its negative describe the same map; comparisons are always
/// made up to that sign.
class MoebiusMap {
 public:
  MoebiusMap() = default;  // identity

  /// Rescales by a square root of the determinant. Throws moebius.Singular if
  /// the determinant vanishes.
  MoebiusMap(Complex a, Complex b, Complex c, Complex d);

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }

  Complex trace() const noexcept { return a_ + d_; }
  Complex determinant() const noexcept { return a_ * d_ - b_ * c_; }

  MoebiusMap inverse() const noexcept;
  /// Entrywise complex conjugate, i.e. the element of the conjugate group.
  MoebiusMap conj() const noexcept;

  /// Finite-point evaluation; the caller guarantees cz + d != 0.
  Complex operator()(Complex z) const noexcept { return (a_ * z + b_) / (c_ * z + d_); }
  SpherePoint apply(const SpherePoint& p) const noexcept;

  /// gamma'(z) = 1/(cz+d)^2.
  Complex derivative(Complex z) const noexcept {
    const Complex den = c_ * z + d_;
    return 1.0 / (den * den);
  }

  /// max entrywise deviation from the other map, minimised over the sign.
  double distance(const MoebiusMap& other) const noexcept;
  bool is_identity(double tol) const noexcept;

  /// Point g(j) of upper half-space H^3 as (x, y, t) with t > 0.
  void upper_space_point(double& x, double& y, double& t) const noexcept;

  friend MoebiusMap operator*(const MoebiusMap& lhs, const MoebiusMap& rhs);

 private:
  struct Raw {};
  MoebiusMap(Raw, Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {}

  Complex a_{1.0, 0.0};
  Complex b_{0.0, 0.0};
  Complex c_{0.0, 0.0};
  Complex d_{1.0, 0.0};
};

std::ostream& operator<<(std::ostream& os, const MoebiusMap& m);

/// z^k for integer k >= 0 by binary powering. Commutes exactly with complex
/// conjugation, which std::pow does not guarantee.
Complex ipow(Complex z, int k) noexcept;

enum class Classification { identity, parabolic, elliptic, loxodromic };

std::string to_string(Classification c);

Classification classify(const MoebiusMap& m, const Tolerances& tol = {});

struct Multiplier {
  Complex lambda;  ///< 0 < |lambda| < 1
  Complex trace;   ///< trace of the normalised matrix (sign as stored)
};

/// Root of lambda^2 - (t^2 - 2) lambda + 1 = 0 inside the unit disc.
/// Throws moebius.NotLoxodromic unless classify(m) == loxodromic.
Multiplier multiplier(const MoebiusMap& m, const Tolerances& tol = {});

/// Same quadratic, from a precomputed squared trace. No classification check
/// beyond rejecting |lambda| == 1.
Complex multiplier_from_trace_squared(Complex trace_squared);

struct FixedPoints {
  SpherePoint attracting;
  SpherePoint repelling;
};

/// Throws moebius.NotLoxodromic for non-loxodromic input.
FixedPoints fixed_points(const MoebiusMap& m, const Tolerances& tol = {});

/// The unique Moebius map sending p, q, r to 0, infinity, 1.
/// Throws moebius.DegenerateMarking when the points are not distinct.
MoebiusMap map_to_zero_infinity_one(const SpherePoint& p, const SpherePoint& q,
                                    const SpherePoint& r, double tol = 1e-10);

}  // namespace qfzeta
