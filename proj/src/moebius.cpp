#include "qfzeta/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "qfzeta/errors.hpp"

namespace qfzeta {

namespace {

MoebiusMap from_projective_normal(Complex a, Complex b, Complex c, Complex d) {
  return MoebiusMap(a, b, c, d);
}

}  // namespace

double SpherePoint::chordal_distance(const SpherePoint& other) const {
  if (infinite_ && other.infinite_) return 0.0;
  if (infinite_) return 2.0 / std::sqrt(1.0 + std::norm(other.z_));
  if (other.infinite_) return 2.0 / std::sqrt(1.0 + std::norm(z_));
  return 2.0 * std::abs(z_ - other.z_) /
         std::sqrt((1.0 + std::norm(z_)) * (1.0 + std::norm(other.z_)));
}

std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
  if (p.is_infinity()) return os << "inf";
  return os << p.value();
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  // ad - bc cancels catastrophically for long words; below this noise level
  // the determinant carries no information and the entries are kept.
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c));
  const double drift = std::abs(det - 1.0);
  if (!std::isfinite(noise) || !std::isfinite(drift)) {
    throw moebius_error("Singular", "Moebius matrix has non-finite entries");
  }
  if (drift <= noise) {
    a_ = a;
    b_ = b;
    c_ = c;
    d_ = d;
    return;
  }
  if (!(std::abs(det) > noise)) {
    throw moebius_error("Singular", "Moebius matrix has zero determinant");
  }
  const Complex inv = 1.0 / std::sqrt(det);
  a_ = a * inv;
  b_ = b * inv;
  c_ = c * inv;
  d_ = d * inv;
}

MoebiusMap MoebiusMap::inverse() const noexcept { return MoebiusMap(Raw{}, d_, -b_, -c_, a_); }

MoebiusMap MoebiusMap::conj() const noexcept {
  return MoebiusMap(Raw{}, std::conj(a_), std::conj(b_), std::conj(c_), std::conj(d_));
}

SpherePoint MoebiusMap::apply(const SpherePoint& p) const noexcept {
  if (p.is_infinity()) {
    if (c_ == Complex(0.0, 0.0)) return SpherePoint::infinity();
    return SpherePoint(a_ / c_);
  }
  const Complex den = c_ * p.value() + d_;
  if (den == Complex(0.0, 0.0)) return SpherePoint::infinity();
  return SpherePoint((a_ * p.value() + b_) / den);
}

double MoebiusMap::distance(const MoebiusMap& o) const noexcept {
  const double plus = std::max({std::norm(a_ - o.a_), std::norm(b_ - o.b_), std::norm(c_ - o.c_),
                                std::norm(d_ - o.d_)});
  const double minus = std::max({std::norm(a_ + o.a_), std::norm(b_ + o.b_), std::norm(c_ + o.c_),
                                 std::norm(d_ + o.d_)});
  return std::sqrt(std::min(plus, minus));
}

bool MoebiusMap::is_identity(double tol) const noexcept {
  return distance(MoebiusMap{}) <= tol;
}

void MoebiusMap::upper_space_point(double& x, double& y, double& t) const noexcept {
  const double s = std::norm(c_) + std::norm(d_);
  const Complex w = (a_ * std::conj(c_) + b_ * std::conj(d_)) / s;
  x = w.real();
  y = w.imag();
  t = 1.0 / s;
}

MoebiusMap operator*(const MoebiusMap& l, const MoebiusMap& r) {
  const Complex a = l.a_ * r.a_ + l.b_ * r.c_;
  const Complex b = l.a_ * r.b_ + l.b_ * r.d_;
  const Complex c = l.c_ * r.a_ + l.d_ * r.c_;
  const Complex d = l.c_ * r.b_ + l.d_ * r.d_;
  return from_projective_normal(a, b, c, d);
}

std::ostream& operator<<(std::ostream& os, const MoebiusMap& m) {
  return os << "[[" << m.a() << ", " << m.b() << "], [" << m.c() << ", " << m.d() << "]]";
}

Complex ipow(Complex z, int k) noexcept {
  Complex result(1.0, 0.0);
  Complex base = z;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::identity:
      return "identity";
    case Classification::parabolic:
      return "parabolic";
    case Classification::elliptic:
      return "elliptic";
    case Classification::loxodromic:
      return "loxodromic";
  }
  return "unknown";
}

Classification classify(const MoebiusMap& m, const Tolerances& tol) {
  if (m.is_identity(tol.identity)) return Classification::identity;
  const Complex t2 = m.trace() * m.trace();
  const double band = tol.loxodromic_band;
  if (std::abs(t2 - 4.0) <= band) return Classification::parabolic;
  if (std::abs(t2.imag()) <= band && t2.real() >= -band && t2.real() <= 4.0 + band) {
    return Classification::elliptic;
  }
  return Classification::loxodromic;
}

Complex multiplier_from_trace_squared(Complex t2) {
  const Complex s = t2 - 2.0;
  const Complex root = std::sqrt(s * s - 4.0);
  // Take the large root without cancellation, then invert it.
  const Complex plus = s + root;
  const Complex minus = s - root;
  const Complex big = std::norm(plus) >= std::norm(minus) ? plus : minus;
  return 2.0 / big;
}

Multiplier multiplier(const MoebiusMap& m, const Tolerances& tol) {
  const Classification kind = classify(m, tol);
  if (kind != Classification::loxodromic) {
    throw moebius_error("NotLoxodromic", "multiplier requested for a " + to_string(kind) + " map");
  }
  const Complex t = m.trace();
  const Complex lambda = multiplier_from_trace_squared(t * t);
  if (!(std::abs(lambda) < 1.0)) {
    throw moebius_error("NotLoxodromic", "multiplier on the unit circle");
  }
  return {lambda, t};
}

FixedPoints fixed_points(const MoebiusMap& m, const Tolerances& tol) {
  const Classification kind = classify(m, tol);
  if (kind != Classification::loxodromic) {
    throw moebius_error("NotLoxodromic", "fixed points requested for a " + to_string(kind) + " map");
  }
  const Complex t = m.trace();
  const Complex root = std::sqrt(t * t - 4.0);
  const Complex mu1 = (t + root) / 2.0;
  const Complex mu2 = (t - root) / 2.0;

  // Eigenvector of eigenvalue mu is the fixed point; m'(z) = 1/mu^2 there.
  auto eigen_point = [&](Complex mu) {
    const Complex x1 = m.b(), y1 = mu - m.a();
    const Complex x2 = mu - m.d(), y2 = m.c();
    const bool first = std::norm(x1) + std::norm(y1) >= std::norm(x2) + std::norm(y2);
    const Complex x = first ? x1 : x2;
    const Complex y = first ? y1 : y2;
    if (y == Complex(0.0, 0.0)) return SpherePoint::infinity();
    return SpherePoint(x / y);
  };

  const SpherePoint p1 = eigen_point(mu1);
  const SpherePoint p2 = eigen_point(mu2);
  if (std::abs(mu1) > std::abs(mu2)) return {p1, p2};
  return {p2, p1};
}

MoebiusMap map_to_zero_infinity_one(const SpherePoint& p, const SpherePoint& q,
                                    const SpherePoint& r, double tol) {
  if (p.chordal_distance(q) <= tol || p.chordal_distance(r) <= tol ||
      q.chordal_distance(r) <= tol) {
    throw moebius_error("DegenerateMarking", "normalisation points are not distinct");
  }
  const Complex one(1.0, 0.0), zero(0.0, 0.0);
  if (p.is_infinity()) {
    const Complex rq = r.value() - q.value();
    return MoebiusMap(zero, rq, one, -q.value());
  }
  if (q.is_infinity()) {
    return MoebiusMap(one, -p.value(), zero, r.value() - p.value());
  }
  if (r.is_infinity()) {
    return MoebiusMap(one, -p.value(), one, -q.value());
  }
  const Complex rq = r.value() - q.value();
  const Complex rp = r.value() - p.value();
  return MoebiusMap(rq, -p.value() * rq, rp, -q.value() * rp);
}

}  // namespace qfzeta
