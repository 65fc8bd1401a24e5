#include <doctest.h>

#include <cmath>
#include <random>

#include "qfzeta/errors.hpp"
#include "qfzeta/moebius.hpp"

using namespace qfzeta;

namespace {

Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

MoebiusMap random_map(std::mt19937_64& rng) {
  return MoebiusMap(random_complex(rng), random_complex(rng), random_complex(rng), random_complex(rng));
}

}  // namespace

TEST_CASE("construction normalises the determinant") {
  const MoebiusMap m(2.0, 0.0, 0.0, 8.0);
  CHECK(std::abs(m.determinant() - 1.0) < 1e-15);
  CHECK(std::abs(m(Complex(1.0, 1.0)) - Complex(0.25, 0.25)) < 1e-15);
  CHECK_THROWS_AS(MoebiusMap(1.0, 2.0, 2.0, 4.0), Error);
  try {
    MoebiusMap(1.0, 2.0, 2.0, 4.0);
  } catch (const Error& e) {
    CHECK(e.code() == "moebius.Singular");
  }
}

TEST_CASE("composition, inverse and sign") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const MoebiusMap a = random_map(rng), b = random_map(rng);
    const Complex z = random_complex(rng);
    CHECK(std::abs((a * b)(z) - a(b(z))) < 1e-9 * (1.0 + std::abs(a(b(z)))));
    CHECK((a * a.inverse()).is_identity(1e-10));
    const MoebiusMap neg(-a.a(), -a.b(), -a.c(), -a.d());
    CHECK(a.distance(neg) < 1e-15);
  }
}

TEST_CASE("classification") {
  CHECK(classify(MoebiusMap()) == Classification::identity);
  CHECK(classify(MoebiusMap(1.0, 1.0, 0.0, 1.0)) == Classification::parabolic);
  CHECK(classify(MoebiusMap(0.0, -1.0, 1.0, 0.0)) == Classification::elliptic);
  CHECK(classify(MoebiusMap(2.0, 1.0, 1.0, 1.0)) == Classification::loxodromic);
  CHECK(classify(MoebiusMap(Complex(1.0, 0.5), 0.0, 0.0, 1.0 / Complex(1.0, 0.5))) == Classification::loxodromic);
  CHECK_THROWS_AS(multiplier(MoebiusMap(1.0, 1.0, 0.0, 1.0)), Error);
}

TEST_CASE("multiplier of a trace 3 map") {
  const Multiplier m = multiplier(MoebiusMap(2.0, 1.0, 1.0, 1.0));
  CHECK(std::abs(m.lambda - (7.0 - 3.0 * std::sqrt(5.0)) / 2.0) < 1e-12);
  CHECK(std::abs(m.lambda) < 1.0);
}

TEST_CASE("multiplier of a diagonal map and of its inverse") {
  const Complex k(0.3, 0.4);
  const MoebiusMap m(std::sqrt(k), 0.0, 0.0, 1.0 / std::sqrt(k));
  CHECK(std::abs(multiplier(m).lambda - k) < 1e-14);
  CHECK(std::abs(multiplier(m.inverse()).lambda - k) < 1e-14);
  CHECK(std::abs(multiplier_from_trace_squared(m.trace() * m.trace()) - k) < 1e-14);
}

TEST_CASE("multiplier is a conjugacy invariant") {
  std::mt19937_64 rng(11);
  const MoebiusMap g({1.3, 0.4}, {0.7, -0.2}, {-0.5, 0.9}, {1.1, 0.3});
  const Complex base = multiplier(g).lambda;
  for (int k = 0; k < 100; ++k) {
    const MoebiusMap h = random_map(rng);
    CHECK(std::abs(multiplier(h * g * h.inverse()).lambda - base) < 1e-10);
  }
}

TEST_CASE("multiplier of the conjugate map is the conjugate multiplier") {
  const MoebiusMap g({1.3, 0.4}, {0.7, -0.2}, {-0.5, 0.9}, {1.1, 0.3});
  CHECK(multiplier(g.conj()).lambda == std::conj(multiplier(g).lambda));
}

TEST_CASE("fixed points") {
  const MoebiusMap m(3.0, 0.0, 0.0, 1.0 / 3.0);  // z -> 9 z
  const FixedPoints f = fixed_points(m);
  CHECK(f.attracting.is_infinity());
  CHECK(std::abs(f.repelling.value()) < 1e-15);

  const MoebiusMap g({1.3, 0.4}, {0.7, -0.2}, {-0.5, 0.9}, {1.1, 0.3});
  const FixedPoints p = fixed_points(g);
  for (const SpherePoint& q : {p.attracting, p.repelling}) {
    CHECK(g.apply(q).chordal_distance(q) < 1e-12);
  }
  // Iterates converge to the attracting point.
  SpherePoint z = Complex(0.123, -0.456);
  for (int k = 0; k < 200; ++k) z = g.apply(z);
  CHECK(z.chordal_distance(p.attracting) < 1e-8);
}

TEST_CASE("normalising map for three points") {
  const MoebiusMap m = map_to_zero_infinity_one(Complex(1.0, 2.0), Complex(-3.0, 0.5), Complex(0.0, -1.0));
  CHECK(m.apply(Complex(1.0, 2.0)).chordal_distance(Complex(0.0, 0.0)) < 1e-12);
  CHECK(m.apply(Complex(-3.0, 0.5)).chordal_distance(SpherePoint::infinity()) < 1e-12);
  CHECK(m.apply(Complex(0.0, -1.0)).chordal_distance(Complex(1.0, 0.0)) < 1e-12);
  const MoebiusMap n = map_to_zero_infinity_one(SpherePoint::infinity(), Complex(2.0), Complex(3.0));
  CHECK(n.apply(SpherePoint::infinity()).chordal_distance(Complex(0.0, 0.0)) < 1e-12);
  CHECK_THROWS_AS(map_to_zero_infinity_one(Complex(1.0), Complex(1.0), Complex(2.0)), Error);
}

TEST_CASE("integer powers commute with conjugation exactly") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const Complex z = random_complex(rng);
    for (int e : {0, 1, 2, 5, 13}) CHECK(ipow(std::conj(z), e) == std::conj(ipow(z, e)));
  }
  CHECK(ipow(Complex(0.0, 1.0), 4) == Complex(1.0, 0.0));
}

TEST_CASE("chordal distance") {
  const SpherePoint inf = SpherePoint::infinity();
  CHECK(inf.chordal_distance(inf) == 0.0);
  CHECK(std::abs(SpherePoint(Complex(0.0, 0.0)).chordal_distance(inf) - 2.0) < 1e-15);
  CHECK(std::abs(SpherePoint(Complex(1.0, 0.0)).chordal_distance(Complex(-1.0, 0.0)) - 2.0) < 1e-15);
}
