#include <doctest.h>

#include <cmath>

#include "qfzeta/domain.hpp"
#include "qfzeta/errors.hpp"
#include "qfzeta/moebius.hpp"
#include "support.hpp"

using namespace qfzeta;
using qfzeta::test::kPi;
using qfzeta::test::load;

TEST_CASE("disk coordinates") {
  const Complex c(0.3, 1.7), z(-1.2, 0.4);
  CHECK(std::abs(to_disk(c, c)) < 1e-15);
  CHECK(std::abs(from_disk(to_disk(z, c), c) - z) < 1e-14);
  CHECK(std::abs(to_disk(z, c)) < 1.0);
}

TEST_CASE("geodesic through two points") {
  const Geodesic v = geodesic_through({0.5, 1.0}, {0.5, 3.0});
  CHECK(v.vertical);
  CHECK(v.x == doctest::Approx(0.5));
  const Geodesic a = geodesic_through({-1.0, 1.0}, {1.0, 1.0});
  CHECK(!a.vertical);
  CHECK(a.x == doctest::Approx(0.0));
  CHECK(a.radius == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("octagon Dirichlet polygon") {
  const GroupDefinition g = load("octagon.grp");
  const FundamentalPolygon p = dirichlet_domain(g, {0.0, 1.0});
  CHECK(p.compact);
  REQUIRE(p.sides.size() == 8);
  CHECK(hyperbolic_area(p) == doctest::Approx(4.0 * kPi).epsilon(1e-9));
  CHECK(gauss_bonnet_area(p) == doctest::Approx(4.0 * kPi).epsilon(1e-9));
  for (double angle : interior_angles(p)) CHECK(angle == doctest::Approx(kPi / 4.0).epsilon(1e-9));
  for (std::size_t i = 0; i < p.sides.size(); ++i) {
    const PolygonSide& s = p.sides[i];
    REQUIRE(s.partner >= 0);
    const PolygonSide& t = p.sides[static_cast<std::size_t>(s.partner)];
    CHECK(t.partner == static_cast<int>(i));
    // The inverse of the side element carries the side onto its partner, reversing direction.
    const MoebiusMap back = s.element.inverse();
    CHECK(std::abs(back(s.start) - t.end) < 1e-7);
    CHECK(std::abs(back(s.end) - t.start) < 1e-7);
  }
}

TEST_CASE("area does not depend on the center") {
  const GroupDefinition g = load("octagon.grp");
  for (Complex c : {Complex{0.23, 1.1}, Complex{-0.31, 0.87}, Complex{0.05, 1.4}}) {
    const FundamentalPolygon p = dirichlet_domain(g, c);
    CHECK(hyperbolic_area(p) == doctest::Approx(4.0 * kPi).epsilon(1e-9));
    CHECK(std::abs(p.center - c) == 0.0);
  }
}

TEST_CASE("non-compact and bad input") {
  const FundamentalPolygon p = dirichlet_domain(load("schottky.grp"), {0.0, 1.0}, 3);
  CHECK(!p.compact);
  CHECK(std::isinf(hyperbolic_area(p)));
  CHECK_THROWS_AS(make_quadrature(p, 8), Error);
  CHECK_THROWS_AS(dirichlet_domain(load("octagon.grp"), {0.0, -1.0}), Error);
  CHECK_THROWS_AS(dirichlet_domain(load("octagon-bent.grp"), {0.0, 1.0}), Error);
  CHECK_THROWS_AS(make_quadrature(dirichlet_domain(load("octagon.grp"), {0.0, 1.0}), 0), Error);
}

TEST_CASE("quadrature rules") {
  const FundamentalPolygon p = dirichlet_domain(load("octagon.grp"), {0.0, 1.0});
  const QuadratureRule r = make_quadrature(p, 24);
  double area = 0.0;
  for (double w : r.weights) area += w;
  CHECK(area == doctest::Approx(4.0 * kPi).epsilon(1e-8));
  CHECK(r.euclidean_area() == doctest::Approx(euclidean_area(p)).epsilon(1e-7));
  for (std::size_t i = 0; i < r.nodes.size(); ++i) CHECK(r.inv_density[i] == doctest::Approx(std::norm(r.nodes[i].imag())));

  const QuadratureRule m = r.mirrored();
  CHECK(m.nodes[5] == std::conj(r.nodes[5]));
  CHECK(m.euclidean_area() == r.euclidean_area());

  // Pushforward by a map of H to itself keeps hyperbolic weights and moves Euclidean area.
  const MoebiusMap h(2.0, 1.0, 1.0, 1.0);
  const QuadratureRule t = r.transformed(h);
  CHECK(std::abs(t.nodes[7] - h(r.nodes[7])) < 1e-15);
  for (std::size_t i = 0; i < t.nodes.size(); i += 41) {
    CHECK(t.inv_density[i] == doctest::Approx(std::norm(t.nodes[i].imag())).epsilon(1e-10));
  }
}

TEST_CASE("half-plane rule against a closed form") {
  // Integral over H of |w + 2i|^-8 y^2 dx dy = pi / 3072.
  const Differential phi = [](Complex w) { return 1.0 / ipow(w + Complex(0.0, 2.0), 4); };
  const QuadratureRule r = half_plane_quadrature({0.0, 1.0}, 48);
  const Complex v = inner_product(phi, phi, 2, r);
  CHECK(std::abs(v - kPi / 3072.0) < 1e-10 * kPi / 3072.0);
}

TEST_CASE("inner product on a polygon") {
  const FundamentalPolygon p = dirichlet_domain(load("octagon.grp"), {0.0, 1.0});
  const Differential one = [](Complex) { return Complex(1.0, 0.0); };
  // With n = 1 the weight is 1 and the integral is the Euclidean area.
  CHECK(std::abs(inner_product(one, one, 1, p) - euclidean_area(p)) < 1e-6);
  const Differential f = [](Complex z) { return 1.0 / ipow(z + Complex(0.0, 1.0), 4); };
  const Differential g = [](Complex z) { return z / ipow(z + Complex(0.5, 1.0), 4); };
  const Complex fg = inner_product(f, g, 2, p), gf = inner_product(g, f, 2, p);
  CHECK(std::abs(fg - std::conj(gf)) < 1e-12);
  CHECK(inner_product(f, f, 2, p).real() > 0.0);
}
