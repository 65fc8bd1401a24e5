#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qfzeta/bers.hpp"
#include "qfzeta/errors.hpp"
#include "support.hpp"

using namespace qfzeta;
using qfzeta::test::kPi;
using qfzeta::test::load;

namespace {

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "none";
}

BersOptions short_sums(int L) {
  BersOptions o;
  o.kernel_length = L;
  return o;
}

const GroupDefinition& trivial() {
  static const GroupDefinition g(GroupKind::free, 0, {});
  return g;
}

}  // namespace

TEST_CASE("Bers constant") {
  CHECK(bers_constant(2) == doctest::Approx(12.0 / kPi));
  CHECK(bers_constant(3) == doctest::Approx(16.0 * 5.0 / kPi));
}

TEST_CASE("trivial group kernel") {
  const KernelSum k = kernel(PoincareSum(trivial(), 0), 2, {0.0, 1.0}, {0.0, -1.0});
  CHECK(std::abs(k.value - 3.0 / (4.0 * kPi)) < 1e-15);
  CHECK(k.terms == 1);
}

TEST_CASE("cyclic group kernel against the direct sum") {
  // gamma = z -> 10^k z, so the term is 10^(2k) / (10^k z - w)^4 with z = i, w = -i.
  const GroupDefinition g = load("cyclic.grp");
  const int L = 5;
  Complex expected = 0.0;
  for (int k = -L; k <= L; ++k) {
    const double q = std::pow(10.0, k);
    expected += q * q / ipow(Complex(0.0, q) + Complex(0.0, 1.0), 4);
  }
  expected *= 12.0 / kPi;
  const KernelSum k = kernel(PoincareSum(g, L), 2, {0.0, 1.0}, {0.0, -1.0});
  CHECK(std::abs(k.value - expected) < 1e-14 * std::abs(expected));
  CHECK(k.terms == 2 * L + 1);
  CHECK(k.increments.size() == L + 1);
}

TEST_CASE("kernel symmetry and conjugation") {
  for (const char* name : {"schottky.grp", "schottky-complex.grp", "octagon-bent.grp"}) {
    const PoincareSum s(load(name), 5);
    const PoincareSum c = s.conjugated();
    const Complex z(0.3, -4.0), w(-0.2, 5.0);
    const KernelSum a = kernel(s, 2, z, w), b = kernel(s, 2, w, z);
    CHECK(std::abs(a.value - b.value) <= 1e-12 * std::abs(a.value));
    CHECK(kernel(c, 2, std::conj(z), std::conj(w)).value == std::conj(a.value));
  }
}

TEST_CASE("side checks") {
  const GroupDefinition g = load("octagon.grp");
  // K_minus takes z in the upper and w in the lower half-plane, K_plus the reverse.
  CHECK(error_code([&] { kernel(g, 2, {0.0, 1.0}, {0.0, -1.0}, Side::minus, 3); }) == "none");
  CHECK(error_code([&] { kernel(g, 2, {0.0, -1.0}, {0.0, 1.0}, Side::minus, 3); }) == "bers.BadPoint");
  CHECK(error_code([&] { kernel(g, 2, {0.0, -1.0}, {0.0, 1.0}, Side::plus, 3); }) == "none");
  CHECK(error_code([&] { kernel(g, 2, {0.0, 1.0}, {0.0, -1.0}, Side::plus, 3); }) == "bers.BadPoint");
  CHECK(error_code([&] { kernel(g, 2, {0.5, 0.0}, {0.0, 1.0}, Side::plus, 3); }) == "bers.BadPoint");
}

TEST_CASE("Fuchsian frames") {
  const GroupDefinition g = load("octagon.grp");
  auto f = fuchsian_frame(g);
  REQUIRE(f);
  CHECK(f->h.is_identity(0.0));
  const MoebiusMap h({1.0, 0.0}, {0.3, 0.2}, {0.0, 0.15}, {1.0, 0.0});
  const GroupDefinition moved = g.conjugated_by(h);
  f = fuchsian_frame(moved);
  REQUIRE(f);
  CHECK(f->fuchsian.is_real(1e-12));
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    const MoebiusMap back = f->h * f->fuchsian.generators()[i].map * f->h.inverse();
    CHECK(back.distance(moved.generators()[i].map) < 1e-9);
  }
  CHECK(!fuchsian_frame(load("octagon-bent.grp")));
  CHECK(!fuchsian_frame(load("schottky-complex.grp")));
}

TEST_CASE("workspace basics") {
  const BersWorkspace ws(load("octagon.grp"), short_sums(3));
  CHECK(ws.dimension(2) == 3);
  CHECK(ws.dimension(3) == 5);
  CHECK(ws.has_quadrature());
  CHECK(ws.side_of({0.0, 2.0}) == Side::plus);
  CHECK(ws.side_of({0.0, -2.0}) == Side::minus);
  CHECK(ws.center(Side::minus) == Complex(0.0, -1.0));
  CHECK(BersWorkspace(load("schottky.grp")).dimension(2) == 0);
  CHECK(!BersWorkspace(load("octagon-bent.grp")).has_frame());
  const BersWorkspace t(trivial());
  CHECK(t.has_quadrature());
  CHECK(t.polygon() == nullptr);
}

TEST_CASE("default points and collocation points") {
  const BersWorkspace ws(load("octagon.grp"), short_sums(3));
  const std::vector<Complex> p = default_points(ws, Side::minus, 5);
  REQUIRE(p.size() == 5);
  CHECK(p[0] == Complex(0.0, -1.0));
  for (Complex z : p) CHECK(z.imag() == -1.0);
  CHECK(collocation_points(ws, Side::plus, 3, 0) == default_points(ws, Side::plus, 3));
  const auto a = collocation_points(ws, Side::plus, 3, 2), b = collocation_points(ws, Side::plus, 3, 2);
  CHECK(a == b);
  CHECK(a != collocation_points(ws, Side::plus, 3, 3));
  for (Complex z : a) CHECK(z.imag() > 0.0);
}

TEST_CASE("theta basis and Bers dual reproduce the kernel at the samples") {
  const BersWorkspace ws(load("octagon.grp"), short_sums(4));
  const DifferentialBasis basis = theta_basis(ws, 2, default_points(ws, Side::minus, 3));
  CHECK(basis.size() == 3);
  CHECK(basis.side() == Side::plus);
  CHECK(basis.condition_number >= 1.0);
  CHECK(basis.condition_number < 1e3);
  const std::vector<Complex> samples = collocation_points(ws, Side::plus, 3, 0);
  const DifferentialBasis dual = bers_dual(ws, basis, samples);
  CHECK(dual.side() == Side::minus);
  const PoincareSum& sum = *ws.sum();
  for (Complex z : samples) {
    for (Complex w : {Complex(0.1, -0.9), Complex(-0.4, -1.6)}) {
      const Complex k = kernel(sum, 2, z, w).value;
      const Complex expansion = basis(z).transpose() * dual(w);
      CHECK(std::abs(k - expansion) < 1e-10 * std::abs(k));
    }
  }
  CHECK(error_code([&] { bers_dual(ws, basis, {samples[0], samples[0], samples[1]}); }) == "bers.SingularCollocation");
  CHECK(error_code([&] { theta_basis(ws, 2, {{0.0, 1.0}}); }) == "bers.BadPoint");
  CHECK(error_code([&] { theta_basis(ws, 1, {{0.0, -1.0}}); }) == "zeta.DomainError");
}

TEST_CASE("Schottky theta series are automorphic") {
  const BersWorkspace ws(load("schottky.grp"), short_sums(9));
  const DifferentialBasis basis = theta_basis(ws, 2, {{0.0, -1.0}, {0.4, -2.0}});
  std::vector<MoebiusMap> gens;
  for (const auto& g : ws.group().generators()) gens.push_back(g.map);
  const double r = automorphy_residual(basis, {{0.0, 1.0}, {0.3, 0.7}, {-0.2, 1.5}}, gens);
  CHECK(r < 1e-7);
}

TEST_CASE("octagon theta series are automorphic within the tail") {
  const BersWorkspace ws(load("octagon.grp"), short_sums(5));
  const DifferentialBasis basis = theta_basis(ws, 2, default_points(ws, Side::minus, 3));
  std::vector<MoebiusMap> gens;
  for (const auto& g : ws.group().generators()) gens.push_back(g.map);
  const std::vector<Complex> points{{0.0, 1.0}, {0.1, 0.8}};
  double tail = 0.0;
  for (const auto& m : gens)
    for (Complex z : points) tail = std::max({tail, basis.tail_estimate(z), basis.tail_estimate(m(z))});
  const double r = automorphy_residual(basis, points, gens);
  CHECK(std::isfinite(tail));
  CHECK(r < 0.05);
  CHECK(r <= 10.0 * tail);
}

TEST_CASE("period matrices transform by congruence") {
  const BersWorkspace ws(load("octagon.grp"), short_sums(3));
  const DifferentialBasis basis = theta_basis(ws, 2, default_points(ws, Side::minus, 3));
  const PeriodMatrix n = period_matrix(ws, basis);
  CHECK(n.hermitian_defect < 1e-12);
  CHECK(n.refinement_change < 1e-6);
  CHECK(n.determinant.real() > 0.0);
  Eigen::MatrixXcd m(3, 3);
  m << Complex(1.0, 0.2), 0.3, 0.0, Complex(0.0, -0.5), 2.0, 0.1, 0.4, 0.0, Complex(0.7, 0.7);
  const DifferentialBasis moved(basis.poincare_sum(), 2, Side::plus, basis.anchors(), m * basis.coefficients());
  const PeriodMatrix nm = period_matrix(ws, moved);
  const Eigen::MatrixXcd expected = m * n.entries * m.adjoint();
  CHECK((nm.entries - expected).norm() < 1e-10 * expected.norm());
}

TEST_CASE("kappa is similar under a change of basis") {
  // b = M a gives dual_b = M^-T dual_a, hence kappa_b = M kappa_a M^-1.
  const BersWorkspace ws(load("octagon.grp"), short_sums(3));
  const DifferentialBasis a = theta_basis(ws, 2, default_points(ws, Side::minus, 3));
  Eigen::MatrixXcd m(3, 3);
  m << Complex(1.0, 0.2), 0.3, 0.0, Complex(0.0, -0.5), 2.0, 0.1, 0.4, 0.0, Complex(0.7, 0.7);
  const DifferentialBasis b(a.poincare_sum(), 2, Side::plus, a.anchors(), m * a.coefficients());
  const std::vector<Complex> samples = collocation_points(ws, Side::plus, 3, 0);
  const KappaMatrix ka = kappa_matrix(ws, a, bers_dual(ws, a, samples));
  const KappaMatrix kb = kappa_matrix(ws, b, bers_dual(ws, b, samples));
  CHECK(ka.side == Side::minus);
  const Eigen::MatrixXcd expected = m * ka.entries * m.inverse();
  CHECK((kb.entries - expected).norm() < 1e-9 * expected.norm());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(ka.eigenvalues[i] - kb.eigenvalues[i]) < 1e-9);
    CHECK(ka.eigenvalues[i].real() > 0.0);
  }
  CHECK(std::abs(ka.direct_determinant - ka.determinant) < 1e-12);
}

TEST_CASE("reproducing formula on the trivial group") {
  const BersWorkspace ws(trivial());
  const Differential phi = [](Complex w) { return 1.0 / ipow(w + Complex(0.0, 2.0), 4); };
  const ReproducingCheck r = reproducing_check(ws, 2, phi, {{0.0, -1.0}, {0.5, -2.0}});
  CHECK(r.max_residual < 1e-5);
  const Complex alpha(0.3, 2.5);
  const Differential scaled = [&](Complex w) { return alpha * phi(w); };
  const ReproducingCheck s = reproducing_check(ws, 2, scaled, {{0.0, -1.0}, {0.5, -2.0}});
  CHECK(std::abs(s.max_residual - r.max_residual) < 1e-12);
  CHECK(error_code([&] { reproducing_check(ws, 2, phi, {{0.0, 1.0}}); }) == "bers.BadPoint");
  // The theta series of the trivial group with pole -2i is phi itself.
  const DifferentialBasis theta = theta_basis(ws, 2, {{0.0, -2.0}});
  const std::vector<ReproducingCheck> batch = reproducing_check(ws, theta, {{0.0, -1.0}, {0.5, -2.0}});
  REQUIRE(batch.size() == 1);
  CHECK(std::abs(batch[0].max_residual - r.max_residual) < 1e-12);
}

TEST_CASE("adjoint and intertwining identities") {
  for (const char* name : {"schottky.grp", "octagon.grp", "schottky-complex.grp"}) {
    const BersWorkspace ws(load(name), short_sums(4));
    const std::vector<Complex> zs{{0.1, -1.0}, {-0.4, -1.3}}, wp{{0.2, 1.1}, {-0.3, 0.8}};
    CHECK(intertwining_residual(ws, 2, zs, wp) == 0.0);
    CHECK(adjoint_residual(ws, 2, zs, wp) < 1e-12);
  }
}
