#pragma once

#include <functional>
#include <vector>

#include "qfzeta/group_definition.hpp"
#include "qfzeta/word.hpp"

namespace qfzeta {

/// Geodesic of the upper half-plane: Re z = x (vertical) or |z - x| = radius.
struct Geodesic {
  bool vertical = false;
  double x = 0.0;
  double radius = 0.0;
};

struct PolygonSide {
  Complex start{0.0, 0.0};  ///< counter-clockwise order
  Complex end{0.0, 0.0};
  Geodesic geodesic;
  /// The side lies on the bisector of center and element(center); the inverse
  /// of element maps it onto side `partner`. Boundary sides of infinite-area
  /// polygons have no element and partner -1.
  Word word;
  MoebiusMap element;
  int partner = -1;
  bool boundary = false;
};

struct FundamentalPolygon {
  Complex center{0.0, 1.0};
  std::vector<Complex> vertices;  ///< in H, counter-clockwise; empty for the empty polygon
  std::vector<PolygonSide> sides;
  bool compact = true;            ///< false when sides reach the ideal boundary
  int enumeration_length = 0;     ///< word length budget that produced the polygon
};

struct DomainOptions {
  int max_search_length = 6;  ///< incremental search bound when no length is given
  double vertex_tol = 1e-9;   ///< Klein-chart distance at which vertices merge
  double side_tol = 1e-8;     ///< shorter sides are pruned
  double pairing_tol = 1e-7;  ///< endpoint mismatch allowed under side pairings
  int area_order = 24;        ///< quadrature order for the area test
  double area_tol = 1e-6;
  std::size_t element_cap = 2'000'000;
};

/// Dirichlet polygon of a Fuchsian group: the intersection over enumerated
/// elements (length <= L) of {z : d(z, center) <= d(z, g center)}. With
/// max_length < 0 the smallest passing length up to options.max_search_length
/// is used. Surface groups must close up with paired sides and area
/// 4 pi (g - 1); free groups skip both checks.
/// Throws domain.BadCenter, domain.IncompleteDomain, zeta.NotFuchsian.
FundamentalPolygon dirichlet_domain(const GroupDefinition& group, Complex center, int max_length = -1,
                                    const DomainOptions& options = {});

/// Poincare-disk coordinates centred at c: p = (z - c) / (z - conj c), and back.
Complex to_disk(Complex z, Complex c);
Complex from_disk(Complex p, Complex c);

/// Geodesic through two points of H.
Geodesic geodesic_through(Complex z1, Complex z2);

/// Hyperbolic quadrature on a compact polygon: the geodesic fan from its
/// center, each triangle with a tensor Gauss-Legendre rule of the given order.
struct QuadratureRule {
  std::vector<Complex> nodes;        ///< evaluation points
  std::vector<double> weights;       ///< hyperbolic area weights
  std::vector<double> inv_density;   ///< 1/rho at each node; y^2 on H
  int order = 0;

  /// Pushforward to g(region): nodes mapped by g, inv_density scaled by |g'|^2.
  QuadratureRule transformed(const MoebiusMap& g) const;
  /// Mirror image in the real axis, a rule for the lower half-plane.
  QuadratureRule mirrored() const;
  /// sum of weights * inv_density: the Euclidean area of the region.
  double euclidean_area() const;
};

/// Throws domain.IncompleteDomain for non-compact polygons, domain.BadOrder for order < 1.
QuadratureRule make_quadrature(const FundamentalPolygon& polygon, int order);

/// Rule for the whole upper half-plane in polar Poincare-disk coordinates
/// about `center`; integrands must decay like the weight y^(2n-2) at the
/// boundary. Used for the trivial group.
QuadratureRule half_plane_quadrature(Complex center, int order);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Quadrature area with a refinement check at twice the order; 0 for the
/// empty polygon, +inf for non-compact ones. Throws domain.QuadratureUnconverged.
double hyperbolic_area(const FundamentalPolygon& polygon, int order = 24, double tol = 1e-8);

/// Exact area from the angle sum, (k - 2) pi - sum of interior angles.
double gauss_bonnet_area(const FundamentalPolygon& polygon);
/// Exact Euclidean area in H from the boundary arcs (Green's formula).
double euclidean_area(const FundamentalPolygon& polygon);
/// Interior angles at the vertices, in vertex order.
std::vector<double> interior_angles(const FundamentalPolygon& polygon);

using Differential = std::function<Complex(Complex)>;

/// <phi, psi> = integral of phi conj(psi) rho^(1-n) d^2z, rho = y^-2 on H. With
/// a polygon: evaluated with `order` and checked against twice the order.
/// Throws domain.QuadratureUnconverged when the two differ by more than tol (relative).
Complex inner_product(const Differential& phi, const Differential& psi, int n,
                      const FundamentalPolygon& polygon, int order = 24, double tol = 1e-7);
/// Single-rule form without the refinement check.
Complex inner_product(const Differential& phi, const Differential& psi, int n,
                      const QuadratureRule& rule);

}  // namespace qfzeta
