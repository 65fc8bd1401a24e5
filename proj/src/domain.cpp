#include "qfzeta/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qfzeta/enumeration.hpp"
#include "qfzeta/errors.hpp"

namespace qfzeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kBoundary = -1;

struct Element {
  Word word;
  MoebiusMap map;
  Complex q;  // Poincare-disk image of g(center)
};

struct KVertex {
  Complex k;      // Klein chart point (as a 2-vector)
  int label;      // half-plane of the edge leaving this vertex
  bool ideal = false;
};

double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

Complex klein_to_disk(Complex k) { return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - std::norm(k)))); }

std::vector<Element> collect_elements(const GroupDefinition& group, Complex center, int L,
                                      const DomainOptions& opt) {
  std::vector<Element> out;
  auto push = [&](Word w, const MoebiusMap& m) {
    const Complex q = to_disk(m(center), center);
    if (std::abs(q) < opt.vertex_tol) {
      throw domain_error("BadCenter", "center is fixed by the element " + format_word(w, group));
    }
    out.push_back({std::move(w), m, q});
  };
  if (group.kind() == GroupKind::surface) {
    const ElementList list = enumerate_elements(group, L, {opt.element_cap});
    for (std::size_t i = 1; i < list.size(); ++i) push(list.word(i), list.map(i));
  } else {
    const auto maps = letter_maps(group);
    enumerate_words(group, L, [&](const Word& w) { push(w, evaluate(w, maps)); },
                    {opt.element_cap});
  }
  // Nearest images first: their bisectors cut the most, later ones are mostly skipped.
  std::stable_sort(out.begin(), out.end(), [](const Element& a, const Element& b) {
    return std::abs(a.q) < std::abs(b.q);
  });
  return out;
}

// Sutherland-Hodgman step for the half-plane dot(q, k) <= |q|^2.
std::vector<KVertex> clip(const std::vector<KVertex>& poly, Complex q, int label) {
  const double h = std::norm(q);
  const double eps = 1e-14;
  std::vector<KVertex> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const KVertex& P = poly[i];
    const KVertex& Q = poly[(i + 1) % n];
    const double fp = dot(q, P.k) - h, fq = dot(q, Q.k) - h;
    auto cut = [&] { return P.k + (Q.k - P.k) * (fp / (fp - fq)); };
    if (fp <= eps) {
      out.push_back(P);
      if (fq > eps) out.push_back({cut(), label});
    } else if (fq <= eps) {
      out.push_back({cut(), P.label});
    }
  }
  return out;
}

// Drops edges shorter than tol, keeping the label of the edge that follows.
void prune(std::vector<KVertex>& poly, double tol) {
  bool changed = true;
  while (changed && poly.size() > 2) {
    changed = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const std::size_t j = (i + 1) % poly.size();
      if (std::abs(poly[i].k - poly[j].k) < tol) {
        poly[i].label = poly[j].label;
        poly[i].ideal = poly[i].ideal || poly[j].ideal;
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
  }
}

// Roots t in [0, 1] of |P + t (Q - P)| = 1.
std::vector<double> circle_crossings(Complex P, Complex Q) {
  const Complex d = Q - P;
  const double a = std::norm(d), b = 2.0 * dot(P, d), c = std::norm(P) - 1.0;
  const double disc = b * b - 4.0 * a * c;
  std::vector<double> t;
  if (a == 0.0 || disc <= 0.0) return t;
  const double s = std::sqrt(disc);
  for (double r : {(-b - s) / (2.0 * a), (-b + s) / (2.0 * a)}) {
    if (r > 0.0 && r < 1.0) t.push_back(r);
  }
  return t;
}

// Intersection with the closed unit disk; arcs of the circle become boundary edges.
std::vector<KVertex> clip_to_disk(const std::vector<KVertex>& poly) {
  std::vector<KVertex> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const KVertex& P = poly[i];
    const KVertex& Q = poly[(i + 1) % n];
    const bool inP = std::norm(P.k) < 1.0, inQ = std::norm(Q.k) < 1.0;
    const auto t = circle_crossings(P.k, Q.k);
    auto at = [&](double s) { Complex x = P.k + s * (Q.k - P.k); return x / std::abs(x); };
    if (inP) {
      out.push_back(P);
      if (!inQ && !t.empty()) out.push_back({at(t.back()), kBoundary, true});
    } else if (inQ) {
      if (!t.empty()) out.push_back({at(t.front()), P.label, true});
    } else if (t.size() == 2) {
      out.push_back({at(t[0]), P.label, true});
      out.push_back({at(t[1]), kBoundary, true});
    }
  }
  return out;
}

// Disk automorphism sending v to 0.
Complex to_origin(Complex p, Complex v) { return (p - v) / (1.0 - std::conj(v) * p); }
Complex from_origin(Complex p, Complex v) { return (p + v) / (1.0 + std::conj(v) * p); }

double disk_distance(Complex a, Complex b) { return std::abs(a - b); }

}  // namespace

Complex to_disk(Complex z, Complex c) { return (z - c) / (z - std::conj(c)); }
Complex from_disk(Complex p, Complex c) { return (c - std::conj(c) * p) / (1.0 - p); }

Geodesic geodesic_through(Complex z1, Complex z2) {
  Geodesic g;
  const double dx = z2.real() - z1.real();
  if (std::abs(dx) <= 1e-12 * (1.0 + std::abs(z1) + std::abs(z2))) {
    g.vertical = true;
    g.x = 0.5 * (z1.real() + z2.real());
    return g;
  }
  g.x = (std::norm(z2) - std::norm(z1)) / (2.0 * dx);
  g.radius = std::abs(z1 - g.x);
  return g;
}

FundamentalPolygon dirichlet_domain(const GroupDefinition& group, Complex center, int max_length,
                                    const DomainOptions& opt) {
  if (!(center.imag() > 0.0) || !std::isfinite(center.real()) || !std::isfinite(center.imag())) {
    throw domain_error("BadCenter", "center must lie in the upper half-plane");
  }
  if (!group.is_real()) {
    throw domain_error("NotFuchsian", "Dirichlet polygons need real generators");
  }
  const bool surface = group.kind() == GroupKind::surface;
  const int lo = max_length < 0 ? 1 : max_length;
  const int hi = max_length < 0 ? opt.max_search_length : max_length;
  std::string last_failure = "no length tried";

  for (int L = lo; L <= hi; ++L) {
    const auto elements = collect_elements(group, center, L, opt);
    std::vector<KVertex> poly{{{2.0, 2.0}, kBoundary}, {{-2.0, 2.0}, kBoundary},
                              {{-2.0, -2.0}, kBoundary}, {{2.0, -2.0}, kBoundary}};
    for (std::size_t e = 0; e < elements.size() && !poly.empty(); ++e) {
      // Klein-chart bisector: dot(q, k) <= |q|^2 with q the disk image of g(center).
      const Complex q = elements[e].q;
      double reach = 0.0;
      for (const auto& v : poly) reach = std::max(reach, std::abs(v.k));
      if (std::abs(q) >= reach) break;  // sorted: no later bisector can cut
      poly = clip(poly, q, static_cast<int>(e));
      prune(poly, opt.vertex_tol);
    }
    poly = clip_to_disk(poly);
    prune(poly, opt.side_tol);

    FundamentalPolygon P;
    P.center = center;
    P.enumeration_length = L;
    P.compact = std::none_of(poly.begin(), poly.end(), [](const KVertex& v) {
      return v.ideal || v.label == kBoundary;
    });
    if (surface && !P.compact) {
      last_failure = "polygon reaches the ideal boundary at length " + std::to_string(L);
      continue;
    }
    const std::size_t n = poly.size();
    for (const auto& v : poly) {
      P.vertices.push_back(v.ideal ? Complex(from_disk(klein_to_disk(v.k), center).real(), 0.0)
                                   : from_disk(klein_to_disk(v.k), center));
    }
    for (std::size_t i = 0; i < n; ++i) {
      PolygonSide s;
      s.start = P.vertices[i];
      s.end = P.vertices[(i + 1) % n];
      s.boundary = poly[i].label == kBoundary;
      if (!s.boundary) {
        const Element& el = elements[static_cast<std::size_t>(poly[i].label)];
        s.word = el.word;
        s.element = el.map;
        s.geodesic = geodesic_through(s.start, s.end);
      }
      P.sides.push_back(std::move(s));
    }

    // Pair sides: the side of g goes to the side of g^-1.
    bool paired = true;
    for (std::size_t i = 0; i < n; ++i) {
      auto& s = P.sides[i];
      if (s.boundary) continue;
      const MoebiusMap inv = s.element.inverse();
      for (std::size_t j = 0; j < n; ++j) {
        if (P.sides[j].boundary || P.sides[j].element.distance(inv) > 1e-7) continue;
        const auto& t = P.sides[j];
        if (disk_distance(to_disk(inv(s.start), center), to_disk(t.end, center)) <= opt.pairing_tol &&
            disk_distance(to_disk(inv(s.end), center), to_disk(t.start, center)) <= opt.pairing_tol) {
          s.partner = static_cast<int>(j);
        }
        break;
      }
      paired = paired && s.partner >= 0;
    }
    if (!surface) return P;
    if (!paired) {
      last_failure = "unpaired sides at length " + std::to_string(L);
      continue;
    }
    const double expected = 4.0 * kPi * (group.genus() - 1);
    const double area = hyperbolic_area(P, opt.area_order, opt.area_tol);
    if (std::abs(area - expected) > opt.area_tol) {
      last_failure = "area " + std::to_string(area) + " at length " + std::to_string(L);
      continue;
    }
    return P;
  }
  throw domain_error("IncompleteDomain", "Dirichlet polygon did not close: " + last_failure);
}

void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w) {
  if (order < 1) throw domain_error("BadOrder", "quadrature order must be >= 1");
  const auto n = static_cast<std::size_t>(order);
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(k) - 1.0) * z * p1 - (static_cast<double>(k) - 1.0) * p2) /
             static_cast<double>(k);
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Map [-1, 1] to [0, 1].
    const double wi = 1.0 / ((1.0 - z * z) * dp * dp);
    x[i] = 0.5 * (1.0 - z);
    x[n - 1 - i] = 0.5 * (1.0 + z);
    w[i] = w[n - 1 - i] = wi;
  }
}

QuadratureRule make_quadrature(const FundamentalPolygon& P, int order) {
  if (order < 1) throw domain_error("BadOrder", "quadrature order must be >= 1");
  if (!P.compact) throw domain_error("IncompleteDomain", "quadrature needs a compact polygon");
  QuadratureRule rule;
  rule.order = order;
  std::vector<double> x, w;
  gauss_legendre(order, x, w);
  const std::size_t n = P.vertices.size();
  rule.nodes.reserve(n * x.size() * x.size());
  rule.weights.reserve(rule.nodes.capacity());
  for (std::size_t i = 0; i < n; ++i) {
    // Geodesic triangle (0, v1, v2) in the disk centred at P.center: the
    // edge is s -> sigma(s), rays from 0 are geodesics.
    const Complex v1 = to_disk(P.vertices[i], P.center);
    const Complex v2 = to_disk(P.vertices[(i + 1) % n], P.center);
    const Complex u = to_origin(v2, v1);
    const double sv = 1.0 - std::norm(v1);
    for (std::size_t a = 0; a < x.size(); ++a) {
      const Complex su = x[a] * u;
      const Complex sigma = from_origin(su, v1);
      const Complex den = 1.0 + std::conj(v1) * su;
      const Complex dsigma = sv / (den * den) * u;
      const double jac = std::abs((std::conj(sigma) * dsigma).imag());
      for (std::size_t b = 0; b < x.size(); ++b) {
        const Complex p = x[b] * sigma;
        const double rho = 1.0 - std::norm(p);
        const Complex z = from_disk(p, P.center);
        rule.nodes.push_back(z);
        rule.weights.push_back(w[a] * w[b] * x[b] * jac * 4.0 / (rho * rho));
        rule.inv_density.push_back(z.imag() * z.imag());
      }
    }
  }
  return rule;
}

QuadratureRule QuadratureRule::transformed(const MoebiusMap& g) const {
  QuadratureRule r = *this;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    r.inv_density[i] *= std::norm(g.derivative(r.nodes[i]));
    r.nodes[i] = g(r.nodes[i]);
  }
  return r;
}

QuadratureRule QuadratureRule::mirrored() const {
  QuadratureRule r = *this;
  for (auto& z : r.nodes) z = std::conj(z);
  return r;
}

double QuadratureRule::euclidean_area() const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * inv_density[i];
  return s;
}

QuadratureRule half_plane_quadrature(Complex center, int order) {
  if (order < 1) throw domain_error("BadOrder", "quadrature order must be >= 1");
  if (!(center.imag() > 0.0)) throw domain_error("BadCenter", "center must lie in the upper half-plane");
  QuadratureRule rule;
  rule.order = order;
  std::vector<double> x, w;
  gauss_legendre(order, x, w);
  const int angles = 4 * order;
  for (std::size_t a = 0; a < x.size(); ++a) {
    const double r = x[a];
    const double rho = 1.0 - r * r;
    for (int k = 0; k < angles; ++k) {
      const Complex p = std::polar(r, 2.0 * kPi * (k + 0.5) / angles);
      const Complex z = from_disk(p, center);
      rule.nodes.push_back(z);
      rule.weights.push_back(w[a] * r * (2.0 * kPi / angles) * 4.0 / (rho * rho));
      rule.inv_density.push_back(z.imag() * z.imag());
    }
  }
  return rule;
}

double hyperbolic_area(const FundamentalPolygon& P, int order, double tol) {
  if (P.vertices.empty()) return 0.0;
  if (!P.compact) return std::numeric_limits<double>::infinity();
  auto area = [&](int q) {
    const QuadratureRule r = make_quadrature(P, q);
    double s = 0.0;
    for (double w : r.weights) s += w;
    return s;
  };
  const double coarse = area(order), fine = area(2 * order);
  if (std::abs(fine - coarse) > tol * std::max(1.0, std::abs(fine))) {
    throw domain_error("QuadratureUnconverged",
                       "area changes by " + std::to_string(std::abs(fine - coarse)) +
                           " under refinement");
  }
  return fine;
}

std::vector<double> interior_angles(const FundamentalPolygon& P) {
  const std::size_t n = P.vertices.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex v = to_disk(P.vertices[i], P.center);
    const Complex prev = to_origin(to_disk(P.vertices[(i + n - 1) % n], P.center), v);
    const Complex next = to_origin(to_disk(P.vertices[(i + 1) % n], P.center), v);
    double a = std::arg(prev / next);
    if (a < 0.0) a += 2.0 * kPi;
    out[i] = a;
  }
  return out;
}

double gauss_bonnet_area(const FundamentalPolygon& P) {
  if (P.vertices.empty()) return 0.0;
  if (!P.compact) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (double a : interior_angles(P)) sum += a;
  return (static_cast<double>(P.vertices.size()) - 2.0) * kPi - sum;
}

double euclidean_area(const FundamentalPolygon& P) {
  if (P.vertices.empty()) return 0.0;
  if (!P.compact) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (const auto& side : P.sides) {
    const Geodesic g = geodesic_through(side.start, side.end);
    if (g.vertical) {
      s += g.x * (side.end.imag() - side.start.imag());
    } else {
      const double t1 = std::arg(side.start - g.x), t2 = std::arg(side.end - g.x);
      s += g.x * g.radius * (std::sin(t2) - std::sin(t1)) + g.radius * g.radius * (t2 - t1);
    }
  }
  return 0.5 * s;
}

Complex inner_product(const Differential& phi, const Differential& psi, int n,
                      const QuadratureRule& rule) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    // d^2z = rho^-1 dA, so rho^(1-n) d^2z = rho^-n dA.
    const Complex z = rule.nodes[i];
    s += rule.weights[i] * std::pow(rule.inv_density[i], n) * phi(z) * std::conj(psi(z));
  }
  return s;
}

Complex inner_product(const Differential& phi, const Differential& psi, int n,
                      const FundamentalPolygon& P, int order, double tol) {
  const Complex coarse = inner_product(phi, psi, n, make_quadrature(P, order));
  const Complex fine = inner_product(phi, psi, n, make_quadrature(P, 2 * order));
  if (std::abs(fine - coarse) > tol * std::max(1.0, std::abs(fine))) {
    throw domain_error("QuadratureUnconverged",
                       "inner product changes by " + std::to_string(std::abs(fine - coarse)) +
                           " under refinement");
  }
  return fine;
}

}  // namespace qfzeta
