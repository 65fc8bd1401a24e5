#include "qfzeta/bers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "qfzeta/errors.hpp"
#include "qfzeta/zeta.hpp"

namespace qfzeta {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_n(int n) {
  if (n < 2) throw zeta_error("DomainError", "n must be an integer >= 2, got " + std::to_string(n));
}

// Largest eigenvalue over smallest of a Hermitian matrix; inf if not positive.
double hermitian_condition(const Eigen::MatrixXcd& g) {
  const Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev.size() == 0) return 1.0;
  if (!(ev.minCoeff() > 0.0)) return kInf;
  return ev.maxCoeff() / ev.minCoeff();
}

double matrix_condition(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double lo = s(s.size() - 1);
  return lo > 0.0 ? s(0) / lo : kInf;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// sum_i w_i rho_i^-n f_k(x_i) conj f_l(x_i) from values[i, k].
Eigen::MatrixXcd gram(const Eigen::MatrixXcd& values, const QuadratureRule& rule, int n) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(rule.nodes.size()));
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    w(static_cast<Eigen::Index>(i)) = rule.weights[i] * std::pow(rule.inv_density[i], n);
  }
  return values.transpose() * w.asDiagonal() * values.conjugate();
}

}  // namespace

Side opposite(Side side) noexcept { return side == Side::plus ? Side::minus : Side::plus; }

std::string to_string(Side side) { return side == Side::plus ? "plus" : "minus"; }

double bers_constant(int n) {
  check_n(n);
  return std::ldexp(1.0, 2 * n - 2) * (2 * n - 1) / kPi;
}

// --- Poincare sums -------------------------------------------------------

PoincareSum::PoincareSum(const GroupDefinition& group, int max_length, const EnumerationOptions& options)
    : PoincareSum(enumerate_elements(group, max_length, options)) {}

PoincareSum::PoincareSum(const ElementList& elements) {
  const int L = elements.max_length();
  for (int l = 0; l <= L + 1; ++l) level_begin_.push_back(elements.level_begin(l));
  const std::size_t count = elements.size();
  a_.reserve(count);
  b_.reserve(count);
  c_.reserve(count);
  d_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const MoebiusMap& m = elements.map(i);
    a_.push_back(m.a());
    b_.push_back(m.b());
    c_.push_back(m.c());
    d_.push_back(m.d());
  }
}

MoebiusMap PoincareSum::element(std::size_t i) const { return MoebiusMap(a_[i], b_[i], c_[i], d_[i]); }

PoincareSum PoincareSum::conjugated() const {
  PoincareSum out = *this;
  for (auto* v : {&out.a_, &out.b_, &out.c_, &out.d_}) {
    for (auto& x : *v) x = std::conj(x);
  }
  return out;
}

// Hand-written real arithmetic: mirrors exactly under complex conjugation and
// leaves the anchor loop free for vectorisation.
void PoincareSum::sum(int n, Complex x, const Complex* anchors, std::size_t count, Complex* out,
                      double* increments) const {
  check_n(n);
  const int L = max_length();
  const std::size_t levels = static_cast<std::size_t>(L) + 1;
  std::vector<double> pr(count), pi(count), sr(count, 0.0), si(count, 0.0);
  for (std::size_t j = 0; j < count; ++j) {
    pr[j] = anchors[j].real();
    pi[j] = anchors[j].imag();
  }
  if (increments) std::fill(increments, increments + count * levels, 0.0);
  const double xr = x.real(), xi = x.imag();
  for (std::size_t l = 0; l < levels; ++l) {
    for (std::size_t e = level_begin_[l]; e < level_begin_[l + 1]; ++e) {
      const double ur = a_[e].real() * xr - a_[e].imag() * xi + b_[e].real();
      const double ui = a_[e].real() * xi + a_[e].imag() * xr + b_[e].imag();
      const double vr = c_[e].real() * xr - c_[e].imag() * xi + d_[e].real();
      const double vi = c_[e].real() * xi + c_[e].imag() * xr + d_[e].imag();
      for (std::size_t j = 0; j < count; ++j) {
        const double tr = ur - (pr[j] * vr - pi[j] * vi);
        const double ti = ui - (pr[j] * vi + pi[j] * vr);
        const double inv = 1.0 / (tr * tr + ti * ti);
        const double rr = tr * inv, ri = -ti * inv;
        const double qr = rr * rr - ri * ri, qi = 2.0 * rr * ri;
        double tr2 = qr, ti2 = qi;
        for (int k = 1; k < n; ++k) {
          const double nr = tr2 * qr - ti2 * qi;
          ti2 = tr2 * qi + ti2 * qr;
          tr2 = nr;
        }
        sr[j] += tr2;
        si[j] += ti2;
        if (increments) {
          double mag = inv;
          for (int k = 1; k < n; ++k) mag *= inv;
          increments[j * levels + l] += mag;
        }
      }
    }
  }
  for (std::size_t j = 0; j < count; ++j) out[j] = Complex(sr[j], si[j]);
}

KernelSum kernel(const PoincareSum& sum, int n, Complex z, Complex w) {
  check_n(n);
  const double cn = bers_constant(n);
  const int L = sum.max_length();
  std::vector<double> inc(static_cast<std::size_t>(L) + 1);
  Complex s;
  sum.sum(n, z, &w, 1, &s, inc.data());
  KernelSum k;
  k.value = cn * s;
  k.L = L;
  k.n = n;
  k.terms = sum.size();
  double total = 0.0;
  for (double& v : inc) {
    v *= cn;
    total += v;
  }
  k.increments = inc;
  // Length 0 is the identity alone; the extrapolation runs over lengths 1..L.
  const std::vector<double> tail_inc(inc.begin() + 1, inc.end());
  k.tail_estimate = geometric_tail(tail_inc) + 4.0 * kEps * total;
  if (L >= kMinTailLength && !std::isfinite(k.tail_estimate)) {
    throw bers_error("Unconverged", "kernel increments do not decay at length " + std::to_string(L));
  }
  return k;
}

KernelSum kernel(const GroupDefinition& group, int n, Complex z, Complex w, Side side, int L) {
  check_n(n);
  if (L < 0) throw group_error("BadLength", "word length budget must be >= 0");
  if (const auto frame = fuchsian_frame(group)) {
    const MoebiusMap hinv = frame->h.inverse();
    const double iz = hinv(z).imag(), iw = hinv(w).imag();
    // K_minus: z in Omega_plus, w in Omega_minus; K_plus the reverse.
    const bool ok = side == Side::minus ? (iz > 0.0 && iw < 0.0) : (iz < 0.0 && iw > 0.0);
    if (!ok) throw bers_error("BadPoint", "kernel arguments are not in the components K_" + to_string(side) + " needs");
  }
  return kernel(PoincareSum(group, L), n, z, w);
}

// --- frames and workspace --------------------------------------------------

std::optional<FuchsianFrame> fuchsian_frame(const GroupDefinition& group, double tol) {
  if (group.is_real(tol)) return FuchsianFrame{MoebiusMap{}, group};
  std::optional<Normalization> norm;
  try {
    norm.emplace(normalize_marked_group(group));
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!norm->group.is_real(tol)) return std::nullopt;
  std::vector<NamedGenerator> gens;
  for (const auto& g : norm->group.generators()) {
    const MoebiusMap& m = g.map;
    gens.push_back({g.name, MoebiusMap(m.a().real(), m.b().real(), m.c().real(), m.d().real())});
  }
  GroupDefinition real(group.kind(), group.rank_or_genus(), std::move(gens), group.marking());
  return FuchsianFrame{norm->conjugator.inverse(), std::move(real)};
}

BersWorkspace::BersWorkspace(GroupDefinition group, BersOptions options)
    : group_(std::move(group)), options_(std::move(options)), frame_(fuchsian_frame(group_)) {
  if (!(options_.center.imag() > 0.0)) throw domain_error("BadCenter", "center must lie in the upper half-plane");
}

std::shared_ptr<const PoincareSum> BersWorkspace::sum() const {
  if (!sum_) sum_ = std::make_shared<const PoincareSum>(group_, options_.kernel_length, options_.enumeration);
  return sum_;
}

const FuchsianFrame& BersWorkspace::frame() const {
  if (!frame_) throw bers_error("NotFuchsian", "group is not a Moebius conjugate of a Fuchsian group");
  return *frame_;
}

namespace {
bool trivial(const GroupDefinition& g) { return g.generator_count() == 0; }
}  // namespace

const FundamentalPolygon* BersWorkspace::polygon() const {
  const FuchsianFrame& f = frame();
  if (trivial(group_)) return nullptr;
  if (!polygon_) polygon_ = dirichlet_domain(f.fuchsian, options_.center, -1, options_.domain);
  return &*polygon_;
}

bool BersWorkspace::has_quadrature() const {
  return frame_.has_value() && (trivial(group_) || group_.kind() == GroupKind::surface);
}

const QuadratureRule& BersWorkspace::rule(Side side, int order) const {
  const auto key = std::make_pair(side == Side::plus ? 0 : 1, order);
  if (auto it = rules_.find(key); it != rules_.end()) return it->second;
  const FuchsianFrame& f = frame();
  const FundamentalPolygon* p = polygon();
  QuadratureRule r = p ? make_quadrature(*p, order) : half_plane_quadrature(options_.center, order);
  if (side == Side::minus) r = r.mirrored();
  if (!f.h.is_identity(0.0)) r = r.transformed(f.h);
  return rules_.emplace(key, std::move(r)).first->second;
}

std::size_t BersWorkspace::dimension(int n) const {
  check_n(n);
  if (group_.kind() != GroupKind::surface) return 0;
  return static_cast<std::size_t>((2 * n - 1) * (group_.genus() - 1));
}

Complex BersWorkspace::center(Side side) const {
  const Complex c = side == Side::plus ? options_.center : std::conj(options_.center);
  return frame().h(c);
}

std::optional<Side> BersWorkspace::side_of(Complex z) const {
  if (!frame_) return std::nullopt;
  const Complex zeta = frame_->h.inverse()(z);
  if (!std::isfinite(zeta.real()) || std::abs(zeta.imag()) <= 1e-12 * (1.0 + std::abs(zeta))) {
    throw bers_error("BadPoint", "point lies on the limit circle");
  }
  return zeta.imag() > 0.0 ? Side::plus : Side::minus;
}

void BersWorkspace::require_side(Complex z, Side side, const char* what) const {
  const auto s = side_of(z);
  if (s && *s != side) {
    throw bers_error("BadPoint", std::string(what) + " must lie in Omega_" + to_string(side));
  }
}

BersWorkspace BersWorkspace::conjugate() const { return BersWorkspace(conjugate_group(group_), options_); }

// --- bases -----------------------------------------------------------------

DifferentialBasis::DifferentialBasis(std::shared_ptr<const PoincareSum> sum, int n, Side side,
                                     std::vector<Complex> anchors, Eigen::MatrixXcd coefficients)
    : sum_(std::move(sum)), n_(n), side_(side), anchors_(std::move(anchors)), coefficients_(std::move(coefficients)) {
  check_n(n);
  if (static_cast<std::size_t>(coefficients_.cols()) != anchors_.size()) {
    throw bers_error("BadBasis", "coefficient columns must match the anchors");
  }
}

Eigen::VectorXcd DifferentialBasis::operator()(Complex x) const {
  Eigen::VectorXcd s(static_cast<Eigen::Index>(anchors_.size()));
  sum_->sum(n_, x, anchors_.data(), anchors_.size(), s.data());
  return coefficients_ * s;
}

Complex DifferentialBasis::operator()(std::size_t k, Complex x) const {
  return (*this)(x)(static_cast<Eigen::Index>(k));
}

// S(x, a) = S(a, x) because the enumerated ball is closed under inverses, so
// each anchor takes one pass with the points as the vectorised inner loop.
Eigen::MatrixXcd DifferentialBasis::evaluate(const std::vector<Complex>& points) const {
  const auto np = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd s(np, static_cast<Eigen::Index>(anchors_.size()));
  for (std::size_t j = 0; j < anchors_.size(); ++j) {
    sum_->sum(n_, anchors_[j], points.data(), points.size(), s.col(static_cast<Eigen::Index>(j)).data());
  }
  return s * coefficients_.transpose();
}

Differential DifferentialBasis::function(std::size_t k) const {
  DifferentialBasis self = *this;
  return [self, k](Complex x) { return self(k, x); };
}

double DifferentialBasis::tail_estimate(Complex x) const {
  double worst = 0.0;
  for (const Complex a : anchors_) {
    const KernelSum k = kernel(*sum_, n_, x, a);
    worst = std::max(worst, k.tail_estimate / std::max(std::abs(k.value), 1e-300));
  }
  return worst;
}

std::vector<Complex> default_points(const BersWorkspace& ws, Side side, std::size_t count) {
  const Complex c = ws.options().center;
  const MoebiusMap& h = ws.frame().h;
  std::vector<Complex> out;
  // Same-height points keep every theta series equally far from the limit set;
  // this row gave the best conditioned octagon bases among the layouts tried.
  for (std::size_t i = 0; i < count; ++i) {
    const double k = static_cast<double>((i + 1) / 2) * (i % 2 ? 1.0 : -1.0);
    const Complex z = c + 1.2 * k * c.imag();
    out.push_back(h(side == Side::plus ? z : std::conj(z)));
  }
  return out;
}

std::vector<Complex> collocation_points(const BersWorkspace& ws, Side side, std::size_t count, int attempt) {
  if (attempt == 0) return default_points(ws, side, count);
  std::mt19937_64 rng(ws.options().seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(attempt));
  std::uniform_real_distribution<double> radius(0.2, 0.7), angle(0.0, 2.0 * kPi);
  const Complex c = ws.options().center;
  std::vector<Complex> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Complex z = from_disk(std::polar(radius(rng), angle(rng)), c);
    out.push_back(ws.frame().h(side == Side::plus ? z : std::conj(z)));
  }
  return out;
}

namespace {

std::vector<Complex> pole_candidates(const BersWorkspace& ws, const std::vector<Complex>& poles, Side pole_side,
                                     std::size_t want) {
  std::vector<Complex> out;
  auto add = [&](Complex p) {
    for (const Complex q : out) {
      if (std::abs(p - q) <= 1e-9 * (1.0 + std::abs(p))) return;
    }
    out.push_back(p);
  };
  for (const Complex p : poles) add(p);
  if (out.size() < want && ws.has_frame()) {
    for (const Complex p : default_points(ws, pole_side, want)) {
      if (out.size() >= want) break;
      add(p);
    }
  }
  return out;
}

DifferentialBasis make_theta(const BersWorkspace& ws, int n, Side side, std::vector<Complex> poles, double cond) {
  const auto d = static_cast<Eigen::Index>(poles.size());
  DifferentialBasis b(ws.sum(), n, side, std::move(poles), Eigen::MatrixXcd::Identity(d, d));
  b.condition_number = cond;
  return b;
}

}  // namespace

DifferentialBasis theta_basis(const BersWorkspace& ws, int n, const std::vector<Complex>& poles, Side side) {
  check_n(n);
  const Side pole_side = opposite(side);
  for (const Complex p : poles) ws.require_side(p, pole_side, "theta poles");
  std::size_t d = ws.dimension(n);
  if (d == 0) d = poles.size();
  if (d == 0) throw bers_error("RankDeficient", "no poles given");

  const std::size_t cap = std::max<std::size_t>(static_cast<std::size_t>(ws.options().pole_candidates), d);
  const std::vector<Complex> cand = pole_candidates(ws, poles, pole_side, ws.has_quadrature() ? cap : d);
  if (cand.size() < d) {
    throw bers_error("RankDeficient", "need " + std::to_string(d) + " distinct poles, have " + std::to_string(cand.size()));
  }
  if (!ws.has_quadrature()) return make_theta(ws, n, side, {cand.begin(), cand.begin() + d}, 0.0);

  const QuadratureRule& rule = ws.rule(side, ws.options().quad_order);
  const double bound = ws.options().condition_bound;
  const std::vector<Complex> first(cand.begin(), cand.begin() + d);
  const DifferentialBasis trial = make_theta(ws, n, side, first, 0.0);
  const Eigen::MatrixXcd g = gram(trial.evaluate(rule.nodes), rule, n);
  const double cond = hermitian_condition(g);
  if (cond <= bound) return make_theta(ws, n, side, first, cond);

  // Greedy selection over all candidates from one evaluation pass.
  const DifferentialBasis all = make_theta(ws, n, side, cand, 0.0);
  const Eigen::MatrixXcd ga = gram(all.evaluate(rule.nodes), rule, n);
  std::vector<Eigen::Index> chosen;
  double chosen_cond = 1.0;
  for (Eigen::Index k = 0; k < ga.rows() && chosen.size() < d; ++k) {
    std::vector<Eigen::Index> next = chosen;
    next.push_back(k);
    const double c = hermitian_condition(ga(next, next));
    if (c <= bound) {
      chosen = std::move(next);
      chosen_cond = c;
    }
  }
  if (chosen.size() < d) {
    throw bers_error("RankDeficient", "no " + std::to_string(d) + " of " + std::to_string(cand.size()) +
                                          " candidate poles give a Gram condition number below the bound");
  }
  std::vector<Complex> sel;
  for (const auto k : chosen) sel.push_back(cand[static_cast<std::size_t>(k)]);
  return make_theta(ws, n, side, std::move(sel), chosen_cond);
}

DifferentialBasis bers_dual(const BersWorkspace& ws, const DifferentialBasis& basis,
                            const std::vector<Complex>& samples) {
  const std::size_t d = basis.size();
  if (samples.size() != d) {
    throw bers_error("SingularCollocation", "need " + std::to_string(d) + " samples, got " + std::to_string(samples.size()));
  }
  for (const Complex z : samples) ws.require_side(z, basis.side(), "collocation samples");
  // A(j, k) = phi_k(z_j); K(z, w) = sum_k phi_k(z) dual_k(w) at z = z_j gives
  // dual(w) = A^-1 (K(z_j, w))_j.
  const Eigen::MatrixXcd a = basis.evaluate(samples);
  const double cond = matrix_condition(a);
  if (!(cond <= ws.options().condition_bound)) {
    throw bers_error("SingularCollocation", "collocation matrix condition number " + std::to_string(cond));
  }
  Eigen::MatrixXcd coeff = bers_constant(basis.n()) * a.fullPivLu().inverse();
  DifferentialBasis dual(basis.poincare_sum(), basis.n(), opposite(basis.side()), samples, std::move(coeff));
  dual.condition_number = cond;
  return dual;
}

DifferentialBasis bers_dual(const BersWorkspace& ws, const DifferentialBasis& basis) {
  const int attempts = std::max(1, ws.options().collocation_attempts);
  std::string last;
  for (int k = 0; k < attempts; ++k) {
    try {
      return bers_dual(ws, basis, collocation_points(ws, basis.side(), basis.size(), k));
    } catch (const Error& e) {
      if (e.code() != "bers.SingularCollocation") throw;
      last = e.what();
    }
  }
  throw bers_error("SingularCollocation", "no well-conditioned samples after " + std::to_string(attempts) +
                                              " attempts: " + last);
}

// --- period and kappa matrices ---------------------------------------------

PeriodMatrix period_matrix(const BersWorkspace& ws, const DifferentialBasis& basis) {
  const BersOptions& o = ws.options();
  const QuadratureRule& lo = ws.rule(basis.side(), o.quad_order);
  const QuadratureRule& hi = ws.rule(basis.side(), o.check_order);
  const Eigen::MatrixXcd g_lo = gram(basis.evaluate(lo.nodes), lo, basis.n());
  const Eigen::MatrixXcd g_hi = gram(basis.evaluate(hi.nodes), hi, basis.n());

  PeriodMatrix p;
  p.side = basis.side();
  p.n = basis.n();
  p.L = basis.truncation_length();
  p.order = o.quad_order;
  p.check_order = o.check_order;
  const double scale = max_abs(g_hi);
  p.refinement_change = scale > 0.0 ? max_abs(g_hi - g_lo) / scale : 0.0;
  if (!(p.refinement_change <= o.quad_tol)) {
    throw domain_error("QuadratureUnconverged", "Gram matrix changed by " + std::to_string(p.refinement_change) +
                                                    " between orders " + std::to_string(o.quad_order) + " and " +
                                                    std::to_string(o.check_order));
  }
  p.entries = g_hi;
  p.hermitian_defect = scale > 0.0 ? max_abs(g_hi - g_hi.adjoint()) / scale : 0.0;
  p.condition_number = hermitian_condition(g_hi);
  if (!std::isfinite(p.condition_number)) throw bers_error("NotPositiveDefinite", "Gram matrix is not positive definite");
  p.determinant = g_hi.determinant();
  return p;
}

KappaMatrix kappa_matrix(const PeriodMatrix& basis_gram, const PeriodMatrix& dual_gram) {
  if (basis_gram.entries.rows() != dual_gram.entries.rows() || basis_gram.side == dual_gram.side) {
    throw bers_error("BadBasis", "kappa needs Gram matrices of equal size on opposite sides");
  }
  KappaMatrix k;
  k.entries = basis_gram.entries * dual_gram.entries.transpose();
  k.side = opposite(basis_gram.side);
  k.determinant = basis_gram.determinant * dual_gram.determinant;
  k.direct_determinant = k.entries.determinant();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(k.entries, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) k.eigenvalues.push_back(es.eigenvalues()(i));
  std::sort(k.eigenvalues.begin(), k.eigenvalues.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (Eigen::Index i = 0; i < k.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < k.entries.cols(); ++j) {
      if (i != j) k.max_off_diagonal = std::max(k.max_off_diagonal, std::abs(k.entries(i, j)));
    }
  }
  k.basis_gram = basis_gram;
  k.dual_gram = dual_gram;
  return k;
}

KappaMatrix kappa_matrix(const BersWorkspace& ws, const DifferentialBasis& basis, const DifferentialBasis& dual) {
  return kappa_matrix(period_matrix(ws, basis), period_matrix(ws, dual));
}

// --- identity checks -------------------------------------------------------

namespace {

// Columns of `at_nodes(rule)` are the functions on the rule's nodes; `at(z)`
// gives all functions at one point. One kernel slice per test point and rule.
std::vector<ReproducingCheck> reproduce(const BersWorkspace& ws, int n, std::size_t count,
                                        const std::function<Eigen::MatrixXcd(const QuadratureRule&)>& at_nodes,
                                        const std::function<Eigen::VectorXcd(Complex)>& at,
                                        const std::vector<Complex>& test_points) {
  check_n(n);
  if (!ws.group().is_real()) throw bers_error("NotFuchsian", "the reproducing check needs a real group");
  for (const Complex z : test_points) ws.require_side(z, Side::minus, "test points");
  const BersOptions& o = ws.options();
  const double cn = bers_constant(n);
  const auto sum = ws.sum();

  // Row i: weight_i conj(phi_k(node_i)).
  auto weighted = [&](const QuadratureRule& rule) {
    Eigen::MatrixXcd v = at_nodes(rule).conjugate();
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const auto k = static_cast<std::size_t>(i);
      v.row(i) *= rule.weights[k] * std::pow(rule.inv_density[k], n);
    }
    return v;
  };
  auto integrate = [&](const QuadratureRule& rule, const Eigen::MatrixXcd& w, Complex z) {
    Eigen::VectorXcd s(static_cast<Eigen::Index>(rule.nodes.size()));
    sum->sum(n, z, rule.nodes.data(), rule.nodes.size(), s.data());
    return Eigen::VectorXcd(cn * (w.transpose() * s));
  };

  const QuadratureRule& lo = ws.rule(Side::plus, o.quad_order);
  const QuadratureRule& hi = ws.rule(Side::plus, o.check_order);
  const Eigen::MatrixXcd w_lo = weighted(lo), w_hi = weighted(hi);
  std::vector<ReproducingCheck> out(count);
  for (const Complex z : test_points) {
    const Eigen::VectorXcd v = integrate(hi, w_hi, z);
    const Eigen::VectorXcd v_lo = integrate(lo, w_lo, z);
    const Eigen::VectorXcd t = at(std::conj(z)).conjugate();
    for (std::size_t k = 0; k < count; ++k) {
      const auto e = static_cast<Eigen::Index>(k);
      const double r = std::abs(v(e) - t(e)) / std::abs(t(e));
      ReproducingCheck& c = out[k];
      c.values.push_back(v(e));
      c.targets.push_back(t(e));
      c.residuals.push_back(r);
      c.max_residual = std::max(c.max_residual, r);
      c.check_difference = std::max(c.check_difference, std::abs(v(e) - v_lo(e)) / std::abs(v(e)));
    }
  }
  return out;
}

}  // namespace

ReproducingCheck reproducing_check(const BersWorkspace& ws, int n, const Differential& phi,
                                   const std::vector<Complex>& test_points) {
  auto at_nodes = [&](const QuadratureRule& rule) {
    Eigen::MatrixXcd v(static_cast<Eigen::Index>(rule.nodes.size()), 1);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) v(static_cast<Eigen::Index>(i), 0) = phi(rule.nodes[i]);
    return v;
  };
  auto at = [&](Complex z) { return Eigen::VectorXcd::Constant(1, phi(z)); };
  return reproduce(ws, n, 1, at_nodes, at, test_points).front();
}

std::vector<ReproducingCheck> reproducing_check(const BersWorkspace& ws, const DifferentialBasis& basis,
                                                const std::vector<Complex>& test_points) {
  if (basis.side() != Side::plus) throw bers_error("BadPoint", "the reproducing check needs a plus-side basis");
  auto at_nodes = [&](const QuadratureRule& rule) { return basis.evaluate(rule.nodes); };
  auto at = [&](Complex z) { return basis(z); };
  return reproduce(ws, basis.n(), basis.size(), at_nodes, at, test_points);
}

double automorphy_residual(const DifferentialBasis& basis, const std::vector<Complex>& points,
                           const std::vector<MoebiusMap>& elements) {
  double worst = 0.0;
  for (const Complex z : points) {
    const Eigen::VectorXcd f = basis(z);
    const double scale = f.cwiseAbs().maxCoeff();
    for (const MoebiusMap& g : elements) {
      const Eigen::VectorXcd fg = basis(g(z)) * ipow(g.derivative(z), basis.n());
      worst = std::max(worst, (fg - f).cwiseAbs().maxCoeff() / scale);
    }
  }
  return worst;
}

double adjoint_residual(const BersWorkspace& ws, int n, const std::vector<Complex>& zs,
                        const std::vector<Complex>& ws_points) {
  const auto sum = ws.sum();
  double worst = 0.0;
  for (const Complex z : zs) {
    ws.require_side(z, Side::minus, "adjoint z");
    for (const Complex w : ws_points) {
      ws.require_side(w, Side::plus, "adjoint w");
      const Complex kp = kernel(*sum, n, z, w).value;
      const Complex km = kernel(*sum, n, w, z).value;
      worst = std::max(worst, std::abs(kp - km) / std::abs(kp));
    }
  }
  return worst;
}

double intertwining_residual(const BersWorkspace& ws, int n, const std::vector<Complex>& zs,
                             const std::vector<Complex>& ws_points) {
  const auto sum = ws.sum();
  const PoincareSum bar = sum->conjugated();
  double worst = 0.0;
  for (const Complex z : zs) {
    for (const Complex w : ws_points) {
      const Complex kp = kernel(*sum, n, z, w).value;
      const Complex km = kernel(bar, n, std::conj(z), std::conj(w)).value;
      worst = std::max(worst, std::abs(kp - std::conj(km)));
    }
  }
  return worst;
}

}  // namespace qfzeta
