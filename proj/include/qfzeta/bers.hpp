#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qfzeta/domain.hpp"
#include "qfzeta/enumeration.hpp"

namespace qfzeta {

/// The two components of the ordinary set. For a Fuchsian group in its own
/// frame, plus is the upper and minus the lower half-plane.
enum class Side { plus, minus };

Side opposite(Side side) noexcept;
std::string to_string(Side side);

/// c_n = 2^(2n-2) (2n-1) / pi.
double bers_constant(int n);

struct KernelSum {
  Complex value{0.0, 0.0};
  int L = 0;
  double tail_estimate = 0.0;  ///< geometric extrapolation over word lengths, +inf below length 4
  int n = 0;
  std::size_t terms = 0;
  std::vector<double> increments;  ///< sum of |term| per word length 0..L
};

/// Group elements of length <= L laid out for Poincare sums. Every term is
/// gamma'(z)^n / (gamma z - w)^(2n) = ((az + b) - w (cz + d))^(-2n), which is
/// symmetric in z and w once gamma and gamma^-1 are both summed.
class PoincareSum {
 public:
  PoincareSum(const GroupDefinition& group, int max_length, const EnumerationOptions& options = {});
  explicit PoincareSum(const ElementList& elements);

  int max_length() const noexcept { return static_cast<int>(level_begin_.size()) - 2; }
  std::size_t size() const noexcept { return a_.size(); }
  MoebiusMap element(std::size_t i) const;

  /// Same elements in the same order with conjugated entries: the sum of the conjugate group.
  PoincareSum conjugated() const;

  /// out[j] = sum over gamma of ((a x + b) - anchors[j] (c x + d))^(-2n), no c_n.
  /// When increments is given it receives sum |term| per length, per anchor (row-major).
  void sum(int n, Complex x, const Complex* anchors, std::size_t count, Complex* out,
           double* increments = nullptr) const;

 private:
  PoincareSum() = default;
  std::vector<Complex> a_, b_, c_, d_;
  std::vector<std::size_t> level_begin_;
};

/// c_n sum over gamma of length <= L of gamma'(z)^n / (gamma z - w)^(2n).
/// Throws bers.Unconverged when the tail extrapolation fails at L >= 4.
KernelSum kernel(const PoincareSum& sum, int n, Complex z, Complex w);

/// K_side(z, w): side minus takes z in Omega_plus and w in Omega_minus, side
/// plus the reverse. The placement is checked when the group is Fuchsian or a
/// Moebius conjugate of one. Throws bers.BadPoint, bers.Unconverged.
KernelSum kernel(const GroupDefinition& group, int n, Complex z, Complex w, Side side, int L);

/// Real group F and map h with G = h F h^-1, so Omega_plus = h(H+).
struct FuchsianFrame {
  MoebiusMap h;
  GroupDefinition fuchsian;
};

/// Identity frame for real groups; otherwise the marked normalization, which
/// must come out real. nullopt for groups that are not conjugate to a real one.
std::optional<FuchsianFrame> fuchsian_frame(const GroupDefinition& group, double tol = 1e-9);

struct BersOptions {
  int kernel_length = 6;          ///< word length of every Poincare sum
  int quad_order = 16;            ///< Gram matrices
  int check_order = 24;           ///< refinement that Gram matrices are checked against
  double quad_tol = 1e-6;         ///< relative change allowed between the two orders
  double condition_bound = 1e8;   ///< Gram and collocation matrices
  int pole_candidates = 24;       ///< retry cap when selecting theta poles
  int collocation_attempts = 8;   ///< resampling cap for dual bases
  std::uint64_t seed = 1;
  Complex center{0.0, 1.0};       ///< Dirichlet center in the Fuchsian frame
  DomainOptions domain{};
  EnumerationOptions enumeration{};
};

/// Shared state for one group: the Poincare sum, the frame, the Dirichlet
/// polygon and quadrature rules on both sides, all computed lazily.
class BersWorkspace {
 public:
  explicit BersWorkspace(GroupDefinition group, BersOptions options = {});

  const GroupDefinition& group() const noexcept { return group_; }
  const BersOptions& options() const noexcept { return options_; }
  std::shared_ptr<const PoincareSum> sum() const;

  bool has_frame() const noexcept { return frame_.has_value(); }
  /// Throws bers.NotFuchsian.
  const FuchsianFrame& frame() const;
  /// Throws bers.NotFuchsian, domain errors. Null for the trivial group.
  const FundamentalPolygon* polygon() const;
  /// Quadrature of a fundamental region in Omega_side (all of it for the
  /// trivial group). Throws bers.NotFuchsian, domain.IncompleteDomain.
  const QuadratureRule& rule(Side side, int order) const;
  /// True when rule() is available.
  bool has_quadrature() const;

  /// (2n-1)(g-1) for surface groups, 0 when undefined (free groups).
  std::size_t dimension(int n) const;
  /// The Dirichlet center carried to Omega_side.
  Complex center(Side side) const;
  /// Which component contains z; nullopt without a frame. Throws bers.BadPoint on the limit circle.
  std::optional<Side> side_of(Complex z) const;
  /// Throws bers.BadPoint unless z lies in Omega_side (no-op without a frame).
  void require_side(Complex z, Side side, const char* what) const;

  /// Workspace of the conjugate group, sharing nothing.
  BersWorkspace conjugate() const;

 private:
  GroupDefinition group_;
  BersOptions options_;
  std::optional<FuchsianFrame> frame_;
  mutable std::shared_ptr<const PoincareSum> sum_;
  mutable std::optional<FundamentalPolygon> polygon_;
  mutable std::map<std::pair<int, int>, QuadratureRule> rules_;
};

/// Holomorphic n-differentials on Omega_side, each a finite combination of
/// kernel slices: f_k(x) = sum_j C(k, j) S(x, anchor_j), where S is the
/// Poincare sum without c_n. Theta bases have C = I and anchors at the poles.
class DifferentialBasis {
 public:
  DifferentialBasis(std::shared_ptr<const PoincareSum> sum, int n, Side side,
                    std::vector<Complex> anchors, Eigen::MatrixXcd coefficients);

  int n() const noexcept { return n_; }
  Side side() const noexcept { return side_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(coefficients_.rows()); }
  int truncation_length() const noexcept { return sum_->max_length(); }
  const std::vector<Complex>& anchors() const noexcept { return anchors_; }
  const Eigen::MatrixXcd& coefficients() const noexcept { return coefficients_; }
  const std::shared_ptr<const PoincareSum>& poincare_sum() const noexcept { return sum_; }

  /// All basis functions at x.
  Eigen::VectorXcd operator()(Complex x) const;
  Complex operator()(std::size_t k, Complex x) const;
  /// Row i holds the functions at points[i].
  Eigen::MatrixXcd evaluate(const std::vector<Complex>& points) const;
  Differential function(std::size_t k) const;

  /// Relative truncation tail of the anchor slices at x.
  double tail_estimate(Complex x) const;

  /// Conditioning of whatever matrix selected the basis (Gram or collocation).
  double condition_number = 0.0;

 private:
  std::shared_ptr<const PoincareSum> sum_;
  int n_;
  Side side_;
  std::vector<Complex> anchors_;
  Eigen::MatrixXcd coefficients_;
};

/// Deterministic candidates in Omega_side. In the Fuchsian frame: the center
/// c, then c +- 1.2 k Im(c) for k = 1, 2, ... along its horocycle.
std::vector<Complex> default_points(const BersWorkspace& ws, Side side, std::size_t count);

/// Relative Poincare theta series Theta_p(z) = sum gamma'(z)^n (gamma z - p)^(-2n)
/// on Omega_side, poles in the other component. Picks dimension(n) poles (all
/// of them when the dimension is undefined) whose Gram matrix has condition
/// number within the bound, trying further defaults up to the retry cap.
/// Throws bers.RankDeficient, bers.BadPoint, zeta.DomainError for n < 2.
DifferentialBasis theta_basis(const BersWorkspace& ws, int n, const std::vector<Complex>& poles,
                              Side side = Side::plus);

/// Dual basis on the other side with K(z, w) = sum_k phi_k(z) dual_k(w), from
/// collocation at `samples` in the basis side. Throws bers.SingularCollocation.
DifferentialBasis bers_dual(const BersWorkspace& ws, const DifferentialBasis& basis,
                            const std::vector<Complex>& samples);
/// Samples from the deterministic grid, resampled on SingularCollocation.
DifferentialBasis bers_dual(const BersWorkspace& ws, const DifferentialBasis& basis);

/// Collocation points for attempt k: default_points for k = 0, seeded random
/// points in the Poincare disk about the center after that.
std::vector<Complex> collocation_points(const BersWorkspace& ws, Side side, std::size_t count,
                                        int attempt);

struct PeriodMatrix {
  Eigen::MatrixXcd entries;  ///< N_kl = <phi_k, phi_l>
  Side side = Side::plus;
  int n = 0;
  int L = 0;
  int order = 0;
  int check_order = 0;
  double refinement_change = 0.0;  ///< max relative entry change between the orders
  double hermitian_defect = 0.0;
  double condition_number = 0.0;
  Complex determinant{0.0, 0.0};
};

/// Gram matrix over a fundamental region of the basis side, evaluated at the
/// check order and compared with the base order. Throws
/// domain.QuadratureUnconverged, bers.NotPositiveDefinite, bers.NotFuchsian.
PeriodMatrix period_matrix(const BersWorkspace& ws, const DifferentialBasis& basis);

struct KappaMatrix {
  Eigen::MatrixXcd entries;          ///< N_basis N_dual^T
  Side side = Side::minus;           ///< kappa_minus for a plus-side basis
  Complex determinant{0.0, 0.0};     ///< det N_basis det N_dual
  Complex direct_determinant{0.0, 0.0};  ///< det of entries
  std::vector<Complex> eigenvalues;  ///< sorted by real part
  double max_off_diagonal = 0.0;
  PeriodMatrix basis_gram;
  PeriodMatrix dual_gram;
};

/// kappa for a basis and its Bers dual.
KappaMatrix kappa_matrix(const BersWorkspace& ws, const DifferentialBasis& basis,
                         const DifferentialBasis& dual);
KappaMatrix kappa_matrix(const PeriodMatrix& basis_gram, const PeriodMatrix& dual_gram);

struct ReproducingCheck {
  std::vector<Complex> values;   ///< (K_plus conj phi)(z)
  std::vector<Complex> targets;  ///< conj(phi(conj z))
  std::vector<double> residuals; ///< relative
  double max_residual = 0.0;
  double check_difference = 0.0; ///< max relative change from quad_order to check_order
};

/// Integrates K_plus(z, .) conj(phi) over the plus-side fundamental region and
/// compares with conj(phi(conj z)) at test points z in the lower half-plane.
/// Real groups only. Throws bers.NotFuchsian, bers.BadPoint.
ReproducingCheck reproducing_check(const BersWorkspace& ws, int n, const Differential& phi,
                                   const std::vector<Complex>& test_points);
/// One check per basis function, sharing the kernel slices. Plus-side bases only.
std::vector<ReproducingCheck> reproducing_check(const BersWorkspace& ws, const DifferentialBasis& basis,
                                                const std::vector<Complex>& test_points);

/// max over k, z, gamma of |phi_k(gamma z) gamma'(z)^n - phi_k(z)| / max_k |phi_k(z)|.
double automorphy_residual(const DifferentialBasis& basis, const std::vector<Complex>& points,
                           const std::vector<MoebiusMap>& elements);

/// max |K_plus(z, w) - K_minus(w, z)| / |K| over the grid: the kernel form of
/// the adjoint identity. zs in Omega_minus, ws in Omega_plus.
double adjoint_residual(const BersWorkspace& ws, int n, const std::vector<Complex>& zs,
                        const std::vector<Complex>& ws_points);

/// max |K_plus(G)(z, w) - conj K_minus(conj G)(conj z, conj w)| over the grid.
/// Zero when the conjugate sum mirrors every operation.
double intertwining_residual(const BersWorkspace& ws, int n, const std::vector<Complex>& zs,
                             const std::vector<Complex>& ws_points);

}  // namespace qfzeta
