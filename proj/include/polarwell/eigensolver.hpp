#pragma once

// Finite-difference eigensolver for -1/2 y'' + V(t) y = E y on (0, pi) with
// y(0) = y(pi) = 0.
//
// The interior nodes t_i = i h, i = 1..N, h = pi / (N + 1), carry the
// unknowns; Dirichlet values are imposed by omitting the endpoints. The
// 3-point Laplacian gives a symmetric tridiagonal operator whose lowest
// eigenvalues are isolated by Sturm-sequence bisection and whose eigenvectors
// come from inverse iteration.
//
// discretize() and lowest_eigenvalues() are OpenMP-parallel; serial
// reference versions live in reference_kernels.hpp.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "polarwell/polar_model.hpp"

namespace polarwell::eigensolver {

class Grid {
 public:
  /// N interior nodes, h = pi / (N + 1).
  static Grid from_interior(int n_interior);
  /// M cells of width pi / M, i.e. M - 1 interior nodes. Halving h means doubling M.
  static Grid from_cells(int n_cells);

  [[nodiscard]] int n_interior() const { return n_interior_; }
  [[nodiscard]] int n_cells() const { return n_interior_ + 1; }
  [[nodiscard]] double spacing() const { return spacing_; }
  /// Zero-based: node(0) = h, node(N-1) = pi - h.
  [[nodiscard]] double node(int i) const { return (i + 1) * spacing_; }
  [[nodiscard]] std::vector<double> nodes() const;

 private:
  explicit Grid(int n_interior);
  int n_interior_;
  double spacing_;
};

class TridiagonalOperator {
 public:
  TridiagonalOperator(std::vector<double> diagonal, std::vector<double> off_diagonal);

  [[nodiscard]] int size() const { return static_cast<int>(diagonal_.size()); }
  [[nodiscard]] std::span<const double> diagonal() const { return diagonal_; }
  [[nodiscard]] std::span<const double> off_diagonal() const { return off_diagonal_; }

  /// y = T x
  [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;

 private:
  std::vector<double> diagonal_;
  std::vector<double> off_diagonal_;
};

enum class EndpointTreatment {
  /// diagonal_i = 1/h^2 + V(t_i)
  pointwise,
  /// Adds a near-endpoint correction so the 3-point stencil is exact for the
  /// local solution t^a, a (a - 1) / 2 = c, where V ~ c / t^2. Needed for the
  /// attractive inverse-square case, where pointwise sampling converges only
  /// logarithmically.
  power_law_matched,
  /// power_law_matched when the potential declares c < 0, pointwise otherwise.
  automatic,
};

[[nodiscard]] TridiagonalOperator discretize(const polar::PotentialSpec& potential, const Grid& grid,
                                             EndpointTreatment treatment = EndpointTreatment::pointwise);

/// Diagonal increment (in units of 1/h^2) applied at node index i (1-based
/// distance from the nearest singular endpoint) by power_law_matched.
[[nodiscard]] double power_law_correction(double endpoint_coefficient, int distance_in_cells);

/// Gershgorin interval [lower, upper] containing the whole spectrum.
[[nodiscard]] std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op);

/// Number of eigenvalues strictly below shift (negative pivots of LDL^T of T - shift).
[[nodiscard]] int sturm_count(const TridiagonalOperator& op, double shift);

/// The k smallest eigenvalues, ascending, each bracketed to width <= tol.
[[nodiscard]] std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k, double tol);

enum class Provenance { analytic, numeric };

struct EigenSolution {
  double energy = 0.0;
  std::vector<double> vector;  // sum vector_i^2 h = 1
  int node_count = 0;
  Provenance provenance = Provenance::numeric;
};

/// Components below this fraction of the max magnitude are ignored when
/// fixing the sign and counting nodes.
inline constexpr double kNodeSignificance = 1e-7;

/// Sign changes of a sampled function, ignoring samples with
/// |v| <= significance * max|v|.
[[nodiscard]] int count_sign_changes(std::span<const double> values, double significance = kNodeSignificance);

inline constexpr std::uint64_t kInverseIterationSeed = 0x5eed1234abcdULL;
inline constexpr int kInverseIterationMaxIterations = 20;

/// Inverse iteration at the given shift from a seeded random start.
/// Throws NumericError if the iterate has not settled after 20 solves.
[[nodiscard]] EigenSolution eigenvector(const TridiagonalOperator& op, double eigenvalue, const Grid& grid);

/// (4 fine - coarse) / 3, assuming error proportional to h^2 and fine at h/2.
[[nodiscard]] double richardson_extrapolate(double coarse, double fine);

struct Observables {
  double mean_theta;
  double variance_about_midpoint;  // int (t - pi/2)^2 y^2 dt
};

[[nodiscard]] Observables observables(std::span<const double> samples, const Grid& grid);
[[nodiscard]] Observables observables(const EigenSolution& sol, const Grid& grid);

/// Trapezoidal inner product sum a_i b_i h.
[[nodiscard]] double inner_product(std::span<const double> a, std::span<const double> b, const Grid& grid);

/// Bisection tolerance used by the polar solver.
inline constexpr double kPolarBisectionTol = 1e-12;

/// Lowest n_levels solutions of an arbitrary potential on a grid.
[[nodiscard]] std::vector<EigenSolution> solve_potential(const polar::PotentialSpec& potential, int n_levels,
                                                         const Grid& grid,
                                                         EndpointTreatment treatment = EndpointTreatment::automatic);

/// Raw (unextrapolated) lowest energies of V_m on a grid of n_cells cells.
[[nodiscard]] std::vector<double> polar_energies(int m, int n_levels, int n_cells);

/// Lowest n_levels numeric solutions of V_m with n_cells cells. With
/// extrapolate, energies are Richardson-combined with an n_cells/2 solve
/// (n_cells must be even) while vectors come from the fine grid.
[[nodiscard]] std::vector<EigenSolution> solve_polar(int m, int n_levels, int n_cells, bool extrapolate);

}  // namespace polarwell::eigensolver
