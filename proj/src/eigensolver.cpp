#include "polarwell/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "polarwell/errors.hpp"

namespace polarwell::eigensolver {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivot_floor(const TridiagonalOperator& op) {
  double emax = 1.0;
  for (double e : op.off_diagonal()) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() * emax;
}

// Smallest x with sturm_count(x) >= index + 1, i.e. eigenvalue number `index`.
double bisect(const TridiagonalOperator& op, int index, double lo, double hi, double tol) {
  while (true) {
    const double width_floor = 2.0 * kEps * (std::abs(lo) + std::abs(hi));
    if (hi - lo <= std::max(tol, width_floor)) break;
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(op, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

// Tridiagonal LU with partial pivoting (row interchanges), stored as in LAPACK dgttrf.
class PivotedTridiagonalLU {
 public:
  PivotedTridiagonalLU(const TridiagonalOperator& op, double shift)
      : n_(op.size()),
        dl_(op.off_diagonal().begin(), op.off_diagonal().end()),
        d_(op.diagonal().begin(), op.diagonal().end()),
        du_(op.off_diagonal().begin(), op.off_diagonal().end()),
        du2_(n_ > 2 ? n_ - 2 : 0, 0.0),
        swapped_(n_ > 1 ? n_ - 1 : 0, false) {
    double scale = 0.0;
    for (double& v : d_) {
      v -= shift;
      scale = std::max(scale, std::abs(v));
    }
    for (double v : dl_) scale = std::max(scale, 2.0 * std::abs(v));
    const double tiny = kEps * std::max(scale, 1.0);

    for (int i = 0; i + 1 < n_; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double fact = dl_[i] / d_[i];
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    if (n_ > 0 && d_[n_ - 1] == 0.0) d_[n_ - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    for (int i = 0; i + 1 < n_; ++i) {
      if (!swapped_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    b[n_ - 1] /= d_[n_ - 1];
    if (n_ > 1) b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
    for (int i = n_ - 3; i >= 0; --i) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  int n_;
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<bool> swapped_;
};

// Scale to unit max-norm with the first significant component positive.
bool normalize_max(std::vector<double>& v) {
  double vmax = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) return false;
    vmax = std::max(vmax, std::abs(x));
  }
  if (vmax == 0.0) return false;
  double sign = 1.0;
  for (double x : v) {
    if (std::abs(x) > kNodeSignificance * vmax) {
      sign = x > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  const double f = sign / vmax;
  for (double& x : v) x *= f;
  return true;
}

}  // namespace

Grid::Grid(int n_interior) : n_interior_(n_interior), spacing_(std::numbers::pi / (n_interior + 1)) {}

Grid Grid::from_interior(int n_interior) {
  if (n_interior < 1) throw DomainError("grid needs at least one interior node");
  return Grid(n_interior);
}

Grid Grid::from_cells(int n_cells) {
  if (n_cells < 2) throw DomainError("grid needs at least two cells");
  return Grid(n_cells - 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> t(static_cast<std::size_t>(n_interior_));
  for (int i = 0; i < n_interior_; ++i) t[static_cast<std::size_t>(i)] = node(i);
  return t;
}

TridiagonalOperator::TridiagonalOperator(std::vector<double> diagonal, std::vector<double> off_diagonal)
    : diagonal_(std::move(diagonal)), off_diagonal_(std::move(off_diagonal)) {
  if (diagonal_.empty()) throw DomainError("operator must have at least one row");
  if (off_diagonal_.size() + 1 != diagonal_.size()) {
    throw DomainError("off-diagonal must have exactly one fewer entry than the diagonal");
  }
}

std::vector<double> TridiagonalOperator::apply(std::span<const double> x) const {
  const std::size_t n = diagonal_.size();
  if (x.size() != n) throw DomainError("vector length does not match operator size");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diagonal_[i] * x[i];
    if (i > 0) acc += off_diagonal_[i - 1] * x[i - 1];
    if (i + 1 < n) acc += off_diagonal_[i] * x[i + 1];
    y[i] = acc;
  }
  return y;
}

double power_law_correction(double endpoint_coefficient, int distance_in_cells) {
  if (distance_in_cells < 1) throw DomainError("endpoint distance must be at least one cell");
  const double disc = 0.25 + 2.0 * endpoint_coefficient;
  if (disc < 0.0) throw DomainError("inverse-square coefficient below -1/8 has no regular solution");
  const double a = 0.5 + std::sqrt(disc);
  const double u = 1.0 / distance_in_cells;
  // (1+u)^a - 2 + (1-u)^a, written with expm1/log1p to survive large a and small u.
  const double up = std::expm1(a * std::log1p(u));
  const double down = distance_in_cells == 1 ? -1.0 : std::expm1(a * std::log1p(-u));
  return 0.5 * (up + down) - endpoint_coefficient * u * u;
}

TridiagonalOperator discretize(const polar::PotentialSpec& potential, const Grid& grid,
                               EndpointTreatment treatment) {
  const int n = grid.n_interior();
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);

  const auto coefficient = potential.endpoint_coefficient();
  bool matched = false;
  if (treatment == EndpointTreatment::power_law_matched) {
    if (!coefficient) throw DomainError("power-law matching needs the potential's endpoint coefficient");
    matched = true;
  } else if (treatment == EndpointTreatment::automatic) {
    matched = coefficient && *coefficient < 0.0;
  }

  std::vector<double> diagonal(static_cast<std::size_t>(n));
  bool finite = true;
#pragma omp parallel for schedule(static) reduction(&& : finite)
  for (int i = 0; i < n; ++i) {
    double value = inv_h2 + potential(grid.node(i));
    if (matched) {
      value += (power_law_correction(*coefficient, i + 1) + power_law_correction(*coefficient, n - i)) * inv_h2;
    }
    finite = finite && std::isfinite(value);
    diagonal[static_cast<std::size_t>(i)] = value;
  }
  if (!finite) throw NumericError("potential '" + potential.label() + "' is not finite at every grid node");

  std::vector<double> off(static_cast<std::size_t>(n - 1), -0.5 * inv_h2);
  return TridiagonalOperator(std::move(diagonal), std::move(off));
}

std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op) {
  const auto d = op.diagonal();
  const auto e = op.off_diagonal();
  const std::size_t n = d.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - radius);
    hi = std::max(hi, d[i] + radius);
  }
  const double pad = 2.0 * n * kEps * std::max(std::abs(lo), std::abs(hi));
  return {lo - pad, hi + pad};
}

int sturm_count(const TridiagonalOperator& op, double shift) {
  const auto d = op.diagonal();
  const auto e = op.off_diagonal();
  const double pivmin = pivot_floor(op);
  int count = 0;
  double q = d[0] - shift;
  if (std::abs(q) <= pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    q = d[i] - shift - e[i - 1] * e[i - 1] / q;
    if (std::abs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k, double tol) {
  if (k < 1 || k > op.size()) {
    throw DomainError("requested " + std::to_string(k) + " eigenvalues of a " + std::to_string(op.size()) +
                      "-row operator");
  }
  if (!(tol > 0.0)) throw DomainError("bisection tolerance must be positive");
  const auto [lo, hi] = gershgorin_bounds(op);
  std::vector<double> values(static_cast<std::size_t>(k));
#pragma omp parallel for schedule(dynamic, 1)
  for (int j = 0; j < k; ++j) values[static_cast<std::size_t>(j)] = bisect(op, j, lo, hi, tol);
  return values;
}

int count_sign_changes(std::span<const double> values, double significance) {
  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) return 0;
  const double threshold = significance * vmax;
  int changes = 0;
  int last_sign = 0;
  for (double v : values) {
    if (std::abs(v) <= threshold) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++changes;
    last_sign = s;
  }
  return changes;
}

EigenSolution eigenvector(const TridiagonalOperator& op, double eigenvalue, const Grid& grid) {
  const int n = op.size();
  if (n != grid.n_interior()) throw DomainError("operator and grid sizes differ");

  std::mt19937_64 rng(kInverseIterationSeed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) v = dist(rng);
  normalize_max(x);

  const auto [glo, ghi] = gershgorin_bounds(op);
  const double norm = std::max(std::abs(glo), std::abs(ghi));
  double shift = eigenvalue;
  PivotedTridiagonalLU lu(op, shift);

  bool converged = false;
  std::vector<double> prev;
  for (int iter = 0; iter < kInverseIterationMaxIterations; ++iter) {
    prev = x;
    lu.solve(x);
    if (!normalize_max(x)) {
      // Overflowed on an exactly singular shift; nudge it and restart from the last iterate.
      shift += 8.0 * kEps * std::max(norm, 1.0);
      lu = PivotedTridiagonalLU(op, shift);
      x = prev;
      continue;
    }
    double diff = 0.0;
    for (int i = 0; i < n; ++i) diff = std::max(diff, std::abs(x[i] - prev[i]));
    if (iter > 0 && diff <= 1e-10) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericError("inverse iteration did not converge near E = " + std::to_string(eigenvalue));
  }

  const double h = grid.spacing();
  double sumsq = 0.0;
  for (double v : x) sumsq += v * v;
  const double scale = 1.0 / std::sqrt(sumsq * h);
  for (double& v : x) v *= scale;

  EigenSolution sol;
  sol.energy = eigenvalue;
  sol.node_count = count_sign_changes(x);
  sol.vector = std::move(x);
  sol.provenance = Provenance::numeric;
  return sol;
}

double richardson_extrapolate(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

double inner_product(std::span<const double> a, std::span<const double> b, const Grid& grid) {
  if (a.size() != b.size() || static_cast<int>(a.size()) != grid.n_interior()) {
    throw DomainError("inner product operands must match the grid");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc * grid.spacing();
}

Observables observables(std::span<const double> samples, const Grid& grid) {
  if (static_cast<int>(samples.size()) != grid.n_interior()) throw DomainError("samples must match the grid");
  const double h = grid.spacing();
  const double mid = 0.5 * std::numbers::pi;
  double mean = 0.0;
  double var = 0.0;
  for (int i = 0; i < grid.n_interior(); ++i) {
    const double w = samples[static_cast<std::size_t>(i)] * samples[static_cast<std::size_t>(i)];
    const double t = grid.node(i);
    mean += t * w;
    var += (t - mid) * (t - mid) * w;
  }
  return {mean * h, var * h};
}

Observables observables(const EigenSolution& sol, const Grid& grid) { return observables(sol.vector, grid); }

std::vector<EigenSolution> solve_potential(const polar::PotentialSpec& potential, int n_levels, const Grid& grid,
                                           EndpointTreatment treatment) {
  const auto op = discretize(potential, grid, treatment);
  const auto energies = lowest_eigenvalues(op, n_levels, kPolarBisectionTol);
  std::vector<EigenSolution> out(static_cast<std::size_t>(n_levels));
  std::vector<std::string> failures(static_cast<std::size_t>(n_levels));
#pragma omp parallel for schedule(dynamic, 1)
  for (int j = 0; j < n_levels; ++j) {
    try {
      out[static_cast<std::size_t>(j)] = eigenvector(op, energies[static_cast<std::size_t>(j)], grid);
    } catch (const std::exception& ex) {
      failures[static_cast<std::size_t>(j)] = ex.what();
    }
  }
  for (int j = 0; j < n_levels; ++j) {
    if (!failures[static_cast<std::size_t>(j)].empty()) throw NumericError(failures[static_cast<std::size_t>(j)]);
    if (out[static_cast<std::size_t>(j)].node_count != j) {
      throw NumericError("level " + std::to_string(j) + " of '" + potential.label() + "' has " +
                         std::to_string(out[static_cast<std::size_t>(j)].node_count) + " nodes");
    }
  }
  return out;
}

std::vector<double> polar_energies(int m, int n_levels, int n_cells) {
  const auto grid = Grid::from_cells(n_cells);
  const auto op = discretize(polar::polar_potential(m), grid, EndpointTreatment::automatic);
  return lowest_eigenvalues(op, n_levels, kPolarBisectionTol);
}

std::vector<EigenSolution> solve_polar(int m, int n_levels, int n_cells, bool extrapolate) {
  if (n_levels < 1) throw DomainError("need at least one level");
  if (n_levels >= n_cells) throw DomainError("more levels requested than grid unknowns");
  if (extrapolate && (n_cells % 2 != 0 || n_cells / 2 <= n_levels)) {
    throw DomainError("Richardson extrapolation needs an even cell count with a usable half grid");
  }
  const auto grid = Grid::from_cells(n_cells);
  auto solutions = solve_potential(polar::polar_potential(m), n_levels, grid, EndpointTreatment::automatic);
  if (extrapolate) {
    const auto coarse = polar_energies(m, n_levels, n_cells / 2);
    for (int j = 0; j < n_levels; ++j) {
      auto& s = solutions[static_cast<std::size_t>(j)];
      s.energy = richardson_extrapolate(coarse[static_cast<std::size_t>(j)], s.energy);
    }
  }
  return solutions;
}

}  // namespace polarwell::eigensolver
