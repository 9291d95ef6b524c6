#include "polarwell/reference_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polarwell/errors.hpp"

namespace polarwell::reference {

using eigensolver::EndpointTreatment;
using eigensolver::Grid;
using eigensolver::TridiagonalOperator;

TridiagonalOperator discretize(const polar::PotentialSpec& potential, const Grid& grid,
                               EndpointTreatment treatment) {
  const int n = grid.n_interior();
  const double h = grid.spacing();
  const auto c = potential.endpoint_coefficient();
  bool matched = treatment == EndpointTreatment::power_law_matched ||
                 (treatment == EndpointTreatment::automatic && c && *c < 0.0);
  if (matched && !c) throw DomainError("power-law matching needs the potential's endpoint coefficient");

  std::vector<double> diagonal;
  diagonal.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double value = 1.0 / (h * h) + potential(grid.node(i));
    if (matched) {
      value += (eigensolver::power_law_correction(*c, i + 1) + eigensolver::power_law_correction(*c, n - i)) /
               (h * h);
    }
    if (!std::isfinite(value)) throw NumericError("potential is not finite at every grid node");
    diagonal.push_back(value);
  }
  return TridiagonalOperator(std::move(diagonal), std::vector<double>(static_cast<std::size_t>(n - 1), -0.5 / (h * h)));
}

int sturm_count(const TridiagonalOperator& op, double shift) {
  // p_i = (d_i - s) p_{i-1} - e_{i-1}^2 p_{i-2}, kept as the ratio r_i = p_i / p_{i-1}
  // to avoid overflow. A negative ratio is a sign change of the sequence.
  const auto d = op.diagonal();
  const auto e = op.off_diagonal();
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double ratio = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double coupling = i == 0 ? 0.0 : e[i - 1] * e[i - 1] / ratio;
    ratio = (d[i] - shift) - coupling;
    if (ratio == 0.0) ratio = -tiny;
    if (ratio < 0.0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k, double tol) {
  if (k < 1 || k > op.size()) throw DomainError("k out of range");
  if (!(tol > 0.0)) throw DomainError("bisection tolerance must be positive");
  const auto [glo, ghi] = eigensolver::gershgorin_bounds(op);
  const double eps = std::numeric_limits<double>::epsilon();

  // upper[j] holds the tightest known x with count(x) > j.
  std::vector<double> upper(static_cast<std::size_t>(k), ghi);
  std::vector<double> values(static_cast<std::size_t>(k));
  double lower = glo;
  for (int j = 0; j < k; ++j) {
    double lo = lower;
    double hi = upper[static_cast<std::size_t>(j)];
    while (hi - lo > std::max(tol, 2.0 * eps * (std::abs(lo) + std::abs(hi)))) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const int c = reference::sturm_count(op, mid);
      if (c > j) {
        hi = mid;
        for (int q = j + 1; q < std::min(c, k); ++q) {
          upper[static_cast<std::size_t>(q)] = std::min(upper[static_cast<std::size_t>(q)], mid);
        }
      } else {
        lo = mid;
      }
    }
    values[static_cast<std::size_t>(j)] = 0.5 * (lo + hi);
    lower = lo;
  }
  return values;
}

}  // namespace polarwell::reference
