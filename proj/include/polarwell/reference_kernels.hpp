#pragma once

// Serial reference versions of the OpenMP kernels in eigensolver.hpp. They
// are written independently (plain loops, characteristic-polynomial Sturm
// count) and exist so tests and the benchmark can check the parallel paths.

#include <vector>

#include "polarwell/eigensolver.hpp"

namespace polarwell::reference {

[[nodiscard]] eigensolver::TridiagonalOperator discretize(
    const polar::PotentialSpec& potential, const eigensolver::Grid& grid,
    eigensolver::EndpointTreatment treatment = eigensolver::EndpointTreatment::pointwise);

/// Eigenvalues below shift, from sign agreements of the scaled characteristic-polynomial sequence.
[[nodiscard]] int sturm_count(const eigensolver::TridiagonalOperator& op, double shift);

/// Serial bisection for the k smallest eigenvalues, one eigenvalue at a time,
/// reusing brackets found while isolating earlier ones.
[[nodiscard]] std::vector<double> lowest_eigenvalues(const eigensolver::TridiagonalOperator& op, int k, double tol);

}  // namespace polarwell::reference
