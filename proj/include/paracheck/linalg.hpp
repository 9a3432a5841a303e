#pragma once

#include <vector>

namespace paracheck {

using Matrix = std::vector<std::vector<double>>;

/// Numeric rank by Gaussian elimination with partial pivoting; pivots below
/// `threshold` (relative to the largest entry) count as zero.
int numeric_rank(Matrix m, double threshold = 1e-6);

/// Eigenvalues of a symmetric matrix via cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(Matrix m);

/// Gaussian-elimination solve; returns false when the system is singular at
/// the given threshold.
bool solve_linear(Matrix a, std::vector<double> b, std::vector<double>& x,
                  double threshold = 1e-12);

} // namespace paracheck
