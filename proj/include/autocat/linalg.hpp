#pragma once

#include <optional>
#include <vector>

namespace autocat::linalg {

/// Tridiagonal matrix; lower[i] couples row i+1 to column i, upper[i] couples
/// row i to column i+1.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    Tridiagonal() = default;
    explicit Tridiagonal(std::size_t n) : lower(n > 0 ? n - 1 : 0), diag(n), upper(n > 0 ? n - 1 : 0) {}
    std::size_t size() const { return diag.size(); }
    std::vector<double> apply(const std::vector<double>& x) const;
};

/// Gaussian elimination with partial pivoting; absent when a pivot vanishes.
std::optional<std::vector<double>> solve(const Tridiagonal& A, const std::vector<double>& b);

/// Solves [A b; c^T d][x; y] = [f; g] by block elimination.
struct BorderedSolution {
    std::vector<double> x;
    double y = 0.0;
};
std::optional<BorderedSolution> solve_bordered(const Tridiagonal& A, const std::vector<double>& b,
                                               const std::vector<double>& c, double d,
                                               const std::vector<double>& f, double g);

/// Smallest eigenvalue of a symmetric tridiagonal matrix (diag, offdiag) by
/// Sturm-sequence bisection.
double smallest_eigenvalue(const std::vector<double>& diag, const std::vector<double>& offdiag,
                           double rel_tol = 1e-13);

/// Number of eigenvalues strictly below x.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& offdiag, double x);

}  // namespace autocat::linalg
