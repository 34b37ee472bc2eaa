#ifndef DEGDIFF_TRIDIAGONAL_HPP
#define DEGDIFF_TRIDIAGONAL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace degdiff {

/// Symmetric tridiagonal matrix: diag has order n, off has n - 1 entries
/// (off[i] couples rows i and i + 1).
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  SymTridiagonal() = default;
  explicit SymTridiagonal(std::size_t n) : diag(n, 0.0), off(n > 0 ? n - 1 : 0, 0.0) {}

  std::size_t order() const { return diag.size(); }
  double at(std::size_t i, std::size_t j) const;

  /// Solves A x = rhs by LDL^T. Returns nullopt if a pivot is not positive.
  std::optional<std::vector<double>> solve_spd(std::span<const double> rhs) const;

  /// True when every LDL^T pivot is positive.
  bool positive_definite() const;

  /// Smallest eigenvalue by Sturm-sequence bisection.
  double min_eigenvalue() const;

  std::vector<double> multiply(std::span<const double> x) const;
};

}  // namespace degdiff

#endif  // DEGDIFF_TRIDIAGONAL_HPP
