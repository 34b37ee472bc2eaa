#include "degdiff/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace degdiff {

double SymTridiagonal::at(std::size_t i, std::size_t j) const {
  if (i == j) return diag.at(i);
  if (i + 1 == j) return off.at(i);
  if (j + 1 == i) return off.at(j);
  return 0.0;
}

std::optional<std::vector<double>> SymTridiagonal::solve_spd(std::span<const double> rhs) const {
  const std::size_t n = order();
  if (rhs.size() != n) throw std::invalid_argument("solve_spd: size mismatch");
  std::vector<double> d(n), l(n > 0 ? n - 1 : 0), x(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = diag[i];
    if (i > 0) {
      l[i - 1] = off[i - 1] / d[i - 1];
      d[i] -= l[i - 1] * off[i - 1];
    }
    if (!(d[i] > 0.0) || !std::isfinite(d[i])) return std::nullopt;
  }
  for (std::size_t i = 1; i < n; ++i) x[i] -= l[i - 1] * x[i - 1];
  for (std::size_t i = 0; i < n; ++i) x[i] /= d[i];
  for (std::size_t i = n; i-- > 1;) x[i - 1] -= l[i - 1] * x[i];
  return x;
}

bool SymTridiagonal::positive_definite() const {
  double d = 0.0;
  for (std::size_t i = 0; i < order(); ++i) {
    d = diag[i] - (i > 0 ? off[i - 1] * off[i - 1] / d : 0.0);
    if (!(d > 0.0)) return false;
  }
  return true;
}

double SymTridiagonal::min_eigenvalue() const {
  const std::size_t n = order();
  if (n == 0) throw std::invalid_argument("min_eigenvalue: empty matrix");
  // Gershgorin bracket.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  // Number of eigenvalues strictly below s.
  auto count_below = [&](double s) {
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double b2 = i > 0 ? off[i - 1] * off[i - 1] : 0.0;
      q = diag[i] - s - (i > 0 ? b2 / q : 0.0);
      if (q == 0.0) q = -1e-300;
      if (q < 0.0) ++count;
    }
    return count;
  };
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) >= 1) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> SymTridiagonal::multiply(std::span<const double> x) const {
  const std::size_t n = order();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = diag[i] * x[i];
    if (i > 0) y[i] += off[i - 1] * x[i - 1];
    if (i + 1 < n) y[i] += off[i] * x[i + 1];
  }
  return y;
}

}  // namespace degdiff
