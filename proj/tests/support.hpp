#ifndef DEGDIFF_TESTS_SUPPORT_HPP
#define DEGDIFF_TESTS_SUPPORT_HPP

// Test-only generators and oracles. Nothing here calls into the entropy
// gradient, Hessian or optimizer; the oracles are coded from the defining
// formulas so they can check those routes.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "degdiff/problem.hpp"

namespace degdiff::testkit {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// int_lo^hi F'(s) ds at 50 digits by adaptive Gauss-Kronrod.
inline HighPrecision F_mass(HighPrecision lo, HighPrecision hi) {
  const HighPrecision norm = 2 * sqrt(boost::math::constants::pi<HighPrecision>());
  auto density = [&](HighPrecision s) { return exp(-s * s / 4) / norm; };
  return boost::math::quadrature::gauss_kronrod<HighPrecision, 61>::integrate(density, lo, hi, 12,
                                                                               HighPrecision(1e-30));
}

/// F(x) from the defining integral; lower tails integrate from -inf.
inline double F_quadrature(double x) {
  if (x < 0) {
    return static_cast<double>(
        F_mass(-std::numeric_limits<HighPrecision>::infinity(), HighPrecision(x)));
  }
  return static_cast<double>(HighPrecision(0.5) + F_mass(HighPrecision(0), HighPrecision(x)));
}

inline double log_F_diff_quadrature(double x, double y) {
  return static_cast<double>(log(F_mass(HighPrecision(y), HighPrecision(x))));
}

/// Random valid partition with n interior breakpoints; zero coefficients
/// appear with probability zero_p, never adjacent to another zero.
struct ProblemGenerator {
  std::mt19937_64 rng;
  double zero_p = 0.25;

  explicit ProblemGenerator(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  PhasePartition partition(std::size_t n) {
    PhasePartition p;
    double u = uniform(-2.0, 2.0);
    p.breakpoints.push_back(u);
    for (std::size_t k = 0; k <= n; ++k) {
      u += uniform(0.2, 1.5);
      p.breakpoints.push_back(u);
    }
    for (std::size_t k = 0; k <= n; ++k) {
      const bool prev_zero = k > 0 && p.coefficients.back() == 0.0;
      const bool zero = n > 0 && !prev_zero && uniform(0.0, 1.0) < zero_p;
      p.coefficients.push_back(zero ? 0.0 : uniform(0.3, 3.0));
    }
    return p;
  }

  RiemannProblem problem(std::size_t n) {
    PhasePartition p = partition(n);
    const double lo = p.lower();
    const double hi = p.upper();
    return normalize_orientation(lo, hi, std::move(p));
  }

  /// Strictly increasing slots in [-spread, spread] with gaps >= min_gap.
  std::vector<double> feasible_point(std::size_t m, double spread, double min_gap = 0.05) {
    std::vector<double> x(m);
    for (auto& v : x) v = uniform(-spread, spread);
    std::sort(x.begin(), x.end());
    for (std::size_t j = 1; j < m; ++j) x[j] = std::max(x[j], x[j - 1] + min_gap);
    return x;
  }
};

/// Fourth-order central difference of f along coordinate i.
inline double partial(const std::function<double(std::span<const double>)>& f, std::vector<double> x,
                      std::size_t i, double h) {
  const double x0 = x[i];
  auto at = [&](double s) {
    x[i] = x0 + s;
    return f(x);
  };
  return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
}

/// Fourth-order finite-difference Hessian from values only.
inline std::vector<std::vector<double>> hessian_from_values(
    const std::function<double(std::span<const double>)>& f, std::vector<double> x, double h) {
  const std::size_t m = x.size();
  std::vector<std::vector<double>> hess(m, std::vector<double>(m, 0.0));
  auto at = [&](std::size_t i, double si, std::size_t j, double sj) {
    std::vector<double> y = x;
    y[i] += si;
    y[j] += sj;
    return f(y);
  };
  const double f0 = f(x);
  for (std::size_t i = 0; i < m; ++i) {
    // Fourth-order diagonal stencil.
    hess[i][i] = (-at(i, 2 * h, i, 0) + 16 * at(i, h, i, 0) - 30 * f0 + 16 * at(i, -h, i, 0) -
                  at(i, -2 * h, i, 0)) /
                 (12 * h * h);
    for (std::size_t j = i + 1; j < m; ++j) {
      auto mixed = [&](double s) {
        return (at(i, s, j, s) - at(i, s, j, -s) - at(i, -s, j, s) + at(i, -s, j, -s)) / (4 * s * s);
      };
      // Richardson step lifts the mixed stencil to fourth order.
      hess[i][j] = hess[j][i] = (4 * mixed(h / 2) - mixed(h)) / 3;
    }
  }
  return hess;
}

/// F(x) - F(y) from erfc, choosing the tail that avoids cancellation.
inline double F_difference_direct(double x, double y) {
  if (std::isinf(x) && x > 0) return 0.5 * std::erfc(y / 2.0);
  if (std::isinf(y) && y < 0) return 0.5 * std::erfc(-x / 2.0);
  if (y >= 0.0) return 0.5 * (std::erfc(y / 2.0) - std::erfc(x / 2.0));
  return 0.5 * (std::erfc(-x / 2.0) - std::erfc(-y / 2.0));
}

inline double F_prime_direct(double x) {
  return std::exp(-x * x / 4.0) / (2.0 * std::sqrt(std::numbers::pi));
}

/// Both sides of the matching condition at one free slot, coded straight
/// from the flux-balance relations with erfc. sign is the factor with
/// which (lhs - rhs) equals the entropy gradient at that slot.
struct MatchingCondition {
  enum class Form { flux_continuity, stefan_left, stefan_right, merged };
  Form form;
  double lhs;
  double rhs;
  double sign;
};

inline std::vector<MatchingCondition> matching_conditions(const RiemannProblem& problem,
                                                          const BoundaryLayout& layout,
                                                          std::span<const double> slots) {
  const auto& p = problem.partition;
  const std::size_t n = layout.n;
  const std::vector<double> nominal = layout.expand(slots);
  const double inf = std::numeric_limits<double>::infinity();
  // xi(0) = -inf, xi(n + 1) = +inf.
  auto xi = [&](std::size_t k) { return k == 0 ? -inf : (k == n + 1 ? inf : nominal[k - 1]); };
  auto du = [&](std::size_t k) { return p.width(k); };
  auto a = [&](std::size_t k) { return p.coefficients[k]; };
  // Flux a_i du_i F'(x/a_i) / (F(xi_{i+1}/a_i) - F(xi_i/a_i)) at an end x of interval i.
  auto end_flux = [&](std::size_t i, double x) {
    const double ai = a(i);
    return ai * du(i) * F_prime_direct(x / ai) / F_difference_direct(xi(i + 1) / ai, xi(i) / ai);
  };
  std::vector<MatchingCondition> out;
  for (std::size_t j = 0; j < layout.m; ++j) {
    const std::size_t k = layout.first_nominal(j);
    const double x = xi(k);
    using Form = MatchingCondition::Form;
    if (k < n && a(k) == 0.0) {
      out.push_back({Form::merged, -du(k) * x / 2, end_flux(k + 1, x) - end_flux(k - 1, x), -1.0});
    } else if (k == 1 && a(0) == 0.0) {
      out.push_back({Form::stefan_left, -du(0) * x / 2, end_flux(1, x), -1.0});
    } else if (k == n && a(n) == 0.0) {
      out.push_back({Form::stefan_right, du(n) * x / 2, end_flux(n - 1, x), 1.0});
    } else {
      out.push_back({Form::flux_continuity, end_flux(k, x), end_flux(k - 1, x), 1.0});
    }
  }
  return out;
}

}  // namespace degdiff::testkit

#endif  // DEGDIFF_TESTS_SUPPORT_HPP
