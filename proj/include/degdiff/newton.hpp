#ifndef DEGDIFF_NEWTON_HPP
#define DEGDIFF_NEWTON_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "degdiff/tridiagonal.hpp"

namespace degdiff {

struct SolveOptions {
  double grad_tol = 1e-12;  // relative to max(1, |initial gradient|_inf)
  int max_iters = 200;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  int max_backtracks = 80;
};

struct TraceEntry {
  double value = 0.0;
  double grad_norm = 0.0;
  double step_length = 0.0;
  /// Step taken after the predicted decrease fell below the resolution of
  /// the objective; accepted on gradient reduction instead of Armijo.
  bool polish = false;
};

struct NewtonOutcome {
  std::vector<double> x;
  double value = 0.0;
  double grad_norm = 0.0;
  double tolerance = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<TraceEntry> trace;
};

namespace detail {

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace detail

/// Damped Newton with backtracking for a strictly convex objective whose
/// Hessian is tridiagonal. The objective supplies
///   bool feasible(span), double value(span),
///   std::vector<double> gradient(span), SymTridiagonal hessian(span).
template <class Objective>
NewtonOutcome damped_newton(const Objective& f, std::vector<double> x, const SolveOptions& opts) {
  NewtonOutcome out;
  double value = f.value(x);
  std::vector<double> grad = f.gradient(x);
  double gnorm = detail::max_abs(grad);
  out.tolerance = opts.grad_tol * std::max(1.0, gnorm);
  out.trace.push_back({value, gnorm, 0.0, false});

  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> trial(x.size());
  int it = 0;
  for (; it < opts.max_iters && gnorm > out.tolerance; ++it) {
    std::vector<double> dir;
    if (auto d = f.hessian(x).solve_spd(grad)) {
      dir = std::move(*d);
      for (double& v : dir) v = -v;
    } else {
      dir = grad;
      for (double& v : dir) v = -v;
    }
    double slope = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) slope += grad[i] * dir[i];

    auto step_to = [&](double t) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + t * dir[i];
    };

    bool accepted = false;
    bool polish = false;
    double t = 1.0;
    double trial_value = value;
    std::vector<double> trial_grad;
    const bool resolvable = -slope > 64.0 * eps * (std::abs(value) + 1.0);
    for (int b = 0; b < opts.max_backtracks; ++b, t *= opts.backtrack_factor) {
      step_to(t);
      if (!f.feasible(trial)) continue;
      if (resolvable) {
        trial_value = f.value(trial);
        if (trial_value <= value + opts.armijo_c * t * slope && trial_value < value) {
          accepted = true;
          break;
        }
      } else {
        trial_grad = f.gradient(trial);
        if (detail::max_abs(trial_grad) < gnorm) {
          trial_value = f.value(trial);
          accepted = true;
          polish = true;
          break;
        }
      }
    }
    if (!accepted) break;

    x = trial;
    value = trial_value;
    grad = polish ? std::move(trial_grad) : f.gradient(x);
    gnorm = detail::max_abs(grad);
    out.trace.push_back({value, gnorm, t, polish});
  }

  out.x = std::move(x);
  out.value = value;
  out.grad_norm = gnorm;
  out.iterations = it;
  out.converged = gnorm <= out.tolerance;
  return out;
}

}  // namespace degdiff

#endif  // DEGDIFF_NEWTON_HPP
