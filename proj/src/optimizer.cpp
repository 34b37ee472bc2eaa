#include "degdiff/optimizer.hpp"

#include <stdexcept>

#include "degdiff/special_functions.hpp"

namespace degdiff {
namespace {

struct EntropyObjective {
  const RiemannProblem& problem;
  const BoundaryLayout& layout;

  bool feasible(std::span<const double> x) const { return degdiff::feasible(layout, x); }
  double value(std::span<const double> x) const { return entropy_value(problem, layout, x); }
  std::vector<double> gradient(std::span<const double> x) const {
    return entropy_gradient(problem, layout, x);
  }
  SymTridiagonal hessian(std::span<const double> x) const {
    return entropy_hessian(problem, layout, x);
  }
};

}  // namespace

std::vector<double> initial_guess(const RiemannProblem& problem, const BoundaryLayout& layout) {
  const auto& part = problem.partition;
  double a_max = 0.0;
  for (double a : part.coefficients) a_max = std::max(a_max, a);
  const double span = part.upper() - part.lower();

  std::vector<double> guess(layout.m);
  for (std::size_t j = 0; j < layout.m; ++j) {
    const std::size_t first = layout.first_nominal(j);
    std::size_t last = first;
    while (last < layout.n && layout.slot_of(last + 1) == j) ++last;
    const double lo = (part.breakpoints[first] - part.lower()) / span;
    const double hi = (part.breakpoints[last] - part.lower()) / span;
    guess[j] = a_max * sf::F_inverse(0.5 * (lo + hi));
  }
  const double min_gap = 1e-6 * a_max;
  for (std::size_t j = 1; j < guess.size(); ++j) {
    if (!(guess[j] - guess[j - 1] >= min_gap)) guess[j] = guess[j - 1] + min_gap;
  }
  return guess;
}

SolveResult minimize(const RiemannProblem& problem, const BoundaryLayout& layout,
                     const SolveOptions& options, std::optional<std::vector<double>> start) {
  if (layout.m == 0) throw std::invalid_argument("minimize: no free boundaries");
  std::vector<double> x0 = start ? std::move(*start) : initial_guess(problem, layout);
  if (!feasible(layout, x0)) throw std::domain_error("minimize: infeasible starting point");

  const EntropyObjective objective{problem, layout};
  NewtonOutcome run = damped_newton(objective, std::move(x0), options);

  SolveResult result;
  result.minimizer = std::move(run.x);
  result.entropy = run.value;
  result.grad_norm = run.grad_norm;
  result.grad_tol = run.tolerance;
  result.iterations = run.iterations;
  result.converged = run.converged;
  result.trace = std::move(run.trace);
  return result;
}

}  // namespace degdiff
