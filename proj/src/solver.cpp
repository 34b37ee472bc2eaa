#include "degdiff/solver.hpp"

#include <algorithm>
#include <cmath>

#include "degdiff/entropy.hpp"
#include "degdiff/special_functions.hpp"

namespace degdiff {

Solution solve(double u_minus, double u_plus, const PhasePartition& partition, const SolveOptions& options) {
  Solution solution;
  if (u_minus == u_plus) {
    solution.problem.u_minus = solution.problem.u_plus = u_minus;
    solution.profile = constant_profile(u_minus);
    return solution;
  }
  solution.problem = normalize_orientation(u_minus, u_plus, partition);
  solution.layout = build_layout(solution.problem.partition);
  if (solution.layout.m == 0) {
    solution.profile = build_profile(solution.problem, solution.layout, {});
    return solution;
  }
  solution.optimization = minimize(solution.problem, solution.layout, options);
  solution.profile = build_profile(solution.problem, solution.layout, solution.optimization->minimizer);
  return solution;
}

double plot_radius(const Solution& solution) {
  const auto& part = solution.problem.partition;
  const double a = part.coefficients.empty() ? 0.0 : part.max_coefficient();
  // Arc tails reach within 1e-9 of the far-field states: F(-r/a) = 1e-9.
  const double tail = a > 0.0 ? -a * sf::F_inverse(1e-9) : 0.0;
  double extent = 0.0;
  for (double xi : solution.profile.nominal) extent = std::max(extent, std::abs(xi));
  double r = extent + tail;
  if (solution.optimization) {
    const SublevelBox box = sublevel_bounds(solution.problem, solution.layout, solution.optimization->entropy);
    r = std::max(r, box.radius);
  }
  return r > 0.0 ? r : 1.0;
}

}  // namespace degdiff
