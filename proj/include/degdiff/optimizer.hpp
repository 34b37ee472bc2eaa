#ifndef DEGDIFF_OPTIMIZER_HPP
#define DEGDIFF_OPTIMIZER_HPP

#include <optional>
#include <span>
#include <vector>

#include "degdiff/entropy.hpp"
#include "degdiff/newton.hpp"
#include "degdiff/problem.hpp"

namespace degdiff {

struct SolveResult {
  std::vector<double> minimizer;  // free slot values
  double entropy = 0.0;
  double grad_norm = 0.0;
  double grad_tol = 0.0;  // effective (absolute) tolerance
  int iterations = 0;
  bool converged = false;
  std::vector<TraceEntry> trace;
};

/// Slot j starts at a_max * F^{-1}(c_j), c_j the state fraction at that
/// boundary (midpoint fraction for merged slots), then is pushed apart to
/// keep a minimum gap of 1e-6 * a_max.
std::vector<double> initial_guess(const RiemannProblem& problem, const BoundaryLayout& layout);

/// Unique minimizer of the entropy by damped Newton. The default start is
/// initial_guess(); any feasible start reaches the same point.
SolveResult minimize(const RiemannProblem& problem, const BoundaryLayout& layout,
                     const SolveOptions& options = {},
                     std::optional<std::vector<double>> start = std::nullopt);

}  // namespace degdiff

#endif  // DEGDIFF_OPTIMIZER_HPP
